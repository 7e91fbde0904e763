#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hetbaker/rational.hpp"
#include "hetbaker/word.hpp"

namespace hetbaker::dyck {

// Normal form of a bracket-monoid element: a (possibly empty) run of right
// brackets followed by a run of left brackets, or the zero element. Unit
// symbols vanish into the monoid identity, which is Normal([],[]).
struct ReducedForm {
  bool zero = false;
  std::vector<int> rights;  // right-bracket subscripts, in word order
  std::vector<int> lefts;   // left-bracket subscripts, in word order

  static ReducedForm make_zero() { return ReducedForm{true, {}, {}}; }
  bool is_unit() const { return !zero && rights.empty() && lefts.empty(); }
  bool operator==(const ReducedForm&) const = default;
};

ReducedForm reduce(const Alphabet& ab, const Word& w);

// Monoid product of two reduced forms; reduce(uv) == compose(reduce(u), reduce(v)).
ReducedForm compose(const ReducedForm& u, const ReducedForm& v);

bool is_admissible(const Alphabet& ab, const Word& w);

// Number of admissible words of length n, by dynamic programming over the
// unmatched-left stack height. Symbol-permutation symmetry makes continuation
// counts depend only on the height, not the stack content.
BigInt count_words(const Alphabet& ab, int n);

// Visits every admissible word of length n in lexicographic branch-index
// order. Returns the number of words visited.
std::size_t for_each_word(const Alphabet& ab, int n, const std::function<void(const Word&)>& visit);

// Materialized enumeration, guarded so (2m+units)^n stays desk-scale.
std::vector<Word> enumerate_words(const Alphabet& ab, int n);

// The unmatched-left stack of w (subscripts bottom to top), which determines
// the follower set; nullopt when w is inadmissible.
std::optional<std::vector<int>> follower_state(const Alphabet& ab, const Word& w);

// Running bracket balance: values[k] = H_{start+k}, one entry per index in
// [start, end], anchored to 0 at `anchor`. Left brackets step +1, right
// brackets -1, units 0.
struct HeightProfile {
  long long start = 0;
  std::vector<long long> values;

  long long at(long long index) const { return values[static_cast<std::size_t>(index - start)]; }
  long long front() const { return values.front(); }
  long long back() const { return values.back(); }
};

HeightProfile height_profile(const Alphabet& ab, const Window& w, long long anchor = 0);

// Reversal composed with the bracket flip a_i <-> b_i. Requires a pure Dyck
// alphabet; an involution that preserves admissibility.
Word rho_star(const Alphabet& ab, const Word& w);

// (lambda . rho_star(lambda))^j. Admissible whenever lambda is, with zero net
// height change per period.
Word make_periodic_word(const Alphabet& ab, const Word& lambda, int j);

enum class Side { alpha, beta };

// Side alpha: every right bracket in the window closes against an earlier
// index inside the window. Side beta is the mirror statement for left
// brackets. Decided purely from the height walk.
bool window_closure_check(const Alphabet& ab, const Window& w, Side side);

}  // namespace hetbaker::dyck
