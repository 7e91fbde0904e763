#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetbaker/baker.hpp"
#include "hetbaker/dyck.hpp"
#include "hetbaker/geometry.hpp"
#include "hetbaker/rng.hpp"
#include "hetbaker/word.hpp"

namespace hetbaker::measures {

using dyck::Side;

// A window over a side alphabet: for side alpha the symbols are a1..am plus a
// bare right bracket, for side beta b1..bm plus a bare left bracket. Value 0
// encodes the bare symbol, 1..m the subscripted ones.
struct SideWindow {
  Side side = Side::alpha;
  long long start = 0;
  std::vector<int> symbols;

  long long size() const { return static_cast<long long>(symbols.size()); }
  long long end() const { return start + size(); }
};

// A bare bracket could not be matched inside the window plus the allowed
// extension; `position` is the stuck index.
struct UnmatchedBracketError : std::runtime_error {
  long long position;
  UnmatchedBracketError(long long position_, const std::string& what_)
      : std::runtime_error(what_), position(position_) {}
};

struct UndersampledError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// i.i.d. uniform symbols over the m+1 side symbols; deterministic under seed.
SideWindow sample_lambda(const Alphabet& ab, Side side, long long start, std::size_t length,
                         Seed seed);

// Supplies `count` fresh side symbols extending the window away from its
// matched edge (leftward for side alpha, rightward for side beta).
using SideExtender = std::function<std::vector<int>(std::size_t count)>;

inline constexpr std::size_t kDefaultMatchCap = std::size_t{1} << 20;

// Replaces each bare bracket by the subscripted bracket it matches: side
// alpha matches a bare right bracket to the nearest unmatched left bracket
// behind it, side beta mirrors this forward. Unmatched positions pull fresh
// symbols from `extend` in doubling chunks until matched or the cap is hit.
Window psi_lift(const Alphabet& ab, const SideWindow& w, const SideExtender& extend = {},
                std::size_t extension_cap = kDefaultMatchCap);

// Forgetful map back onto the side alphabet (strips subscripts from the
// opposite side's brackets); inverse of psi_lift on its image.
SideWindow forget(const Alphabet& ab, const Window& w, Side side);

struct NuSample {
  Window word;           // admissible Dyck window
  SideWindow lambda;     // the generating side window
  std::size_t extension_length = 0;
};

// Samples the maximal-entropy measure of the chosen side on a window by
// drawing a Bernoulli side word and lifting it.
NuSample sample_nu(const Alphabet& ab, Side side, std::size_t length, Seed seed);
NuSample sample_nu_window(const Alphabet& ab, Side side, long long start, std::size_t length,
                          Seed seed);

// Ergodic sums of the unstable and central observables along a Dyck word.
struct OrbitStats {
  std::size_t n = 0;
  double sum_u = 0;
  double sum_c = 0;
  std::size_t count_alpha = 0;
  std::size_t count_beta = 0;

  double chi_u() const { return n ? sum_u / static_cast<double>(n) : 0.0; }
  double chi_c() const { return n ? sum_c / static_cast<double>(n) : 0.0; }
  double bias() const;
  long long height_change() const {
    return static_cast<long long>(count_alpha) - static_cast<long long>(count_beta);
  }
};

OrbitStats empirical_stats(const Word& w, const baker::Params& P);

// -log sqrt(a(1-ma)): the unstable exponent of balanced measures.
double entropy_bound_H(int m, const Rational& a);
double entropy_bound_H(const baker::Params& P);

// chi_u + max(chi_c, 0).
double ruelle_bound(const OrbitStats& stats);

// (1+2*delta)*H(a) + delta*log(m).
double biased_bound(const baker::Params& P, double delta);

// Plug-in estimate: Shannon entropy of the empirical k-block distribution
// divided by k, natural log. Throws UndersampledError when the word is too
// short for the number of distinct blocks observed.
double block_entropy(const Alphabet& ab, const Word& w, int k);

struct MuPoint {
  Point3D point;
  double diameter = 0;     // max cylinder side length
  Box3 box;
  Window window;
};

// Approximate draw from the lifted measure on the cube: samples a nu-window
// of half-width `depth` and returns the center of its cylinder.
MuPoint sample_mu_point(const baker::Params& P, Side side, int depth, Seed seed);

}  // namespace hetbaker::measures
