#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hetbaker {

// Words are stored as 1-based branch indices: 1..m are the left brackets
// a1..am, m+1..2m the right brackets b1..bm, and 2m+1..2m+units the Motzkin
// unit symbols u1..u_units. The bracket presentation is a formatting layer.
using Word = std::vector<int>;

struct Alphabet {
  int m = 2;
  int units = 0;

  Alphabet() = default;
  Alphabet(int m_, int units_);

  int total() const { return 2 * m + units; }
  bool contains(int s) const { return s >= 1 && s <= total(); }
  bool is_left(int s) const { return s >= 1 && s <= m; }
  bool is_right(int s) const { return s > m && s <= 2 * m; }
  bool is_unit(int s) const { return s > 2 * m && s <= total(); }

  // Subscript of a bracket symbol: a_i and b_i both map to i.
  int pair_of(int s) const;

  std::string symbol_name(int s) const;       // "a1", "b2", "u1"
  int parse_symbol(std::string_view name) const;

  std::string format_word(const Word& w) const;  // "a1,b2"
  Word parse_word(std::string_view text) const;  // accepts names or raw indices

  void validate_word(const Word& w) const;

  bool operator==(const Alphabet&) const = default;
};

// A finite block of a (bi-)infinite sequence: symbols[k] sits at index
// start + k.
struct Window {
  long long start = 0;
  Word symbols;

  Window() = default;
  Window(long long start_, Word symbols_) : start(start_), symbols(std::move(symbols_)) {}

  long long size() const { return static_cast<long long>(symbols.size()); }
  long long end() const { return start + size(); }  // one past the last index
  bool contains_index(long long i) const { return i >= start && i < end(); }
  int at(long long i) const { return symbols[static_cast<std::size_t>(i - start)]; }
};

std::string format_indices(const Word& w);        // "1,3,3"
Word parse_indices(std::string_view text);

}  // namespace hetbaker
