#include "hetbaker/word.hpp"

#include <charconv>
#include <stdexcept>

namespace hetbaker {

namespace {

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    out.push_back(text.substr(0, comma));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

Alphabet::Alphabet(int m_, int units_) : m(m_), units(units_) {
  if (m < 2) throw std::invalid_argument("alphabet requires m >= 2 bracket pairs");
  if (units < 0) throw std::invalid_argument("alphabet requires units >= 0");
}

int Alphabet::pair_of(int s) const {
  if (is_left(s)) return s;
  if (is_right(s)) return s - m;
  throw std::invalid_argument("symbol " + std::to_string(s) + " is not a bracket");
}

std::string Alphabet::symbol_name(int s) const {
  if (is_left(s)) return "a" + std::to_string(s);
  if (is_right(s)) return "b" + std::to_string(s - m);
  if (is_unit(s)) return "u" + std::to_string(s - 2 * m);
  throw std::invalid_argument("symbol " + std::to_string(s) + " outside alphabet");
}

int Alphabet::parse_symbol(std::string_view name) const {
  if (name.empty()) throw std::invalid_argument("empty symbol");
  char kind = name.front();
  if (kind == 'a' || kind == 'b' || kind == 'u') {
    int k = parse_int(name.substr(1));
    int s = 0;
    if (kind == 'a') s = k;
    else if (kind == 'b') s = k + m;
    else s = k + 2 * m;
    bool in_range = (kind == 'a' && k >= 1 && k <= m) ||
                    (kind == 'b' && k >= 1 && k <= m) ||
                    (kind == 'u' && k >= 1 && k <= units);
    if (!in_range) throw std::invalid_argument("symbol '" + std::string(name) + "' outside alphabet");
    return s;
  }
  int s = parse_int(name);
  if (!contains(s)) throw std::invalid_argument("branch index " + std::to_string(s) + " outside alphabet");
  return s;
}

std::string Alphabet::format_word(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += symbol_name(w[i]);
  }
  return out;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word w;
  if (text.empty()) return w;
  for (auto tok : split_commas(text)) w.push_back(parse_symbol(tok));
  return w;
}

void Alphabet::validate_word(const Word& w) const {
  for (int s : w) {
    if (!contains(s)) {
      throw std::invalid_argument("symbol " + std::to_string(s) + " outside alphabet of " +
                                  std::to_string(total()) + " symbols");
    }
  }
}

std::string format_indices(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(w[i]);
  }
  return out;
}

Word parse_indices(std::string_view text) {
  Word w;
  if (text.empty()) return w;
  for (auto tok : split_commas(text)) w.push_back(parse_int(tok));
  return w;
}

}  // namespace hetbaker
