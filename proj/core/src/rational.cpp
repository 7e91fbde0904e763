#include "hetbaker/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace hetbaker {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s;
  std::string_view den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("rational must be 'p/q' or an integer, got '" +
                                std::string(text) + "'");
  }
  BigInt p{std::string(num)};
  BigInt q{std::string(den)};
  if (q == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
  Rational r(p, q);
  return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace hetbaker
