#include "hetbaker/params.hpp"

#include <stdexcept>

namespace hetbaker::baker {

Params::Params(int m_, Rational a_, Rational b_) : m(m_), a(std::move(a_)), b(std::move(b_)) {
  if (m < 2) throw std::invalid_argument("params require m >= 2");
  if (!(a > 0 && a < c0())) {
    throw std::invalid_argument("params require 0 < a < 1/m, got a = " + format_rational(a));
  }
  if (!(b > 0 && b < c0())) {
    throw std::invalid_argument("params require 0 < b < 1/m, got b = " + format_rational(b));
  }
  ad_ = to_double(a);
  bd_ = to_double(b);
}

}  // namespace hetbaker::baker
