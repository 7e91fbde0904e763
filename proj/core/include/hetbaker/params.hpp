#pragma once

#include "hetbaker/rational.hpp"
#include "hetbaker/word.hpp"

namespace hetbaker::baker {

// Map parameters (m, a, b) with a, b exact rationals in (0, 1/m). Both
// orderings of a and b are allowed; the definitions need no symmetry
// reduction.
struct Params {
  int m = 2;
  Rational a, b;

  Params(int m_, Rational a_, Rational b_);

  Rational c0() const { return Rational(1, m); }
  Rational c1() const { return Rational(1, static_cast<long long>(m) * (m + 1)); }
  Rational c2() const { return Rational(1, m + 1); }

  double a_d() const { return ad_; }
  double b_d() const { return bd_; }

  Alphabet dyck_alphabet() const { return Alphabet(m, 0); }

 private:
  double ad_ = 0, bd_ = 0;
};

}  // namespace hetbaker::baker
