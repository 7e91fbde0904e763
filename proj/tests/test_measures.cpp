#include <doctest.h>

#include <array>
#include <cmath>
#include <set>

#include "hetbaker/measures.hpp"
#include "oracles.hpp"

using namespace hetbaker;
using measures::Side;
namespace oracle = test_oracles;

namespace {

const Alphabet kDyck2(2, 0);
const baker::Params kP(2, Rational(1, 4), Rational(1, 8));

// Exact per-symbol k-block entropy of the alpha-side sampler, by enumerating
// the (m+1)^k side patterns: each unresolved bare bracket contributes one
// uniform subscript choice, everything else is determined.
double exact_block_entropy(int m, int k) {
  const int side_symbols = m + 1;
  long long patterns = 1;
  for (int i = 0; i < k; ++i) patterns *= side_symbols;
  double weighted_unresolved = 0;
  for (long long code = 0; code < patterns; ++code) {
    long long c = code;
    int stack = 0, unresolved = 0;
    for (int i = 0; i < k; ++i) {
      int sym = static_cast<int>(c % side_symbols);
      c /= side_symbols;
      if (sym > 0) {
        ++stack;
      } else if (stack > 0) {
        --stack;
      } else {
        ++unresolved;
      }
    }
    weighted_unresolved += unresolved;
  }
  const double e_unresolved = weighted_unresolved / static_cast<double>(patterns);
  return std::log(static_cast<double>(side_symbols)) +
         std::log(static_cast<double>(m)) * e_unresolved / k;
}

}  // namespace

TEST_CASE("lambda sampling is uniform and reproducible") {
  auto w1 = measures::sample_lambda(kDyck2, Side::alpha, 0, 100000, {42, 0});
  auto w2 = measures::sample_lambda(kDyck2, Side::alpha, 0, 100000, {42, 0});
  CHECK(w1.symbols == w2.symbols);
  auto w3 = measures::sample_lambda(kDyck2, Side::alpha, 0, 100000, {42, 1});
  CHECK(w1.symbols != w3.symbols);

  std::array<std::size_t, 3> counts{};
  for (int s : w1.symbols) ++counts[static_cast<std::size_t>(s)];
  for (std::size_t s = 0; s < 3; ++s) {
    CHECK(std::abs(static_cast<double>(counts[s]) / 100000.0 - 1.0 / 3.0) < 0.006);
  }
  CHECK_THROWS_AS(measures::sample_lambda(Alphabet(2, 1), Side::alpha, 0, 10, {1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(measures::sample_lambda(kDyck2, Side::alpha, 0, 0, {1, 0}),
                  std::invalid_argument);
}

TEST_CASE("psi lift matches brackets to their openers") {
  // (a2, bare) -> (a2, b2)
  auto lifted = measures::psi_lift(kDyck2, {Side::alpha, 0, {2, 0}});
  CHECK(lifted.symbols == Word{2, 4});
  // nested: (a1, a2, bare, bare) -> (a1, a2, b2, b1)
  lifted = measures::psi_lift(kDyck2, {Side::alpha, 0, {1, 2, 0, 0}});
  CHECK(lifted.symbols == Word{1, 2, 4, 3});
  // nothing to replace
  lifted = measures::psi_lift(kDyck2, {Side::alpha, 0, {1, 2, 1}});
  CHECK(lifted.symbols == Word{1, 2, 1});
  // beta side matches forward: (bare, b2) -> (a2, b2)
  lifted = measures::psi_lift(kDyck2, {Side::beta, 0, {0, 2}});
  CHECK(lifted.symbols == Word{2, 4});
  // nearest forward closer wins: (bare, b1, b2) -> (a1, b1, b2)
  lifted = measures::psi_lift(kDyck2, {Side::beta, 0, {0, 1, 2}});
  CHECK(lifted.symbols == Word{1, 3, 4});

  // window indices survive the lift
  auto shifted = measures::psi_lift(kDyck2, {Side::alpha, -2, {1, 0}});
  CHECK(shifted.start == -2);
}

TEST_CASE("psi lift reports unmatched positions without an extender") {
  try {
    measures::psi_lift(kDyck2, {Side::alpha, 5, {1, 0, 0}});
    FAIL("expected UnmatchedBracketError");
  } catch (const measures::UnmatchedBracketError& e) {
    CHECK(e.position == 7);  // the second bare bracket, at index 5 + 2
  }
  // the same window lifts once an extender supplies past symbols
  int calls = 0;
  measures::SideExtender extender = [&](std::size_t count) {
    ++calls;
    return std::vector<int>(count, 1);  // an endless run of a1
  };
  auto lifted = measures::psi_lift(kDyck2, {Side::alpha, 5, {1, 0, 0}}, extender);
  CHECK(lifted.symbols == Word{1, 3, 3});
  CHECK(calls >= 1);

  // a hard cap turns a hopeless match into a diagnostic
  measures::SideExtender bare = [](std::size_t count) { return std::vector<int>(count, 0); };
  CHECK_THROWS_AS(measures::psi_lift(kDyck2, {Side::alpha, 0, {0}}, bare, 256),
                  measures::UnmatchedBracketError);
}

TEST_CASE("forgetting subscripts inverts the lift") {
  Rng rng({51, 0});
  for (int trial = 0; trial < 100; ++trial) {
    Side side = trial % 2 == 0 ? Side::alpha : Side::beta;
    auto nu = measures::sample_nu(kDyck2, side, 200, {100 + static_cast<std::uint64_t>(trial), 0});
    auto recovered = measures::forget(kDyck2, nu.word, side);
    CHECK(recovered.symbols == nu.lambda.symbols);
    CHECK(dyck::is_admissible(kDyck2, nu.word.symbols));
    CHECK(dyck::window_closure_check(kDyck2, nu.word,
                                     side == Side::alpha ? dyck::Side::alpha : dyck::Side::beta));
  }
}

TEST_CASE("nu sampling hits the expected group frequency") {
  auto nu = measures::sample_nu(kDyck2, Side::alpha, 200000, {2026, 0});
  auto stats = measures::empirical_stats(nu.word.symbols, kP);
  CHECK(std::abs(static_cast<double>(stats.count_alpha) / 200000.0 - 2.0 / 3.0) < 0.005);

  auto nu_beta = measures::sample_nu(kDyck2, Side::beta, 200000, {2026, 1});
  auto stats_beta = measures::empirical_stats(nu_beta.word.symbols, kP);
  CHECK(std::abs(static_cast<double>(stats_beta.count_beta) / 200000.0 - 2.0 / 3.0) < 0.005);

  // bit-exact reproducibility
  auto again = measures::sample_nu(kDyck2, Side::alpha, 200000, {2026, 0});
  CHECK(again.word.symbols == nu.word.symbols);
}

TEST_CASE("empirical stats track the height walk") {
  Word balanced;
  for (int i = 0; i < 50; ++i) {
    balanced.push_back(1);
    balanced.push_back(3);
  }
  auto stats = measures::empirical_stats(balanced, kP);
  CHECK(stats.chi_c() == 0.0);
  CHECK(stats.bias() == 0.0);
  CHECK(stats.count_alpha == 50);
  CHECK(stats.count_beta == 50);

  Rng rng({53, 0});
  const double log_m = std::log(2.0);
  for (int trial = 0; trial < 50; ++trial) {
    Word w = oracle::random_admissible_word(kDyck2, rng, 1 + static_cast<int>(rng.below(30)));
    auto s = measures::empirical_stats(w, kP);
    auto profile = dyck::height_profile(kDyck2, Window{0, w});
    CHECK(s.height_change() == profile.back());
    CHECK(s.sum_c == -static_cast<double>(profile.back()) * log_m);
  }
  CHECK_THROWS_AS(measures::empirical_stats({5}, kP), std::invalid_argument);
}

TEST_CASE("unstable exponent bound identities") {
  const double log3 = std::log(3.0);
  CHECK(std::abs(measures::entropy_bound_H(2, Rational(1, 6)) - log3) < 1e-12);
  CHECK(std::abs(measures::entropy_bound_H(2, Rational(1, 3)) - log3) < 1e-12);
  const double h_quarter = measures::entropy_bound_H(kP);
  CHECK(std::abs(h_quarter - 1.5 * std::log(2.0)) < 1e-12);
  CHECK(h_quarter < log3 - 0.05);

  Rng rng({59, 0});
  for (int trial = 0; trial < 100; ++trial) {
    Rational a(1 + static_cast<long long>(rng.below(999)), 2000);  // (0, 1/2)
    Rational mirrored = (1 - 2 * a) / 2;
    if (mirrored == 0) continue;
    CHECK(measures::entropy_bound_H(2, a) ==
          doctest::Approx(measures::entropy_bound_H(2, mirrored)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(measures::entropy_bound_H(2, Rational(1, 2)), std::domain_error);
  CHECK_THROWS_AS(measures::entropy_bound_H(2, Rational(0)), std::domain_error);
}

TEST_CASE("biased bound evaluations") {
  CHECK(measures::biased_bound(kP, 0.0) == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-13));
  CHECK(measures::biased_bound(kP, 0.1) ==
        doctest::Approx(1.2 * 1.5 * std::log(2.0) + 0.1 * std::log(2.0)).epsilon(1e-13));
  CHECK_THROWS_AS(measures::biased_bound(kP, -0.1), std::invalid_argument);
}

TEST_CASE("ruelle bound drops negative central exponents") {
  measures::OrbitStats s;
  s.n = 10;
  s.sum_u = 11.0;
  s.sum_c = -3.0;
  CHECK(measures::ruelle_bound(s) == doctest::Approx(1.1));
  s.sum_c = 3.0;
  CHECK(measures::ruelle_bound(s) == doctest::Approx(1.4));
}

TEST_CASE("block entropy of i.i.d. and constant words") {
  Rng rng({61, 0});
  Word iid;
  iid.reserve(400000);
  for (int i = 0; i < 400000; ++i) iid.push_back(1 + static_cast<int>(rng.below(4)));
  double h6 = measures::block_entropy(kDyck2, iid, 6);
  CHECK(std::abs(h6 - std::log(4.0)) < 0.02);

  Word constant(5000, 2);
  CHECK(measures::block_entropy(kDyck2, constant, 3) == doctest::Approx(0.0));

  // non-increasing in k for product measures, within estimator noise
  double previous = measures::block_entropy(kDyck2, iid, 1);
  for (int k = 2; k <= 5; ++k) {
    double h = measures::block_entropy(kDyck2, iid, k);
    CHECK(h <= previous + 0.02);
    previous = h;
  }

  Word small(iid.begin(), iid.begin() + 10000);
  CHECK_THROWS_AS(measures::block_entropy(kDyck2, small, 8), measures::UndersampledError);
  CHECK_THROWS_AS(measures::block_entropy(kDyck2, iid, 0), std::invalid_argument);
  CHECK_THROWS_AS(measures::block_entropy(kDyck2, iid, 40), std::invalid_argument);
}

TEST_CASE("block entropy of the lifted sampler matches its exact law") {
  // Exact values from enumerating side patterns; the estimator should land on
  // them, not on log(m+1), because unresolved subscripts carry extra entropy.
  const double exact_k8 = exact_block_entropy(2, 8);
  CHECK(exact_k8 == doctest::Approx(1.166728).epsilon(1e-5));

  auto nu = measures::sample_nu(kDyck2, Side::alpha, 600000, {71, 0});
  double measured = measures::block_entropy(kDyck2, nu.word.symbols, 8);
  CHECK(std::abs(measured - exact_k8) < 0.01);

  double measured_k2 = measures::block_entropy(kDyck2, nu.word.symbols, 2);
  CHECK(std::abs(measured_k2 - exact_block_entropy(2, 2)) < 0.005);
}

TEST_CASE("mu points are deterministic, spread out, and correctly weighted") {
  auto p1 = measures::sample_mu_point(kP, Side::alpha, 8, {81, 5});
  auto p2 = measures::sample_mu_point(kP, Side::alpha, 8, {81, 5});
  CHECK(p1.point == p2.point);
  CHECK(p1.diameter > 0);
  CHECK(p1.window.start == -8);
  CHECK(p1.window.size() == 16);

  std::size_t first_alpha = 0;
  std::set<std::array<int, 3>> cells;
  const int draws = 4000;
  for (int i = 0; i < draws; ++i) {
    auto mp = measures::sample_mu_point(kP, Side::alpha, 6, {93, static_cast<std::uint64_t>(i)});
    if (mp.window.at(0) <= kP.m) ++first_alpha;
    auto cell_of = [](double v) { return std::min(3, static_cast<int>(v * 4)); };
    cells.insert({cell_of(mp.point.x), cell_of(mp.point.y), cell_of(mp.point.z)});
  }
  CHECK(std::abs(static_cast<double>(first_alpha) / draws - 2.0 / 3.0) < 0.025);
  CHECK(cells.size() == 64);  // the law charges every cell of a 4x4x4 grid

  CHECK_THROWS_AS(measures::sample_mu_point(kP, Side::alpha, 0, {1, 0}), std::invalid_argument);
}
