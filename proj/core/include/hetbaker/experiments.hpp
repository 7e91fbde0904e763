#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hetbaker/baker.hpp"
#include "hetbaker/measures.hpp"
#include "hetbaker/rng.hpp"
#include "hetbaker/word.hpp"

namespace hetbaker::experiments {

inline constexpr std::string_view kSchemaHeader = "# hetbaker-schema v1";

// Versioned experiment tolerances. Every pass/fail row cites the value it was
// run with, so reruns stay auditable; override per key via set_tolerance.
inline constexpr int kToleranceSchemaVersion = 1;

struct Tolerances {
  double group_freq = 0.005;
  double chi_c = 0.01;
  double chi_u = 0.01;
  double block_entropy = 0.05;
  double ruelle_slack = 0.05;
  double h_identity = 1e-12;
  double gap_value = 1e-3;
  double approach_freq = 0.01;
  double lebesgue_freq = 0.01;
  double lebesgue_chi_c = 0.01;
  double growth_ratio_hi_dyck = 0.2;     // band width above m+units+1
  double growth_ratio_hi_motzkin = 0.3;
};

inline Tolerances default_tolerances() { return {}; }

// Returns false when the key is unknown.
bool set_tolerance(Tolerances& tol, std::string_view key, double value);

struct CheckRow {
  std::string name;
  double target = 0;
  double measured = 0;
  double tolerance = 0;
  bool pass = false;
};

struct Report {
  std::string experiment;
  int m = 0;
  int units = 0;
  std::string a, b;  // empty when the experiment has no map parameters
  std::uint64_t seed = 0;

  std::vector<std::pair<std::string, std::string>> scalars;
  std::vector<CheckRow> checks;

  void add_scalar(std::string name, std::string value);
  void add_scalar(std::string name, double value);
  void check_abs(std::string name, double target, double measured, double tolerance);
  void check_le(std::string name, double measured, double bound, double slack);
  void check_range(std::string name, double lo, double hi, double measured);
  void check_flag(std::string name, bool ok);

  bool all_pass() const;
  std::string to_csv() const;   // schema header + one line per scalar/check
  std::string to_json() const;  // sorted-key summary
};

// (i) Exhaustively compares cylinder nonemptiness with Dyck admissibility for
// every word of length <= max_len, (ii) checks the observed follower-set
// transitions against the truncated follower graph, (iii) cross-checks with
// orbit codings of randomly sampled interior points.
Report verify_theorem_a(const baker::Params& P, int max_len, Seed seed, int orbit_samples = 32,
                        int threads = 1);

// Word-count table with growth ratios and the (m+units+1)^n lower bound.
Report growth_report(const Alphabet& ab, int n_max, const Tolerances& tol = {});

// Frequencies, Lyapunov averages, block entropy and entropy bounds for the
// two maximal-entropy samplers.
Report mme_report(const baker::Params& P, std::size_t n, Seed seed, int block_k,
                  const Tolerances& tol = {}, int threads = 1);

// Periodic approximants (lambda . rho_star(lambda))^j of the balanced
// half-and-half measure: admissibility, exactly zero central exponent, group
// frequencies, and the entropy gap below log(m+1).
Report approachability_report(const baker::Params& P, std::size_t prefix_len, int j_max,
                              Seed seed, const Tolerances& tol = {});

// At (a, b) = (c2, c1): unit branch determinants and the statistics of a
// Lebesgue-random orbit.
Report lebesgue_report(const baker::Params& P, std::size_t n, Seed seed,
                       const Tolerances& tol = {});

}  // namespace hetbaker::experiments
