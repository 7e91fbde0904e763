#include "hetbaker/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "hetbaker/dyck.hpp"
#include "hetbaker/follower_graph.hpp"

namespace hetbaker::experiments {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void run_jobs(int threads, int njobs, const std::function<void(int)>& job) {
  threads = std::clamp(threads, 1, njobs);
  if (threads <= 1) {
    for (int i = 0; i < njobs; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      try {
        for (int i = next.fetch_add(1); i < njobs; i = next.fetch_add(1)) job(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

bool set_tolerance(Tolerances& tol, std::string_view key, double value) {
  if (key == "group_freq") tol.group_freq = value;
  else if (key == "chi_c") tol.chi_c = value;
  else if (key == "chi_u") tol.chi_u = value;
  else if (key == "block_entropy") tol.block_entropy = value;
  else if (key == "ruelle_slack") tol.ruelle_slack = value;
  else if (key == "h_identity") tol.h_identity = value;
  else if (key == "gap_value") tol.gap_value = value;
  else if (key == "approach_freq") tol.approach_freq = value;
  else if (key == "lebesgue_freq") tol.lebesgue_freq = value;
  else if (key == "lebesgue_chi_c") tol.lebesgue_chi_c = value;
  else if (key == "growth_ratio_hi_dyck") tol.growth_ratio_hi_dyck = value;
  else if (key == "growth_ratio_hi_motzkin") tol.growth_ratio_hi_motzkin = value;
  else return false;
  return true;
}

void Report::add_scalar(std::string name, std::string value) {
  scalars.emplace_back(std::move(name), std::move(value));
}

void Report::add_scalar(std::string name, double value) {
  scalars.emplace_back(std::move(name), fmt(value));
}

void Report::check_abs(std::string name, double target, double measured, double tolerance) {
  checks.push_back({std::move(name), target, measured, tolerance,
                    std::abs(measured - target) <= tolerance});
}

void Report::check_le(std::string name, double measured, double bound, double slack) {
  checks.push_back({std::move(name), bound, measured, slack, measured <= bound + slack});
}

void Report::check_range(std::string name, double lo, double hi, double measured) {
  checks.push_back({std::move(name), (lo + hi) / 2, measured, (hi - lo) / 2,
                    measured >= lo && measured <= hi});
}

void Report::check_flag(std::string name, bool ok) {
  checks.push_back({std::move(name), 1.0, ok ? 1.0 : 0.0, 0.0, ok});
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRow& c) { return c.pass; });
}

std::string Report::to_csv() const {
  std::string out{kSchemaHeader};
  out += "\nexperiment,m,units,a,b,seed,kind,name,value,target,measured,tolerance,pass\n";
  const std::string prefix = experiment + "," + std::to_string(m) + "," + std::to_string(units) +
                             "," + a + "," + b + "," + std::to_string(seed) + ",";
  for (const auto& [name, value] : scalars) {
    out += prefix + "scalar," + name + "," + value + ",,,,\n";
  }
  for (const auto& c : checks) {
    out += prefix + "check," + c.name + ",," + fmt(c.target) + "," + fmt(c.measured) + "," +
           fmt(c.tolerance) + "," + (c.pass ? "1" : "0") + "\n";
  }
  return out;
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["params"] = {{"m", m}, {"units", units}, {"a", a}, {"b", b}};
  j["seed"] = seed;
  nlohmann::json sc;
  for (const auto& [name, value] : scalars) sc[name] = value;
  j["scalars"] = sc;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : checks) {
    rows.push_back({{"name", c.name},
                    {"target", c.target},
                    {"measured", c.measured},
                    {"tolerance", c.tolerance},
                    {"pass", c.pass}});
  }
  j["checks"] = rows;
  j["pass"] = all_pass();
  return j.dump(2) + "\n";
}

namespace {

Report base_report(std::string name, const baker::Params& P, std::uint64_t seed) {
  Report r;
  r.experiment = std::move(name);
  r.m = P.m;
  r.units = 0;
  r.a = format_rational(P.a);
  r.b = format_rational(P.b);
  r.seed = seed;
  return r;
}

struct TheoremASlice {
  std::vector<unsigned long long> admissible_per_len;  // index = word length
  unsigned long long cylinder_mismatches = 0;
  unsigned long long graph_mismatches = 0;
  std::string first_mismatch;
};

// DFS over words; carries the forward-image box E = f^len(cylinder) and the
// unmatched-left stack. The open box tracks emptiness exactly; the stack is
// the admissibility ground truth.
void theorem_a_dfs(const baker::Params& P, const dyck::FollowerGraph& graph, int max_len,
                   Word& word, std::vector<int>& stack, const Box2& image, TheoremASlice& out) {
  const int len = static_cast<int>(word.size());
  if (len == max_len) return;
  const int parent_id = graph.vertex_id(stack);
  for (int s = 1; s <= 2 * P.m; ++s) {
    bool stack_ok = true;
    bool popped = false;
    if (P.dyck_alphabet().is_right(s) && !stack.empty()) {
      if (stack.back() == s - P.m) {
        popped = true;
      } else {
        stack_ok = false;
      }
    }
    baker::Branch br = baker::branch_data(P, s);
    Box2 cut{image.x.intersect(br.cell_x), image.y.intersect(br.cell_y)};
    const bool nonempty = !cut.empty();
    if (nonempty != stack_ok) {
      ++out.cylinder_mismatches;
      if (out.first_mismatch.empty()) {
        word.push_back(s);
        out.first_mismatch = format_indices(word);
        word.pop_back();
      }
    }
    // Follower-graph comparison: the unique edge labeled s out of the parent
    // vertex must exist exactly for admissible extensions and reach the
    // extension's stack.
    auto edge = graph.edge_target(parent_id, s);
    if (edge.has_value() != stack_ok) {
      ++out.graph_mismatches;
    }
    if (!stack_ok) continue;

    word.push_back(s);
    if (popped) {
      stack.pop_back();
    } else if (s <= P.m) {
      stack.push_back(s);
    }
    if (edge.has_value() && *edge != graph.vertex_id(stack)) ++out.graph_mismatches;
    ++out.admissible_per_len[static_cast<std::size_t>(len + 1)];
    Box2 next{br.x.image(cut.x), br.y.image(cut.y)};
    theorem_a_dfs(P, graph, max_len, word, stack, next, out);
    if (popped) {
      stack.push_back(s - P.m);
    } else if (s <= P.m) {
      stack.pop_back();
    }
    word.pop_back();
  }
}

Rational random_coordinate(Rng& rng) {
  // odd/2^61: the 2-adic denominator is deep enough to survive every orbit
  // step taken here, so iterates never land on partition boundaries
  return Rational(2 * static_cast<long long>(rng.below(1ull << 60)) + 1, 1ll << 61);
}

}  // namespace

Report verify_theorem_a(const baker::Params& P, int max_len, Seed seed, int orbit_samples,
                        int threads) {
  if (max_len < 1) throw std::invalid_argument("verify_theorem_a: max_len must be >= 1");
  const Alphabet ab = P.dyck_alphabet();
  Report r = base_report("verify_a", P, seed.value);
  r.add_scalar("max_len", std::to_string(max_len));

  const dyck::FollowerGraph graph = dyck::build_follower_graph(ab, max_len);

  // One DFS slice per first symbol, merged in symbol order.
  std::vector<TheoremASlice> slices(static_cast<std::size_t>(2 * P.m));
  run_jobs(threads, 2 * P.m, [&](int root) {
    TheoremASlice& slice = slices[static_cast<std::size_t>(root)];
    slice.admissible_per_len.assign(static_cast<std::size_t>(max_len) + 1, 0);
    const int s = root + 1;
    Word word{s};
    std::vector<int> stack;
    if (s <= P.m) stack.push_back(s);
    baker::Branch br = baker::branch_data(P, s);
    Box2 cell{br.cell_x, br.cell_y};
    // every single-symbol cylinder is a nonempty open cell
    slice.admissible_per_len[1] = 1;
    auto root_edge = graph.edge_target(0, s);
    if (!root_edge || *root_edge != graph.vertex_id(stack)) ++slice.graph_mismatches;
    Box2 image{br.x.image(cell.x), br.y.image(cell.y)};
    theorem_a_dfs(P, graph, max_len, word, stack, image, slice);
  });

  TheoremASlice total;
  total.admissible_per_len.assign(static_cast<std::size_t>(max_len) + 1, 0);
  for (const auto& slice : slices) {
    for (std::size_t i = 0; i < slice.admissible_per_len.size(); ++i) {
      total.admissible_per_len[i] += slice.admissible_per_len[i];
    }
    total.cylinder_mismatches += slice.cylinder_mismatches;
    total.graph_mismatches += slice.graph_mismatches;
    if (total.first_mismatch.empty()) total.first_mismatch = slice.first_mismatch;
  }

  bool counts_match = true;
  for (int len = 1; len <= max_len; ++len) {
    BigInt expected = dyck::count_words(ab, len);
    r.add_scalar("admissible_count_len_" + std::to_string(len),
                 std::to_string(total.admissible_per_len[static_cast<std::size_t>(len)]));
    if (BigInt(total.admissible_per_len[static_cast<std::size_t>(len)]) != expected) {
      counts_match = false;
    }
  }
  r.check_abs("cylinder_iff_admissible_mismatches", 0,
              static_cast<double>(total.cylinder_mismatches), 0);
  r.check_abs("follower_graph_mismatches", 0, static_cast<double>(total.graph_mismatches), 0);
  r.check_flag("admissible_counts_match_dp", counts_match);
  r.check_flag("all_single_symbol_cylinders_nonempty",
               total.admissible_per_len[1] == static_cast<unsigned long long>(2 * P.m));
  if (!total.first_mismatch.empty()) r.add_scalar("first_mismatch_word", total.first_mismatch);

  // Orbit cross-check: codings of random interior points must be admissible
  // words with nonempty cylinders, and coding commutes with the map/shift.
  Rng rng(seed);
  bool orbits_ok = true;
  const int steps = std::min(max_len, 12);
  for (int i = 0; i < orbit_samples; ++i) {
    Point3R p{random_coordinate(rng), random_coordinate(rng), random_coordinate(rng)};
    Window w;
    try {
      w = baker::orbit_coding(P, p, steps, 0);
    } catch (const baker::BoundaryError&) {
      continue;  // vanishing-probability draw; skip
    }
    if (!dyck::is_admissible(ab, w.symbols)) orbits_ok = false;
    if (baker::cylinder_box(P, w).empty()) orbits_ok = false;
    Window shifted = baker::orbit_coding(P, baker::apply_f3(P, p), steps - 1, 0);
    if (!std::equal(shifted.symbols.begin(), shifted.symbols.end(), w.symbols.begin() + 1)) {
      orbits_ok = false;
    }
  }
  r.check_flag("orbit_codings_consistent", orbits_ok);
  return r;
}

Report growth_report(const Alphabet& ab, int n_max, const Tolerances& tol) {
  if (n_max < 2) throw std::invalid_argument("growth_report: n_max must be >= 2");
  Report r;
  r.experiment = "growth";
  r.m = ab.m;
  r.units = ab.units;
  std::vector<BigInt> counts(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) counts[static_cast<std::size_t>(n)] = dyck::count_words(ab, n);

  bool lower_bound_ok = true;
  BigInt power = 1;
  const int growth_base = ab.m + ab.units + 1;
  double final_ratio = 0;
  for (int n = 0; n <= n_max; ++n) {
    const BigInt& c = counts[static_cast<std::size_t>(n)];
    r.add_scalar("count_" + std::to_string(n), c.str());
    if (n >= 1) {
      double ratio = to_double(Rational(c, counts[static_cast<std::size_t>(n) - 1]));
      r.add_scalar("ratio_" + std::to_string(n), ratio);
      r.add_scalar("log_growth_" + std::to_string(n),
                   std::log(c.convert_to<double>()) / static_cast<double>(n));
      final_ratio = ratio;
    }
    if (c < power) lower_bound_ok = false;
    power *= growth_base;
  }
  r.check_flag("count_at_least_power", lower_bound_ok);
  const double band_lo = static_cast<double>(growth_base);
  const double band_hi = band_lo + (ab.units > 0 ? tol.growth_ratio_hi_motzkin
                                                 : tol.growth_ratio_hi_dyck);
  r.check_range("final_ratio_band", band_lo, band_hi, final_ratio);
  return r;
}

namespace {

struct SideRows {
  measures::OrbitStats stats;
  double freq = 0;
  double block_h = 0;
  double ruelle = 0;
  std::size_t extension = 0;
};

}  // namespace

Report mme_report(const baker::Params& P, std::size_t n, Seed seed, int block_k,
                  const Tolerances& tol, int threads) {
  if (n < 1000) throw std::invalid_argument("mme_report: sample length too small");
  const Alphabet ab = P.dyck_alphabet();
  Report r = base_report("mme", P, seed.value);
  r.add_scalar("n", std::to_string(n));
  r.add_scalar("block_k", std::to_string(block_k));

  const double log_m = std::log(static_cast<double>(P.m));
  const double freq_target = static_cast<double>(P.m) / (P.m + 1);
  const double chi_c_alpha = -(static_cast<double>(P.m) - 1) / (P.m + 1) * log_m;
  const double ua = -std::log(to_double(P.a));
  const double ub = -std::log(to_double(1 - P.m * P.a));
  const double chi_u_alpha = freq_target * ua + (1 - freq_target) * ub;
  const double chi_u_beta = (1 - freq_target) * ua + freq_target * ub;
  const double log_mme = std::log(static_cast<double>(P.m + 1));

  SideRows rows[2];
  run_jobs(threads, 2, [&](int side_idx) {
    const measures::Side side = side_idx == 0 ? measures::Side::alpha : measures::Side::beta;
    auto nu = measures::sample_nu(ab, side, n, Seed{seed.value, seed.stream + side_idx});
    SideRows& row = rows[side_idx];
    row.stats = measures::empirical_stats(nu.word.symbols, P);
    row.freq = static_cast<double>(side_idx == 0 ? row.stats.count_alpha : row.stats.count_beta) /
               static_cast<double>(row.stats.n);
    row.block_h = measures::block_entropy(ab, nu.word.symbols, block_k);
    row.ruelle = measures::ruelle_bound(row.stats);
    row.extension = nu.extension_length;
  });

  for (int side_idx = 0; side_idx < 2; ++side_idx) {
    const std::string tag = side_idx == 0 ? "nu_alpha" : "nu_beta";
    const SideRows& row = rows[side_idx];
    r.check_abs(tag + ".group_freq", freq_target, row.freq, tol.group_freq);
    r.check_abs(tag + ".chi_c", side_idx == 0 ? chi_c_alpha : -chi_c_alpha, row.stats.chi_c(),
                tol.chi_c);
    r.check_abs(tag + ".chi_u", side_idx == 0 ? chi_u_alpha : chi_u_beta, row.stats.chi_u(),
                tol.chi_u);
    r.check_abs(tag + ".block_entropy", log_mme, row.block_h, tol.block_entropy);
    r.check_le(tag + ".entropy_le_ruelle", row.block_h, row.ruelle, tol.ruelle_slack);
    r.add_scalar(tag + ".bias", row.stats.bias());
    r.add_scalar(tag + ".ruelle_bound", row.ruelle);
    r.add_scalar(tag + ".extension_length", std::to_string(row.extension));
  }
  r.add_scalar("entropy_bound_H", measures::entropy_bound_H(P));
  return r;
}

Report approachability_report(const baker::Params& P, std::size_t prefix_len, int j_max,
                              Seed seed, const Tolerances& tol) {
  if (prefix_len < 1 || j_max < 1) {
    throw std::invalid_argument("approachability_report: prefix_len and j must be >= 1");
  }
  const Alphabet ab = P.dyck_alphabet();
  Report r = base_report("approach", P, seed.value);
  r.add_scalar("prefix_len", std::to_string(prefix_len));
  r.add_scalar("j_max", std::to_string(j_max));

  auto nu = measures::sample_nu(ab, measures::Side::alpha, prefix_len, seed);
  const Word& lambda = nu.word.symbols;

  bool admissible_all = true;
  bool chi_c_zero_all = true;
  double freq_alpha = 0;
  for (int j = 1; j <= j_max; ++j) {
    Word zeta = dyck::make_periodic_word(ab, lambda, j);
    if (!dyck::is_admissible(ab, zeta)) admissible_all = false;
    auto stats = measures::empirical_stats(zeta, P);
    if (stats.height_change() != 0) chi_c_zero_all = false;
    if (j == j_max) {
      freq_alpha = static_cast<double>(stats.count_alpha) / static_cast<double>(stats.n);
    }
  }
  r.check_flag("zeta_admissible_all_j", admissible_all);
  r.check_flag("zeta_chi_c_zero_exact", chi_c_zero_all);
  r.check_abs("zeta_group_freq", 0.5, freq_alpha, tol.approach_freq);

  const double h_bound = measures::entropy_bound_H(P);
  const double bound0 = measures::biased_bound(P, 0.0);
  const double gap = std::log(static_cast<double>(P.m + 1)) - bound0;
  r.add_scalar("biased_bound_delta0", bound0);
  r.add_scalar("entropy_gap", gap);
  r.check_abs("biased_bound_equals_H", h_bound, bound0, tol.h_identity);
  if (P.a > P.c1() && P.a < P.c2()) {
    r.check_flag("entropy_gap_positive", gap > 0);
  }
  return r;
}

Report lebesgue_report(const baker::Params& P, std::size_t n, Seed seed, const Tolerances& tol) {
  if (!(P.a == P.c2() && P.b == P.c1())) {
    throw std::invalid_argument("lebesgue_report requires exactly (a, b) = (c2, c1) = (" +
                                format_rational(P.c2()) + ", " + format_rational(P.c1()) + ")");
  }
  if (n < 1000) throw std::invalid_argument("lebesgue_report: orbit too short");
  Report r = base_report("lebesgue", P, seed.value);
  r.add_scalar("n", std::to_string(n));

  bool dets_one = true;
  for (int i = 1; i <= 2 * P.m; ++i) {
    auto jac = baker::jacobian_branch(P, i);
    r.add_scalar("det_branch_" + std::to_string(i), format_rational(jac.det()));
    if (jac.det() != 1) dets_one = false;
  }
  r.check_flag("branch_determinants_one", dets_one);

  Rng rng(seed);
  Point3D p{rng.unit(), rng.unit(), rng.unit()};
  std::size_t count_alpha = 0;
  for (std::size_t k = 0; k < n; ++k) {
    int region = baker::region_index(P, p);
    if (region <= P.m) ++count_alpha;
    p = baker::apply_f3(P, p);
    p.x = std::clamp(p.x, 0.0, 1.0);
    p.y = std::clamp(p.y, 0.0, 1.0);
    p.z = std::clamp(p.z, 0.0, 1.0);
  }
  const double freq = static_cast<double>(count_alpha) / static_cast<double>(n);
  const double log_m = std::log(static_cast<double>(P.m));
  const double chi_c = -(2.0 * static_cast<double>(count_alpha) - static_cast<double>(n)) /
                       static_cast<double>(n) * log_m;
  const double freq_target = static_cast<double>(P.m) / (P.m + 1);
  const double chi_c_target = -(static_cast<double>(P.m) - 1) / (P.m + 1) * log_m;
  r.check_abs("orbit_group_freq", freq_target, freq, tol.lebesgue_freq);
  r.check_abs("orbit_chi_c", chi_c_target, chi_c, tol.lebesgue_chi_c);
  return r;
}

}  // namespace hetbaker::experiments
