#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "hetbaker/dyck.hpp"
#include "hetbaker/experiments.hpp"
#include "hetbaker/follower_graph.hpp"
#include "hetbaker/measures.hpp"
#include "hetbaker/serialize.hpp"

namespace hetbaker::cli {

namespace {

namespace fs = std::filesystem;
using experiments::kSchemaHeader;

struct Options {
  int m = 2;
  int units = 0;
  std::string a = "1/4";
  std::string b = "1/8";
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
  std::string config;

  long long n = -1;  // sample/orbit/word length; subcommands set their own default
  int n_max = 12;
  int depth = 8;
  long long prefix_len = 1000;
  int j = 4;
  int k = -1;  // block length; -1 = default formula
  long long bwd = 0;
  long long start = 0;
  std::string side = "alpha";
  std::string law = "nu";
  std::string word;
  std::string point;
  int orbit_samples = 32;

  experiments::Tolerances tol;
};

// JSON config; unknown keys are rejected. Flags given on the command line
// take precedence over config values.
void apply_config(Options& opt, const CLI::App& app, std::ostream& err) {
  if (opt.config.empty()) return;
  std::ifstream in(opt.config);
  if (!in) throw std::invalid_argument("cannot open config file '" + opt.config + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config parse error: " + std::string(e.what()));
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

  auto given = [&](const std::string& flag) {
    const CLI::Option* o = app.get_option_no_throw(flag);
    if (o && o->count() > 0) return true;
    for (const CLI::App* sub : app.get_subcommands()) {
      o = sub->get_option_no_throw(flag);
      if (o && o->count() > 0) return true;
    }
    return false;
  };

  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "m") { if (!given("--m")) opt.m = value.get<int>(); }
      else if (key == "units") { if (!given("--units")) opt.units = value.get<int>(); }
      else if (key == "a") { if (!given("--a")) opt.a = value.get<std::string>(); }
      else if (key == "b") { if (!given("--b")) opt.b = value.get<std::string>(); }
      else if (key == "seed") { if (!given("--seed")) opt.seed = value.get<std::uint64_t>(); }
      else if (key == "threads") { if (!given("--threads")) opt.threads = value.get<int>(); }
      else if (key == "out") { if (!given("--out")) opt.out = value.get<std::string>(); }
      else if (key == "n") { if (!given("--n")) opt.n = value.get<long long>(); }
      else if (key == "n_max") { if (!given("--n-max")) opt.n_max = value.get<int>(); }
      else if (key == "depth") { if (!given("--depth")) opt.depth = value.get<int>(); }
      else if (key == "prefix_len") { if (!given("--prefix-len")) opt.prefix_len = value.get<long long>(); }
      else if (key == "j") { if (!given("--j")) opt.j = value.get<int>(); }
      else if (key == "k") { if (!given("--k")) opt.k = value.get<int>(); }
      else if (key == "side") { if (!given("--side")) opt.side = value.get<std::string>(); }
      else if (key == "orbit_samples") { if (!given("--orbit-samples")) opt.orbit_samples = value.get<int>(); }
      else if (key == "tolerances") {
        if (!value.is_object()) throw std::invalid_argument("'tolerances' must be an object");
        for (const auto& [tkey, tval] : value.items()) {
          if (!experiments::set_tolerance(opt.tol, tkey, tval.get<double>())) {
            throw std::invalid_argument("unknown tolerance key '" + tkey + "'");
          }
        }
      } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      err << "";  // fallthrough to rethrow with context
      throw std::invalid_argument("config key '" + key + "': " + e.what());
    }
  }
}

baker::Params make_params(const Options& opt) {
  return baker::Params(opt.m, parse_rational(opt.a), parse_rational(opt.b));
}

Alphabet make_alphabet(const Options& opt) { return Alphabet(opt.m, opt.units); }

measures::Side parse_side(const std::string& s) {
  if (s == "alpha") return measures::Side::alpha;
  if (s == "beta") return measures::Side::beta;
  throw std::invalid_argument("side must be 'alpha' or 'beta', got '" + s + "'");
}

int default_block_k(long long n, int m) {
  int k = static_cast<int>(std::log(static_cast<double>(n)) /
                           (2.0 * std::log(2.0 * static_cast<double>(m))));
  return std::max(1, k);
}

std::vector<Rational> parse_point(const std::string& text) {
  std::vector<Rational> coords;
  std::string_view sv = text;
  while (!sv.empty()) {
    auto comma = sv.find(',');
    coords.push_back(parse_rational(sv.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    sv.remove_prefix(comma + 1);
  }
  if (coords.size() != 2 && coords.size() != 3) {
    throw std::invalid_argument("--point needs 2 or 3 comma-separated rationals");
  }
  return coords;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

// Prints the report and writes <out>/<experiment>.{csv,json} when requested.
int emit_report(const experiments::Report& report, const Options& opt, std::ostream& out) {
  out << report.to_csv();
  if (!opt.out.empty()) {
    fs::path dir(opt.out);
    write_file(dir / (report.experiment + ".csv"), report.to_csv());
    write_file(dir / (report.experiment + ".json"), report.to_json());
  }
  return report.all_pass() ? 0 : 1;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int cmd_reduce(const Options& opt, std::ostream& out) {
  Alphabet ab = make_alphabet(opt);
  auto r = dyck::reduce(ab, ab.parse_word(opt.word));
  if (r.zero) {
    out << "ZERO\n";
  } else if (r.is_unit()) {
    out << "1\n";
  } else {
    Word normal;
    for (int s : r.rights) normal.push_back(s + ab.m);
    for (int s : r.lefts) normal.push_back(s);
    out << ab.format_word(normal) << "\n";
  }
  return 0;
}

int cmd_count(const Options& opt, std::ostream& out) {
  long long n = opt.n < 0 ? 8 : opt.n;
  out << dyck::count_words(make_alphabet(opt), static_cast<int>(n)).str() << "\n";
  return 0;
}

int cmd_enumerate(const Options& opt, std::ostream& out) {
  Alphabet ab = make_alphabet(opt);
  long long n = opt.n < 0 ? 4 : opt.n;
  std::string body;
  dyck::for_each_word(ab, static_cast<int>(n),
                      [&](const Word& w) { body += format_indices(w) + "\n"; });
  out << body;
  if (!opt.out.empty()) {
    write_file(fs::path(opt.out) / ("words_m" + std::to_string(ab.m) + "_u" +
                                    std::to_string(ab.units) + "_n" + std::to_string(n) + ".csv"),
               std::string(kSchemaHeader) + "\n" + body);
  }
  return 0;
}

int cmd_graph(const Options& opt, std::ostream& out) {
  auto g = dyck::build_follower_graph(make_alphabet(opt), opt.depth);
  std::string dot = dyck::to_dot(g);
  out << dot;
  if (!opt.out.empty()) write_file(fs::path(opt.out) / "follower_graph.dot", dot);
  return 0;
}

int cmd_map(const Options& opt, std::ostream& out) {
  baker::Params P = make_params(opt);
  auto coords = parse_point(opt.point);
  long long fwd = opt.n < 0 ? 10 : opt.n;
  std::string body = std::string(kSchemaHeader) + "\nindex,region,x,y,z\n";
  if (coords.size() == 2) {
    if (opt.bwd != 0) throw std::invalid_argument("the square map has no backward orbits");
    Point2R p{coords[0], coords[1]};
    for (long long k = 0; k < fwd; ++k) {
      auto region = baker::interior_region_index(P, p);
      if (!region) throw baker::BoundaryError(k, "iterate " + std::to_string(k) + " on a cell boundary");
      body += std::to_string(k) + "," + std::to_string(*region) + "," + format_rational(p.x) +
              "," + format_rational(p.y) + ",\n";
      p = baker::apply_f2(P, p);
    }
  } else {
    Point3R p{coords[0], coords[1], coords[2]};
    std::vector<Point3R> past;
    Point3R q = p;
    for (long long k = 1; k <= opt.bwd; ++k) {
      q = baker::apply_f3_inv(P, q);
      past.push_back(q);
    }
    for (long long k = opt.bwd; k-- > 0;) {
      const Point3R& r = past[static_cast<std::size_t>(k)];
      auto region = baker::interior_region_index(P, r);
      if (!region) throw baker::BoundaryError(-(k + 1), "backward iterate on a cell boundary");
      body += std::to_string(-(k + 1)) + "," + std::to_string(*region) + "," +
              format_rational(r.x) + "," + format_rational(r.y) + "," + format_rational(r.z) + "\n";
    }
    q = p;
    for (long long k = 0; k < fwd; ++k) {
      auto region = baker::interior_region_index(P, q);
      if (!region) throw baker::BoundaryError(k, "iterate " + std::to_string(k) + " on a cell boundary");
      body += std::to_string(k) + "," + std::to_string(*region) + "," + format_rational(q.x) +
              "," + format_rational(q.y) + "," + format_rational(q.z) + "\n";
      q = baker::apply_f3(P, q);
    }
  }
  out << body;
  if (!opt.out.empty()) write_file(fs::path(opt.out) / "orbit.csv", body);
  return 0;
}

int cmd_cylinder(const Options& opt, std::ostream& out) {
  baker::Params P = make_params(opt);
  Window w{opt.start, parse_indices(opt.word)};
  Box3 box = baker::cylinder_box(P, w);
  std::string json = box.empty() ? to_json(box) + "\n" : to_json(baker::point_from_window(P, w)) + "\n";
  out << json;
  if (!opt.out.empty()) write_file(fs::path(opt.out) / "cylinder.json", json);
  return 0;
}

int cmd_periodic(const Options& opt, std::ostream& out) {
  baker::Params P = make_params(opt);
  auto orbit = baker::periodic_orbit_from_word(P, parse_indices(opt.word));
  std::string json = to_json(orbit) + "\n";
  out << json;
  if (!opt.out.empty()) write_file(fs::path(opt.out) / "periodic.json", json);
  return 0;
}

int cmd_sample(const Options& opt, std::ostream& out) {
  Alphabet ab = make_alphabet(opt);
  auto side = parse_side(opt.side);
  long long n = opt.n < 0 ? 100 : opt.n;
  Seed seed{opt.seed, 0};
  std::string body;
  if (opt.law == "lambda") {
    auto lam = measures::sample_lambda(ab, side, 0, static_cast<std::size_t>(n), seed);
    for (std::size_t i = 0; i < lam.symbols.size(); ++i) {
      if (i) body += ',';
      int s = lam.symbols[i];
      if (s == 0) {
        body += side == measures::Side::alpha ? "b" : "a";
      } else {
        body += (side == measures::Side::alpha ? "a" : "b") + std::to_string(s);
      }
    }
    body += "\n";
  } else if (opt.law == "nu") {
    auto nu = measures::sample_nu(ab, side, static_cast<std::size_t>(n), seed);
    body = format_indices(nu.word.symbols) + "\n";
  } else {
    throw std::invalid_argument("--law must be 'nu' or 'lambda'");
  }
  out << body;
  if (!opt.out.empty()) {
    write_file(fs::path(opt.out) / ("sample_" + opt.law + "_" + opt.side + ".csv"),
               std::string(kSchemaHeader) + "\n" + body);
  }
  return 0;
}

int cmd_stats(const Options& opt, std::ostream& out) {
  baker::Params P = make_params(opt);
  Alphabet ab = P.dyck_alphabet();
  auto side = parse_side(opt.side);
  long long n = opt.n < 0 ? 100000 : opt.n;
  Seed seed{opt.seed, 0};
  Word word;
  if (!opt.word.empty()) {
    word = parse_indices(opt.word);
    n = static_cast<long long>(word.size());
  } else {
    word = measures::sample_nu(ab, side, static_cast<std::size_t>(n), seed).word.symbols;
  }
  int k = opt.k > 0 ? opt.k : default_block_k(n, P.m);
  auto stats = measures::empirical_stats(word, P);
  double block_h = measures::block_entropy(ab, word, k);
  std::string body = std::string(kSchemaHeader) +
                     "\nn,seed,stream,side,freq_alpha,freq_beta,chi_u,chi_c,bias,block_entropy,"
                     "block_k,entropy_bound_H,ruelle_bound,biased_bound_delta0\n";
  body += std::to_string(stats.n) + "," + std::to_string(seed.value) + "," +
          std::to_string(seed.stream) + "," + opt.side + "," +
          fmt_double(static_cast<double>(stats.count_alpha) / static_cast<double>(stats.n)) + "," +
          fmt_double(static_cast<double>(stats.count_beta) / static_cast<double>(stats.n)) + "," +
          fmt_double(stats.chi_u()) + "," + fmt_double(stats.chi_c()) + "," +
          fmt_double(stats.bias()) + "," + fmt_double(block_h) + "," + std::to_string(k) + "," +
          fmt_double(measures::entropy_bound_H(P)) + "," +
          fmt_double(measures::ruelle_bound(stats)) + "," +
          fmt_double(measures::biased_bound(P, 0.0)) + "\n";
  out << body;
  if (!opt.out.empty()) write_file(fs::path(opt.out) / "stats.csv", body);
  return 0;
}

int cmd_verify_a(const Options& opt, std::ostream& out) {
  auto report = experiments::verify_theorem_a(make_params(opt), opt.depth, Seed{opt.seed, 0},
                                              opt.orbit_samples, opt.threads);
  return emit_report(report, opt, out);
}

int cmd_growth(const Options& opt, std::ostream& out) {
  Alphabet ab = make_alphabet(opt);
  auto report = experiments::growth_report(ab, opt.n_max, opt.tol);
  int rc = emit_report(report, opt, out);
  if (!opt.out.empty()) {
    // plot-ready growth curve: n against (1/n) log count(n)
    std::string curve;
    for (int n = 1; n <= opt.n_max; ++n) {
      double c = dyck::count_words(ab, n).convert_to<double>();
      curve += std::to_string(n) + " " + fmt_double(std::log(c) / n) + "\n";
    }
    write_file(fs::path(opt.out) / "growth_curve.dat", curve);
  }
  return rc;
}

int cmd_mme(const Options& opt, std::ostream& out) {
  baker::Params P = make_params(opt);
  long long n = opt.n < 0 ? 1000000 : opt.n;
  int k = opt.k > 0 ? opt.k : default_block_k(n, P.m);
  auto report = experiments::mme_report(P, static_cast<std::size_t>(n), Seed{opt.seed, 0}, k,
                                        opt.tol, opt.threads);
  int rc = emit_report(report, opt, out);
  if (!opt.out.empty()) {
    // frequency convergence of the alpha-group count along the alpha sampler
    auto nu = measures::sample_nu(P.dyck_alphabet(), measures::Side::alpha,
                                  static_cast<std::size_t>(n), Seed{opt.seed, 0});
    std::string curve;
    std::size_t count = 0;
    const std::size_t step = std::max<std::size_t>(1, nu.word.symbols.size() / 200);
    for (std::size_t i = 0; i < nu.word.symbols.size(); ++i) {
      if (nu.word.symbols[i] <= P.m) ++count;
      if ((i + 1) % step == 0 || i + 1 == nu.word.symbols.size()) {
        curve += std::to_string(i + 1) + " " +
                 fmt_double(static_cast<double>(count) / static_cast<double>(i + 1)) + "\n";
      }
    }
    write_file(fs::path(opt.out) / "freq_convergence_alpha.dat", curve);
  }
  return rc;
}

int cmd_approach(const Options& opt, std::ostream& out) {
  auto report = experiments::approachability_report(
      make_params(opt), static_cast<std::size_t>(opt.prefix_len), opt.j, Seed{opt.seed, 0},
      opt.tol);
  return emit_report(report, opt, out);
}

int cmd_lebesgue(const Options& opt, std::ostream& out, bool a_given, bool b_given) {
  // default to the exact Lebesgue parameters unless the user pinned them
  Options local = opt;
  Rational c2(1, opt.m + 1);
  Rational c1(1, static_cast<long long>(opt.m) * (opt.m + 1));
  if (!a_given) local.a = format_rational(c2);
  if (!b_given) local.b = format_rational(c1);
  long long n = opt.n < 0 ? 1000000 : opt.n;
  auto report = experiments::lebesgue_report(make_params(local), static_cast<std::size_t>(n),
                                             Seed{opt.seed, 0}, opt.tol);
  return emit_report(report, local, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"hetbaker: generalized heterochaos baker maps and the Dyck/Motzkin shifts"};
  app.require_subcommand(0, 1);

  app.add_option("--config", opt.config, "JSON config file; flags override config values");

  auto add_common = [&](CLI::App* sub, bool with_params) {
    sub->add_option("--m", opt.m, "bracket pairs (m >= 2)");
    sub->add_option("--units", opt.units, "Motzkin unit symbols");
    if (with_params) {
      sub->add_option("--a", opt.a, "parameter a as 'p/q' (0 < a < 1/m)");
      sub->add_option("--b", opt.b, "parameter b as 'p/q' (0 < b < 1/m)");
    }
    sub->add_option("--seed", opt.seed, "64-bit seed");
    sub->add_option("--threads", opt.threads, "worker threads for experiments");
    sub->add_option("--out", opt.out, "output directory for CSV/JSON/DOT files");
    sub->add_option("--config", opt.config, "JSON config file");
  };

  CLI::App* reduce = app.add_subcommand("reduce", "reduce a word in the bracket monoid");
  add_common(reduce, false);
  reduce->add_option("--word", opt.word, "word, e.g. 'a1,b2' or '1,4'")->required();

  CLI::App* count = app.add_subcommand("count", "count admissible words of length n");
  add_common(count, false);
  count->add_option("--n", opt.n, "word length");

  CLI::App* enumerate = app.add_subcommand("enumerate", "list admissible words of length n");
  add_common(enumerate, false);
  enumerate->add_option("--n", opt.n, "word length");

  CLI::App* graph = app.add_subcommand("graph", "follower-set graph as DOT");
  add_common(graph, false);
  graph->add_option("--depth", opt.depth, "stack depth cutoff");

  CLI::App* map = app.add_subcommand("map", "iterate the baker map from an exact point");
  add_common(map, true);
  map->add_option("--point", opt.point, "'x,y' or 'x,y,z' with rational coordinates")->required();
  map->add_option("--n", opt.n, "forward steps");
  map->add_option("--bwd", opt.bwd, "backward steps (cube map only)");

  CLI::App* cylinder = app.add_subcommand("cylinder", "exact cylinder box of a window");
  add_common(cylinder, true);
  cylinder->add_option("--word", opt.word, "branch indices, e.g. '1,3'")->required();
  cylinder->add_option("--start", opt.start, "window start index (<= 0)");

  CLI::App* periodic = app.add_subcommand("periodic", "periodic orbit of a word");
  add_common(periodic, true);
  periodic->add_option("--word", opt.word, "branch indices, e.g. '1,3'")->required();

  CLI::App* sample = app.add_subcommand("sample", "sample the Bernoulli or maximal-entropy law");
  add_common(sample, false);
  sample->add_option("--side", opt.side, "alpha or beta");
  sample->add_option("--n", opt.n, "word length");
  sample->add_option("--law", opt.law, "nu (lifted) or lambda (side word)");

  CLI::App* stats = app.add_subcommand("stats", "empirical exponents and entropy of a word");
  add_common(stats, true);
  stats->add_option("--side", opt.side, "alpha or beta (for sampling)");
  stats->add_option("--n", opt.n, "sample length");
  stats->add_option("--k", opt.k, "block length for the entropy estimate");
  stats->add_option("--word", opt.word, "explicit word instead of sampling");

  CLI::App* verify_a = app.add_subcommand("verify-a", "cylinder/admissibility and graph checks");
  add_common(verify_a, true);
  verify_a->add_option("--depth", opt.depth, "maximum word length");
  verify_a->add_option("--orbit-samples", opt.orbit_samples, "random orbit cross-checks");

  CLI::App* growth = app.add_subcommand("growth", "word-count growth table");
  add_common(growth, false);
  growth->add_option("--n-max", opt.n_max, "largest word length");

  CLI::App* mme = app.add_subcommand("mme", "maximal-entropy measure statistics");
  add_common(mme, true);
  mme->add_option("--n", opt.n, "sample length");
  mme->add_option("--k", opt.k, "block length for the entropy estimate");

  CLI::App* approach = app.add_subcommand("approach", "balanced periodic approximants and the entropy gap");
  add_common(approach, true);
  approach->add_option("--prefix-len", opt.prefix_len, "sampled prefix length");
  approach->add_option("--j", opt.j, "largest repetition count");

  CLI::App* lebesgue = app.add_subcommand("lebesgue", "volume preservation at (a,b) = (c2,c1)");
  add_common(lebesgue, true);
  lebesgue->add_option("--n", opt.n, "orbit length");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("hetbaker");
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    apply_config(opt, app, err);
    if (reduce->parsed()) return cmd_reduce(opt, out);
    if (count->parsed()) return cmd_count(opt, out);
    if (enumerate->parsed()) return cmd_enumerate(opt, out);
    if (graph->parsed()) return cmd_graph(opt, out);
    if (map->parsed()) return cmd_map(opt, out);
    if (cylinder->parsed()) return cmd_cylinder(opt, out);
    if (periodic->parsed()) return cmd_periodic(opt, out);
    if (sample->parsed()) return cmd_sample(opt, out);
    if (stats->parsed()) return cmd_stats(opt, out);
    if (verify_a->parsed()) return cmd_verify_a(opt, out);
    if (growth->parsed()) return cmd_growth(opt, out);
    if (mme->parsed()) return cmd_mme(opt, out);
    if (approach->parsed()) return cmd_approach(opt, out);
    if (lebesgue->parsed()) {
      return cmd_lebesgue(opt, out, lebesgue->get_option("--a")->count() > 0,
                          lebesgue->get_option("--b")->count() > 0);
    }
    out << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const baker::BoundaryError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace hetbaker::cli
