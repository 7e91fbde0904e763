#include "hetbaker/measures.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace hetbaker::measures {

namespace {

void validate_side_window(const Alphabet& ab, const SideWindow& w) {
  if (ab.units != 0) {
    throw std::invalid_argument("side alphabets are defined for pure Dyck alphabets");
  }
  for (int s : w.symbols) {
    if (s < 0 || s > ab.m) {
      throw std::invalid_argument("side symbol " + std::to_string(s) + " outside 0..m");
    }
  }
}

}  // namespace

SideWindow sample_lambda(const Alphabet& ab, Side side, long long start, std::size_t length,
                         Seed seed) {
  if (ab.units != 0) {
    throw std::invalid_argument("side alphabets are defined for pure Dyck alphabets");
  }
  if (length == 0) throw std::invalid_argument("sample_lambda: length must be >= 1");
  Rng rng(seed);
  SideWindow w{side, start, {}};
  w.symbols.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    w.symbols.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(ab.m) + 1)));
  }
  return w;
}

Window psi_lift(const Alphabet& ab, const SideWindow& w, const SideExtender& extend,
                std::size_t extension_cap) {
  validate_side_window(ab, w);
  std::vector<int> ext;  // ext[j] sits at distance j+1 beyond the matching edge

  for (;;) {
    std::vector<int> stack;
    Word out;
    out.reserve(w.symbols.size());
    bool stuck = false;
    long long stuck_pos = 0;

    if (w.side == Side::alpha) {
      // Walk the extension from its far end toward the window, then the window.
      for (auto it = ext.rbegin(); it != ext.rend(); ++it) {
        if (*it >= 1) {
          stack.push_back(*it);
        } else if (!stack.empty()) {
          stack.pop_back();  // a bare right bracket in the extension closes locally
        }
      }
      for (std::size_t k = 0; k < w.symbols.size(); ++k) {
        int s = w.symbols[k];
        if (s >= 1) {
          stack.push_back(s);
          out.push_back(s);
        } else if (!stack.empty()) {
          out.push_back(stack.back() + ab.m);
          stack.pop_back();
        } else {
          stuck = true;
          stuck_pos = w.start + static_cast<long long>(k);
          break;
        }
      }
    } else {
      for (auto it = ext.rbegin(); it != ext.rend(); ++it) {
        if (*it >= 1) {
          stack.push_back(*it);
        } else if (!stack.empty()) {
          stack.pop_back();
        }
      }
      for (std::size_t k = w.symbols.size(); k-- > 0;) {
        int s = w.symbols[k];
        if (s >= 1) {
          stack.push_back(s);
          out.push_back(s + ab.m);
        } else if (!stack.empty()) {
          out.push_back(stack.back());
          stack.pop_back();
        } else {
          stuck = true;
          stuck_pos = w.start + static_cast<long long>(k);
          break;
        }
      }
      if (!stuck) std::reverse(out.begin(), out.end());
    }

    if (!stuck) return Window{w.start, std::move(out)};
    if (!extend) {
      throw UnmatchedBracketError(stuck_pos, "bare bracket at index " + std::to_string(stuck_pos) +
                                                 " unmatched within the window");
    }
    if (ext.size() >= extension_cap) {
      throw UnmatchedBracketError(stuck_pos, "bare bracket at index " + std::to_string(stuck_pos) +
                                                 " unmatched within the extension cap");
    }
    std::size_t chunk = std::max<std::size_t>(64, ext.size());
    chunk = std::min(chunk, extension_cap - ext.size());
    auto fresh = extend(chunk);
    ext.insert(ext.end(), fresh.begin(), fresh.end());
  }
}

SideWindow forget(const Alphabet& ab, const Window& w, Side side) {
  ab.validate_word(w.symbols);
  SideWindow out{side, w.start, {}};
  out.symbols.reserve(w.symbols.size());
  for (int s : w.symbols) {
    if (ab.is_unit(s)) throw std::invalid_argument("side alphabets carry no unit symbols");
    if (side == Side::alpha) {
      out.symbols.push_back(ab.is_left(s) ? s : 0);
    } else {
      out.symbols.push_back(ab.is_right(s) ? s - ab.m : 0);
    }
  }
  return out;
}

NuSample sample_nu_window(const Alphabet& ab, Side side, long long start, std::size_t length,
                          Seed seed) {
  Rng rng(seed);
  SideWindow lambda{side, start, {}};
  lambda.symbols.reserve(length);
  if (length == 0) throw std::invalid_argument("sample_nu: length must be >= 1");
  const auto n_symbols = static_cast<std::uint64_t>(ab.m) + 1;
  for (std::size_t i = 0; i < length; ++i) {
    lambda.symbols.push_back(static_cast<int>(rng.below(n_symbols)));
  }
  if (ab.units != 0) {
    throw std::invalid_argument("side alphabets are defined for pure Dyck alphabets");
  }
  NuSample sample;
  SideExtender extender = [&](std::size_t count) {
    std::vector<int> fresh(count);
    for (auto& s : fresh) s = static_cast<int>(rng.below(n_symbols));
    sample.extension_length += count;
    return fresh;
  };
  sample.word = psi_lift(ab, lambda, extender);
  sample.lambda = std::move(lambda);
  return sample;
}

NuSample sample_nu(const Alphabet& ab, Side side, std::size_t length, Seed seed) {
  return sample_nu_window(ab, side, 0, length, seed);
}

double OrbitStats::bias() const {
  if (n == 0) return 0.0;
  auto diff = static_cast<long long>(count_alpha) - static_cast<long long>(count_beta);
  return static_cast<double>(diff < 0 ? -diff : diff) / static_cast<double>(n);
}

OrbitStats empirical_stats(const Word& w, const baker::Params& P) {
  const Alphabet ab = P.dyck_alphabet();
  ab.validate_word(w);
  const double log_a = std::log(to_double(P.a));
  const double log_rest = std::log(to_double(1 - P.m * P.a));
  const double log_m = std::log(static_cast<double>(P.m));
  OrbitStats stats;
  stats.n = w.size();
  for (int s : w) {
    if (ab.is_left(s)) {
      ++stats.count_alpha;
      stats.sum_u -= log_a;
    } else {
      ++stats.count_beta;
      stats.sum_u -= log_rest;
    }
  }
  stats.sum_c = -static_cast<double>(stats.height_change()) * log_m;
  return stats;
}

double entropy_bound_H(int m, const Rational& a) {
  if (m < 2) throw std::invalid_argument("entropy_bound_H: m must be >= 2");
  if (!(a > 0 && a < Rational(1, m))) {
    throw std::domain_error("entropy_bound_H: a must lie in the open interval (0, 1/m)");
  }
  Rational product = a * (1 - m * a);  // exact, then one rounding
  return -0.5 * std::log(to_double(product));
}

double entropy_bound_H(const baker::Params& P) { return entropy_bound_H(P.m, P.a); }

double ruelle_bound(const OrbitStats& stats) {
  return stats.chi_u() + std::max(stats.chi_c(), 0.0);
}

double biased_bound(const baker::Params& P, double delta) {
  if (delta < 0) throw std::invalid_argument("biased_bound: delta must be >= 0");
  return (1 + 2 * delta) * entropy_bound_H(P) + delta * std::log(static_cast<double>(P.m));
}

double block_entropy(const Alphabet& ab, const Word& w, int k) {
  if (k < 1) throw std::invalid_argument("block_entropy: k must be >= 1");
  ab.validate_word(w);
  if (w.size() < static_cast<std::size_t>(k)) {
    throw UndersampledError("block_entropy: word shorter than the block length");
  }
  const auto base = static_cast<std::uint64_t>(ab.total());
  if (static_cast<double>(k) * std::log2(static_cast<double>(base)) > 62.0) {
    throw std::invalid_argument("block_entropy: base^k exceeds the 64-bit block encoding");
  }
  std::uint64_t mod = 1;
  for (int i = 0; i < k; ++i) mod *= base;
  std::unordered_map<std::uint64_t, std::size_t> counts;
  counts.reserve(1 << 12);
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    code = (code * base + static_cast<std::uint64_t>(w[i] - 1)) % mod;
    if (i + 1 >= static_cast<std::size_t>(k)) ++counts[code];
  }
  const std::size_t n_blocks = w.size() - static_cast<std::size_t>(k) + 1;
  if (n_blocks < 50 * counts.size()) {
    throw UndersampledError("block_entropy: " + std::to_string(n_blocks) + " blocks for " +
                            std::to_string(counts.size()) + " distinct values");
  }
  double h = 0;
  const double n = static_cast<double>(n_blocks);
  for (const auto& [_, c] : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h / k;
}

MuPoint sample_mu_point(const baker::Params& P, Side side, int depth, Seed seed) {
  if (depth < 1) throw std::invalid_argument("sample_mu_point: depth must be >= 1");
  const Alphabet ab = P.dyck_alphabet();
  NuSample nu = sample_nu_window(ab, side, -static_cast<long long>(depth),
                                 2 * static_cast<std::size_t>(depth), seed);
  baker::CylinderPoint cp;
  try {
    cp = baker::point_from_window(P, nu.word);
  } catch (const std::domain_error&) {
    // admissible windows always carry nonempty cylinders
    throw std::logic_error("internal fault: empty cylinder for an admissible window");
  }
  MuPoint mp;
  mp.point = to_point3d(cp.center);
  mp.diameter = std::max({to_double(cp.diameter_x), to_double(cp.diameter_y),
                          to_double(cp.diameter_z)});
  mp.box = cp.box;
  mp.window = nu.word;
  return mp;
}

}  // namespace hetbaker::measures
