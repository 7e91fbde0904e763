#include "hetbaker/dyck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hetbaker::dyck {

ReducedForm reduce(const Alphabet& ab, const Word& w) {
  ab.validate_word(w);
  ReducedForm r;
  for (int s : w) {
    if (ab.is_unit(s)) continue;
    if (ab.is_left(s)) {
      r.lefts.push_back(s);
    } else {
      int j = s - ab.m;
      if (r.lefts.empty()) {
        r.rights.push_back(j);      // appends to the leading right-bracket run
      } else if (r.lefts.back() == j) {
        r.lefts.pop_back();         // a_j b_j cancels
      } else {
        return ReducedForm::make_zero();
      }
    }
  }
  return r;
}

ReducedForm compose(const ReducedForm& u, const ReducedForm& v) {
  if (u.zero || v.zero) return ReducedForm::make_zero();
  std::size_t nl = u.lefts.size();
  std::size_t nr = v.rights.size();
  std::size_t k = std::min(nl, nr);
  // u's trailing lefts meet v's leading rights innermost-first.
  for (std::size_t i = 0; i < k; ++i) {
    if (u.lefts[nl - 1 - i] != v.rights[i]) return ReducedForm::make_zero();
  }
  ReducedForm r;
  r.rights = u.rights;
  r.rights.insert(r.rights.end(), v.rights.begin() + static_cast<long>(k), v.rights.end());
  r.lefts.assign(u.lefts.begin(), u.lefts.end() - static_cast<long>(k));
  r.lefts.insert(r.lefts.end(), v.lefts.begin(), v.lefts.end());
  return r;
}

bool is_admissible(const Alphabet& ab, const Word& w) { return !reduce(ab, w).zero; }

BigInt count_words(const Alphabet& ab, int n) {
  if (n < 0) throw std::invalid_argument("count_words: n must be >= 0");
  // f[h] = number of admissible continuations of the current length starting
  // from unmatched-left height h.
  std::vector<BigInt> f(static_cast<std::size_t>(n) + 2, 1);
  for (int len = 1; len <= n; ++len) {
    std::vector<BigInt> g(f.size(), 0);
    for (int h = 0; h + len <= n + 1; ++h) {
      BigInt v = ab.m * f[static_cast<std::size_t>(h) + 1];  // any left pushes
      if (ab.units) v += ab.units * f[static_cast<std::size_t>(h)];
      if (h > 0) {
        v += f[static_cast<std::size_t>(h) - 1];  // only the matching right pops
      } else {
        v += ab.m * f[0];  // at height 0 every right extends the leading run
      }
      g[static_cast<std::size_t>(h)] = std::move(v);
    }
    f = std::move(g);
  }
  return f[0];
}

namespace {

struct Enumerator {
  const Alphabet& ab;
  int n;
  const std::function<void(const Word&)>& visit;
  Word word;
  std::vector<int> stack;
  std::size_t count = 0;

  void run(int depth) {
    if (depth == n) {
      ++count;
      visit(word);
      return;
    }
    for (int s = 1; s <= ab.total(); ++s) {
      bool pop = false;
      if (ab.is_right(s)) {
        if (!stack.empty()) {
          if (stack.back() != s - ab.m) continue;  // mismatched pop dies
          pop = true;
        }
        // empty stack: any right bracket extends the leading run
      }
      word.push_back(s);
      if (pop) {
        stack.pop_back();
      } else if (ab.is_left(s)) {
        stack.push_back(s);
      }
      run(depth + 1);
      if (pop) {
        stack.push_back(s - ab.m);
      } else if (ab.is_left(s)) {
        stack.pop_back();
      }
      word.pop_back();
    }
  }
};

}  // namespace

std::size_t for_each_word(const Alphabet& ab, int n,
                          const std::function<void(const Word&)>& visit) {
  if (n < 0) throw std::invalid_argument("for_each_word: n must be >= 0");
  double footprint = static_cast<double>(n) * std::log(static_cast<double>(ab.total()));
  if (footprint > 14.0 * std::log(4.0) + 1e-9) {
    throw std::invalid_argument("enumeration infeasible: (2m+units)^n exceeds the 4^14 guard");
  }
  Enumerator e{ab, n, visit, {}, {}, 0};
  e.word.reserve(static_cast<std::size_t>(n));
  e.run(0);
  return e.count;
}

std::vector<Word> enumerate_words(const Alphabet& ab, int n) {
  std::vector<Word> out;
  for_each_word(ab, n, [&](const Word& w) { out.push_back(w); });
  return out;
}

std::optional<std::vector<int>> follower_state(const Alphabet& ab, const Word& w) {
  ReducedForm r = reduce(ab, w);
  if (r.zero) return std::nullopt;
  return r.lefts;  // unmatched rights never constrain the future
}

HeightProfile height_profile(const Alphabet& ab, const Window& w, long long anchor) {
  ab.validate_word(w.symbols);
  if (anchor < w.start || anchor > w.end()) {
    throw std::invalid_argument("height anchor must lie within the window's index range");
  }
  HeightProfile p;
  p.start = w.start;
  p.values.assign(w.symbols.size() + 1, 0);
  for (std::size_t k = 0; k < w.symbols.size(); ++k) {
    int s = w.symbols[k];
    long long step = ab.is_left(s) ? 1 : (ab.is_right(s) ? -1 : 0);
    p.values[k + 1] = p.values[k] + step;
  }
  long long shift = p.values[static_cast<std::size_t>(anchor - w.start)];
  for (auto& v : p.values) v -= shift;
  return p;
}

Word rho_star(const Alphabet& ab, const Word& w) {
  if (ab.units != 0) throw std::invalid_argument("rho_star is defined on pure Dyck alphabets only");
  ab.validate_word(w);
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    out.push_back(ab.is_left(*it) ? *it + ab.m : *it - ab.m);
  }
  return out;
}

Word make_periodic_word(const Alphabet& ab, const Word& lambda, int j) {
  if (j < 1) throw std::invalid_argument("make_periodic_word: j must be >= 1");
  if (!is_admissible(ab, lambda)) {
    throw std::invalid_argument("make_periodic_word: lambda is inadmissible");
  }
  Word flipped = rho_star(ab, lambda);
  Word out;
  out.reserve((lambda.size() + flipped.size()) * static_cast<std::size_t>(j));
  for (int rep = 0; rep < j; ++rep) {
    out.insert(out.end(), lambda.begin(), lambda.end());
    out.insert(out.end(), flipped.begin(), flipped.end());
  }
  return out;
}

bool window_closure_check(const Alphabet& ab, const Window& w, Side side) {
  ab.validate_word(w.symbols);
  // Side alpha: scanning left to right, a right bracket is closed iff the
  // running height has already visited the level it steps down to. Levels
  // visited form a contiguous range from 0, so the walk may never go negative.
  if (side == Side::alpha) {
    long long h = 0;
    for (int s : w.symbols) {
      if (ab.is_left(s)) {
        ++h;
      } else if (ab.is_right(s)) {
        if (--h < 0) return false;
      }
    }
    return true;
  }
  long long h = 0;
  for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it) {
    if (ab.is_right(*it)) {
      ++h;
    } else if (ab.is_left(*it)) {
      if (--h < 0) return false;
    }
  }
  return true;
}

}  // namespace hetbaker::dyck
