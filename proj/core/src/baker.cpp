#include "hetbaker/baker.hpp"

#include <algorithm>
#include <cmath>

#include "hetbaker/dyck.hpp"

namespace hetbaker::baker {

namespace {

bool is_integer(const Rational& q) { return denominator(q) == 1; }

// floor of a nonnegative rational
long long floor_nonneg(const Rational& q) {
  return static_cast<long long>(numerator(q) / denominator(q));
}

RInterval closed_intersect(const RInterval& a, const RInterval& b) {
  return {a.lo > b.lo ? a.lo : b.lo, a.hi < b.hi ? a.hi : b.hi};
}

Box3 open_cell3(const Branch& br) {
  return {br.cell_x, br.cell_y, unit_interval()};
}

void require_unit_cube(const Params&, const Rational& x, const Rational& y) {
  if (x < 0 || x > 1 || y < 0 || y > 1) {
    throw std::invalid_argument("point outside [0,1]^2");
  }
}

}  // namespace

Branch branch_data(const Params& P, int i) {
  if (i < 1 || i > 2 * P.m) throw std::invalid_argument("branch index outside 1..2m");
  Branch br;
  const Rational ma = P.m * P.a;
  if (i <= P.m) {
    br.x = {1 / P.a, Rational(-(i - 1))};
    br.y = {Rational(1, P.m), Rational(i - 1, P.m)};
    br.z = {1 - P.m * P.b, Rational(0)};
    br.cell_x = {Rational(i - 1) * P.a, Rational(i) * P.a};
    br.cell_y = unit_interval();
  } else {
    br.x = {1 / (1 - ma), -ma / (1 - ma)};
    br.y = {Rational(P.m), Rational(-(i - P.m - 1))};
    br.z = {P.b, 1 - P.m * P.b + P.b * (i - P.m - 1)};
    br.cell_x = {ma, Rational(1)};
    br.cell_y = {Rational(i - P.m - 1, P.m), Rational(i - P.m, P.m)};
  }
  return br;
}

int region_index(const Params& P, const Rational& x, const Rational& y) {
  require_unit_cube(P, x, y);
  const Rational ma = P.m * P.a;
  if (x < ma) {
    return static_cast<int>(floor_nonneg(x / P.a)) + 1;  // x in [(i-1)a, ia)
  }
  long long j = floor_nonneg(y * P.m);  // y-cells half open, the last one closed
  if (j >= P.m) j = P.m - 1;
  return P.m + 1 + static_cast<int>(j);
}

int region_index(const Params& P, double x, double y) {
  if (!(x >= 0 && x <= 1 && y >= 0 && y <= 1)) {
    throw std::invalid_argument("point outside [0,1]^2");
  }
  const double a = P.a_d();
  const double ma = static_cast<double>(P.m) * a;
  if (x < ma) {
    int i = static_cast<int>(std::floor(x / a)) + 1;
    return std::clamp(i, 1, P.m);
  }
  int j = static_cast<int>(std::floor(y * P.m));
  j = std::clamp(j, 0, P.m - 1);
  return P.m + 1 + j;
}

std::optional<int> interior_region_index(const Params& P, const Point2R& p) {
  if (p.x <= 0 || p.x >= 1 || p.y <= 0 || p.y >= 1) return std::nullopt;
  const Rational ma = P.m * P.a;
  if (p.x == ma) return std::nullopt;
  if (p.x < ma) {
    Rational q = p.x / P.a;
    if (is_integer(q)) return std::nullopt;  // x on an interior x-boundary
    return static_cast<int>(floor_nonneg(q)) + 1;
  }
  Rational q = p.y * P.m;
  if (is_integer(q)) return std::nullopt;  // y on a cell boundary
  return P.m + 1 + static_cast<int>(floor_nonneg(q));
}

std::optional<int> interior_region_index(const Params& P, const Point3R& p) {
  if (p.z <= 0 || p.z >= 1) return std::nullopt;
  return interior_region_index(P, Point2R{p.x, p.y});
}

Rational apply_F(const Params& P, const Rational& x) {
  int i = region_index(P, x, Rational(0));
  return branch_data(P, i).x(x);
}

double apply_F(const Params& P, double x) {
  const double a = P.a_d();
  const double ma = static_cast<double>(P.m) * a;
  if (x < ma) {
    int i = std::clamp(static_cast<int>(std::floor(x / a)) + 1, 1, P.m);
    return (x - (i - 1) * a) / a;
  }
  return (x - ma) / (1 - ma);
}

Point2R apply_f2(const Params& P, const Point2R& p) {
  Branch br = branch_data(P, region_index(P, p));
  return {br.x(p.x), br.y(p.y)};
}

Point2D apply_f2(const Params& P, const Point2D& p) {
  int i = region_index(P, p);
  const int m = P.m;
  double y = i <= m ? p.y / m + static_cast<double>(i - 1) / m
                    : m * p.y - i + m + 1;
  return {apply_F(P, p.x), y};
}

Point3R apply_f3(const Params& P, const Point3R& p) {
  if (p.z < 0 || p.z > 1) throw std::invalid_argument("point outside [0,1]^3");
  Branch br = branch_data(P, region_index(P, p));
  return {br.x(p.x), br.y(p.y), br.z(p.z)};
}

Point3D apply_f3(const Params& P, const Point3D& p) {
  int i = region_index(P, p);
  const int m = P.m;
  const double b = P.b_d();
  Point2D q = apply_f2(P, Point2D{p.x, p.y});
  double z = i <= m ? (1 - m * b) * p.z
                    : b * p.z + 1 - m * b + b * (i - m - 1);
  return {q.x, q.y, z};
}

Point3R apply_f3_inv(const Params& P, const Point3R& p) {
  if (p.x < 0 || p.x > 1 || p.y < 0 || p.y > 1 || p.z < 0 || p.z > 1) {
    throw std::invalid_argument("point outside [0,1]^3");
  }
  const Rational mb = P.m * P.b;
  const Rational z_split = 1 - mb;  // contracted z-images end here, expanded ones start
  int i = 0;
  if (p.z == z_split) {
    throw BoundaryError(0, "point on the z-image boundary between branch families");
  }
  if (p.z < z_split) {
    Rational q = p.y * P.m;
    if (is_integer(q)) {
      throw BoundaryError(0, "point on a y-image boundary; inverse branch ambiguous");
    }
    i = static_cast<int>(floor_nonneg(q)) + 1;
  } else {
    Rational q = (p.z - z_split) / P.b;
    if (is_integer(q)) {
      throw BoundaryError(0, "point on a z-image boundary; inverse branch ambiguous");
    }
    i = P.m + 1 + static_cast<int>(floor_nonneg(q));
  }
  Branch br = branch_data(P, i);
  return {br.x.inverse()(p.x), br.y.inverse()(p.y), br.z.inverse()(p.z)};
}

Window orbit_coding(const Params& P, const Point3R& p, int n_fwd, int n_bwd) {
  if (n_fwd < 0 || n_bwd < 0) throw std::invalid_argument("orbit_coding: negative window side");
  Word backward;  // symbols at -1, -2, ...
  Point3R q = p;
  for (int k = 1; k <= n_bwd; ++k) {
    try {
      q = apply_f3_inv(P, q);
    } catch (const BoundaryError&) {
      throw BoundaryError(-k, "backward iterate " + std::to_string(-k) + " hit an image boundary");
    }
    auto region = interior_region_index(P, q);
    if (!region) {
      throw BoundaryError(-k, "backward iterate " + std::to_string(-k) + " not interior to a cell");
    }
    backward.push_back(*region);
  }
  Word forward;
  q = p;
  for (int k = 0; k < n_fwd; ++k) {
    auto region = interior_region_index(P, q);
    if (!region) {
      throw BoundaryError(k, "iterate " + std::to_string(k) + " not interior to a cell");
    }
    forward.push_back(*region);
    q = apply_f3(P, q);
  }
  Window w;
  w.start = -n_bwd;
  w.symbols.assign(backward.rbegin(), backward.rend());
  w.symbols.insert(w.symbols.end(), forward.begin(), forward.end());
  return w;
}

Word orbit_coding2(const Params& P, const Point2R& p, int n_fwd) {
  Word out;
  Point2R q = p;
  for (int k = 0; k < n_fwd; ++k) {
    auto region = interior_region_index(P, q);
    if (!region) {
      throw BoundaryError(k, "iterate " + std::to_string(k) + " not interior to a cell");
    }
    out.push_back(*region);
    q = apply_f2(P, q);
  }
  return out;
}

Box3 cylinder_box(const Params& P, const Window& w) {
  P.dyck_alphabet().validate_word(w.symbols);
  if (w.start > 0 || w.end() < 0) {
    throw std::invalid_argument("cylinder window must satisfy start <= 0 <= end");
  }
  // Forward constraints, pulled back to time 0.
  Box3 fwd{unit_interval(), unit_interval(), unit_interval()};
  for (long long k = w.end() - 1; k >= 0; --k) {
    Branch br = branch_data(P, w.at(k));
    Box3 pre{br.x.preimage(fwd.x), br.y.preimage(fwd.y), br.z.preimage(fwd.z)};
    Box3 cell = open_cell3(br);
    fwd = {pre.x.intersect(cell.x), pre.y.intersect(cell.y), pre.z.intersect(cell.z)};
    if (fwd.empty()) return fwd;
  }
  if (w.start == 0) return fwd;
  // Backward constraints, pushed forward to time 0.
  Branch first = branch_data(P, w.at(w.start));
  Box3 bwd = open_cell3(first);
  for (long long j = w.start + 1; j <= -1; ++j) {
    Branch prev = branch_data(P, w.at(j - 1));
    bwd = {prev.x.image(bwd.x), prev.y.image(bwd.y), prev.z.image(bwd.z)};
    Branch here = branch_data(P, w.at(j));
    Box3 cell = open_cell3(here);
    bwd = {bwd.x.intersect(cell.x), bwd.y.intersect(cell.y), bwd.z.intersect(cell.z)};
    if (bwd.empty()) return bwd;
  }
  Branch last = branch_data(P, w.at(-1));
  bwd = {last.x.image(bwd.x), last.y.image(bwd.y), last.z.image(bwd.z)};
  return {fwd.x.intersect(bwd.x), fwd.y.intersect(bwd.y), fwd.z.intersect(bwd.z)};
}

Box2 cylinder_box2(const Params& P, const Word& w) {
  P.dyck_alphabet().validate_word(w);
  Box2 box{unit_interval(), unit_interval()};
  for (std::size_t k = w.size(); k-- > 0;) {
    Branch br = branch_data(P, w[k]);
    Box2 pre{br.x.preimage(box.x), br.y.preimage(box.y)};
    box = {pre.x.intersect(br.cell_x), pre.y.intersect(br.cell_y)};
    if (box.empty()) return box;
  }
  return box;
}

CylinderPoint point_from_window(const Params& P, const Window& w) {
  Box3 box = cylinder_box(P, w);
  if (box.empty()) throw std::domain_error("empty cylinder for window " + format_indices(w.symbols));
  CylinderPoint cp;
  cp.box = box;
  cp.center = {box.x.mid(), box.y.mid(), box.z.mid()};
  cp.diameter_x = box.x.length();
  cp.diameter_y = box.y.length();
  cp.diameter_z = box.z.length();
  return cp;
}

PeriodicOrbit periodic_orbit_from_word(const Params& P, const Word& w) {
  const Alphabet ab = P.dyck_alphabet();
  if (w.empty()) throw std::invalid_argument("periodic orbit needs a nonempty word");
  ab.validate_word(w);
  if (!dyck::is_admissible(ab, w)) {
    throw std::invalid_argument("word " + format_indices(w) + " is inadmissible");
  }
  // Admissibility of w.w is equivalent to admissibility of every power; the
  // leftover of red(w) composed with itself is a one-sided bracket run.
  Word doubled = w;
  doubled.insert(doubled.end(), w.begin(), w.end());
  if (!dyck::is_admissible(ab, doubled)) {
    throw std::invalid_argument("word " + format_indices(w) +
                                " has no admissible periodic repetition");
  }

  Affine gx{Rational(1), Rational(0)};
  Affine gy{Rational(1), Rational(0)};
  Affine gz{Rational(1), Rational(0)};
  for (int s : w) {
    Branch br = branch_data(P, s);
    gx = br.x.after(gx);
    gy = br.y.after(gy);
    gz = br.z.after(gz);
  }

  PeriodicOrbit orbit;
  orbit.word = w;
  orbit.mult_x = gx.scale;
  orbit.mult_y = gy.scale;
  orbit.mult_z = gz.scale;

  // x expands, so the inverse composition is a contraction with one fixed point.
  Affine gx_inv = gx.inverse();
  orbit.x_star = gx_inv.offset / (1 - gx_inv.scale);
  // z contracts forward; again a unique fixed point.
  orbit.z_star = gz.offset / (1 - gz.scale);

  if (gy.scale == 1) {
    if (gy.offset != 0) {
      throw std::domain_error("fixed point violates a branch constraint: neutral period translates the fiber");
    }
    // Every y surviving one period of cell constraints is periodic.
    RInterval yfix = unit_interval();
    Affine prefix{Rational(1), Rational(0)};
    for (int s : w) {
      Branch br = branch_data(P, s);
      yfix = closed_intersect(yfix, prefix.preimage(br.cell_y));
      prefix = br.y.after(prefix);
    }
    if (yfix.lo > yfix.hi) {
      throw std::domain_error("fixed point violates a branch constraint: empty neutral y-set");
    }
    orbit.y_fix = yfix;
    orbit.y_is_interval = yfix.lo < yfix.hi;
    orbit.unstable_dim = UnstableDim::neutral;
  } else {
    Rational y_star = gy.offset / (1 - gy.scale);
    orbit.y_fix = {y_star, y_star};
    orbit.y_is_interval = false;
    orbit.unstable_dim = gy.scale > 1 ? UnstableDim::two : UnstableDim::one;
  }

  Rational y0 = orbit.y_is_interval ? orbit.y_fix.mid() : orbit.y_fix.lo;
  Point3R q{orbit.x_star, y0, orbit.z_star};
  orbit.boundary = false;
  for (std::size_t k = 0; k < w.size(); ++k) {
    Branch br = branch_data(P, w[k]);
    bool inside = br.cell_x.contains_closed(q.x) && br.cell_y.contains_closed(q.y) &&
                  q.z >= 0 && q.z <= 1;
    if (!inside) {
      throw std::domain_error("fixed point violates the branch constraint at step " +
                              std::to_string(k));
    }
    bool interior = br.cell_x.contains_open(q.x) && br.cell_y.contains_open(q.y) &&
                    q.z > 0 && q.z < 1;
    if (!interior) orbit.boundary = true;
    orbit.points.push_back(q);
    q = {br.x(q.x), br.y(q.y), br.z(q.z)};
  }
  if (!(q.x == orbit.points.front().x && q.y == orbit.points.front().y &&
        q.z == orbit.points.front().z)) {
    throw std::logic_error("periodic orbit failed to close up");  // internal fault
  }
  return orbit;
}

BranchJacobian jacobian_branch(const Params& P, int i) {
  if (i < 1 || i > 2 * P.m) throw std::invalid_argument("branch index outside 1..2m");
  if (i <= P.m) return {1 / P.a, Rational(1, P.m), 1 - P.m * P.b};
  return {1 / (1 - P.m * P.a), Rational(P.m), P.b};
}

}  // namespace hetbaker::baker
