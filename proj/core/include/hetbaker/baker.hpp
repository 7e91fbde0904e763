#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "hetbaker/geometry.hpp"
#include "hetbaker/params.hpp"
#include "hetbaker/word.hpp"

namespace hetbaker::baker {

// An orbit iterate landed on a partition (or branch-image) boundary, where
// the coding is undefined. `index` is the offending orbit time.
struct BoundaryError : std::runtime_error {
  long long index;
  BoundaryError(long long index_, const std::string& what_)
      : std::runtime_error(what_), index(index_) {}
};

// t -> scale*t + offset with scale > 0.
struct Affine {
  Rational scale, offset;

  Rational operator()(const Rational& t) const { return scale * t + offset; }
  Affine inverse() const { return {1 / scale, -offset / scale}; }
  // Composition (*this) after `inner`.
  Affine after(const Affine& inner) const {
    return {scale * inner.scale, scale * inner.offset + offset};
  }
  RInterval image(const RInterval& iv) const { return {(*this)(iv.lo), (*this)(iv.hi)}; }
  RInterval preimage(const RInterval& iv) const {
    Affine inv = inverse();
    return {inv(iv.lo), inv(iv.hi)};
  }
};

// Forward affine action of one branch, with the branch cell stored as closed
// hulls per axis (the z-cell is always [0,1]).
struct Branch {
  Affine x, y, z;
  RInterval cell_x, cell_y;
};

Branch branch_data(const Params& P, int i);

// Partition cell per the printed half-open brackets; total on [0,1]^2 (the z
// coordinate never matters for region selection).
int region_index(const Params& P, const Rational& x, const Rational& y);
int region_index(const Params& P, double x, double y);
inline int region_index(const Params& P, const Point2R& p) { return region_index(P, p.x, p.y); }
inline int region_index(const Params& P, const Point3R& p) { return region_index(P, p.x, p.y); }
inline int region_index(const Params& P, const Point2D& p) { return region_index(P, p.x, p.y); }
inline int region_index(const Params& P, const Point3D& p) { return region_index(P, p.x, p.y); }

// nullopt when the point lies on a partition boundary; coding is defined on
// cell interiors only.
std::optional<int> interior_region_index(const Params& P, const Point2R& p);
std::optional<int> interior_region_index(const Params& P, const Point3R& p);

Rational apply_F(const Params& P, const Rational& x);
double apply_F(const Params& P, double x);

Point2R apply_f2(const Params& P, const Point2R& p);
Point2D apply_f2(const Params& P, const Point2D& p);

Point3R apply_f3(const Params& P, const Point3R& p);
Point3D apply_f3(const Params& P, const Point3D& p);

// Branch-wise inverse of the cube map; throws BoundaryError when the point
// sits on a branch-image boundary (the branch is then ambiguous).
Point3R apply_f3_inv(const Params& P, const Point3R& p);

// Branch itinerary of p over the index range [-n_bwd, n_fwd); requires every
// visited iterate to be interior to its cell.
Window orbit_coding(const Params& P, const Point3R& p, int n_fwd, int n_bwd);

// Forward itinerary of the square map.
Word orbit_coding2(const Params& P, const Point2R& p, int n_fwd);

// Open cylinder of a window: the intersection of pulled-back open cells over
// the window's index range. The window must contain 0 in [start, end].
Box3 cylinder_box(const Params& P, const Window& w);

// Forward cylinder of the square map, word anchored at index 0.
Box2 cylinder_box2(const Params& P, const Word& w);

struct CylinderPoint {
  Box3 box;
  Point3R center;
  Rational diameter_x, diameter_y, diameter_z;
};

// Cylinder plus its center; throws std::domain_error on an empty cylinder.
CylinderPoint point_from_window(const Params& P, const Window& w);

enum class UnstableDim { neutral = 0, one = 1, two = 2 };

struct PeriodicOrbit {
  Word word;
  Rational x_star, z_star;
  RInterval y_fix;          // single point when !y_is_interval
  bool y_is_interval = false;
  Rational mult_x, mult_y, mult_z;  // per-axis derivative products over one period
  UnstableDim unstable_dim = UnstableDim::neutral;
  bool boundary = false;    // representative orbit touches a cell boundary
  std::vector<Point3R> points;  // one period, starting at the fixed point
};

// Solves the affine fixed-point equations per axis over one period of `w` and
// validates the branch constraints. The central direction may yield a full
// interval of periodic points (neutral continuum).
PeriodicOrbit periodic_orbit_from_word(const Params& P, const Word& w);

struct BranchJacobian {
  Rational x, y, z;
  Rational det() const { return x * y * z; }
};

BranchJacobian jacobian_branch(const Params& P, int i);

}  // namespace hetbaker::baker
