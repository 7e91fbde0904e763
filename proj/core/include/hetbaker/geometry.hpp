#pragma once

#include "hetbaker/rational.hpp"

namespace hetbaker {

// Open rational interval (lo, hi); empty when lo >= hi.
struct RInterval {
  Rational lo, hi;

  bool empty() const { return lo >= hi; }
  Rational length() const { return empty() ? Rational(0) : Rational(hi - lo); }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains_open(const Rational& t) const { return lo < t && t < hi; }
  bool contains_closed(const Rational& t) const { return lo <= t && t <= hi; }

  RInterval intersect(const RInterval& o) const {
    return {lo > o.lo ? lo : o.lo, hi < o.hi ? hi : o.hi};
  }

  bool operator==(const RInterval&) const = default;
};

inline RInterval unit_interval() { return {Rational(0), Rational(1)}; }

struct Box2 {
  RInterval x, y;
  bool empty() const { return x.empty() || y.empty(); }
  bool operator==(const Box2&) const = default;
};

struct Box3 {
  RInterval x, y, z;
  bool empty() const { return x.empty() || y.empty() || z.empty(); }
  bool operator==(const Box3&) const = default;
};

template <class T>
struct Vec2 {
  T x{}, y{};
  bool operator==(const Vec2&) const = default;
};

template <class T>
struct Vec3 {
  T x{}, y{}, z{};
  bool operator==(const Vec3&) const = default;
};

using Point2R = Vec2<Rational>;
using Point3R = Vec3<Rational>;
using Point2D = Vec2<double>;
using Point3D = Vec3<double>;

inline Point3D to_point3d(const Point3R& p) {
  return {to_double(p.x), to_double(p.y), to_double(p.z)};
}

}  // namespace hetbaker
