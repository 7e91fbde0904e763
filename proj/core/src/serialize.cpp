#include "hetbaker/serialize.hpp"

#include <json.hpp>

namespace hetbaker {

namespace {

using nlohmann::json;

json interval_json(const RInterval& iv) {
  return json::array({format_rational(iv.lo), format_rational(iv.hi)});
}

json point_json(const Point3R& p) {
  return json::array({format_rational(p.x), format_rational(p.y), format_rational(p.z)});
}

}  // namespace

std::string to_json(const RInterval& iv) { return interval_json(iv).dump(); }

std::string to_json(const Box2& box) {
  json j;
  j["x"] = interval_json(box.x);
  j["y"] = interval_json(box.y);
  j["empty"] = box.empty();
  return j.dump();
}

std::string to_json(const Box3& box) {
  json j;
  j["x"] = interval_json(box.x);
  j["y"] = interval_json(box.y);
  j["z"] = interval_json(box.z);
  j["empty"] = box.empty();
  return j.dump();
}

std::string to_json(const Window& w) {
  json j;
  j["start"] = w.start;
  j["symbols"] = w.symbols;
  return j.dump();
}

std::string to_json(const baker::CylinderPoint& cp) {
  json j;
  j["box"] = nlohmann::json::parse(to_json(cp.box));
  j["center"] = point_json(cp.center);
  j["diameter"] = json::array({format_rational(cp.diameter_x), format_rational(cp.diameter_y),
                               format_rational(cp.diameter_z)});
  return j.dump();
}

std::string to_json(const baker::PeriodicOrbit& orbit) {
  json j;
  j["word"] = orbit.word;
  j["x_star"] = format_rational(orbit.x_star);
  j["z_star"] = format_rational(orbit.z_star);
  if (orbit.y_is_interval) {
    j["y_fix"] = interval_json(orbit.y_fix);
  } else {
    j["y_fix"] = format_rational(orbit.y_fix.lo);
  }
  j["multipliers"] = {{"x", format_rational(orbit.mult_x)},
                      {"y", format_rational(orbit.mult_y)},
                      {"z", format_rational(orbit.mult_z)}};
  switch (orbit.unstable_dim) {
    case baker::UnstableDim::one: j["unstable_dim"] = 1; break;
    case baker::UnstableDim::two: j["unstable_dim"] = 2; break;
    case baker::UnstableDim::neutral: j["unstable_dim"] = "neutral"; break;
  }
  j["boundary"] = orbit.boundary;
  json pts = json::array();
  for (const auto& p : orbit.points) pts.push_back(point_json(p));
  j["points"] = pts;
  return j.dump();
}

}  // namespace hetbaker
