#pragma once

#include <string>

#include "hetbaker/baker.hpp"
#include "hetbaker/geometry.hpp"
#include "hetbaker/word.hpp"

namespace hetbaker {

// JSON with rationals rendered as "p/q" strings so round trips stay bit-exact;
// windows carry signed index ranges.
std::string to_json(const RInterval& iv);
std::string to_json(const Box2& box);
std::string to_json(const Box3& box);
std::string to_json(const Window& w);
std::string to_json(const baker::CylinderPoint& cp);
std::string to_json(const baker::PeriodicOrbit& orbit);

}  // namespace hetbaker
