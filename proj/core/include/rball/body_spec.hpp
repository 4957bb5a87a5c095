#pragma once

#include "rball/ball_polyhedron.hpp"
#include "rball/convex_body.hpp"

#include <string>
#include <variant>

namespace rball {

using BodySpec = std::variant<Ellipsoid, BallPolyhedron>;

// {"type":"ball","center":[...],"radius":r}
// {"type":"ellipsoid","semiaxes":[...],"center":[...]}
// {"type":"ball-polyhedron","radius":R,"centers":[[...],...]}
BodySpec parseBodySpec(const std::string& jsonText);
BodySpec loadBodySpec(const std::string& path);

const ConvexSet& asConvexSet(const BodySpec& spec);
// Smooth bodies only; ball-polyhedra raise invalid-input.
const ConvexBodyOracle& asOracle(const BodySpec& spec);

std::string ballPolyhedronJson(const BallPolyhedron& bp);

}  // namespace rball
