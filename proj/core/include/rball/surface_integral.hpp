#pragma once

#include "rball/convex_body.hpp"
#include "rball/quadrature.hpp"

#include <functional>

namespace rball {

using SurfaceIntegrand = std::function<double(const Vec& x, const Vec& normal, const Curvatures& curv)>;

// Integral over the boundary of K, transported to the sphere: sum_j w_j g(x(u_j), u_j, kappa) f_K(u_j).
double surfaceIntegral(const ConvexBodyOracle& body, const SurfaceIntegrand& integrand, const SphereGrid& grid);

double surfaceArea(const ConvexBodyOracle& body, const SphereGrid& grid);

}  // namespace rball
