#pragma once

#include "rball/ball_polyhedron.hpp"
#include "rball/convex_body.hpp"
#include "rball/quadrature.hpp"

namespace rball {

struct HullOptions {
    int containmentResolution = 0;  // 0: 256 directions in 2D, 12 per polar angle otherwise
    double stepFraction = 1e-3;     // center search step, in units of R
    int maxSteps = 10000;
};

// One supporting R-ball per grid direction; the center starts at x(u) - R u and is
// moved along +u until the ball contains the body.
BallPolyhedron rBallHull(const ConvexSet& body, double R, const SphereGrid& dirGrid, const HullOptions& opt = {});

// Largest distance from x0 to a point of the body (grid search + local refinement).
double farthestDistance(const ConvexSet& body, const Vec& x0, const SphereGrid& grid);

bool isRBallConvex(const ConvexBodyOracle& body, double R, double tol, int resolution = 0);
double minCurvature(const ConvexBodyOracle& body, const SphereGrid& grid);

double hausdorffDistance(const ConvexSet& A, const ConvexSet& B, const SphereGrid& dirGrid);

}  // namespace rball
