#pragma once

#include "rball/types.hpp"

#include <vector>

namespace rball {

struct SphereGrid {
    int dim = 1;  // sphere dimension d: nodes live on S^d in R^{d+1}
    int resolution = 0;
    std::vector<Vec> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
    double totalWeight() const;
};

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Jacobi rule for weight (1-x)^alpha (1+x)^beta on [-1,1] (Golub-Welsch).
GaussRule gaussJacobi(int m, double alpha, double beta);
GaussRule gaussLegendre(int m);
// Gauss-Legendre mapped to [a,b].
GaussRule gaussLegendre(int m, double a, double b);

// S^0: {+1,-1}; S^1: `resolution` equispaced angles from 0; S^d (d>=2): product
// grid with `resolution` nodes per polar angle and 2*resolution azimuth nodes.
SphereGrid sphereGrid(int sphereDim, int resolution);

// sigma(S^d) = 2 pi^{(d+1)/2} / Gamma((d+1)/2)
double sphereMeasure(int sphereDim);
double unitBallVolume(int n);

}  // namespace rball
