#pragma once

#include "rball/convex_body.hpp"
#include "rball/monte_carlo.hpp"
#include "rball/quadrature.hpp"

#include <vector>

namespace rball {

// ∫_{S^{m-1}} dσ / (Σ c_i ξ_i²)^{m/2} = σ(S^{m-1}) Π c_i^{-1/2}
double sphereReciprocalQuadraticIntegral(const std::vector<double>& c);
McEstimate sphereReciprocalQuadraticIntegralMC(const std::vector<double>& c, const MCConfig& mc);
double sphereReciprocalQuadraticIntegralGrid(const std::vector<double>& c, int resolution);

// Gaps |κ - 1/R| below this (relative to max(1, κ)) are treated as exact tangency.
constexpr double kCurvatureClamp = 1e-12;

double relativeAffineSurfaceArea(const ConvexBodyOracle& K, double R, const SphereGrid& grid);
double relativeAffineSurfaceAreaL(const ConvexBodyOracle& K, const ConvexBodyOracle& L, const SphereGrid& grid);
double affineSurfaceArea(const ConvexBodyOracle& K, const SphereGrid& grid);

// ½ ((n+1) / vol_{n-1}(B^{n-1}))^{2/(n+1)}
double theoremConstant(int n);
// n vol(B^n)^{2/(n+1)} vol(K)^{(n-1)/(n+1)}
double isoperimetricBound(int n, double volume);

struct CapSpec {
    Vec semiaxes;  // ascending; the last one is vertical
    double R = 1.0;
    double h = 0.0;  // cap height a - R

    int dim() const { return static_cast<int>(semiaxes.size()); }
    double a() const { return R + h; }
    std::vector<double> coefficients() const;  // a_n / a_i² - 1/R, i < n
};

void validate(const CapSpec& spec);

struct CapAsymptotic {
    double value = 0.0;      // closed-form inner integral
    double gridValue = 0.0;  // inner integral by S^{n-2} quadrature
};

CapAsymptotic ellipsoidCapVolumeAsymptotic(const CapSpec& spec, int gridResolution = 64);
McEstimate ellipsoidCapVolumeExact(const CapSpec& spec, const MCConfig& mc);

double pointwiseDeficitRate(const ConvexBodyOracle& K, const Vec& u, double R);

// Two planar bodies: as^R(K ∪ L) + as^R(K ∩ L) evaluated arc by arc, against as^R(K) + as^R(L).
struct ValuationCheck {
    double unionPart = 0.0;
    double intersectionPart = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    int crossings = 0;
};
ValuationCheck valuationCheck2D(const ConvexBodyOracle& K, const ConvexBodyOracle& L, double R, int resolution = 2048);

}  // namespace rball
