#pragma once

#include "rball/ball_polyhedron.hpp"
#include "rball/convex_body.hpp"
#include "rball/monte_carlo.hpp"
#include "rball/quadrature.hpp"

#include <optional>
#include <vector>

namespace rball {

enum class CutMethod {
    Quadrature,  // polar quadrature about the ball center, deterministic
    MonteCarlo,  // hit-or-miss cross-variogram
};

struct FloatParams {
    double R = 1.0;
    double delta = 0.0;
    int dirResolution = 64;
    MCConfig mc;
    double bisectTol = 1e-4;
    int capResolution = 0;  // S^{n-2} nodes for quadrature cuts; 0 picks a per-dimension default
    int radialNodes = 16;   // Gauss-Legendre nodes in the polar angle
    CutMethod cutMethod = CutMethod::Quadrature;
};

void validate(const FloatParams& p, const ConvexBodyOracle& K);
int defaultCapResolution(int n);

struct CutBall {
    Vec direction;
    Ball ball;
    double offset = 0.0;  // t: center = x(u) - (R + t) u
    double cutVolume = 0.0;
};

struct FloatingBody {
    BallPolyhedron body;
    std::vector<CutBall> cuts;
    int dirResolution = 0;
};

// vol(K ∩ (x + C)); sampling box is the intersection of the two bounding boxes.
McEstimate crossVariogram(const ConvexBodyOracle& K, const Ball& C, const Vec& x, const MCConfig& mc);
// vol(K) - vol(K ∩ b)
McEstimate cutVolume(const ConvexBodyOracle& K, const Ball& b, const MCConfig& mc);
// Deterministic vol(K \ b) for a cap around `axis` (unit, pointing from the ball center into the cap).
double cutVolumeQuadrature(const ConvexBodyOracle& K, const Ball& b, const Vec& axis, int capResolution,
                           int radialNodes);

double cutVolumeAt(const ConvexBodyOracle& K, const Vec& u, double t, const FloatParams& p);
CutBall exactCutBall(const ConvexBodyOracle& K, const Vec& u, const FloatParams& params);
FloatingBody floatingBody(const ConvexBodyOracle& K, const FloatParams& params);

struct CertificateReport {
    double maxRelativeError = 0.0;
    std::size_t failures = 0;
    std::vector<double> remeasured;
};
// Re-measures every cut at 4x the construction resolution.
CertificateReport certifyCuts(const ConvexBodyOracle& K, const FloatingBody& fb, const FloatParams& params);

// Monte Carlo samples used for the deficit: mc.samples, times 10 when delta <= 1e-4.
std::uint64_t deficitSamples(const FloatParams& params);

McEstimate volumeDeficit(const ConvexBodyOracle& K, const FloatParams& params);
McEstimate volumeDeficit(const ConvexBodyOracle& K, const FloatingBody& fb, const FloatParams& params);

// (1/n) ∫ <x - o, N_K> [1 - (|x_L - o| / |x - o|)^n] dmu_K, x_L by bisection on L's membership.
double radialVolumeDifference(const ConvexBodyOracle& K, const ConvexSet& L, const SphereGrid& grid,
                              std::optional<Vec> origin = std::nullopt);

struct SupportTable {
    SphereGrid grid;
    std::vector<double> support;
};

// g_K(x) = vol(K ∩ (x + K)) with common random numbers over K's bounding box.
McEstimate covariogram(const ConvexBodyOracle& K, const Vec& x, const MCConfig& mc);
SupportTable convolutionBody(const ConvexBodyOracle& K, double delta, const MCConfig& mc, int dirResolution);

struct ScalingReport {
    double a = 1.0;
    double hausdorff = 0.0;
    double gridTolerance = 0.0;
    double volumeScaled = 0.0;     // vol((aK)^{aR}_delta)
    double volumeScaledErr = 0.0;
    double volumeMapped = 0.0;     // a^n vol(K^R_{delta/a^n})
    double volumeMappedErr = 0.0;
};
ScalingReport scalingCovarianceCheck(const ConvexBodyOracle& K, double a, const FloatParams& params);

// R * (angular grid spacing)^2 / 8: sagitta of the gap between neighbouring balls.
double gridTolerance(int dim, int dirResolution, double R);

BallPolyhedron scaledPolyhedron(const BallPolyhedron& bp, double a);

}  // namespace rball
