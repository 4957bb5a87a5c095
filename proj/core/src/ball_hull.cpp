#include "rball/ball_hull.hpp"
#include "rball/error.hpp"
#include "rball/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace rball {

namespace {

SphereGrid containmentGrid(int n, int resolution)
{
    if (resolution > 0)
        return sphereGrid(n - 1, resolution);
    return sphereGrid(n - 1, n == 2 ? 256 : 12);
}

}  // namespace

double farthestDistance(const ConvexSet& body, const Vec& x0, const SphereGrid& grid)
{
    const int n = body.dim();
    std::size_t best = 0;
    double bestVal = -1.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        double d = (body.supportPoint(grid.nodes[j]) - x0).norm();
        if (d > bestVal) {
            bestVal = d;
            best = j;
        }
    }
    const Vec& v0 = grid.nodes[best];
    if (n == 2) {
        double th0 = std::atan2(v0[1], v0[0]);
        double step = 2.0 * std::numbers::pi / static_cast<double>(grid.size());
        auto f = [&](double th) {
            Vec v(2);
            v << std::cos(th), std::sin(th);
            return -(body.supportPoint(v) - x0).norm();
        };
        auto res = brentMinimize(f, th0 - step, th0 + step, 50);
        return std::max(bestVal, -res.second);
    }
    TangentFrame T = tangentBasis(v0);
    auto f = [&](const std::vector<double>& y) {
        Vec v = v0;
        for (int i = 0; i < n - 1; ++i)
            v += y[i] * T.col(i);
        return -(body.supportPoint(v / v.norm()) - x0).norm();
    };
    auto res = nelderMead(f, std::vector<double>(n - 1, 0.0), 0.05, 1e-9, 1000);
    return std::max(bestVal, -res.value);
}

BallPolyhedron rBallHull(const ConvexSet& body, double R, const SphereGrid& dirGrid, const HullOptions& opt)
{
    const int n = body.dim();
    if (!(R > 0.0) || !std::isfinite(R))
        fail(ErrorKind::InvalidInput, "hull radius must be positive and finite");
    if (dirGrid.dim != n - 1)
        fail(ErrorKind::InvalidInput, "hull direction grid must live on S^{n-1}");
    SphereGrid cgrid = containmentGrid(n, opt.containmentResolution);
    const double tol = 1e-10 * R;
    auto contained = [&](const Vec& x) { return farthestDistance(body, x, cgrid) <= R + tol; };

    std::vector<Vec> centers;
    centers.reserve(dirGrid.size());
    if (auto* bp = dynamic_cast<const BallPolyhedron*>(&body); bp && bp->radius() <= R) {
        // Already R-ball convex: the ball through the support point with outer normal u contains it.
        for (const Vec& u : dirGrid.nodes)
            centers.push_back(body.supportPoint(u) - R * u);
        return BallPolyhedron(R, std::move(centers), body.interiorPoint());
    }
    std::optional<Vec> minimax;
    for (const Vec& u : dirGrid.nodes) {
        Vec base = body.supportPoint(u) - R * u;
        if (contained(base)) {
            centers.push_back(base);
            continue;
        }
        const double step = opt.stepFraction * R;
        // Farthest distance is convex along the line: once it grows again the scan cannot succeed.
        int k = 1;
        double prev = farthestDistance(body, base, cgrid);
        while (k <= opt.maxSteps) {
            double g = farthestDistance(body, base + (k * step) * u, cgrid);
            if (g <= R + tol)
                break;
            if (g > prev) {
                k = opt.maxSteps + 1;
                break;
            }
            prev = g;
            ++k;
        }
        if (k > opt.maxSteps) {
            // No valid center on the normal line (the body's circumradius is close to R). Fall back to the
            // minimax center, pushed along -u as far as containment allows.
            if (!minimax) {
                auto f = [&](const std::vector<double>& y) { return farthestDistance(body, fromStd(y), cgrid); };
                auto res = nelderMead(f, toStd(body.interiorPoint()), 0.1 * R, 1e-13 * R, 4000);
                minimax = fromStd(res.x);
                if (!(res.value <= R + tol))
                    fail(ErrorKind::HullInfeasible, "body does not fit in a ball of radius R");
            }
            double lo = 0.0, hi = 2.0 * R;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                if (contained(*minimax - mid * u))
                    lo = mid;
                else
                    hi = mid;
            }
            centers.push_back(*minimax - lo * u);
            continue;
        }
        double lo = (k - 1) * step, hi = k * step;
        for (int it = 0; it < 40; ++it) {
            double mid = 0.5 * (lo + hi);
            if (contained(base + mid * u))
                hi = mid;
            else
                lo = mid;
        }
        centers.push_back(base + hi * u);
    }
    return BallPolyhedron(R, std::move(centers), body.interiorPoint());
}

double minCurvature(const ConvexBodyOracle& body, const SphereGrid& grid)
{
    double m = kInf;
    for (const Vec& u : grid.nodes) {
        Curvatures c = body.curvatures(u);
        m = std::min(m, c.kappa.front());
    }
    return m;
}

bool isRBallConvex(const ConvexBodyOracle& body, double R, double tol, int resolution)
{
    const int n = body.dim();
    if (resolution <= 0)
        resolution = n == 2 ? 720 : (n == 3 ? 96 : 24);
    return minCurvature(body, sphereGrid(n - 1, resolution)) >= 1.0 / R - tol;
}

double hausdorffDistance(const ConvexSet& A, const ConvexSet& B, const SphereGrid& dirGrid)
{
    if (A.dim() != B.dim() || dirGrid.dim != A.dim() - 1)
        fail(ErrorKind::InvalidInput, "dimension mismatch in Hausdorff distance");
    double d = 0.0;
    for (const Vec& u : dirGrid.nodes) {
        double ha = A.support(u), hb = B.support(u);
        if (!std::isfinite(ha) || !std::isfinite(hb))
            fail(ErrorKind::InvalidInput, "unbounded set in Hausdorff distance");
        d = std::max(d, std::abs(ha - hb));
    }
    return d;
}

}  // namespace rball
