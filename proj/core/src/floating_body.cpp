#include "rball/floating_body.hpp"
#include "rball/error.hpp"
#include "rball/ball_hull.hpp"
#include "rball/surface_integral.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rball {

namespace {

// a^n - b^n without cancellation, 0 when a <= b.
double powDiff(double a, double b, int n)
{
    if (a <= b)
        return 0.0;
    double s = 0.0;
    for (int k = 0; k < n; ++k)
        s += std::pow(a, k) * std::pow(b, n - 1 - k);
    return (a - b) * s;
}

double capCoefficient(int n)
{
    return std::pow(2.0, 0.5 * (n + 1)) / ((n - 1.0) * (n + 1.0));
}

// Cut depth predicted by the cap asymptotics, or a tiny default when curvature is too flat.
double initialOffset(const ConvexBodyOracle& K, const Vec& u, double R, double delta)
{
    const int n = K.dim();
    Curvatures c = K.curvatures(u);
    double prodGap = 1.0;
    for (double k : c.kappa) {
        double g = k - 1.0 / R;
        if (!(g > 0.0))
            return 1e-6 * R;
        prodGap *= g;
    }
    double I = sphereMeasure(n - 2) / std::sqrt(prodGap);
    return std::pow(delta / (capCoefficient(n) * I), 2.0 / (n + 1));
}

std::string dirString(const Vec& u)
{
    std::ostringstream os;
    os.precision(6);
    os << "(";
    for (int i = 0; i < u.size(); ++i)
        os << (i ? "," : "") << u[i];
    os << ")";
    return os.str();
}

}  // namespace

int defaultCapResolution(int n)
{
    switch (n) {
    case 2: return 1;
    case 3: return 16;
    case 4: return 8;
    default: return 5;
    }
}

void validate(const FloatParams& p, const ConvexBodyOracle& K)
{
    if (!(p.R > 0.0) || !std::isfinite(p.R))
        fail(ErrorKind::InvalidInput, "R must be positive and finite");
    if (!(p.delta >= 0.0) || !std::isfinite(p.delta))
        fail(ErrorKind::InvalidInput, "delta must be non-negative");
    if (p.dirResolution < 8)
        fail(ErrorKind::InvalidInput, "direction resolution must be at least 8");
    if (!(p.bisectTol > 0.0) || !(p.bisectTol < 1e-3))
        fail(ErrorKind::InvalidInput, "bisectTol must lie in (0, 1e-3)");
    if (p.radialNodes < 2)
        fail(ErrorKind::InvalidInput, "radial quadrature needs at least 2 nodes");
    validate(p.mc);
    if (auto v = K.volumeHint(); v && p.delta >= *v)
        fail(ErrorKind::InvalidInput, "delta must be smaller than vol(K)");
}

McEstimate crossVariogram(const ConvexBodyOracle& K, const Ball& C, const Vec& x, const MCConfig& mc)
{
    validate(mc);
    Ball moved{C.center + x, C.radius};
    Box box = K.boundingBox().intersect(moved.boundingBox());
    if (box.empty())
        return {0.0, 0.0};
    return mcVolume([&](const Vec& p) { return moved.contains(p) && K.contains(p); }, box, mc);
}

McEstimate cutVolume(const ConvexBodyOracle& K, const Ball& b, const MCConfig& mc)
{
    double vol = K.volume();
    Ball atOrigin{Vec::Zero(b.dim()), b.radius};
    McEstimate g = crossVariogram(K, atOrigin, b.center, mc);
    return {std::max(0.0, vol - g.value), g.standardError};
}

double cutVolumeQuadrature(const ConvexBodyOracle& K, const Ball& b, const Vec& axis, int capResolution,
                           int radialNodes)
{
    const int n = K.dim();
    const Vec& c = b.center;
    const double R = b.radius;
    TangentFrame T = tangentBasis(axis);
    thread_local std::pair<int, int> omegaKey{-1, -1};
    thread_local SphereGrid omega;
    thread_local int glKey = -1;
    thread_local GaussRule gl;
    if (omegaKey != std::pair{n, std::max(1, capResolution)}) {
        omegaKey = {n, std::max(1, capResolution)};
        omega = sphereGrid(n - 2, omegaKey.second);
    }
    if (glKey != radialNodes) {
        glKey = radialNodes;
        gl = gaussLegendre(radialNodes);
    }

    double total = 0.0;
    double guess = 0.0;
    for (std::size_t k = 0; k < omega.size(); ++k) {
        Vec w = T * omega.nodes[k];
        auto xi = [&](double phi) -> Vec { return std::cos(phi) * axis + std::sin(phi) * w; };
        auto excess = [&](double phi) {
            auto iv = K.rayInterval(c, xi(phi));
            return iv ? iv->second - R : -R;
        };
        double g0 = excess(0.0);
        if (!(g0 > 0.0))
            continue;

        double phiMax = std::numbers::pi;
        if (excess(std::numbers::pi) <= 0.0) {
            double lo = 0.0, hi = std::min(std::numbers::pi, guess > 0.0 ? 1.25 * guess : std::sqrt(g0 / R));
            if (excess(hi) > 0.0) {
                while (hi < std::numbers::pi && excess(hi) > 0.0) {
                    lo = hi;
                    hi = std::min(std::numbers::pi, 2.0 * hi);
                }
            } else {
                double probe = hi;
                while (probe > 1e-300 && excess(probe) <= 0.0) {
                    hi = probe;
                    probe *= 0.5;
                }
                lo = probe;
            }
            std::uintmax_t iters = 100;
            auto r = boost::math::tools::toms748_solve(excess, lo, hi, boost::math::tools::eps_tolerance<double>(36),
                                                       iters);
            phiMax = 0.5 * (r.first + r.second);
            guess = phiMax;
        }

        const double half = 0.5 * phiMax;
        double s = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            double phi = half * (gl.nodes[i] + 1.0);
            auto iv = K.rayInterval(c, xi(phi));
            if (!iv)
                continue;
            double inner = std::max(R, iv->first);
            s += gl.weights[i] * std::pow(std::sin(phi), n - 2) * powDiff(iv->second, inner, n);
        }
        total += omega.weights[k] * half * s / n;
    }
    return total;
}

double cutVolumeAt(const ConvexBodyOracle& K, const Vec& u, double t, const FloatParams& p)
{
    Vec center = K.supportPoint(u) - (p.R + t) * u;
    Ball b{center, p.R};
    if (p.cutMethod == CutMethod::Quadrature) {
        int cap = p.capResolution > 0 ? p.capResolution : defaultCapResolution(K.dim());
        return cutVolumeQuadrature(K, b, u, cap, p.radialNodes);
    }
    return cutVolume(K, b, p.mc).value;
}

CutBall exactCutBall(const ConvexBodyOracle& K, const Vec& uIn, const FloatParams& params)
{
    validate(params, K);
    const int n = K.dim();
    Vec u = uIn / uIn.norm();
    const double R = params.R;
    const double delta = params.delta;
    const double vol = K.volume();
    auto ballAt = [&](double t) { return Ball{Vec(K.supportPoint(u) - (R + t) * u), R}; };
    auto cut = [&](double t) { return cutVolumeAt(K, u, t, params); };

    if (delta == 0.0) {
        return CutBall{u, ballAt(0.0), 0.0, cut(0.0)};
    }
    if (delta >= 0.5 * vol)
        fail(ErrorKind::InfeasibleCut, "delta must be below vol(K)/2");

    const double e = 2.0 / (n + 1);
    const double target = std::pow(delta, e);
    auto f = [&](double t) { return std::pow(cut(t), e) - target; };
    const double tMax = 2.0 * K.boundingRadius();

    double t0 = std::min(initialOffset(K, u, R, delta), 0.5 * tMax);
    double lo, hi, flo, fhi;
    double f0 = f(t0);
    if (f0 < 0.0) {
        lo = t0;
        flo = f0;
        hi = 2.0 * t0;
        fhi = f(hi);
        while (fhi < 0.0) {
            lo = hi;
            flo = fhi;
            if (hi >= tMax)
                fail(ErrorKind::InfeasibleCut, "no exact cut found up to 2*bounding radius in direction " + dirString(u));
            hi = std::min(tMax, 2.0 * hi);
            fhi = f(hi);
        }
    } else {
        hi = t0;
        fhi = f0;
        lo = 0.5 * t0;
        flo = f(lo);
        while (flo > 0.0 && lo > 1e-14 * R) {
            hi = lo;
            fhi = flo;
            lo *= 0.5;
            flo = f(lo);
        }
        if (flo > 0.0) {
            lo = 0.0;
            flo = f(0.0);
            if (flo > 0.0)
                fail(ErrorKind::InfeasibleCut, "tangent ball already cuts more than delta in direction " + dirString(u));
        }
    }

    double t;
    if (params.cutMethod == CutMethod::Quadrature) {
        std::uintmax_t iters = 200;
        auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                   boost::math::tools::eps_tolerance<double>(28), iters);
        t = 0.5 * (r.first + r.second);
        double cv = cut(t);
        // Plain bisection fallback if the bracket solver stopped short of the volume tolerance.
        double a = r.first, b = r.second;
        for (int it = 0; it < 200 && std::abs(cv - delta) > params.bisectTol * delta; ++it) {
            if (cv < delta)
                a = t;
            else
                b = t;
            t = 0.5 * (a + b);
            cv = cut(t);
        }
        return CutBall{u, ballAt(t), t, cv};
    }

    double cv = 0.0;
    for (int it = 0; it < 100; ++it) {
        t = 0.5 * (lo + hi);
        cv = cut(t);
        if (std::abs(cv - delta) <= params.bisectTol * delta || hi - lo <= 1e-9 * (hi + lo))
            break;
        if (cv < delta)
            lo = t;
        else
            hi = t;
    }
    return CutBall{u, ballAt(t), t, cv};
}

FloatingBody floatingBody(const ConvexBodyOracle& K, const FloatParams& params)
{
    validate(params, K);
    const int n = K.dim();
    SphereGrid grid = sphereGrid(n - 1, params.dirResolution);
    std::vector<CutBall> cuts(grid.size());
    parallelFor(grid.size(), params.mc.substreams,
                [&](std::size_t j) { cuts[j] = exactCutBall(K, grid.nodes[j], params); });

    std::vector<Vec> centers;
    centers.reserve(cuts.size());
    Vec w = K.interiorPoint();
    bool witnessOk = true;
    for (const auto& c : cuts) {
        centers.push_back(c.ball.center);
        witnessOk = witnessOk && (w - c.ball.center).norm() <= params.R;
    }
    std::optional<Vec> witness;
    if (witnessOk)
        witness = w;
    return FloatingBody{BallPolyhedron(params.R, std::move(centers), witness), std::move(cuts), params.dirResolution};
}

CertificateReport certifyCuts(const ConvexBodyOracle& K, const FloatingBody& fb, const FloatParams& params)
{
    FloatParams fine = params;
    int cap = params.capResolution > 0 ? params.capResolution : defaultCapResolution(K.dim());
    fine.capResolution = K.dim() == 2 ? 1 : 4 * cap;
    fine.radialNodes = 4 * params.radialNodes;
    fine.mc.samples = 4 * params.mc.samples;
    CertificateReport rep;
    rep.remeasured.resize(fb.cuts.size());
    parallelFor(fb.cuts.size(), params.mc.substreams, [&](std::size_t j) {
        rep.remeasured[j] = cutVolumeAt(K, fb.cuts[j].direction, fb.cuts[j].offset, fine);
    });
    for (double v : rep.remeasured) {
        double rel = params.delta > 0.0 ? std::abs(v - params.delta) / params.delta : std::abs(v);
        rep.maxRelativeError = std::max(rep.maxRelativeError, rel);
        if (params.delta > 0.0 ? rel > params.bisectTol : v > 1e-12)
            ++rep.failures;
    }
    return rep;
}

std::uint64_t deficitSamples(const FloatParams& params)
{
    return params.delta <= 1e-4 ? 10 * params.mc.samples : params.mc.samples;
}

McEstimate volumeDeficit(const ConvexBodyOracle& K, const FloatParams& params)
{
    FloatingBody fb = floatingBody(K, params);
    return volumeDeficit(K, fb, params);
}

McEstimate volumeDeficit(const ConvexBodyOracle& K, const FloatingBody& fb, const FloatParams& params)
{
    const int n = K.dim();
    const double vol = K.volume();
    MCConfig mc = params.mc;
    mc.samples = deficitSamples(params);
    validate(mc);
    const auto* E = dynamic_cast<const Ellipsoid*>(&K);
    if (!E) {
        McEstimate v = mcVolume([&](const Vec& p) { return fb.body.contains(p); }, fb.body.boundingBox(), mc);
        return {vol - v.value, v.standardError};
    }

    // Sample the shell K \ lambda K, with lambda K inside the floating body.
    const Vec o = E->center();
    const Vec& A = E->semiaxes();
    double ratioMin = 1.0;
    for (const auto& c : fb.cuts) {
        Vec e = K.supportPoint(c.direction) - o;
        e /= e.norm();
        double rl = fb.body.contains(o) ? fb.body.radial(o, e) : 0.0;
        ratioMin = std::min(ratioMin, rl / E->radial(o, e));
    }
    double lambda = std::max(0.0, 1.0 - 2.0 * (1.0 - ratioMin));

    auto shellPoint = [&](const CounterRng& rng, std::uint64_t i, double inner, double outer) {
        Vec y = rng.unitDirection(i, n);
        double lo = std::pow(inner, n), hi = std::pow(outer, n);
        double r = std::pow(lo + rng.uniform(i, 12) * (hi - lo), 1.0 / n);
        return Vec(o + A.cwiseProduct(r * y));
    };

    for (int attempt = 0; attempt < 8 && lambda > 0.0; ++attempt) {
        double inner = std::max(0.0, 1.0 - 2.0 * (1.0 - lambda));
        CounterRng check(mc.seed ^ 0x243f6a8885a308d3ULL);
        std::uint64_t m = std::max<std::uint64_t>(mc.samples / 10, 10000);
        auto outside = countHits(m, mc.substreams, [&](std::uint64_t b, std::uint64_t e) {
            std::uint64_t h = 0;
            for (std::uint64_t i = b; i < e; ++i)
                h += fb.body.contains(shellPoint(check, i, inner, lambda)) ? 0 : 1;
            return h;
        });
        if (outside == 0)
            break;
        lambda = inner;
    }

    const double shellVol = -vol * std::expm1(n * std::log(std::max(lambda, 1e-300)));
    if (shellVol == 0.0)
        return {0.0, 0.0};
    CounterRng rng(mc.seed);
    auto hits = countHits(mc.samples, mc.substreams, [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t h = 0;
        for (std::uint64_t i = b; i < e; ++i)
            h += fb.body.contains(shellPoint(rng, i, lambda, 1.0)) ? 1 : 0;
        return h;
    });
    McEstimate inside = hitOrMiss(hits, mc.samples, shellVol);
    return {shellVol - inside.value, inside.standardError};
}

double radialVolumeDifference(const ConvexBodyOracle& K, const ConvexSet& L, const SphereGrid& grid,
                              std::optional<Vec> origin)
{
    const int n = K.dim();
    Vec o = origin ? *origin : K.interiorPoint();
    if (!L.contains(o) || L.radial(o, unitVector(n, 0)) <= 0.0)
        fail(ErrorKind::InvalidInput, "origin must lie in the interior of L");
    const double tol = 1e-9 * K.boundingRadius();
    return surfaceIntegral(
        K,
        [&](const Vec& x, const Vec& normal, const Curvatures&) {
            Vec v = x - o;
            double rk = v.norm();
            Vec e = v / rk;
            double lo = 0.0, hi = rk;
            if (L.contains(x)) {
                lo = rk;
            } else {
                while (hi - lo > tol) {
                    double mid = 0.5 * (lo + hi);
                    if (L.contains(o + mid * e))
                        lo = mid;
                    else
                        hi = mid;
                }
            }
            double rl = 0.5 * (lo + hi);
            if (lo == rk)
                rl = rk;
            double frac = -std::expm1(n * std::log(rl / rk));
            return v.dot(normal) * frac / n;
        },
        grid);
}

McEstimate covariogram(const ConvexBodyOracle& K, const Vec& x, const MCConfig& mc)
{
    validate(mc);
    Box box = K.boundingBox();
    return mcVolume([&](const Vec& p) { return K.contains(p) && K.contains(p - x); }, box, mc);
}

SupportTable convolutionBody(const ConvexBodyOracle& K, double delta, const MCConfig& mc, int dirResolution)
{
    validate(mc);
    const int n = K.dim();
    const double vol = K.volume();
    if (!(delta > 0.0))
        fail(ErrorKind::InvalidInput, "convolution body needs delta > 0");
    if (delta > vol)
        fail(ErrorKind::EmptyBody, "delta exceeds vol(K); the convolution body is empty");
    SupportTable table{sphereGrid(n - 1, dirResolution), {}};
    table.support.assign(table.grid.size(), 0.0);
    if (delta == vol)
        return table;

    Box box = K.boundingBox();
    const double cell = box.volume() / static_cast<double>(mc.samples);
    CounterRng rng(mc.seed);
    std::vector<Vec> inK;
    for (std::uint64_t i = 0; i < mc.samples; ++i) {
        Vec p = rng.pointInBox(i, box);
        if (K.contains(p))
            inK.push_back(p);
    }
    auto g = [&](const Vec& x) {
        std::uint64_t h = 0;
        for (const auto& p : inK)
            h += K.contains(p - x) ? 1 : 0;
        return cell * static_cast<double>(h);
    };
    parallelFor(table.grid.size(), mc.substreams, [&](std::size_t j) {
        const Vec& u = table.grid.nodes[j];
        double lo = 0.0, hi = K.support(u) + K.support(-u);
        if (g(Vec::Zero(n)) < delta) {
            table.support[j] = 0.0;
            return;
        }
        for (int it = 0; it < 40 && hi - lo > 1e-7 * hi; ++it) {
            double mid = 0.5 * (lo + hi);
            if (g(mid * u) >= delta)
                lo = mid;
            else
                hi = mid;
        }
        table.support[j] = 0.25 * (lo + hi);
    });
    return table;
}

double gridTolerance(int dim, int dirResolution, double R)
{
    double step = dim == 2 ? 2.0 * std::numbers::pi / dirResolution : std::numbers::pi / dirResolution;
    return R * step * step / 8.0;
}

BallPolyhedron scaledPolyhedron(const BallPolyhedron& bp, double a)
{
    std::vector<Vec> centers;
    centers.reserve(bp.size());
    for (const auto& c : bp.centers())
        centers.push_back(a * c);
    return BallPolyhedron(a * bp.radius(), std::move(centers), Vec(a * bp.witness()));
}

ScalingReport scalingCovarianceCheck(const ConvexBodyOracle& K, double a, const FloatParams& params)
{
    if (!(a > 0.0))
        fail(ErrorKind::InvalidInput, "scale factor must be positive");
    const int n = K.dim();
    auto aK = K.scaled(a);
    FloatParams left = params;
    left.R = a * params.R;
    FloatParams right = params;
    right.delta = params.delta / std::pow(a, n);

    FloatingBody fl = floatingBody(*aK, left);
    FloatingBody fr = floatingBody(K, right);
    BallPolyhedron mapped = scaledPolyhedron(fr.body, a);

    ScalingReport rep;
    rep.a = a;
    rep.hausdorff = hausdorffDistance(fl.body, mapped, sphereGrid(n - 1, params.dirResolution));
    rep.gridTolerance = gridTolerance(n, params.dirResolution, left.R);
    McEstimate dl = volumeDeficit(*aK, fl, left);
    McEstimate dr = volumeDeficit(K, fr, right);
    double an = std::pow(a, n);
    rep.volumeScaled = aK->volume() - dl.value;
    rep.volumeScaledErr = dl.standardError;
    rep.volumeMapped = an * (K.volume() - dr.value);
    rep.volumeMappedErr = an * dr.standardError;
    return rep;
}

}  // namespace rball
