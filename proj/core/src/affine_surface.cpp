#include "rball/affine_surface.hpp"
#include "rball/error.hpp"
#include "rball/surface_integral.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rball {

namespace {

void checkCoefficients(const std::vector<double>& c)
{
    if (c.empty() || c.size() > static_cast<std::size_t>(kMaxDim))
        fail(ErrorKind::InvalidInput, "coefficient count must be between 1 and 5");
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!std::isfinite(c[i]))
            fail(ErrorKind::InvalidInput, "coefficients must be finite");
        if (!(c[i] > 0.0)) {
            std::ostringstream os;
            os << "coefficient c_" << (i + 1) << " = " << c[i] << " is not positive; the integral diverges";
            fail(ErrorKind::DivergentIntegral, os.str());
        }
    }
}

double quadraticInverse(const std::vector<double>& c, const Vec& xi)
{
    double q = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        q += c[i] * xi[static_cast<int>(i)] * xi[static_cast<int>(i)];
    return std::pow(q, -0.5 * static_cast<double>(c.size()));
}

std::string dirString(const Vec& u)
{
    std::ostringstream os;
    os.precision(8);
    os << "(";
    for (int i = 0; i < u.size(); ++i)
        os << (i ? "," : "") << u[i];
    os << ")";
    return os.str();
}

double clampedGap(double gap, double kappa, const Vec& u)
{
    double scale = std::max(1.0, std::abs(kappa));
    if (std::abs(gap) <= kCurvatureClamp * scale)
        return 0.0;
    if (gap < 0.0)
        fail(ErrorKind::NotRBallConvex, "curvature below the reference at direction " + dirString(u));
    return gap;
}

}  // namespace

double sphereReciprocalQuadraticIntegral(const std::vector<double>& c)
{
    checkCoefficients(c);
    double prod = 1.0;
    for (double v : c)
        prod *= v;
    return sphereMeasure(static_cast<int>(c.size()) - 1) / std::sqrt(prod);
}

McEstimate sphereReciprocalQuadraticIntegralMC(const std::vector<double>& c, const MCConfig& mc)
{
    checkCoefficients(c);
    validate(mc);
    const int m = static_cast<int>(c.size());
    CounterRng rng(mc.seed);
    auto sum = [&](bool squared) {
        return sumChunks(mc.samples, mc.substreams, [&](std::uint64_t b, std::uint64_t e) {
            double s = 0.0;
            for (std::uint64_t i = b; i < e; ++i) {
                Vec xi = m == 1 ? Vec::Constant(1, rng.uniform(i, 0) < 0.5 ? -1.0 : 1.0) : rng.unitDirection(i, m);
                double f = quadraticInverse(c, xi);
                s += squared ? f * f : f;
            }
            return s;
        });
    };
    const double N = static_cast<double>(mc.samples);
    double mean = sum(false) / N;
    double meanSq = sum(true) / N;
    double var = std::max(0.0, meanSq - mean * mean);
    double sigma = m == 1 ? 2.0 : sphereMeasure(m - 1);
    return {sigma * mean, sigma * std::sqrt(var / N)};
}

double sphereReciprocalQuadraticIntegralGrid(const std::vector<double>& c, int resolution)
{
    checkCoefficients(c);
    SphereGrid g = sphereGrid(static_cast<int>(c.size()) - 1, resolution);
    double s = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
        s += g.weights[j] * quadraticInverse(c, g.nodes[j]);
    return s;
}

double relativeAffineSurfaceArea(const ConvexBodyOracle& K, double R, const SphereGrid& grid)
{
    if (!(R > 0.0))
        fail(ErrorKind::InvalidInput, "R must be positive");
    const int n = K.dim();
    const double invR = std::isinf(R) ? 0.0 : 1.0 / R;
    const double p = 1.0 / (n + 1);
    return surfaceIntegral(
        K,
        [&](const Vec&, const Vec& u, const Curvatures& c) {
            double prod = 1.0;
            for (double k : c.kappa)
                prod *= clampedGap(k - invR, k, u);
            return std::pow(prod, p);
        },
        grid);
}

double affineSurfaceArea(const ConvexBodyOracle& K, const SphereGrid& grid)
{
    return relativeAffineSurfaceArea(K, kInf, grid);
}

double relativeAffineSurfaceAreaL(const ConvexBodyOracle& K, const ConvexBodyOracle& L, const SphereGrid& grid)
{
    if (K.dim() != L.dim())
        fail(ErrorKind::InvalidInput, "bodies must share a dimension");
    const double p = 1.0 / (K.dim() + 1);
    return surfaceIntegral(
        K,
        [&](const Vec&, const Vec& u, const Curvatures& c) {
            Curvatures cl = L.curvatures(u);
            double prod = 1.0;
            for (std::size_t i = 0; i < c.kappa.size(); ++i)
                prod *= clampedGap(c.kappa[i] - cl.kappa[i], c.kappa[i], u);
            return std::pow(prod, p);
        },
        grid);
}

double theoremConstant(int n)
{
    double v = unitBallVolume(n - 1);
    return 0.5 * std::pow((n + 1.0) / v, 2.0 / (n + 1));
}

double isoperimetricBound(int n, double volume)
{
    return n * std::pow(unitBallVolume(n), 2.0 / (n + 1)) * std::pow(volume, (n - 1.0) / (n + 1.0));
}

std::vector<double> CapSpec::coefficients() const
{
    const int n = dim();
    std::vector<double> c(n - 1);
    for (int i = 0; i < n - 1; ++i)
        c[i] = semiaxes[n - 1] / (semiaxes[i] * semiaxes[i]) - 1.0 / R;
    return c;
}

void validate(const CapSpec& spec)
{
    const int n = spec.dim();
    if (n < 2 || n > kMaxDim)
        fail(ErrorKind::InvalidInput, "cap dimension must be between 2 and 5");
    for (int i = 0; i < n; ++i) {
        if (!(spec.semiaxes[i] > 0.0))
            fail(ErrorKind::InvalidInput, "cap semiaxes must be positive");
        if (i > 0 && spec.semiaxes[i] < spec.semiaxes[i - 1])
            fail(ErrorKind::InvalidInput, "cap semiaxes must be ascending");
    }
    if (!(spec.R >= spec.semiaxes[n - 1]))
        fail(ErrorKind::InvalidInput, "cap requires R >= a_n");
    if (!(spec.h >= 0.0) || !std::isfinite(spec.h))
        fail(ErrorKind::InvalidInput, "cap height must be non-negative");
}

CapAsymptotic ellipsoidCapVolumeAsymptotic(const CapSpec& spec, int gridResolution)
{
    validate(spec);
    const int n = spec.dim();
    std::vector<double> c = spec.coefficients();
    double pre = std::pow(2.0, 0.5 * (n + 1)) / ((n - 1.0) * (n + 1.0)) * std::pow(spec.h, 0.5 * (n + 1));
    CapAsymptotic out;
    out.value = pre * sphereReciprocalQuadraticIntegral(c);
    out.gridValue = pre * sphereReciprocalQuadraticIntegralGrid(c, gridResolution);
    return out;
}

McEstimate ellipsoidCapVolumeExact(const CapSpec& spec, const MCConfig& mc)
{
    validate(spec);
    validate(mc);
    const int n = spec.dim();
    if (spec.h == 0.0)
        return {0.0, 0.0};
    const Vec& ax = spec.semiaxes;
    const double R = spec.R, a = spec.a(), an = ax[n - 1], aw = ax[n - 2];

    auto ballLower = [&](double s) { return a - std::sqrt(std::max(0.0, R * R - s * s)); };
    auto ellLower = [&](double s) { return an * (1.0 - std::sqrt(std::max(0.0, 1.0 - s * s / (aw * aw)))); };
    // The cap projects inside the disc where the ball's lower sheet is above the flattest ellipse section.
    auto gap = [&](double s) { return ballLower(s) - ellLower(s); };
    double rStar = aw;
    if (gap(aw) < 0.0) {
        double lo = 0.0, hi = std::min(aw, std::sqrt(spec.h));
        while (gap(hi) > 0.0 && hi < aw) {
            lo = hi;
            hi = std::min(aw, 2.0 * hi);
        }
        std::uintmax_t it = 200;
        auto r = boost::math::tools::toms748_solve(gap, lo, hi, boost::math::tools::eps_tolerance<double>(50), it);
        rStar = r.second;
    }
    Box box{Vec(n), Vec(n)};
    for (int i = 0; i < n - 1; ++i) {
        double w = std::min(rStar, ax[i]);
        box.lo[i] = -w;
        box.hi[i] = w;
    }
    box.lo[n - 1] = 0.0;
    box.hi[n - 1] = std::min(2.0 * an, ballLower(rStar));

    Vec z = Vec::Zero(n);
    z[n - 1] = a;
    Vec ellCenter = Vec::Zero(n);
    ellCenter[n - 1] = an;
    auto inCap = [&](const Vec& x) {
        double q = (x - ellCenter).cwiseQuotient(ax).squaredNorm();
        return q <= 1.0 && (x - z).squaredNorm() > R * R;
    };
    return mcVolume(inCap, box, mc);
}

double pointwiseDeficitRate(const ConvexBodyOracle& K, const Vec& u, double R)
{
    const int n = K.dim();
    Curvatures c = K.curvatures(u);
    std::vector<double> gaps;
    for (double k : c.kappa)
        gaps.push_back(k - 1.0 / R);
    double I = sphereReciprocalQuadraticIntegral(gaps);
    return 0.5 * std::pow(n * n - 1.0, 2.0 / (n + 1)) * std::pow(I, -2.0 / (n + 1));
}

ValuationCheck valuationCheck2D(const ConvexBodyOracle& K, const ConvexBodyOracle& L, double R, int resolution)
{
    if (K.dim() != 2 || L.dim() != 2)
        fail(ErrorKind::InvalidInput, "arcwise valuation check is planar");
    auto dirAt = [](double th) {
        Vec u(2);
        u << std::cos(th), std::sin(th);
        return u;
    };
    auto density = [&](const ConvexBodyOracle& B, double th) {
        Vec u = dirAt(th);
        Curvatures c = B.curvatures(u);
        return std::cbrt(clampedGap(c.kappa[0] - 1.0 / R, c.kappa[0], u)) * c.areaElement;
    };

    ValuationCheck out;
    // Split the boundary of `self` by membership in `other`; returns (outside, inside) parts.
    auto split = [&](const ConvexBodyOracle& self, const ConvexBodyOracle& other) {
        Vec o = other.interiorPoint();
        auto side = [&](double th) { return other.gauge(self.supportPoint(dirAt(th)), o) - 1.0; };
        const double twoPi = 2.0 * std::numbers::pi;
        std::vector<double> cuts;
        double prev = side(0.0);
        for (int k = 1; k <= resolution; ++k) {
            double th = twoPi * k / resolution;
            double cur = side(th);
            if ((prev > 0.0) != (cur > 0.0)) {
                std::uintmax_t it = 200;
                double a = twoPi * (k - 1) / resolution;
                auto r = boost::math::tools::toms748_solve(side, a, th, prev, cur,
                                                           boost::math::tools::eps_tolerance<double>(52), it);
                cuts.push_back(0.5 * (r.first + r.second));
            }
            prev = cur;
        }
        out.crossings += static_cast<int>(cuts.size());
        std::vector<double> edges{0.0};
        edges.insert(edges.end(), cuts.begin(), cuts.end());
        edges.push_back(twoPi);
        double outside = 0.0, inside = 0.0;
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            double a = edges[i], b = edges[i + 1];
            if (b <= a)
                continue;
            double piece = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                [&](double th) { return density(self, th); }, a, b, 15, 1e-13);
            if (side(0.5 * (a + b)) > 0.0)
                outside += piece;
            else
                inside += piece;
        }
        return std::make_pair(outside, inside);
    };

    auto [kOut, kIn] = split(K, L);
    auto [lOut, lIn] = split(L, K);
    out.unionPart = kOut + lOut;
    out.intersectionPart = kIn + lIn;
    out.lhs = out.unionPart + out.intersectionPart;
    SphereGrid g = sphereGrid(1, resolution);
    out.rhs = relativeAffineSurfaceArea(K, R, g) + relativeAffineSurfaceArea(L, R, g);
    return out;
}

}  // namespace rball
