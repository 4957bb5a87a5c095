#include "rball/ball_hull.hpp"
#include "rball/error.hpp"
#include "rball/floating_body.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace rball;

namespace {

Vec v2(double x, double y) { return fromStd({x, y}); }
Vec v3(double x, double y, double z) { return fromStd({x, y, z}); }

constexpr double kLens = 1.2283696986087568;  // two unit disks at distance 1
constexpr double kLensComplement = 1.9132229549810364;

FloatParams diskParams(double delta, int res = 256)
{
    FloatParams p;
    p.R = 2.0;
    p.delta = delta;
    p.dirResolution = res;
    p.mc = MCConfig{1000000, 42, 1};
    return p;
}

}  // namespace

TEST_CASE("cross-variogram of two unit disks")
{
    Ellipsoid disk = makeEllipsoid(v2(1, 1));
    Ball unit = makeBall(v2(0, 0), 1.0);
    MCConfig mc{1000000, 42, 1};
    McEstimate at0 = crossVariogram(disk, unit, v2(0, 0), mc);
    CHECK(std::abs(at0.value - std::numbers::pi) <= 3 * at0.standardError);
    McEstimate tangent = crossVariogram(disk, unit, v2(2, 0), mc);
    CHECK(tangent.value == 0.0);
    McEstimate far = crossVariogram(disk, unit, v2(5, 0), mc);
    CHECK(far.value == 0.0);
    CHECK(far.standardError == 0.0);
    McEstimate lens = crossVariogram(disk, unit, v2(1, 0), mc);
    CHECK(std::abs(lens.value - kLens) <= 3 * lens.standardError);
}

TEST_CASE("cut volumes")
{
    Ellipsoid disk = makeEllipsoid(v2(1, 1));
    MCConfig mc{1000000, 42, 1};
    CHECK(cutVolume(disk, makeBall(v2(0, 0), 2.0), mc).value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cutVolume(disk, makeBall(v2(3, 0), 1.0), mc).value == doctest::Approx(std::numbers::pi));
    McEstimate c = cutVolume(disk, makeBall(v2(1, 0), 1.0), mc);
    CHECK(std::abs(c.value - kLensComplement) <= 3 * c.standardError);

    // Deterministic polar quadrature about the ball center.
    double q = cutVolumeQuadrature(disk, makeBall(v2(1, 0), 1.0), v2(-1, 0), 1, 32);
    CHECK(q == doctest::Approx(kLensComplement).epsilon(1e-9));
    Ellipsoid ball = makeEllipsoid(v3(1, 1, 1));
    // Unit ball minus B((1,0,0),1): 4π/3 - 5π/12.
    double q3 = cutVolumeQuadrature(ball, makeBall(v3(1, 0, 0), 1.0), v3(-1, 0, 0), 16, 32);
    CHECK(q3 == doctest::Approx(4 * std::numbers::pi / 3 - 5 * std::numbers::pi / 12).epsilon(1e-9));
}

TEST_CASE("exact cut offsets for the disk match the lens equation")
{
    Ellipsoid disk = makeEllipsoid(v2(1, 1));
    const double deltas[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    const double offsets[] = {0.024342052849942251, 0.005209683285931776, 0.0011207905914654453,
                              0.00024139273825882013, 5.2003042061518106e-5};
    for (int i = 0; i < 5; ++i) {
        FloatParams p = diskParams(deltas[i]);
        for (double ang : {0.0, 1.0, 2.5}) {
            CutBall cb = exactCutBall(disk, v2(std::cos(ang), std::sin(ang)), p);
            CHECK(std::abs(cb.offset - offsets[i]) <= 1e-4 * offsets[i]);
            CHECK(std::abs(cb.cutVolume - deltas[i]) <= p.bisectTol * deltas[i]);
            CHECK(cb.ball.radius == 2.0);
        }
    }
    // Tiny delta: the ball is almost internally tangent.
    CutBall tiny = exactCutBall(disk, v2(0, 1), diskParams(1e-12));
    CHECK(tiny.offset < 1e-6);
}

TEST_CASE("exact cut offsets for the 3-ball")
{
    Ellipsoid ball = makeEllipsoid(v3(1, 1, 1));
    const double deltas[] = {1e-2, 1e-3, 1e-4};
    const double offsets[] = {0.040841407037400802, 0.01270908629662254, 0.0039987251870610568};
    for (int i = 0; i < 3; ++i) {
        FloatParams p = diskParams(deltas[i]);
        CutBall cb = exactCutBall(ball, v3(0.6, 0, 0.8), p);
        CHECK(std::abs(cb.offset - offsets[i]) <= 1e-4 * offsets[i]);
    }
}

TEST_CASE("ellipse offsets depend on the contact curvature")
{
    Ellipsoid e = makeEllipsoid(v2(2, 1));
    FloatParams p = diskParams(0.01);
    p.R = 4.0;
    CutBall flat = exactCutBall(e, v2(0, 1), p);
    CutBall sharp = exactCutBall(e, v2(1, 0), p);
    CHECK(flat.offset < sharp.offset);
    CHECK(std::abs(flat.offset - 0.00631528228824263) <= 1e-4 * 0.00631528228824263);
    CHECK(std::abs(sharp.offset - 0.0367349418556171) <= 1e-4 * 0.0367349418556171);
}

TEST_CASE("Monte Carlo cuts agree with quadrature cuts")
{
    Ellipsoid disk = makeEllipsoid(v2(1, 1));
    FloatParams p = diskParams(0.01);
    p.cutMethod = CutMethod::MonteCarlo;
    p.mc.samples = 4000000;
    const double t = 0.024342052849942251;
    Ball ball = makeBall(v2(0, 1) * (1.0 - 2.0 - t), 2.0);
    McEstimate c = cutVolume(disk, ball, p.mc);
    CHECK(std::abs(c.value - 0.01) <= 3 * c.standardError);
    // A hit-or-miss cut volume carries several percent relative noise at this delta; t follows it.
    CutBall cb = exactCutBall(disk, v2(0, 1), p);
    CHECK(std::abs(cb.offset - t) < 0.25 * t);
}

TEST_CASE("cut errors")
{
    Ellipsoid disk = makeEllipsoid(v2(1, 1));
    CHECK_THROWS_AS(exactCutBall(disk, v2(0, 1), diskParams(2.0)), Error);
    FloatParams bad = diskParams(0.01);
    bad.bisectTol = 1e-3;
    CHECK_THROWS_AS(floatingBody(disk, bad), Error);
    bad = diskParams(0.01, 4);
    CHECK_THROWS_AS(floatingBody(disk, bad), Error);
}

TEST_CASE("floating body of the disk is a concentric disk")
{
    Ellipsoid disk = makeEllipsoid(v2(1, 1));
    FloatingBody fb = floatingBody(disk, diskParams(0.01));
    const double rho = 1.0 - 0.024342052849942251;
    SphereGrid probe = sphereGrid(1, 64);
    Vec mean = Vec::Zero(2);
    for (const Vec& u : probe.nodes) {
        CHECK(std::abs(fb.body.support(u) - rho) < 1e-3);
        mean += fb.body.supportPoint(u) / double(probe.size());
    }
    CHECK(mean.norm() < 1e-3);

    CertificateReport cert = certifyCuts(disk, fb, diskParams(0.01));
    CHECK(cert.failures == 0);
    CHECK(cert.maxRelativeError <= 1e-4);
    CHECK(cert.remeasured.size() == fb.cuts.size());
}

TEST_CASE("floating body at delta zero is the body")
{
    Ellipsoid disk = makeEllipsoid(v2(1, 1));
    FloatingBody fb = floatingBody(disk, diskParams(0.0));
    CHECK(hausdorffDistance(disk, fb.body, sphereGrid(1, 512)) <= gridTolerance(2, 256, 2.0) + 1e-12);
    McEstimate d = volumeDeficit(disk, fb, diskParams(0.0));
    CHECK(std::abs(d.value) <= 3 * d.standardError + 2 * std::numbers::pi * gridTolerance(2, 256, 2.0));
}

TEST_CASE("floating bodies are nested and the deficit is monotone")
{
    Ellipsoid e = makeEllipsoid(v2(1.2, 1));
    std::vector<FloatingBody> bodies;
    std::vector<double> deficits;
    for (double d : {1e-4, 1e-3, 1e-2}) {
        FloatParams p = diskParams(d);
        p.R = 3.0;
        p.mc.samples = 200000;
        bodies.push_back(floatingBody(e, p));
        deficits.push_back(volumeDeficit(e, bodies.back(), p).value);
    }
    CHECK(deficits[0] < deficits[1]);
    CHECK(deficits[1] < deficits[2]);
    CounterRng rng(8);
    Box box = e.boundingBox();
    for (std::uint64_t i = 0; i < 10000; ++i) {
        Vec x = rng.pointInBox(i, box);
        if (bodies[2].body.contains(x))
            CHECK(bodies[1].body.contains(x));
        if (bodies[1].body.contains(x))
            CHECK(bodies[0].body.contains(x));
        if (bodies[0].body.contains(x))
            CHECK(e.contains(x));
    }
}

TEST_CASE("deficit of the disk against the closed form")
{
    Ellipsoid disk = makeEllipsoid(v2(1, 1));
    FloatParams p = diskParams(1e-3, 4096);
    McEstimate d = volumeDeficit(disk, p);
    double grid = 2 * std::numbers::pi * gridTolerance(2, 4096, 2.0);
    CHECK(std::abs(d.value - 0.032648140139522439) <= 3 * d.standardError + grid);
}

TEST_CASE("radial volume difference")
{
    Ellipsoid disk = makeEllipsoid(v2(1, 1));
    SphereGrid grid = sphereGrid(1, 512);
    CHECK(std::abs(radialVolumeDifference(disk, disk, grid)) < 1e-8);
    Ellipsoid half = makeEllipsoid(v2(0.5, 0.5));
    CHECK(radialVolumeDifference(disk, half, grid) == doctest::Approx(0.75 * std::numbers::pi).epsilon(1e-6));
    Ellipsoid off = ballBody(v2(3, 0), 0.5);
    CHECK_THROWS_AS(radialVolumeDifference(disk, off, grid), Error);

    FloatParams p = diskParams(1e-3, 1024);
    FloatingBody fb = floatingBody(disk, p);
    McEstimate mc = volumeDeficit(disk, fb, p);
    double rv = radialVolumeDifference(disk, fb.body, sphereGrid(1, 4096));
    CHECK(std::abs(rv - mc.value) <= 3 * mc.standardError + 1e-6);
}

TEST_CASE("convolution body of the disk")
{
    Ellipsoid disk = makeEllipsoid(v2(1, 1));
    MCConfig mc{400000, 42, 1};
    SupportTable t = convolutionBody(disk, kLens, mc, 16);
    for (std::size_t i = 0; i < t.support.size(); ++i)
        CHECK(std::abs(t.support[i] - 0.5) < 0.01);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(std::abs(t.support[i] - t.support[i + 8]) < 0.01);

    SupportTable all = convolutionBody(disk, std::numbers::pi, mc, 8);
    for (double s : all.support)
        CHECK(s == 0.0);
    CHECK_THROWS_AS(convolutionBody(disk, 4.0, mc, 8), Error);

    McEstimate g = covariogram(disk, v2(1, 0), mc);
    CHECK(std::abs(g.value - kLens) <= 3 * g.standardError);
}

TEST_CASE("scaling covariance")
{
    Ellipsoid disk = makeEllipsoid(v2(1, 1));
    FloatParams p = diskParams(1e-3, 512);
    ScalingReport one = scalingCovarianceCheck(disk, 1.0, p);
    CHECK(one.hausdorff <= one.gridTolerance);
    ScalingReport two = scalingCovarianceCheck(disk, 2.0, p);
    CHECK(two.hausdorff <= 3 * two.gridTolerance);
    double err = std::hypot(two.volumeScaledErr, two.volumeMappedErr);
    CHECK(std::abs(two.volumeScaled - two.volumeMapped) <= 3 * err);
}

TEST_CASE("floating body construction is deterministic across threads")
{
    Ellipsoid e = makeEllipsoid(v3(1, 1.1, 1.25));
    FloatParams p = diskParams(1e-3, 8);
    p.R = 3.0;
    FloatingBody a = floatingBody(e, p);
    p.mc.substreams = 3;
    FloatingBody b = floatingBody(e, p);
    REQUIRE(a.cuts.size() == b.cuts.size());
    for (std::size_t i = 0; i < a.cuts.size(); ++i)
        CHECK(a.cuts[i].offset == b.cuts[i].offset);
}
