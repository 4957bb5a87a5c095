#include "rball/affine_surface.hpp"
#include "rball/error.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace rball;

namespace {

Vec v2(double x, double y) { return fromStd({x, y}); }
Vec v3(double x, double y, double z) { return fromStd({x, y, z}); }

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("sphere reciprocal quadratic integral")
{
    CHECK(sphereReciprocalQuadraticIntegral({1, 1}) == doctest::Approx(2 * pi).epsilon(1e-14));
    CHECK(sphereReciprocalQuadraticIntegral({1, 4, 9}) == doctest::Approx(2 * pi / 3).epsilon(1e-14));
    CHECK(sphereReciprocalQuadraticIntegral({4, 1}) == doctest::Approx(pi).epsilon(1e-14));
    McEstimate mc = sphereReciprocalQuadraticIntegralMC({4, 1}, MCConfig{1000000, 42, 1});
    CHECK(std::abs(mc.value / pi - 1) < 0.01);
    CHECK(sphereReciprocalQuadraticIntegralGrid({4, 1}, 256) == doctest::Approx(pi).epsilon(1e-10));
    CHECK(sphereReciprocalQuadraticIntegralGrid({1, 4, 9}, 64) == doctest::Approx(2 * pi / 3).epsilon(1e-6));
    CHECK(sphereReciprocalQuadraticIntegral({2, 3, 5, 7}) ==
          doctest::Approx(19.739208802178717 / std::sqrt(210.0)).epsilon(1e-13));
}

TEST_CASE("sphere integral diverges for a non-positive coefficient")
{
    try {
        sphereReciprocalQuadraticIntegral({1, 0});
        FAIL("expected divergence");
    } catch (const Error& e) {
        CHECK((e.kind() == ErrorKind::DivergentIntegral));
    }
    CHECK_THROWS_AS(sphereReciprocalQuadraticIntegralMC({1, -1}, MCConfig{}), Error);
}

TEST_CASE("relative affine surface area of balls")
{
    SphereGrid c = sphereGrid(1, 256);
    SphereGrid s = sphereGrid(2, 32);
    CHECK(relativeAffineSurfaceArea(makeEllipsoid(v2(2, 2)), 2.0, c) == 0.0);
    CHECK(relativeAffineSurfaceArea(makeEllipsoid(v3(3, 3, 3)), 3.0, s) == 0.0);
    CHECK(relativeAffineSurfaceArea(makeEllipsoid(v2(1, 1)), 2.0, c) ==
          doctest::Approx(4.9869674831640051).epsilon(1e-12));
    CHECK(relativeAffineSurfaceArea(makeEllipsoid(v3(1, 1, 1)), 2.0, s) ==
          doctest::Approx(8.8857658763167325).epsilon(1e-10));
    // n vol(B^n) rho^{n-1} (1/rho - 1/R)^{(n-1)/(n+1)}
    double rho = 0.7, R = 1.9;
    CHECK(relativeAffineSurfaceArea(makeEllipsoid(v3(rho, rho, rho)), R, s) ==
          doctest::Approx(4 * pi * rho * rho * std::pow(1 / rho - 1 / R, 0.5)).epsilon(1e-10));
}

TEST_CASE("large R recovers the classical affine surface area")
{
    Ellipsoid e = makeEllipsoid(v2(2, 1));
    SphereGrid grid = sphereGrid(1, 4096);
    double big = relativeAffineSurfaceArea(e, 1e6, grid);
    CHECK(big == doctest::Approx(7.9163118549847395).epsilon(1e-10));
    CHECK(std::abs(big / 7.9163174289057457 - 1) < 1e-4);
    CHECK(affineSurfaceArea(e, grid) == doctest::Approx(7.9163174289057457).epsilon(1e-10));
    CHECK(relativeAffineSurfaceArea(e, kInf, grid) == doctest::Approx(7.9163174289057457).epsilon(1e-10));
}

TEST_CASE("not R-ball convex is reported")
{
    try {
        relativeAffineSurfaceArea(makeEllipsoid(v2(2, 1)), 3.0, sphereGrid(1, 64));
        FAIL("expected an error");
    } catch (const Error& err) {
        CHECK((err.kind() == ErrorKind::NotRBallConvex));
        CHECK(std::string(err.what()).find("direction") != std::string::npos);
    }
    // Tangency at the flat vertex of ellipse (2,1) with R = 4 is clamped, not an error.
    CHECK(relativeAffineSurfaceArea(makeEllipsoid(v2(2, 1)), 4.0, sphereGrid(1, 64)) > 0.0);
}

TEST_CASE("relative affine surface area against a body L")
{
    SphereGrid s = sphereGrid(2, 32);
    Ellipsoid K = makeEllipsoid(v3(1.0, 1.2, 1.4));
    Ellipsoid RB = makeEllipsoid(v3(3, 3, 3));
    CHECK(relativeAffineSurfaceAreaL(K, RB, s) == doctest::Approx(relativeAffineSurfaceArea(K, 3.0, s)).epsilon(1e-10));
    CHECK(relativeAffineSurfaceAreaL(K, K, s) == 0.0);
    CHECK(relativeAffineSurfaceAreaL(makeEllipsoid(v3(1, 1, 1)), makeEllipsoid(v3(2, 2, 2)), s) ==
          doctest::Approx(8.8857658763167325).epsilon(1e-10));
    CHECK_THROWS_AS(relativeAffineSurfaceAreaL(makeEllipsoid(v3(2, 2, 2)), makeEllipsoid(v3(1, 1, 1)), s), Error);
}

TEST_CASE("homogeneity and monotonicity in R")
{
    SphereGrid c = sphereGrid(1, 2048);
    Ellipsoid e = makeEllipsoid(v2(1.2, 1));
    double base = relativeAffineSurfaceArea(e, 3.0, c);
    for (double a : {0.5, 2.0, 3.0}) {
        auto scaled = e.scaled(a);
        double v = relativeAffineSurfaceArea(*scaled, 3.0 * a, c);
        CHECK(std::abs(v / (std::pow(a, 2.0 / 3.0) * base) - 1) < 1e-8);
    }
    SphereGrid s = sphereGrid(2, 32);
    Ellipsoid e3 = makeEllipsoid(v3(1, 1.1, 1.25));
    double base3 = relativeAffineSurfaceArea(e3, 3.0, s);
    auto scaled3 = e3.scaled(2.0);
    CHECK(std::abs(relativeAffineSurfaceArea(*scaled3, 6.0, s) / (std::pow(2.0, 1.5) * base3) - 1) < 1e-8);

    double prev = 0.0;
    for (double R : {3.0, 4.0, 8.0, 100.0, kInf}) {
        double v = relativeAffineSurfaceArea(e, R, c);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("isoperimetric bound")
{
    CounterRng rng(5);
    SphereGrid s = sphereGrid(2, 24);
    for (std::uint64_t i = 0; i < 20; ++i) {
        Vec a = v3(0.6 + rng.uniform(i, 0), 0.6 + rng.uniform(i, 1), 0.6 + rng.uniform(i, 2));
        Ellipsoid e = makeEllipsoid(a);
        double R = 1.05 * a.maxCoeff() * a.maxCoeff() / a.minCoeff();
        CHECK(relativeAffineSurfaceArea(e, R, s) < isoperimetricBound(3, e.volume()));
    }
    // Equality for ellipsoids when R is infinite.
    Ellipsoid e = makeEllipsoid(v2(2, 1));
    CHECK(affineSurfaceArea(e, sphereGrid(1, 4096)) == doctest::Approx(isoperimetricBound(2, e.volume())).epsilon(1e-9));
}

TEST_CASE("limit constant c_n")
{
    CHECK(theoremConstant(2) == doctest::Approx(0.65518534855222415).epsilon(1e-14));
    CHECK(theoremConstant(3) == doctest::Approx(0.56418958354775629).epsilon(1e-14));
}

TEST_CASE("cap asymptotics")
{
    CapSpec disk{v2(1, 1), 2.0, 1e-3};
    CapAsymptotic a = ellipsoidCapVolumeAsymptotic(disk);
    double closed2 = std::pow(2.0, 1.5) / 3 * std::pow(1e-3, 1.5) * 2 / std::sqrt(0.5);
    CHECK(a.value == doctest::Approx(closed2).epsilon(1e-12));
    CHECK(a.gridValue == doctest::Approx(closed2).epsilon(1e-12));

    CapSpec ball{v3(0.8, 0.8, 0.8), 2.0, 1e-2};
    double closed3 = pi * 1e-4 / (1 / 0.8 - 0.5);
    CHECK(ellipsoidCapVolumeAsymptotic(ball).value == doctest::Approx(closed3).epsilon(1e-12));
    CHECK(ellipsoidCapVolumeAsymptotic(ball).gridValue == doctest::Approx(closed3).epsilon(1e-8));

    CapSpec twice = ball;
    twice.h *= 2;
    CHECK(ellipsoidCapVolumeAsymptotic(twice).value / ellipsoidCapVolumeAsymptotic(ball).value ==
          doctest::Approx(4.0).epsilon(1e-12));

    CapSpec flat{v2(1, 2), 2.0, 1e-3};  // a_2/a_1^2 - 1/R = 1.5; coefficient check only
    CHECK(flat.coefficients()[0] == doctest::Approx(1.5));
    CHECK_THROWS_AS(validate(CapSpec{v2(2, 1), 2.0, 1e-3}), Error);
    CHECK_THROWS_AS(validate(CapSpec{v2(1, 1), 0.5, 1e-3}), Error);
}

TEST_CASE("exact cap volume")
{
    CapSpec zero{v2(1, 1), 2.0, 0.0};
    CHECK(ellipsoidCapVolumeExact(zero, MCConfig{1000, 1, 1}).value == 0.0);

    CapSpec disk{v2(1, 1), 2.0, 1e-3};
    McEstimate ex = ellipsoidCapVolumeExact(disk, MCConfig{1000000, 42, 1});
    double ratio = ex.value / ellipsoidCapVolumeAsymptotic(disk).value;
    CHECK(ratio >= 0.98);
    CHECK(ratio <= 1.02);
    CHECK(std::abs(ratio - 0.999475317828) < 4 * ex.standardError / ellipsoidCapVolumeAsymptotic(disk).value);

    CapSpec e3{v3(1, 1.5, 2), 5.0, 1e-3};
    McEstimate ex3 = ellipsoidCapVolumeExact(e3, MCConfig{1000000, 42, 1});
    double ratio3 = ex3.value / ellipsoidCapVolumeAsymptotic(e3).value;
    CHECK(ratio3 >= 0.97);
    CHECK(ratio3 <= 1.03);
}

TEST_CASE("pointwise deficit rate")
{
    Ellipsoid disk = makeEllipsoid(v2(1, 1));
    CHECK(pointwiseDeficitRate(disk, v2(0, 1), 2.0) == doctest::Approx(0.52002095576297603).epsilon(1e-13));
    double rho = 1.5, R = 4.0;
    double closed = 0.5 * std::pow(3.0, 2.0 / 3.0) * std::pow(2 / std::sqrt(1 / rho - 1 / R), -2.0 / 3.0);
    CHECK(pointwiseDeficitRate(makeEllipsoid(v2(rho, rho)), v2(1, 0), R) == doctest::Approx(closed).epsilon(1e-13));
    // Curvature gap scaling in 3D: rate ∝ gap^{(n-1)/(n+1)}.
    double r1 = pointwiseDeficitRate(makeEllipsoid(v3(1, 1, 1)), v3(0, 0, 1), 2.0);    // gap 1/2
    double r2 = pointwiseDeficitRate(makeEllipsoid(v3(0.5, 0.5, 0.5)), v3(0, 0, 1), 2.0 / 3.0);  // gap 1/2
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-13));
    double r3 = pointwiseDeficitRate(makeEllipsoid(v3(0.4, 0.4, 0.4)), v3(0, 0, 1), 2.0);  // gap 2
    CHECK(r3 / r1 == doctest::Approx(std::pow(4.0, 0.5)).epsilon(1e-13));
    CHECK_THROWS_AS(pointwiseDeficitRate(disk, v2(0, 1), 1.0), Error);
}

TEST_CASE("valuation identity on two overlapping disks")
{
    Ellipsoid K = ballBody(v2(0, 0), 1.0);
    Ellipsoid L = ballBody(v2(0.3, 0.1), 1.0);
    ValuationCheck v = valuationCheck2D(K, L, 2.0);
    CHECK(v.crossings == 4);  // two corners, seen from each boundary
    CHECK(std::abs(v.lhs - v.rhs) <= 1e-4 * v.rhs);
    CHECK(v.rhs == doctest::Approx(2 * 4.9869674831640051).epsilon(1e-10));
}
