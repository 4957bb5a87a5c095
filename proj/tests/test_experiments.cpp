#include "rball/affine_surface.hpp"
#include "rball/body_spec.hpp"
#include "rball/error.hpp"
#include "rball/experiments.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rball;

namespace {

Vec v2(double x, double y) { return fromStd({x, y}); }

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ErrorKind kindOf(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidInput;
}

RatioSeries fourRows()
{
    RatioSeries s;
    s.bodyId = "test";
    s.predicted = 3.25;
    s.resolution = 64;
    s.seed = 7;
    for (double d : {1e-3, 1e-4, 1e-5, 1e-6})
        s.rows.push_back(RatioRow{d, 3 * std::pow(d, 2.0 / 3.0), 1e-7, 3.0, 1e-3, 1000});
    return s;
}

}  // namespace

TEST_CASE("body specs")
{
    BodySpec ball = parseBodySpec(R"({"type":"ball","center":[1,2],"radius":0.5})");
    const ConvexBodyOracle& b = asOracle(ball);
    CHECK(b.dim() == 2);
    CHECK(b.support(v2(1, 0)) == doctest::Approx(1.5));

    BodySpec ell = parseBodySpec(R"({"type":"ellipsoid","semiaxes":[2,1,1]})");
    CHECK(asOracle(ell).dim() == 3);
    CHECK(asOracle(ell).volume() == doctest::Approx(8 * std::numbers::pi / 3));

    BodySpec bp = parseBodySpec(R"({"type":"ball-polyhedron","radius":1,"centers":[[0,0],[1,0]]})");
    CHECK(asConvexSet(bp).contains(v2(0.5, 0.5)));
    CHECK_FALSE(asConvexSet(bp).contains(v2(0.5, 0.9)));
    CHECK((kindOf([&] { asOracle(bp); }) == ErrorKind::InvalidInput));

    auto& poly = std::get<BallPolyhedron>(bp);
    BodySpec again = parseBodySpec(ballPolyhedronJson(poly));
    CHECK(std::get<BallPolyhedron>(again).centers().size() == 2);
}

TEST_CASE("invalid body specs")
{
    for (const char* bad : {
             R"({"type":"ball","center":[0,0],"radius":0})",
             R"({"type":"ellipsoid","semiaxes":[1,-1]})",
             R"({"type":"ball-polyhedron","radius":1,"centers":[]})",
             R"({"type":"ball-polyhedron","radius":1,"centers":[[0,0],[3,0]]})",
             R"({"type":"cube"})",
             R"({"type":"ball","center":[0],"radius":1})",
             R"({not json)",
         })
        CHECK((kindOf([&] { parseBodySpec(bad); }) == ErrorKind::InvalidInput));
    CHECK((kindOf([] { loadBodySpec("/no/such/body.json"); }) == ErrorKind::Io));
}

TEST_CASE("weighted linear fit")
{
    LinearFit f = weightedLinearFit({0, 1, 2, 3}, {1, 3, 5, 7}, {1, 1, 1, 1});
    CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.chi2 == doctest::Approx(0.0).epsilon(1e-12));
    LinearFit w = weightedLinearFit({0, 1, 2}, {1, 3, 100}, {1, 1, 1e6});
    CHECK(w.intercept == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("series CSV")
{
    RatioSeries s = fourRows();
    std::string csv = seriesCsv(s);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(csv.rfind("delta,deficit,stderr,ratio,predicted,resolution,samples,seed\n", 0) == 0);
    CHECK(seriesCsv(s) == csv);

    auto dir = std::filesystem::temp_directory_path() / "rball_emit_test";
    std::filesystem::create_directories(dir);
    std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
    emitReport(s, a);
    emitReport(s, b);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == csv);
    std::filesystem::remove_all(dir);
}

TEST_CASE("emit into a missing directory names the directory")
{
    try {
        emitReport(fourRows(), "/definitely/not/here/out.csv");
        FAIL("expected an io error");
    } catch (const Error& e) {
        CHECK((e.kind() == ErrorKind::Io));
        CHECK(std::string(e.what()).find("/definitely/not/here") != std::string::npos);
    }
}

TEST_CASE("JSON reports")
{
    PropertyReport r;
    r.seed = 3;
    r.checks.push_back(CheckResult{"x", true, 0.1, 0.2, "fine"});
    std::string j = reportJson(r);
    CHECK(j.find("\"x\"") != std::string::npos);
    CHECK(reportJson(r) == j);
    CHECK(seriesJson(fourRows()).find("\"rows\"") != std::string::npos);
}

TEST_CASE("verifyLimit preconditions")
{
    Ellipsoid disk = makeEllipsoid(v2(1, 1));
    FloatParams p;
    p.dirResolution = 64;
    CHECK((kindOf([&] { verifyLimit(disk, 1.0, {1e-3}, p); }) == ErrorKind::Precondition));
    CHECK((kindOf([&] { verifyLimit(disk, 1.0005, {1e-3}, p); }) == ErrorKind::Precondition));
    CHECK((kindOf([&] { verifyLimit(disk, 2.0, {1e-4, 1e-3}, p); }) == ErrorKind::InvalidInput));
    CHECK((kindOf([&] { verifyLimit(disk, 2.0, {}, p); }) == ErrorKind::InvalidInput));
}

TEST_CASE("verifyLimit on a short ladder")
{
    Ellipsoid disk = makeEllipsoid(v2(1, 1));
    FloatParams p;
    p.dirResolution = 512;
    p.mc.samples = 200000;
    RatioSeries s = verifyLimit(disk, 2.0, {1e-2, 1e-3}, p);
    REQUIRE(s.rows.size() == 2);
    CHECK(s.predicted == doctest::Approx(3.2673880286754167).epsilon(1e-10));
    for (const auto& r : s.rows) {
        CHECK(r.ratio > 0.0);
        CHECK(r.ratio < 10 * s.predicted);
    }
    CHECK(std::abs(s.rows[1].ratio / s.predicted - 1) < 0.05);

    p.mc.substreams = 2;
    CHECK(seriesCsv(verifyLimit(disk, 2.0, {1e-2, 1e-3}, p)) == seriesCsv(s));

    LimitOptions tampered;
    tampered.constantScale = 1.01;
    CHECK(verifyLimit(disk, 2.0, {1e-2}, p, tampered).predicted == doctest::Approx(1.01 * s.predicted).epsilon(1e-12));
}

TEST_CASE("empty battery runs nothing")
{
    PropertyReport r = runPropertySuite(42, {});
    CHECK(r.checks.empty());
    CHECK(r.exitCode() == 5);
}
