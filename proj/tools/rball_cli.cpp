#include "rball/affine_surface.hpp"
#include "rball/ball_hull.hpp"
#include "rball/body_spec.hpp"
#include "rball/error.hpp"
#include "rball/experiments.hpp"
#include "rball/floating_body.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace rball;

namespace {

enum Exit { kOk = 0, kInvalid = 2, kPrecondition = 3, kCheckFailed = 4, kNothingRun = 5 };

int exitFor(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Precondition:
    case ErrorKind::NotRBallConvex:
    case ErrorKind::HullInfeasible:
        return kPrecondition;
    case ErrorKind::NumericDomain:
        return kCheckFailed;
    default:
        return kInvalid;
    }
}

struct Globals {
    std::uint64_t seed = 42;
    std::uint64_t samples = 1000000;
    int resolution = 0;
    int threads = 1;
    std::string out;
    std::string format = "csv";
};

std::vector<double> parseList(const std::string& text, const char* what)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            fail(ErrorKind::InvalidInput, std::string("cannot parse ") + what + ": '" + item + "'");
        }
    }
    if (v.empty())
        fail(ErrorKind::InvalidInput, std::string("empty ") + what);
    return v;
}

void emit(const Globals& g, const std::string& text)
{
    if (g.out.empty())
        std::cout << text;
    else
        writeText(g.out, text);
}

std::string num(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

int defaultRes(int n, int twoD, int higher, const Globals& g)
{
    return g.resolution > 0 ? g.resolution : (n == 2 ? twoD : higher);
}

MCConfig mcFrom(const Globals& g)
{
    return MCConfig{g.samples, g.seed, g.threads};
}

void requireRBallConvex(const ConvexBodyOracle& K, double R)
{
    if (!isRBallConvex(K, R, 1e-9))
        fail(ErrorKind::Precondition, "body is not R-ball convex for R = " + num(R));
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"R-ball convexity, floating bodies and relative affine surface area"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--samples", g.samples, "Monte Carlo samples per estimate");
    app.add_option("--resolution", g.resolution, "direction grid resolution");
    app.add_option("--threads", g.threads, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "output file (stdout if omitted)");
    app.add_option("--format", g.format, "series format")->check(CLI::IsMember({"csv", "json"}));

    std::string bodyPath;
    double radius = 0.0;
    double delta = 0.0;

    auto* hull = app.add_subcommand("hull", "R-ball hull of a body as a ball polyhedron");
    hull->add_option("--body", bodyPath, "body spec JSON")->required();
    hull->add_option("--radius", radius, "R")->required();

    auto* flt = app.add_subcommand("float", "R-ball floating body");
    flt->add_option("--body", bodyPath)->required();
    flt->add_option("--radius", radius)->required();
    flt->add_option("--delta", delta)->required();
    bool mcCuts = false;
    flt->add_flag("--mc-cuts", mcCuts, "measure cuts by Monte Carlo instead of quadrature");

    auto* asa = app.add_subcommand("asa", "relative affine surface area");
    asa->add_option("--body", bodyPath)->required();
    std::string radiusText = "inf";
    asa->add_option("--radius", radiusText, "R, or inf for the classical value");

    auto* cov = app.add_subcommand("covariogram", "vol(K ∩ (x + C)) for a ball C");
    std::string ballText, atText;
    cov->add_option("--body", bodyPath)->required();
    cov->add_option("--ball", ballText, "center coordinates then radius, comma separated")->required();
    cov->add_option("--at", atText, "translation x,y[,z]")->required();

    auto* sph = app.add_subcommand("sphere-integral", "integral of the reciprocal quadratic form over the sphere");
    std::string coeffText;
    std::uint64_t mcSamples = 0;
    sph->add_option("--coeffs", coeffText)->required();
    sph->add_option("--mc", mcSamples, "also estimate by Monte Carlo with N samples");

    auto* cap = app.add_subcommand("cap", "ellipsoid cap volume, asymptotic against exact");
    cap->set_help_flag("--help", "Print this help message and exit");
    std::string semiText;
    double capR = 0.0, capH = 0.0;
    cap->add_option("--semiaxes", semiText)->required();
    cap->add_option("--R", capR)->required();
    cap->add_option("--h", capH)->required();
    cap->add_option("--mc", mcSamples);

    auto* ver = app.add_subcommand("verify-limit", "deficit ratio series against the predicted limit");
    std::string deltaText = "1e-3,1e-4,1e-5,1e-6";
    ver->add_option("--body", bodyPath)->required();
    ver->add_option("--radius", radius)->required();
    ver->add_option("--deltas", deltaText, "descending delta ladder");

    auto* props = app.add_subcommand("props", "property suite on the default battery");
    double tamper = 1.0;
    bool emptyBattery = false;
    props->add_option("--tamper-constant", tamper, "multiply the limit constant (fault injection)");
    props->add_flag("--empty-battery", emptyBattery, "run with no bodies");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*hull) {
            BodySpec spec = loadBodySpec(bodyPath);
            const ConvexSet& K = asConvexSet(spec);
            int n = K.dim();
            BallPolyhedron bp = rBallHull(K, radius, sphereGrid(n - 1, defaultRes(n, 256, 16, g)));
            emit(g, ballPolyhedronJson(bp) + "\n");
        } else if (*flt) {
            BodySpec spec = loadBodySpec(bodyPath);
            const ConvexBodyOracle& K = asOracle(spec);
            int n = K.dim();
            requireRBallConvex(K, radius);
            FloatParams p;
            p.R = radius;
            p.delta = delta;
            p.dirResolution = defaultRes(n, 256, 16, g);
            p.mc = mcFrom(g);
            p.cutMethod = mcCuts ? CutMethod::MonteCarlo : CutMethod::Quadrature;
            FloatingBody fb = floatingBody(K, p);
            auto j = nlohmann::ordered_json::parse(ballPolyhedronJson(fb.body));
            j["delta"] = delta;
            auto cert = nlohmann::ordered_json::array();
            for (const auto& c : fb.cuts)
                cert.push_back({{"direction", toStd(c.direction)}, {"offset", c.offset}, {"cut_volume", c.cutVolume}});
            j["certificate"] = cert;
            emit(g, j.dump(2) + "\n");
        } else if (*asa) {
            BodySpec spec = loadBodySpec(bodyPath);
            const ConvexBodyOracle& K = asOracle(spec);
            int n = K.dim();
            double R = radiusText == "inf" ? kInf : parseList(radiusText, "radius").at(0);
            int m = defaultRes(n, 4096, 256, g);
            std::ostringstream os;
            double value = relativeAffineSurfaceArea(K, R, sphereGrid(n - 1, m));
            os << "as^R = " << num(value) << "\n";
            os << "resolution,nodes,value\n";
            for (int r = 8; r <= m; r *= 2) {
                SphereGrid grid = sphereGrid(n - 1, r);
                os << r << "," << grid.size() << "," << num(relativeAffineSurfaceArea(K, R, grid)) << "\n";
            }
            emit(g, os.str());
        } else if (*cov) {
            BodySpec spec = loadBodySpec(bodyPath);
            const ConvexBodyOracle& K = asOracle(spec);
            std::vector<double> b = parseList(ballText, "ball");
            std::vector<double> at = parseList(atText, "translation");
            if (b.size() != static_cast<std::size_t>(K.dim()) + 1)
                fail(ErrorKind::InvalidInput, "--ball needs " + std::to_string(K.dim()) + " center coordinates and a radius");
            if (at.size() != static_cast<std::size_t>(K.dim()))
                fail(ErrorKind::InvalidInput, "--at needs " + std::to_string(K.dim()) + " coordinates");
            double r = b.back();
            b.pop_back();
            McEstimate e = crossVariogram(K, makeBall(fromStd(b), r), fromStd(at), mcFrom(g));
            emit(g, num(e.value) + " " + num(e.standardError) + "\n");
        } else if (*sph) {
            std::vector<double> c = parseList(coeffText, "coefficients");
            std::ostringstream os;
            os << "closed_form " << num(sphereReciprocalQuadraticIntegral(c)) << "\n";
            if (mcSamples > 0) {
                McEstimate e = sphereReciprocalQuadraticIntegralMC(c, MCConfig{mcSamples, g.seed, g.threads});
                os << "monte_carlo " << num(e.value) << " " << num(e.standardError) << "\n";
            }
            emit(g, os.str());
        } else if (*cap) {
            CapSpec s;
            s.semiaxes = fromStd(parseList(semiText, "semiaxes"));
            s.R = capR;
            s.h = capH;
            validate(s);
            CapAsymptotic a = ellipsoidCapVolumeAsymptotic(s);
            std::uint64_t N = mcSamples > 0 ? mcSamples : g.samples;
            McEstimate ex = ellipsoidCapVolumeExact(s, MCConfig{N, g.seed, g.threads});
            std::ostringstream os;
            os << "asymptotic " << num(a.value) << "\n";
            os << "exact " << num(ex.value) << " " << num(ex.standardError) << "\n";
            os << "ratio " << (a.value > 0.0 ? num(ex.value / a.value) : std::string("nan")) << "\n";
            emit(g, os.str());
        } else if (*ver) {
            BodySpec spec = loadBodySpec(bodyPath);
            const ConvexBodyOracle& K = asOracle(spec);
            int n = K.dim();
            FloatParams p;
            p.dirResolution = defaultRes(n, 4096, 64, g);
            p.mc = mcFrom(g);
            RatioSeries s = verifyLimit(K, radius, parseList(deltaText, "deltas"), p);
            emit(g, g.format == "json" ? seriesJson(s) + "\n" : seriesCsv(s));
        } else if (*props) {
            PropertyOptions opt;
            opt.constantScale = tamper;
            opt.substreams = g.threads;
            std::vector<BatteryBody> battery = emptyBattery ? std::vector<BatteryBody>{} : defaultBattery();
            PropertyReport rep = runPropertySuite(g.seed, battery, opt);
            for (const auto& c : rep.checks)
                std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << " measured=" << num(c.measured)
                          << " tol=" << num(c.tolerance) << " " << c.detail << "\n";
            emit(g, reportJson(rep) + "\n");
            return rep.exitCode();
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exitFor(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kOk;
}
