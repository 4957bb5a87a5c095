#pragma once

#include "rball/convex_body.hpp"
#include "rball/floating_body.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace rball {

struct RatioRow {
    double delta = 0.0;
    double deficit = 0.0;
    double stderr_ = 0.0;
    double ratio = 0.0;
    double ratioErr = 0.0;
    std::uint64_t samples = 0;
};

struct RatioSeries {
    std::string bodyId;
    int dim = 2;
    double R = 1.0;
    std::vector<RatioRow> rows;
    double predicted = 0.0;  // c_n as^R(K)
    double intercept = 0.0;  // fitted limit
    double interceptErr = 0.0;
    double slope = 0.0;
    double chi2 = 0.0;
    int resolution = 0;
    std::uint64_t seed = 0;
};

struct LimitOptions {
    int asaResolution = 0;          // 0: 4096 in 2D, 256 otherwise
    double curvatureMargin = 1e-3;  // min κ >= (1 + margin)/R
    double constantScale = 1.0;     // multiplies c_n (fault injection)
};

// Ratio deficit/δ^{2/(n+1)} along a descending δ-ladder, with a weighted linear fit in δ^{2/(n+1)}.
RatioSeries verifyLimit(const ConvexBodyOracle& K, double R, const std::vector<double>& deltas,
                        const FloatParams& params, const LimitOptions& opt = {});

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double interceptErr = 0.0;
    double chi2 = 0.0;
};
LinearFit weightedLinearFit(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& sigma);

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct PropertyReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool allPassed() const;
    int exitCode() const;  // 0 pass, 4 a check failed, 5 nothing ran
    const CheckResult* find(const std::string& name) const;
};

struct BatteryBody {
    std::string id;
    std::shared_ptr<ConvexBodyOracle> body;
    double R = 1.0;
};

std::vector<BatteryBody> defaultBattery();

struct PropertyOptions {
    int dirResolution2d = 512;
    int dirResolution3d = 24;
    std::uint64_t samples = 200000;
    double constantScale = 1.0;
    int substreams = 1;
};

PropertyReport runPropertySuite(std::uint64_t seed, const std::vector<BatteryBody>& battery,
                                const PropertyOptions& opt = {});

std::string seriesCsv(const RatioSeries& s);
std::string reportJson(const PropertyReport& r);
std::string seriesJson(const RatioSeries& s);
// Writes text to path; a missing parent directory raises an io error naming it.
void writeText(const std::string& path, const std::string& text);
void emitReport(const RatioSeries& s, const std::string& path);
void emitReport(const PropertyReport& r, const std::string& path);

}  // namespace rball
