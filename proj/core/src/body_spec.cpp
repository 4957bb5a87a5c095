#include "rball/body_spec.hpp"
#include "rball/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace rball {

namespace {

using json = nlohmann::json;

Vec readVec(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_array())
        fail(ErrorKind::InvalidInput, std::string("body spec needs array field '") + key + "'");
    std::vector<double> v;
    for (const auto& x : j[key]) {
        if (!x.is_number())
            fail(ErrorKind::InvalidInput, std::string("non-numeric entry in '") + key + "'");
        v.push_back(x.get<double>());
    }
    Vec out = fromStd(v);
    if (!out.allFinite())
        fail(ErrorKind::InvalidInput, std::string("non-finite entry in '") + key + "'");
    return out;
}

double readPositive(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_number())
        fail(ErrorKind::InvalidInput, std::string("body spec needs numeric field '") + key + "'");
    double r = j[key].get<double>();
    if (!(r > 0.0) || !std::isfinite(r))
        fail(ErrorKind::InvalidInput, std::string("'") + key + "' must be positive and finite");
    return r;
}

}  // namespace

BodySpec parseBodySpec(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::InvalidInput, std::string("body spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        fail(ErrorKind::InvalidInput, "body spec needs a string 'type'");
    const std::string type = j["type"];
    if (type == "ball") {
        Vec c = readVec(j, "center");
        if (c.size() < 2)
            fail(ErrorKind::InvalidInput, "dimension must be between 2 and 5");
        return ballBody(c, readPositive(j, "radius"));
    }
    if (type == "ellipsoid") {
        Vec a = readVec(j, "semiaxes");
        Vec c = j.contains("center") ? readVec(j, "center") : Vec(Vec::Zero(a.size()));
        return makeEllipsoid(a, c);
    }
    if (type == "ball-polyhedron") {
        double R = readPositive(j, "radius");
        if (!j.contains("centers") || !j["centers"].is_array() || j["centers"].empty())
            fail(ErrorKind::InvalidInput, "ball-polyhedron without centers is the whole space; at least one center required");
        std::vector<Vec> centers;
        for (const auto& c : j["centers"]) {
            json wrap = {{"c", c}};
            centers.push_back(readVec(wrap, "c"));
        }
        try {
            return BallPolyhedron(R, std::move(centers));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::EmptyBody)
                fail(ErrorKind::InvalidInput, "ball-polyhedron is empty");
            throw;
        }
    }
    fail(ErrorKind::InvalidInput, "unknown body type '" + type + "'");
}

BodySpec loadBodySpec(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        fail(ErrorKind::Io, "cannot read body spec: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parseBodySpec(ss.str());
}

const ConvexSet& asConvexSet(const BodySpec& spec)
{
    return std::visit([](const auto& b) -> const ConvexSet& { return b; }, spec);
}

const ConvexBodyOracle& asOracle(const BodySpec& spec)
{
    if (const auto* e = std::get_if<Ellipsoid>(&spec))
        return *e;
    fail(ErrorKind::InvalidInput, "operation needs a smooth body (ball or ellipsoid)");
}

std::string ballPolyhedronJson(const BallPolyhedron& bp)
{
    nlohmann::ordered_json j;
    j["type"] = "ball-polyhedron";
    j["radius"] = bp.radius();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : bp.centers())
        arr.push_back(toStd(c));
    j["centers"] = arr;
    j["witness"] = toStd(bp.witness());
    return j.dump(2) + "\n";
}

}  // namespace rball
