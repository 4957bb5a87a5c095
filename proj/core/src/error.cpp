#include "rball/error.hpp"

namespace rball {

const char* toString(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::NumericDomain: return "numeric-domain";
    case ErrorKind::HullInfeasible: return "hull-infeasible";
    case ErrorKind::InfeasibleCut: return "infeasible-cut";
    case ErrorKind::NotRBallConvex: return "not-r-ball-convex";
    case ErrorKind::DivergentIntegral: return "divergent-integral";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::EmptyBody: return "empty-body";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(toString(kind)) + ": " + what), kind_(kind)
{
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace rball
