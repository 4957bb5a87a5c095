#pragma once

#include <stdexcept>
#include <string>

namespace rball {

enum class ErrorKind {
    InvalidInput,
    NumericDomain,
    HullInfeasible,
    InfeasibleCut,
    NotRBallConvex,
    DivergentIntegral,
    Precondition,
    EmptyBody,
    Io,
};

const char* toString(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace rball
