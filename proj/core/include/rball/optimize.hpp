#pragma once

#include <functional>
#include <vector>

namespace rball {

struct MinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Derivative-free simplex minimisation (GSL nmsimplex2).
MinimizeResult nelderMead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, double step, double sizeTol = 1e-10, int maxIter = 2000);

// Minimise a 1D function on [a, b] (Brent).
std::pair<double, double> brentMinimize(const std::function<double(double)>& f, double a, double b, int bits = 40);

}  // namespace rball
