#include "rball/surface_integral.hpp"
#include "rball/error.hpp"

#include <cmath>
#include <sstream>

namespace rball {

namespace {

std::string nodeName(std::size_t j, const Vec& u)
{
    std::ostringstream os;
    os.precision(10);
    os << "node " << j << " (";
    for (int i = 0; i < u.size(); ++i)
        os << (i ? "," : "") << u[i];
    os << ")";
    return os.str();
}

}  // namespace

double surfaceIntegral(const ConvexBodyOracle& body, const SurfaceIntegrand& integrand, const SphereGrid& grid)
{
    if (grid.dim != body.dim() - 1)
        fail(ErrorKind::InvalidInput, "surface integral grid must live on S^{n-1}");
    double total = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const Vec& u = grid.nodes[j];
        Curvatures c = body.curvatures(u);
        bool ok = std::isfinite(c.areaElement) && c.areaElement >= 0.0;
        for (double k : c.kappa)
            ok = ok && std::isfinite(k) && k > 0.0;
        if (!ok)
            fail(ErrorKind::NumericDomain, "curvature undefined at " + nodeName(j, u));
        double g = integrand(body.supportPoint(u), u, c);
        if (!std::isfinite(g))
            fail(ErrorKind::NumericDomain, "integrand not finite at " + nodeName(j, u));
        total += grid.weights[j] * g * c.areaElement;
    }
    return total;
}

double surfaceArea(const ConvexBodyOracle& body, const SphereGrid& grid)
{
    return surfaceIntegral(body, [](const Vec&, const Vec&, const Curvatures&) { return 1.0; }, grid);
}

}  // namespace rball
