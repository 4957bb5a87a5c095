#include "rball/quadrature.hpp"
#include "rball/error.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

namespace rball {

double SphereGrid::totalWeight() const
{
    double s = 0.0;
    for (double w : weights)
        s += w;
    return s;
}

double sphereMeasure(int sphereDim)
{
    double m = sphereDim + 1.0;
    return 2.0 * std::pow(std::numbers::pi, m / 2.0) / boost::math::tgamma(m / 2.0);
}

double unitBallVolume(int n)
{
    return std::pow(std::numbers::pi, n / 2.0) / boost::math::tgamma(n / 2.0 + 1.0);
}

GaussRule gaussJacobi(int m, double alpha, double beta)
{
    if (m < 1)
        fail(ErrorKind::InvalidInput, "quadrature order must be positive");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    const double ab = alpha + beta;
    for (int k = 0; k < m; ++k) {
        double denom = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        J(k, k) = denom == 0.0 ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / denom;
    }
    for (int k = 1; k < m; ++k) {
        double kk = k;
        double num = 4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab);
        double s = 2.0 * kk + ab;
        double den = s * s * (s + 1.0) * (s - 1.0);
        double b = std::sqrt(num / den);
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    double mu0 = std::pow(2.0, ab + 1.0) * boost::math::tgamma(alpha + 1.0) * boost::math::tgamma(beta + 1.0)
        / boost::math::tgamma(ab + 2.0);
    GaussRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        rule.nodes[i] = es.eigenvalues()[i];
        double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

GaussRule gaussLegendre(int m) { return gaussJacobi(m, 0.0, 0.0); }

GaussRule gaussLegendre(int m, double a, double b)
{
    GaussRule r = gaussLegendre(m);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < m; ++i) {
        r.nodes[i] = mid + half * r.nodes[i];
        r.weights[i] *= half;
    }
    return r;
}

SphereGrid sphereGrid(int sphereDim, int resolution)
{
    if (sphereDim < 0 || sphereDim >= kMaxDim)
        fail(ErrorKind::InvalidInput, "sphere dimension out of range");
    if (resolution < 1)
        fail(ErrorKind::InvalidInput, "sphere grid resolution must be positive");

    SphereGrid g;
    g.dim = sphereDim;
    g.resolution = resolution;

    if (sphereDim == 0) {
        Vec p(1), q(1);
        p[0] = 1.0;
        q[0] = -1.0;
        g.nodes = {p, q};
        g.weights = {1.0, 1.0};
        return g;
    }

    // Azimuth on S^1, equispaced.
    const int nAz = sphereDim == 1 ? resolution : 2 * resolution;
    std::vector<double> az(nAz);
    for (int k = 0; k < nAz; ++k)
        az[k] = 2.0 * std::numbers::pi * k / nAz;
    const double azWeight = 2.0 * std::numbers::pi / nAz;

    if (sphereDim == 1) {
        for (int k = 0; k < nAz; ++k) {
            Vec p(2);
            p << std::cos(az[k]), std::sin(az[k]);
            g.nodes.push_back(p);
            g.weights.push_back(azWeight);
        }
        return g;
    }

    // Polar angle phi_j (j = 1..d-1) carries Jacobian sin^{d-j}(phi_j).
    // With x = cos(phi): sin^{k}(phi) dphi = (1-x^2)^{(k-1)/2} dx.
    std::vector<GaussRule> polar;
    for (int j = 1; j <= sphereDim - 1; ++j) {
        double a = 0.5 * (sphereDim - j - 1);
        polar.push_back(gaussJacobi(resolution, a, a));
    }

    const int nPolar = sphereDim - 1;
    std::vector<int> idx(nPolar, 0);
    for (;;) {
        for (int k = 0; k < nAz; ++k) {
            Vec p(sphereDim + 1);
            double w = azWeight;
            double sinProd = 1.0;
            for (int j = 0; j < nPolar; ++j) {
                double x = polar[j].nodes[idx[j]];
                double s = std::sqrt(std::max(0.0, 1.0 - x * x));
                p[j] = sinProd * x;
                sinProd *= s;
                w *= polar[j].weights[idx[j]];
            }
            p[nPolar] = sinProd * std::cos(az[k]);
            p[nPolar + 1] = sinProd * std::sin(az[k]);
            g.nodes.push_back(p / p.norm());
            g.weights.push_back(w);
        }
        int j = nPolar - 1;
        while (j >= 0 && ++idx[j] == resolution) {
            idx[j] = 0;
            --j;
        }
        if (j < 0)
            break;
    }
    return g;
}

}  // namespace rball
