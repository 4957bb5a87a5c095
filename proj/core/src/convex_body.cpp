#include "rball/convex_body.hpp"
#include "rball/error.hpp"
#include "rball/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rball {

Box ConvexSet::boundingBox() const
{
    const int n = dim();
    Box b{Vec(n), Vec(n)};
    for (int i = 0; i < n; ++i) {
        Vec e = unitVector(n, i);
        b.hi[i] = support(e);
        b.lo[i] = -support(-e);
    }
    return b;
}

double ConvexSet::radial(const Vec& origin, const Vec& dir) const
{
    double lo = 0.0, hi = 2.0 * boundingRadius() + (origin.norm());
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (contains(origin + mid * dir))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double ConvexSet::gauge(const Vec& x, const Vec& origin) const
{
    Vec v = x - origin;
    double r = v.norm();
    if (r == 0.0)
        return 0.0;
    return r / radial(origin, v / r);
}

double ConvexBodyOracle::volume() const
{
    if (auto v = volumeHint())
        return *v;
    fail(ErrorKind::InvalidInput, "body has no exact volume");
}

Ellipsoid::Ellipsoid(Vec semiaxes, Vec center) : a_(std::move(semiaxes)), c_(std::move(center)) {}

Ellipsoid makeEllipsoid(const Vec& semiaxes, const Vec& center)
{
    if (semiaxes.size() < 2 || semiaxes.size() > kMaxDim)
        fail(ErrorKind::InvalidInput, "ellipsoid dimension must be between 2 and 5");
    if (center.size() != semiaxes.size())
        fail(ErrorKind::InvalidInput, "ellipsoid center dimension does not match semiaxes");
    for (int i = 0; i < semiaxes.size(); ++i)
        if (!(semiaxes[i] > 0.0) || !std::isfinite(semiaxes[i]))
            fail(ErrorKind::InvalidInput, "ellipsoid semiaxes must be positive and finite");
    for (int i = 0; i < center.size(); ++i)
        if (!std::isfinite(center[i]))
            fail(ErrorKind::InvalidInput, "ellipsoid center must be finite");
    return Ellipsoid(semiaxes, center);
}

Ellipsoid makeEllipsoid(const Vec& semiaxes) { return makeEllipsoid(semiaxes, Vec::Zero(semiaxes.size())); }

Ellipsoid ballBody(const Vec& center, double radius)
{
    if (!(radius > 0.0))
        fail(ErrorKind::InvalidInput, "ball radius must be positive");
    return makeEllipsoid(Vec::Constant(center.size(), radius), center);
}

Ellipsoid ballBody(const Ball& b) { return ballBody(b.center, b.radius); }

double Ellipsoid::support(const Vec& u) const { return c_.dot(u) + a_.cwiseProduct(u).norm(); }

Vec Ellipsoid::supportPoint(const Vec& u) const
{
    Vec au = a_.cwiseProduct(u);
    double s = au.norm();
    return c_ + a_.cwiseProduct(au) / s;
}

double Ellipsoid::quadraticForm(const Vec& x) const { return (x - c_).cwiseQuotient(a_).squaredNorm(); }

bool Ellipsoid::contains(const Vec& x, double tol) const
{
    if (tol == 0.0)
        return quadraticForm(x) <= 1.0;
    double amin = a_.minCoeff();
    double q = std::sqrt(quadraticForm(x));
    return (q - 1.0) * amin <= tol;
}

double Ellipsoid::boundingRadius() const { return c_.norm() + a_.maxCoeff(); }

Box Ellipsoid::boundingBox() const { return Box{c_ - a_, c_ + a_}; }

std::optional<std::pair<double, double>> Ellipsoid::rayInterval(const Vec& origin, const Vec& dir) const
{
    Vec p = (origin - c_).cwiseQuotient(a_);
    Vec d = dir.cwiseQuotient(a_);
    double A = d.squaredNorm();
    double B = p.dot(d);
    double C = p.squaredNorm() - 1.0;
    double disc = B * B - A * C;
    if (disc < 0.0)
        return std::nullopt;
    double sq = std::sqrt(disc);
    // Stable roots of A s^2 + 2 B s + C = 0.
    double q = B >= 0.0 ? -(B + sq) : -(B - sq);
    double r1, r2;
    if (q == 0.0) {
        r1 = r2 = 0.0;
    } else {
        r1 = q / A;
        r2 = C / q;
    }
    return std::make_pair(std::min(r1, r2), std::max(r1, r2));
}

double Ellipsoid::radial(const Vec& origin, const Vec& dir) const
{
    auto iv = rayInterval(origin, dir);
    if (!iv)
        return 0.0;
    return std::max(0.0, iv->second);
}

Curvatures Ellipsoid::curvatures(const Vec& uIn) const
{
    const int n = dim();
    Vec u = uIn / uIn.norm();
    Vec a2 = a_.cwiseProduct(a_);
    Vec a2u = a2.cwiseProduct(u);
    double s = a_.cwiseProduct(u).norm();
    // Hessian of h(u) = |A u| restricted to u^perp has the principal radii as eigenvalues.
    Mat H = Mat(a2.asDiagonal()) / s - (a2u * a2u.transpose()) / (s * s * s);
    TangentFrame T = tangentBasis(u);
    Mat M = T.transpose() * H * T;
    Curvatures c;
    c.kappa.resize(n - 1);
    c.areaElement = 1.0;
    if (n == 2) {
        double r = M(0, 0);
        c.kappa[0] = 1.0 / r;
        c.areaElement = r;
        return c;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    for (int i = 0; i < n - 1; ++i) {
        double r = es.eigenvalues()[i];
        c.kappa[i] = 1.0 / r;
        c.areaElement *= r;
    }
    std::sort(c.kappa.begin(), c.kappa.end());
    return c;
}

std::optional<double> Ellipsoid::volumeHint() const { return unitBallVolume(dim()) * a_.prod(); }

std::unique_ptr<ConvexBodyOracle> Ellipsoid::scaled(double a) const
{
    if (!(a > 0.0))
        fail(ErrorKind::InvalidInput, "scale factor must be positive");
    return std::make_unique<Ellipsoid>(a_ * a, c_ * a);
}

std::string Ellipsoid::describe() const
{
    std::ostringstream os;
    os.precision(17);
    os << "ellipsoid(";
    for (int i = 0; i < a_.size(); ++i)
        os << (i ? "," : "") << a_[i];
    os << ")";
    return os.str();
}

}  // namespace rball
