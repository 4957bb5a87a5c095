#include "rball/types.hpp"
#include "rball/error.hpp"

#include <Eigen/QR>

namespace rball {

double Box::volume() const
{
    double v = 1.0;
    for (int i = 0; i < dim(); ++i)
        v *= std::max(0.0, hi[i] - lo[i]);
    return v;
}

bool Box::empty() const
{
    for (int i = 0; i < dim(); ++i)
        if (hi[i] < lo[i])
            return true;
    return false;
}

Box Box::intersect(const Box& other) const
{
    return Box{lo.cwiseMax(other.lo), hi.cwiseMin(other.hi)};
}

bool Ball::contains(const Vec& p, double tol) const
{
    return (p - center).squaredNorm() <= (radius + tol) * (radius + tol);
}

Box Ball::boundingBox() const
{
    Vec r = Vec::Constant(dim(), radius);
    return Box{center - r, center + r};
}

Ball makeBall(const Vec& center, double radius)
{
    if (!(radius > 0.0))
        fail(ErrorKind::InvalidInput, "ball radius must be positive");
    if (center.size() < 1 || center.size() > kMaxDim)
        fail(ErrorKind::InvalidInput, "ball dimension out of range");
    return Ball{center, radius};
}

Vec unitVector(int dim, int axis)
{
    Vec e = Vec::Zero(dim);
    e[axis] = 1.0;
    return e;
}

Vec fromStd(const std::vector<double>& v)
{
    if (v.empty() || v.size() > static_cast<size_t>(kMaxDim))
        fail(ErrorKind::InvalidInput, "vector length must be between 1 and 5");
    Vec out(static_cast<int>(v.size()));
    for (size_t i = 0; i < v.size(); ++i)
        out[static_cast<int>(i)] = v[i];
    return out;
}

std::vector<double> toStd(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

TangentFrame tangentBasis(const Vec& u)
{
    const int n = static_cast<int>(u.size());
    Mat a = Mat::Zero(n, 1);
    a.col(0) = u;
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ();
    return q.rightCols(n - 1);
}

}  // namespace rball
