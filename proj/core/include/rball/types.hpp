#pragma once

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace rball {

constexpr int kMaxDim = 5;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using TangentFrame = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim - 1>;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Box {
    Vec lo;
    Vec hi;

    int dim() const { return static_cast<int>(lo.size()); }
    double volume() const;
    bool empty() const;
    Box intersect(const Box& other) const;
};

struct Ball {
    Vec center;
    double radius = 1.0;

    int dim() const { return static_cast<int>(center.size()); }
    bool contains(const Vec& p, double tol = 0.0) const;
    Box boundingBox() const;
};

Ball makeBall(const Vec& center, double radius);

Vec unitVector(int dim, int axis);
Vec fromStd(const std::vector<double>& v);
std::vector<double> toStd(const Vec& v);

// Orthonormal basis of u^perp (columns), u assumed unit.
TangentFrame tangentBasis(const Vec& u);

}  // namespace rball
