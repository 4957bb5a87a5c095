#pragma once

#include "rball/types.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>

namespace rball {

// Principal curvatures at the boundary point with outer normal u, sorted ascending,
// together with f_K(u) = prod of principal radii (the sphere-to-surface area element).
struct Curvatures {
    std::vector<double> kappa;
    double areaElement = 1.0;
};

class ConvexSet {
public:
    virtual ~ConvexSet() = default;

    virtual int dim() const = 0;
    virtual double support(const Vec& u) const = 0;
    // A boundary point x with u in the normal cone at x (u need not be unit).
    virtual Vec supportPoint(const Vec& u) const = 0;
    virtual bool contains(const Vec& x, double tol = 0.0) const = 0;
    virtual Vec interiorPoint() const = 0;
    // s with K contained in s*B around the origin.
    virtual double boundingRadius() const = 0;

    virtual Box boundingBox() const;
    // Distance from `origin` (interior) to the boundary along unit `dir`.
    virtual double radial(const Vec& origin, const Vec& dir) const;
    // x / radial-scale; 1 on the boundary, < 1 inside (star-shaped w.r.t. `origin`).
    double gauge(const Vec& x, const Vec& origin) const;
};

class ConvexBodyOracle : public ConvexSet {
public:
    virtual Curvatures curvatures(const Vec& u) const = 0;
    virtual std::optional<double> volumeHint() const { return std::nullopt; }
    // Parameters [s0, s1] with origin + s*dir in K, dir unit; nullopt if the line misses K.
    virtual std::optional<std::pair<double, double>> rayInterval(const Vec& origin, const Vec& dir) const = 0;
    virtual std::unique_ptr<ConvexBodyOracle> scaled(double a) const = 0;
    virtual std::string describe() const = 0;

    Vec boundaryPoint(const Vec& u) const { return supportPoint(u); }
    double volume() const;
};

class Ellipsoid final : public ConvexBodyOracle {
public:
    Ellipsoid(Vec semiaxes, Vec center);

    const Vec& semiaxes() const { return a_; }
    const Vec& center() const { return c_; }

    int dim() const override { return static_cast<int>(a_.size()); }
    double support(const Vec& u) const override;
    Vec supportPoint(const Vec& u) const override;
    bool contains(const Vec& x, double tol = 0.0) const override;
    Vec interiorPoint() const override { return c_; }
    double boundingRadius() const override;
    Box boundingBox() const override;
    double radial(const Vec& origin, const Vec& dir) const override;

    Curvatures curvatures(const Vec& u) const override;
    std::optional<double> volumeHint() const override;
    std::optional<std::pair<double, double>> rayInterval(const Vec& origin, const Vec& dir) const override;
    std::unique_ptr<ConvexBodyOracle> scaled(double a) const override;
    std::string describe() const override;

    // (x-c)^T A^{-2} (x-c)
    double quadraticForm(const Vec& x) const;

private:
    Vec a_;
    Vec c_;
};

Ellipsoid makeEllipsoid(const Vec& semiaxes, const Vec& center);
Ellipsoid makeEllipsoid(const Vec& semiaxes);
Ellipsoid ballBody(const Vec& center, double radius);
Ellipsoid ballBody(const Ball& b);

}  // namespace rball
