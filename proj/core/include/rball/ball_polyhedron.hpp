#pragma once

#include "rball/convex_body.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace rball {

// Intersection of balls of common radius R. A witness point inside every ball is
// kept; membership and radial queries are pruned through an R-tree of the unit
// vectors (witness - c_j)/|witness - c_j|.
class BallPolyhedron final : public ConvexSet {
public:
    BallPolyhedron(double radius, std::vector<Vec> centers, std::optional<Vec> witness = std::nullopt);
    ~BallPolyhedron() override;
    BallPolyhedron(const BallPolyhedron& other);
    BallPolyhedron& operator=(const BallPolyhedron& other);
    BallPolyhedron(BallPolyhedron&&) noexcept;
    BallPolyhedron& operator=(BallPolyhedron&&) noexcept;

    double radius() const { return R_; }
    const std::vector<Vec>& centers() const { return centers_; }
    const Vec& witness() const { return witness_; }
    std::size_t size() const { return centers_.size(); }

    int dim() const override { return static_cast<int>(witness_.size()); }
    double support(const Vec& u) const override;
    Vec supportPoint(const Vec& u) const override;
    bool contains(const Vec& x, double tol = 0.0) const override;
    Vec interiorPoint() const override { return witness_; }
    double boundingRadius() const override;
    Box boundingBox() const override;
    double radial(const Vec& origin, const Vec& dir) const override;

    // Index of a ball that p violates (distance > R + tol), or -1.
    long violatedBy(const Vec& p, double tol = 0.0) const;

private:
    struct Index;

    void build();
    double radialFromWitness(const Vec& dir) const;
    void candidates(const Vec& p, double reff, std::vector<std::size_t>& out, bool& all) const;
    std::optional<Vec> exactFacePoint(const Vec& u) const;
    Vec maximizeAlong(const Vec& u) const;

    double R_;
    std::vector<Vec> centers_;
    Vec witness_;
    std::vector<double> D_;
    double Dmax_ = 0.0;
    std::unique_ptr<Index> index_;
};

bool ballPolyMembership(const BallPolyhedron& bp, const Vec& p);

}  // namespace rball
