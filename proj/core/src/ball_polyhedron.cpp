#include "rball/ball_polyhedron.hpp"
#include "rball/error.hpp"
#include "rball/optimize.hpp"

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace rball {

using Point5 = bg::model::point<double, kMaxDim, bg::cs::cartesian>;
using Box5 = bg::model::box<Point5>;
using Entry = std::pair<Point5, std::size_t>;

struct BallPolyhedron::Index {
    bgi::rtree<Entry, bgi::rstar<16>> tree;
    std::vector<std::size_t> degenerate;  // centers coinciding with the witness
};

namespace {

Point5 toPoint(const Vec& v)
{
    Point5 p;
    double c[kMaxDim] = {0, 0, 0, 0, 0};
    for (int i = 0; i < v.size(); ++i)
        c[i] = v[i];
    bg::set<0>(p, c[0]);
    bg::set<1>(p, c[1]);
    bg::set<2>(p, c[2]);
    bg::set<3>(p, c[3]);
    bg::set<4>(p, c[4]);
    return p;
}

Box5 cube(const Vec& v, double h)
{
    Vec lo = v.array() - h, hi = v.array() + h;
    Vec lo5 = Vec::Constant(kMaxDim, -h), hi5 = Vec::Constant(kMaxDim, h);
    lo5.head(v.size()) = lo;
    hi5.head(v.size()) = hi;
    return Box5(toPoint(lo5), toPoint(hi5));
}

// Exit distance from origin o (inside the ball) along unit e for ball (c, R).
double exitDistance(const Vec& o, const Vec& e, const Vec& c, double R)
{
    Vec w = o - c;
    double b = w.dot(e);
    double k = R * R - w.squaredNorm();
    double sq = std::sqrt(std::max(0.0, b * b + k));
    if (b >= 0.0)
        return sq + b > 0.0 ? k / (b + sq) : 0.0;
    return -b + sq;
}

Vec minimaxCenter(const std::vector<Vec>& centers)
{
    const int n = static_cast<int>(centers[0].size());
    Vec mean = Vec::Zero(n);
    for (const auto& c : centers)
        mean += c;
    mean /= static_cast<double>(centers.size());
    auto f = [&](const std::vector<double>& x) {
        Vec p(n);
        for (int i = 0; i < n; ++i)
            p[i] = x[i];
        double m = 0.0;
        for (const auto& c : centers)
            m = std::max(m, (p - c).squaredNorm());
        return m;
    };
    double spread = 0.0;
    for (const auto& c : centers)
        spread = std::max(spread, (c - mean).norm());
    std::vector<double> x0(mean.data(), mean.data() + n);
    auto res = nelderMead(f, x0, std::max(spread, 1e-3) * 0.1, 1e-13, 20000);
    res = nelderMead(f, res.x, std::max(spread, 1e-3) * 1e-3, 1e-15, 20000);
    Vec p(n);
    for (int i = 0; i < n; ++i)
        p[i] = res.x[i];
    return p;
}

}  // namespace

BallPolyhedron::BallPolyhedron(double radius, std::vector<Vec> centers, std::optional<Vec> witness)
    : R_(radius), centers_(std::move(centers))
{
    if (!(R_ > 0.0) || !std::isfinite(R_))
        fail(ErrorKind::InvalidInput, "ball-polyhedron radius must be positive and finite");
    if (centers_.empty())
        fail(ErrorKind::InvalidInput, "ball-polyhedron needs at least one center");
    const auto n = centers_[0].size();
    if (n < 2 || n > kMaxDim)
        fail(ErrorKind::InvalidInput, "ball-polyhedron dimension must be between 2 and 5");
    for (const auto& c : centers_) {
        if (c.size() != n)
            fail(ErrorKind::InvalidInput, "ball-polyhedron centers have mixed dimensions");
        if (!c.allFinite())
            fail(ErrorKind::InvalidInput, "ball-polyhedron center is not finite");
    }
    witness_ = witness ? *witness : minimaxCenter(centers_);
    if (witness_.size() != n)
        fail(ErrorKind::InvalidInput, "witness dimension mismatch");
    for (const auto& c : centers_)
        if ((c - witness_).norm() > R_ * (1.0 + 1e-12))
            fail(ErrorKind::EmptyBody, "ball intersection is empty (no common point found)");
    build();
}

BallPolyhedron::~BallPolyhedron() = default;
BallPolyhedron::BallPolyhedron(BallPolyhedron&&) noexcept = default;
BallPolyhedron& BallPolyhedron::operator=(BallPolyhedron&&) noexcept = default;

BallPolyhedron::BallPolyhedron(const BallPolyhedron& other)
    : R_(other.R_), centers_(other.centers_), witness_(other.witness_)
{
    build();
}

BallPolyhedron& BallPolyhedron::operator=(const BallPolyhedron& other)
{
    if (this != &other) {
        R_ = other.R_;
        centers_ = other.centers_;
        witness_ = other.witness_;
        build();
    }
    return *this;
}

void BallPolyhedron::build()
{
    index_ = std::make_unique<Index>();
    D_.resize(centers_.size());
    Dmax_ = 0.0;
    std::vector<Entry> entries;
    entries.reserve(centers_.size());
    for (std::size_t j = 0; j < centers_.size(); ++j) {
        Vec w = witness_ - centers_[j];
        D_[j] = w.norm();
        Dmax_ = std::max(Dmax_, D_[j]);
        if (D_[j] <= 1e-15 * R_)
            index_->degenerate.push_back(j);
        else
            entries.emplace_back(toPoint(w / D_[j]), j);
    }
    index_->tree = bgi::rtree<Entry, bgi::rstar<16>>(entries.begin(), entries.end());
}

void BallPolyhedron::candidates(const Vec& p, double reff, std::vector<std::size_t>& out, bool& all) const
{
    out.clear();
    all = false;
    Vec v = p - witness_;
    double r = v.norm();
    if (r == 0.0 || Dmax_ == 0.0) {
        if (r > reff)
            all = true;
        return;
    }
    if (r > reff) {
        all = true;
        return;
    }
    // A ball at distance D from the witness is violated only if cos(angle) > phi(D) >= phi(Dmax).
    double phi = (reff * reff - r * r - Dmax_ * Dmax_) / (2.0 * r * Dmax_);
    if (phi >= 1.0)
        return;
    if (phi <= -1.0) {
        all = true;
        return;
    }
    double chord = std::sqrt(2.0 - 2.0 * phi);
    Vec vh = v / r;
    std::vector<Entry> hits;
    index_->tree.query(bgi::intersects(cube(vh, chord)), std::back_inserter(hits));
    for (const auto& h : hits)
        out.push_back(h.second);
}

long BallPolyhedron::violatedBy(const Vec& p, double tol) const
{
    const double reff = R_ + tol;
    const double r2 = reff * reff;
    std::vector<std::size_t> cand;
    bool all = false;
    candidates(p, reff, cand, all);
    if (all) {
        for (std::size_t j = 0; j < centers_.size(); ++j)
            if ((p - centers_[j]).squaredNorm() > r2)
                return static_cast<long>(j);
        return -1;
    }
    for (std::size_t j : cand)
        if ((p - centers_[j]).squaredNorm() > r2)
            return static_cast<long>(j);
    return -1;
}

bool BallPolyhedron::contains(const Vec& x, double tol) const { return violatedBy(x, tol) < 0; }

bool ballPolyMembership(const BallPolyhedron& bp, const Vec& p) { return bp.contains(p); }

double BallPolyhedron::radialFromWitness(const Vec& e) const
{
    std::vector<Entry> nn;
    index_->tree.query(bgi::nearest(toPoint(e), 1), std::back_inserter(nn));
    std::size_t j0 = nn.empty() ? 0 : nn[0].second;
    double rbar = exitDistance(witness_, e, centers_[j0], R_);
    std::vector<std::size_t> cand;
    bool all = false;
    candidates(witness_ + rbar * e, R_, cand, all);
    double r = rbar;
    if (all) {
        for (const auto& c : centers_)
            r = std::min(r, exitDistance(witness_, e, c, R_));
        return r;
    }
    for (std::size_t j : cand)
        r = std::min(r, exitDistance(witness_, e, centers_[j], R_));
    return r;
}

double BallPolyhedron::radial(const Vec& origin, const Vec& dir) const
{
    if (origin == witness_)
        return radialFromWitness(dir);
    double r = kInf;
    for (const auto& c : centers_) {
        if ((origin - c).squaredNorm() > R_ * R_)
            return 0.0;
        r = std::min(r, exitDistance(origin, dir, c, R_));
    }
    return r;
}

double BallPolyhedron::boundingRadius() const
{
    double best = kInf;
    for (const auto& c : centers_)
        best = std::min(best, c.norm());
    return best + R_;
}

Box BallPolyhedron::boundingBox() const
{
    const int n = dim();
    Box b{Vec::Constant(n, -kInf), Vec::Constant(n, kInf)};
    for (const auto& c : centers_) {
        b.lo = b.lo.cwiseMax((c.array() - R_).matrix());
        b.hi = b.hi.cwiseMin((c.array() + R_).matrix());
    }
    return b;
}

std::optional<Vec> BallPolyhedron::exactFacePoint(const Vec& u) const
{
    std::size_t best = 0;
    double bestVal = kInf;
    for (std::size_t j = 0; j < centers_.size(); ++j) {
        double v = centers_[j].dot(u);
        if (v < bestVal) {
            bestVal = v;
            best = j;
        }
    }
    Vec x = centers_[best] + R_ * u;
    if (contains(x, 1e-12 * R_))
        return x;
    return std::nullopt;
}

Vec BallPolyhedron::maximizeAlong(const Vec& u) const
{
    const int n = dim();
    auto pointAt = [&](const Vec& e) -> Vec { return witness_ + radialFromWitness(e) * e; };
    if (n == 2) {
        auto dirAt = [](double th) {
            Vec e(2);
            e << std::cos(th), std::sin(th);
            return e;
        };
        const int coarse = 128;
        double bestTh = 0.0, bestVal = -kInf;
        for (int k = 0; k < coarse; ++k) {
            double th = 2.0 * std::numbers::pi * k / coarse;
            double v = pointAt(dirAt(th)).dot(u);
            if (v > bestVal) {
                bestVal = v;
                bestTh = th;
            }
        }
        double step = 2.0 * std::numbers::pi / coarse;
        auto res = brentMinimize([&](double th) { return -pointAt(dirAt(th)).dot(u); }, bestTh - step, bestTh + step, 52);
        return pointAt(dirAt(res.first));
    }
    Vec guess = centers_[0] + R_ * u;
    {
        double bestVal = kInf;
        for (const auto& c : centers_) {
            double v = c.dot(u);
            if (v < bestVal) {
                bestVal = v;
                guess = c + R_ * u;
            }
        }
    }
    Vec e0 = guess - witness_;
    if (e0.norm() == 0.0)
        e0 = u;
    e0 /= e0.norm();
    TangentFrame T = tangentBasis(e0);
    auto dirOf = [&](const std::vector<double>& y) {
        Vec e = e0;
        for (int i = 0; i < n - 1; ++i)
            e += y[i] * T.col(i);
        return Vec(e / e.norm());
    };
    auto f = [&](const std::vector<double>& y) { return -pointAt(dirOf(y)).dot(u); };
    auto res = nelderMead(f, std::vector<double>(n - 1, 0.0), 0.05, 1e-11, 4000);
    res = nelderMead(f, res.x, 1e-4, 1e-13, 4000);
    return pointAt(dirOf(res.x));
}

Vec BallPolyhedron::supportPoint(const Vec& uIn) const
{
    Vec u = uIn / uIn.norm();
    if (auto x = exactFacePoint(u))
        return *x;
    return maximizeAlong(u);
}

double BallPolyhedron::support(const Vec& uIn) const
{
    double s = uIn.norm();
    return supportPoint(uIn).dot(uIn / s) * s;
}

}  // namespace rball
