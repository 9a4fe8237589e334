#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace igc {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// A point of the input embedding. Ids are unique within a PointSet.
struct Point2D {
    std::int64_t id = 0;
    double x = 0.0;
    double y = 0.0;

    Vec2 pos() const { return {x, y}; }
};

/// Points kept sorted by id, so vertex index order coincides with id order.
class PointSet {
public:
    PointSet() = default;
    /// Sorts by id; throws ParameterError on duplicate ids or non-finite coordinates.
    explicit PointSet(std::vector<Point2D> pts);

    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const Point2D& operator[](std::size_t i) const { return pts_[i]; }
    std::span<const Point2D> points() const { return pts_; }
    auto begin() const { return pts_.begin(); }
    auto end() const { return pts_.end(); }

    /// Index of the point with the given id, or -1.
    int index_of(std::int64_t id) const;
    std::vector<Vec2> coords() const;
    /// Sub-collection in the order given (indices must be increasing to keep id order).
    PointSet subset(std::span<const int> indices) const;

private:
    std::vector<Point2D> pts_;
};

/// An l_p norm, 1 <= p <= infinity.
struct Norm {
    double p = 2.0;

    static Norm l1() { return {1.0}; }
    static Norm l2() { return {2.0}; }
    static Norm linf() { return {std::numeric_limits<double>::infinity()}; }

    bool is_inf() const { return std::isinf(p); }
    bool valid() const { return p >= 1.0; }
    std::string name() const;
    friend bool operator==(Norm a, Norm b) { return a.p == b.p; }
};

double norm_of(double dx, double dy, Norm norm);
double dist(Vec2 a, Vec2 b, Norm norm);
inline double dist(const Point2D& a, const Point2D& b, Norm norm) { return dist(a.pos(), b.pos(), norm); }

/// Largest value of ||v||_p / ||v||_q over nonzero v in the plane.
double max_norm_ratio(Norm p, Norm q);

struct DxyStats {
    double dx = 0.0;
    double dy = 0.0;
    double D = 0.0;     // max(dx, dy), the l_inf distance
    double delta = 0.0; // min(dx, dy)
};

DxyStats dxy_stats(Vec2 p, Vec2 q);
inline DxyStats dxy_stats(const Point2D& p, const Point2D& q) { return dxy_stats(p.pos(), q.pos()); }

/// Closed axis-parallel square.
struct AxisSquare {
    Vec2 center;
    double half_side = 1.0;

    double side() const { return 2.0 * half_side; }
    bool contains(Vec2 q) const;
    bool on_boundary(Vec2 q, double tol = 1e-12) const;
};

/// Coordinates shifted by (id * zeta, (id^2 mod M) * zeta) to break ties in
/// Delaunay predicates.
inline constexpr double kPerturbZeta = 1e-9;
inline constexpr std::int64_t kPerturbModulus = 1009;
std::vector<Vec2> perturbed_coords(const PointSet& pts);

/// Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear.
int orient(Vec2 a, Vec2 b, Vec2 c);
/// Segments ab and cd cross at a point interior to both.
bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/// True iff some closed axis-parallel square has pts[i] and pts[j] on its
/// boundary and no other point of pts inside or on it.
bool empty_axis_square_exists(std::span<const Vec2> pts, int i, int j);

/// True iff some circle through pts[i] and pts[j] has no other point strictly inside.
bool empty_circle_exists(std::span<const Vec2> pts, int i, int j);

/// One representative (smallest index) per occupied grid cell of side mu.
/// `ball` must be sorted ascending. Requires 0 < mu < c1 / sqrt(2).
std::vector<int> mu_net(std::span<const int> ball, std::span<const Point2D> pts, double mu, double c1);

struct GridKey {
    std::int64_t i = 0;
    std::int64_t j = 0;
    friend auto operator<=>(const GridKey&, const GridKey&) = default;
};

GridKey grid_cell(Vec2 p, double side);

} // namespace igc
