#include "igc/geometry.hpp"

#include "igc/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace igc {

PointSet::PointSet(std::vector<Point2D> pts) : pts_(std::move(pts)) {
    std::sort(pts_.begin(), pts_.end(), [](const Point2D& a, const Point2D& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (!std::isfinite(pts_[i].x) || !std::isfinite(pts_[i].y))
            throw ParameterError("point " + std::to_string(pts_[i].id) + " has a non-finite coordinate");
        if (i > 0 && pts_[i].id == pts_[i - 1].id)
            throw ParameterError("duplicate point id " + std::to_string(pts_[i].id));
    }
}

int PointSet::index_of(std::int64_t id) const {
    auto it = std::lower_bound(pts_.begin(), pts_.end(), id, [](const Point2D& p, std::int64_t v) { return p.id < v; });
    if (it == pts_.end() || it->id != id) return -1;
    return static_cast<int>(it - pts_.begin());
}

std::vector<Vec2> PointSet::coords() const {
    std::vector<Vec2> out;
    out.reserve(pts_.size());
    for (const auto& p : pts_) out.push_back(p.pos());
    return out;
}

PointSet PointSet::subset(std::span<const int> indices) const {
    std::vector<Point2D> sub;
    sub.reserve(indices.size());
    for (int i : indices) sub.push_back(pts_.at(static_cast<std::size_t>(i)));
    return PointSet(std::move(sub));
}

std::string Norm::name() const {
    if (is_inf()) return "linf";
    if (p == 1.0) return "l1";
    if (p == 2.0) return "l2";
    std::ostringstream os;
    os << 'l' << p;
    return os.str();
}

double norm_of(double dx, double dy, Norm norm) {
    dx = std::abs(dx);
    dy = std::abs(dy);
    if (norm.is_inf()) return std::max(dx, dy);
    if (norm.p == 1.0) return dx + dy;
    if (norm.p == 2.0) return std::hypot(dx, dy);
    double m = std::max(dx, dy);
    if (m == 0.0) return 0.0;
    return m * std::pow(std::pow(dx / m, norm.p) + std::pow(dy / m, norm.p), 1.0 / norm.p);
}

double dist(Vec2 a, Vec2 b, Norm norm) { return norm_of(a.x - b.x, a.y - b.y, norm); }

double max_norm_ratio(Norm p, Norm q) {
    // ||v||_p / ||v||_q is maximised on the diagonal when p < q and equals 1 otherwise.
    if (p.p >= q.p) return 1.0;
    double ip = p.is_inf() ? 0.0 : 1.0 / p.p;
    double iq = q.is_inf() ? 0.0 : 1.0 / q.p;
    return std::pow(2.0, ip - iq);
}

DxyStats dxy_stats(Vec2 p, Vec2 q) {
    DxyStats s;
    s.dx = std::abs(p.x - q.x);
    s.dy = std::abs(p.y - q.y);
    s.D = std::max(s.dx, s.dy);
    s.delta = std::min(s.dx, s.dy);
    return s;
}

bool AxisSquare::contains(Vec2 q) const {
    return std::abs(q.x - center.x) <= half_side && std::abs(q.y - center.y) <= half_side;
}

bool AxisSquare::on_boundary(Vec2 q, double tol) const {
    double m = std::max(std::abs(q.x - center.x), std::abs(q.y - center.y));
    return std::abs(m - half_side) <= tol;
}

std::vector<Vec2> perturbed_coords(const PointSet& pts) {
    std::vector<Vec2> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        std::int64_t r = p.id % kPerturbModulus;
        if (r < 0) r += kPerturbModulus;
        std::int64_t sq = (r * r) % kPerturbModulus;
        out.push_back({p.x + static_cast<double>(p.id) * kPerturbZeta, p.y + static_cast<double>(sq) * kPerturbZeta});
    }
    return out;
}

int orient(Vec2 a, Vec2 b, Vec2 c) {
    double det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return (det > 0.0) - (det < 0.0);
}

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

namespace {

// Some t in [lo, hi] avoids every closed interval in `blocked`.
bool free_point_exists(double lo, double hi, std::vector<std::pair<double, double>>& blocked) {
    std::sort(blocked.begin(), blocked.end());
    double cur = lo;
    for (auto [a, b] : blocked) {
        if (a > cur) return true;
        if (b >= cur) cur = std::nextafter(b, std::numeric_limits<double>::infinity());
        if (cur > hi) return false;
    }
    return cur <= hi;
}

} // namespace

bool empty_axis_square_exists(std::span<const Vec2> pts, int i, int j) {
    if (i == j) throw ParameterError("empty_axis_square_exists: p and q coincide");
    Vec2 p = pts[static_cast<std::size_t>(i)];
    Vec2 q = pts[static_cast<std::size_t>(j)];
    DxyStats s = dxy_stats(p, q);
    if (s.D == 0.0) throw ParameterError("empty_axis_square_exists: p and q have equal coordinates");

    // Any empty square through p and q contains an empty square of side D
    // through both, so it suffices to slide a D-square along the short axis.
    bool x_major = s.dx >= s.dy;
    auto major = [&](Vec2 v) { return x_major ? v.x : v.y; };
    auto minor = [&](Vec2 v) { return x_major ? v.y : v.x; };
    double m_lo = std::min(major(p), major(q));
    double m_hi = std::max(major(p), major(q));
    double lo = std::max(minor(p), minor(q)) - s.D;
    double hi = std::min(minor(p), minor(q));

    std::vector<std::pair<double, double>> blocked;
    for (std::size_t r = 0; r < pts.size(); ++r) {
        if (static_cast<int>(r) == i || static_cast<int>(r) == j) continue;
        double a = major(pts[r]);
        if (a < m_lo || a > m_hi) continue;
        double b = minor(pts[r]);
        double bl = b - s.D, bh = b;
        if (bh < lo || bl > hi) continue;
        blocked.emplace_back(bl, bh);
    }
    return free_point_exists(lo, hi, blocked);
}

bool empty_circle_exists(std::span<const Vec2> pts, int i, int j) {
    if (i == j) throw ParameterError("empty_circle_exists: p and q coincide");
    Vec2 p = pts[static_cast<std::size_t>(i)];
    Vec2 q = pts[static_cast<std::size_t>(j)];
    Vec2 m{(p.x + q.x) / 2.0, (p.y + q.y) / 2.0};
    Vec2 n{-(q.y - p.y), q.x - p.x};
    // Centres are m + t*n. Point r lies strictly inside iff a - b*t < 0.
    double t_lo = -std::numeric_limits<double>::infinity();
    double t_hi = std::numeric_limits<double>::infinity();
    double pp = p.x * p.x + p.y * p.y;
    for (std::size_t r = 0; r < pts.size(); ++r) {
        if (static_cast<int>(r) == i || static_cast<int>(r) == j) continue;
        Vec2 v = pts[r];
        double rx = v.x - p.x, ry = v.y - p.y;
        double a = (v.x * v.x + v.y * v.y) - pp - 2.0 * (m.x * rx + m.y * ry);
        double b = 2.0 * (n.x * rx + n.y * ry);
        if (b > 0.0) {
            t_hi = std::min(t_hi, a / b);
        } else if (b < 0.0) {
            t_lo = std::max(t_lo, a / b);
        } else if (a < 0.0) {
            return false;
        }
        if (t_lo >= t_hi) return false;
    }
    return t_lo < t_hi;
}

GridKey grid_cell(Vec2 p, double side) {
    return {static_cast<std::int64_t>(std::floor(p.x / side)), static_cast<std::int64_t>(std::floor(p.y / side))};
}

std::vector<int> mu_net(std::span<const int> ball, std::span<const Point2D> pts, double mu, double c1) {
    if (!(mu > 0.0) || !(mu < c1 / std::sqrt(2.0)))
        throw ParameterError("mu_net: mu must lie in (0, c1/sqrt(2))");
    std::map<GridKey, int> rep;
    for (int v : ball) rep.try_emplace(grid_cell(pts[static_cast<std::size_t>(v)].pos(), mu), v);
    std::vector<int> out;
    out.reserve(rep.size());
    for (auto& [key, v] : rep) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace igc
