#include "igc/errors.hpp"
#include "igc/geometry.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace igc;
using igc::test::random_points;
using igc::test::kInf;

TEST_SUITE("geometry") {

TEST_CASE("norm examples") {
    Vec2 o{0, 0}, a{3, 4};
    CHECK(dist(o, a, Norm::l2()) == doctest::Approx(5.0));
    CHECK(dist(o, a, Norm::linf()) == 4.0);
    CHECK(dist(o, a, Norm::l1()) == 7.0);
    CHECK(dist(o, a, Norm{3.0}) == doctest::Approx(std::cbrt(27.0 + 64.0)));
    CHECK(Norm::linf().name() == "linf");
    CHECK(Norm::l1().name() == "l1");
}

TEST_CASE("lp norm chain on random pairs") {
    CounterRng r(1);
    for (int i = 0; i < 1000; ++i) {
        Vec2 p{r.uniform(-5, 5), r.uniform(-5, 5)}, q{r.uniform(-5, 5), r.uniform(-5, 5)};
        double l1 = dist(p, q, Norm::l1()), l2 = dist(p, q, Norm::l2()), li = dist(p, q, Norm::linf());
        CHECK(li <= l2 + 1e-12);
        CHECK(l2 <= l1 + 1e-12);
        CHECK(l1 <= std::sqrt(2.0) * l2 + 1e-12);
        CHECK(std::sqrt(2.0) * l2 <= 2.0 * li + 1e-12);
    }
}

TEST_CASE("max_norm_ratio agrees with a dense angular scan") {
    for (double p : {1.0, 1.5, 2.0, 3.0, kInf})
        for (double q : {1.0, 2.0, 4.0, kInf}) {
            double best = 0.0;
            for (int i = 0; i < 20000; ++i) {
                double t = 2.0 * M_PI * i / 20000.0;
                double dx = std::cos(t), dy = std::sin(t);
                best = std::max(best, norm_of(dx, dy, Norm{p}) / norm_of(dx, dy, Norm{q}));
            }
            CHECK(max_norm_ratio(Norm{p}, Norm{q}) == doctest::Approx(best).epsilon(1e-6));
        }
}

TEST_CASE("dxy stats examples") {
    auto s = dxy_stats(Vec2{0, 0}, Vec2{2, 1});
    CHECK(s.dx == 2.0);
    CHECK(s.dy == 1.0);
    CHECK(s.D == 2.0);
    CHECK(s.delta == 1.0);
    s = dxy_stats(Vec2{0, 0}, Vec2{0, 0});
    CHECK(s.D == 0.0);
    CHECK(s.delta == 0.0);
    s = dxy_stats(Vec2{0, 0}, Vec2{1, 3});
    CHECK(s.D == 3.0);
    CHECK(s.delta == 1.0);
}

TEST_CASE("point set validation") {
    CHECK_THROWS_AS(PointSet({{1, 0, 0}, {1, 1, 1}}), ParameterError);
    CHECK_THROWS_AS(PointSet({{1, NAN, 0}}), ParameterError);
    PointSet ps({{5, 0, 0}, {2, 1, 1}});
    CHECK(ps[0].id == 2);
    CHECK(ps.index_of(5) == 1);
    CHECK(ps.index_of(9) == -1);
}

TEST_CASE("axis square membership") {
    AxisSquare s{{0, 0}, 1.0};
    CHECK(s.contains({1, 1}));
    CHECK(s.on_boundary({1, 0.3}));
    CHECK_FALSE(s.on_boundary({0.2, 0.3}));
    CHECK_FALSE(s.contains({1.01, 0}));
}

TEST_CASE("segment crossing") {
    CHECK(segments_cross({0, 0}, {2, 2}, {0, 2}, {2, 0}));
    CHECK_FALSE(segments_cross({0, 0}, {1, 1}, {1, 1}, {2, 0})); // shared endpoint
    CHECK_FALSE(segments_cross({0, 0}, {1, 0}, {0, 1}, {1, 1}));
    CHECK(orient({0, 0}, {1, 0}, {0, 1}) == 1);
    CHECK(orient({0, 0}, {1, 0}, {2, 0}) == 0);
}

// Side-D squares with both points on the boundary, swept along the free axis.
static bool square_sweep_oracle(const std::vector<Vec2>& pts, int i, int j) {
    Vec2 p = pts[static_cast<std::size_t>(i)], q = pts[static_cast<std::size_t>(j)];
    auto s = dxy_stats(p, q);
    bool x_major = s.dx >= s.dy;
    double lo = x_major ? std::max(p.y, q.y) - s.D : std::max(p.x, q.x) - s.D;
    double hi = x_major ? std::min(p.y, q.y) : std::min(p.x, q.x);
    const int steps = 20000;
    for (int t = 0; t <= steps; ++t) {
        double b = lo + (hi - lo) * t / steps;
        double x0 = x_major ? std::min(p.x, q.x) : b, y0 = x_major ? b : std::min(p.y, q.y);
        bool empty = true;
        for (std::size_t r = 0; r < pts.size() && empty; ++r) {
            if (static_cast<int>(r) == i || static_cast<int>(r) == j) continue;
            const Vec2& v = pts[r];
            if (v.x >= x0 && v.x <= x0 + s.D && v.y >= y0 && v.y <= y0 + s.D) empty = false;
        }
        if (empty) return true;
    }
    return false;
}

TEST_CASE("empty axis square: two points and a blocker") {
    std::vector<Vec2> two{{0, 0}, {1, 0.5}};
    CHECK(empty_axis_square_exists(two, 0, 1));
    // Third point inside every side-1 square through (0,0) and (1,0).
    std::vector<Vec2> blocked{{0, 0}, {1, 0}, {0.5, 0.0}};
    CHECK_FALSE(empty_axis_square_exists(blocked, 0, 1));
    CHECK_THROWS_AS(empty_axis_square_exists(two, 0, 0), ParameterError);
}

TEST_CASE("empty axis square agrees with the sweep oracle") {
    int agree = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto pts = random_points(8, 3.0, seed).coords();
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j) {
                ++total;
                agree += empty_axis_square_exists(pts, i, j) == square_sweep_oracle(pts, i, j);
            }
    }
    CHECK(agree == total);
}

TEST_CASE("closest linf pair always has an empty square") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto pts = random_points(25, 4.0, seed + 100).coords();
        int bi = 0, bj = 1;
        double best = INFINITY;
        for (int i = 0; i < 25; ++i)
            for (int j = i + 1; j < 25; ++j) {
                double d = dist(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)], Norm::linf());
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        CHECK(empty_axis_square_exists(pts, bi, bj));
    }
}

TEST_CASE("empty circle agrees with a circumcircle oracle") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto pts = random_points(9, 3.0, seed + 7).coords();
        const int n = 9;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                bool oracle = false;
                for (int r = 0; r < n && !oracle; ++r) {
                    if (r == i || r == j) continue;
                    Vec2 a = pts[static_cast<std::size_t>(i)], b = pts[static_cast<std::size_t>(j)], c = pts[static_cast<std::size_t>(r)];
                    double d = 2 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
                    double ux = ((a.x * a.x + a.y * a.y) * (b.y - c.y) + (b.x * b.x + b.y * b.y) * (c.y - a.y) +
                                 (c.x * c.x + c.y * c.y) * (a.y - b.y)) / d;
                    double uy = ((a.x * a.x + a.y * a.y) * (c.x - b.x) + (b.x * b.x + b.y * b.y) * (a.x - c.x) +
                                 (c.x * c.x + c.y * c.y) * (b.x - a.x)) / d;
                    double rad = std::hypot(a.x - ux, a.y - uy);
                    bool empty = true;
                    for (int t = 0; t < n && empty; ++t) {
                        if (t == i || t == j || t == r) continue;
                        if (std::hypot(pts[static_cast<std::size_t>(t)].x - ux, pts[static_cast<std::size_t>(t)].y - uy) < rad) empty = false;
                    }
                    oracle = empty;
                }
                CHECK(empty_circle_exists(pts, i, j) == oracle);
            }
    }
}

TEST_CASE("mu-net singleton and covering radius") {
    PointSet one({{0, 0.3, 0.4}});
    std::vector<int> b1{0};
    CHECK(mu_net(b1, one.points(), 0.25, 2.0) == std::vector<int>{0});

    CounterRng r(3);
    std::vector<Point2D> pts;
    while (pts.size() < 50) {
        double x = r.uniform(-1, 1), y = r.uniform(-1, 1);
        if (x * x + y * y <= 1.0) pts.push_back({static_cast<std::int64_t>(pts.size()), x, y});
    }
    PointSet ps(pts);
    std::vector<int> ball(50);
    for (int i = 0; i < 50; ++i) ball[static_cast<std::size_t>(i)] = i;
    auto net = mu_net(ball, ps.points(), 0.25, 2.0);
    double cover = 0.0;
    for (int v : ball) {
        double best = INFINITY;
        for (int c : net) best = std::min(best, dist(ps[static_cast<std::size_t>(v)], ps[static_cast<std::size_t>(c)], Norm::l2()));
        cover = std::max(cover, best);
    }
    CHECK(cover <= std::sqrt(2.0) * 0.25 + 1e-12);
    CHECK_THROWS_AS(mu_net(ball, ps.points(), 2.0, 2.0), ParameterError);
}

TEST_CASE("mu-net keeps one of two same-cell points") {
    PointSet ps({{0, 0.01, 0.01}, {1, 0.2, 0.2}});
    std::vector<int> ball{0, 1};
    auto net = mu_net(ball, ps.points(), 0.25, 2.0);
    REQUIRE(net.size() == 1);
    CHECK(dist(ps[0], ps[1], Norm::l2()) <= std::sqrt(2.0) * 0.25);
}

TEST_CASE("perturbation is small and deterministic") {
    auto ps = random_points(20, 5.0, 1);
    auto a = perturbed_coords(ps), b = perturbed_coords(ps);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(std::abs(a[i].x - ps[i].x) <= 20 * 1e-9);
        CHECK(std::abs(a[i].y - ps[i].y) <= 1009 * 1e-9);
    }
}

}
