#include "igc/spanner.hpp"

#include "igc/errors.hpp"
#include "igc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace igc {

namespace {

template <class Pred>
std::vector<std::pair<int, int>> delaunay_edges(std::size_t n, Pred empty) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (empty(static_cast<int>(i), static_cast<int>(j))) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return edges;
}

std::vector<std::array<int, 3>> empty_triangles(std::span<const Vec2> pts, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> nb(pts.size());
    for (auto [u, v] : edges) {
        nb[static_cast<std::size_t>(u)].push_back(v);
        nb[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& a : nb) std::sort(a.begin(), a.end());
    std::vector<std::array<int, 3>> tris;
    for (auto [u, v] : edges)
        for (int w : nb[static_cast<std::size_t>(v)]) {
            if (w <= v) continue;
            if (!std::binary_search(nb[static_cast<std::size_t>(u)].begin(), nb[static_cast<std::size_t>(u)].end(), w)) continue;
            Vec2 a = pts[static_cast<std::size_t>(u)], b = pts[static_cast<std::size_t>(v)], c = pts[static_cast<std::size_t>(w)];
            int o = orient(a, b, c);
            if (o == 0) continue;
            bool empty = true;
            for (std::size_t r = 0; r < pts.size() && empty; ++r) {
                if (static_cast<int>(r) == u || static_cast<int>(r) == v || static_cast<int>(r) == w) continue;
                if (orient(a, b, pts[r]) == o && orient(b, c, pts[r]) == o && orient(c, a, pts[r]) == o) empty = false;
            }
            if (empty) tris.push_back({u, v, w});
        }
    return tris;
}

Graph reweighted(const Graph& host, const std::vector<std::pair<int, int>>& pairs, Norm norm) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [u, v] : pairs)
        edges.push_back({u, v, dist(host.points[static_cast<std::size_t>(u)], host.points[static_cast<std::size_t>(v)], norm)});
    return graph_from_edges(host.points, host.metric, edges);
}

std::vector<std::pair<int, int>> edge_pairs(const Graph& h) {
    std::vector<std::pair<int, int>> out;
    for (const Edge& e : h.edges()) out.emplace_back(e.u, e.v);
    return out;
}

// Host edges that pass an emptiness predicate on perturbed coordinates.
template <class Pred>
std::vector<std::pair<int, int>> filtered_host_edges(const Graph& g, Pred empty) {
    auto pts = perturbed_coords(g.points);
    std::vector<std::pair<int, int>> keep;
    for (const Edge& e : g.edges())
        if (empty(std::span<const Vec2>(pts), e.u, e.v)) keep.emplace_back(e.u, e.v);
    return keep;
}

} // namespace

Triangulation l2_delaunay(const PointSet& points) {
    auto pts = perturbed_coords(points);
    Triangulation t;
    t.edges = delaunay_edges(pts.size(), [&](int i, int j) { return empty_circle_exists(pts, i, j); });
    t.triangles = empty_triangles(pts, t.edges);
    return t;
}

Triangulation linf_delaunay(const PointSet& points) {
    auto pts = perturbed_coords(points);
    Triangulation t;
    t.edges = delaunay_edges(pts.size(), [&](int i, int j) { return empty_axis_square_exists(pts, i, j); });
    t.triangles = empty_triangles(pts, t.edges);
    return t;
}

PlanarSpanner udg_spanner(const Graph& g) {
    if (g.metric.family == Family::USG) throw ParameterError("udg_spanner: host is not a unit disk graph");
    auto keep = filtered_host_edges(g, empty_circle_exists);
    return {reweighted(g, keep, Norm::l2()), kUdgStretch};
}

PlanarSpanner usg_spanner(const Graph& g) {
    if (g.metric.family != Family::USG) throw ParameterError("usg_spanner: host is not a unit square graph");
    auto keep = filtered_host_edges(g, empty_axis_square_exists);
    return {reweighted(g, keep, Norm::linf()), kUsgStretch};
}

PlanarSpanner lp_spanner(const Graph& g, const PlanarSpanner& base) {
    if (g.n() != base.h.n()) throw ParameterError("lp_spanner: point sets differ");
    for (std::size_t i = 0; i < g.n(); ++i)
        if (g.points[i].id != base.h.points[i].id) throw ParameterError("lp_spanner: point sets differ");
    Norm p = g.metric.norm;
    auto pairs = edge_pairs(base.h);
    if (g.metric.family == Family::UDG) {
        if (p == Norm::l2()) return base;
        if (p.p < 2.0) {
            // Host weights are l_p; an l2-weighted path can be shorter than d_G,
            // so the base edges take the host weights instead.
            return {reweighted(g, pairs, p), base.alpha * max_norm_ratio(p, Norm::l2())};
        }
        std::vector<Edge> edges;
        for (const Edge& e : base.h.edges()) edges.push_back({e.u, e.v, std::sqrt(2.0) * e.w});
        return {graph_from_edges(g.points, g.metric, edges), 2.0 * base.alpha};
    }
    if (g.metric.family == Family::USG) {
        if (p.is_inf()) return base;
        return {reweighted(g, pairs, p), base.alpha * max_norm_ratio(p, Norm::linf())};
    }
    throw ParameterError("lp_spanner: hop metrics have no norm");
}

PlanarSpanner family_spanner(const Graph& g) {
    switch (g.metric.family) {
    case Family::UDG: {
        PlanarSpanner base = udg_spanner(g);
        base.h.metric = MetricKind::make(Family::UDG, Norm::l2());
        PlanarSpanner s = lp_spanner(g, base);
        s.h.metric = g.metric;
        return s;
    }
    case Family::USG: {
        PlanarSpanner base = usg_spanner(g);
        base.h.metric = MetricKind::make(Family::USG, Norm::linf());
        PlanarSpanner s = lp_spanner(g, base);
        s.h.metric = g.metric;
        return s;
    }
    case Family::HOP_UDG: {
        auto keep = filtered_host_edges(g, empty_circle_exists);
        std::vector<Edge> edges;
        for (auto [u, v] : keep) edges.push_back({u, v, 1.0});
        PlanarSpanner s{graph_from_edges(g.points, g.metric, edges), 1.0};
        s.alpha = std::max(1.0, verify_stretch(g, s.h));
        return s;
    }
    }
    throw ParameterError("unknown family");
}

PlanarSpanner induced_spanner(const Graph& g, std::span<const int> subset) {
    if (subset.empty()) throw ParameterError("induced_spanner: empty subset");
    return family_spanner(induced_subgraph(g, subset));
}

double verify_stretch(const Graph& g, const Graph& h) {
    if (g.n() != h.n()) throw ParameterError("verify_stretch: vertex sets differ");
    DistMatrix dg = apsp(g.adj);
    DistMatrix dh = apsp(h.adj);
    double worst = 1.0;
    for (std::size_t u = 0; u < g.n(); ++u)
        for (std::size_t v = u + 1; v < g.n(); ++v) {
            double a = dg(u, v);
            if (!std::isfinite(a) || a == 0.0) continue;
            worst = std::max(worst, dh(u, v) / a);
        }
    return worst;
}

std::size_t crossing_count(const Graph& h) {
    auto pts = perturbed_coords(h.points);
    auto edges = h.edges();
    std::size_t count = 0;
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const Edge& a = edges[i];
            const Edge& b = edges[j];
            if (segments_cross(pts[static_cast<std::size_t>(a.u)], pts[static_cast<std::size_t>(a.v)],
                               pts[static_cast<std::size_t>(b.u)], pts[static_cast<std::size_t>(b.v)]))
                ++count;
        }
    return count;
}

bool is_planar_embedding(const Graph& h) {
    if (h.n() >= 3 && h.edge_count() > 3 * h.n() - 6) return false;
    return crossing_count(h) == 0;
}

double usg_edge_bound_excess(const Graph& g, const Graph& h) {
    DistMatrix dh = apsp(h.adj);
    double worst = -std::numeric_limits<double>::infinity();
    for (const Edge& e : g.edges()) {
        DxyStats s = dxy_stats(g.points[static_cast<std::size_t>(e.u)], g.points[static_cast<std::size_t>(e.v)]);
        worst = std::max(worst, dh(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v)) - (2.0 * s.D + s.delta));
    }
    return worst;
}

} // namespace igc
