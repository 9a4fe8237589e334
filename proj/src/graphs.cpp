#include "igc/graphs.hpp"

#include "igc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>

namespace igc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inv_p(Norm n) { return n.is_inf() ? 0.0 : 1.0 / n.p; }

} // namespace

MetricKind MetricKind::make(Family family, Norm norm) {
    if (!norm.valid()) throw ParameterError("norm exponent must be >= 1");
    MetricKind m;
    m.family = family;
    m.norm = norm;
    // Tight comparison of the weight norm against the Euclidean embedding distance.
    double c3 = 1.0 / max_norm_ratio(Norm::l2(), norm);
    double c4 = max_norm_ratio(norm, Norm::l2());
    switch (family) {
    case Family::UDG:
        m.c1 = m.c2 = 2.0;
        m.c3 = c3;
        m.c4 = c4;
        m.c1p = m.c1 * m.c3 / 3.0;
        m.c2p = m.c2 * m.c4;
        break;
    case Family::USG:
        m.c1 = std::sqrt(2.0);
        m.c2 = 2.0 * std::sqrt(2.0);
        m.c3 = c3;
        m.c4 = c4;
        m.c1p = m.c1 * m.c3 / 3.0;
        // A pair with l_inf distance <= 2 has l_p distance at most 2 * 2^(1/p).
        m.c2p = 2.0 * std::pow(2.0, inv_p(norm));
        break;
    case Family::HOP_UDG:
        m.norm = Norm::l2();
        m.c1 = m.c2 = 2.0;
        m.c3 = 0.5;
        m.c4 = kInf;
        m.c1p = m.c2p = 1.0;
        break;
    }
    return m;
}

MetricKind MetricKind::parse(const std::string& name) {
    if (name == "hop-udg") return make(Family::HOP_UDG);
    auto dash = name.find('-');
    if (dash == std::string::npos) throw ParameterError("unknown metric '" + name + "'");
    std::string fam = name.substr(0, dash);
    std::string nrm = name.substr(dash + 1);
    Family f;
    if (fam == "udg") f = Family::UDG;
    else if (fam == "usg") f = Family::USG;
    else throw ParameterError("unknown metric family '" + fam + "'");
    if (nrm == "linf") return make(f, Norm::linf());
    if (nrm.size() < 2 || nrm[0] != 'l') throw ParameterError("unknown norm '" + nrm + "'");
    double p = 0.0;
    try {
        std::size_t used = 0;
        p = std::stod(nrm.substr(1), &used);
        if (used != nrm.size() - 1) throw ParameterError("");
    } catch (const std::exception&) {
        throw ParameterError("unknown norm '" + nrm + "'");
    }
    if (!(p >= 1.0)) throw ParameterError("norm exponent must be >= 1");
    return make(f, Norm{p});
}

std::string MetricKind::name() const {
    switch (family) {
    case Family::UDG: return "udg-" + norm.name();
    case Family::USG: return "usg-" + norm.name();
    case Family::HOP_UDG: return "hop-udg";
    }
    return "?";
}

std::size_t Graph::edge_count() const {
    std::size_t s = 0;
    for (const auto& a : adj) s += a.size();
    return s / 2;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (std::size_t u = 0; u < adj.size(); ++u)
        for (const Arc& a : adj[u])
            if (static_cast<int>(u) < a.to) out.push_back({static_cast<int>(u), a.to, a.w});
    return out;
}

bool Graph::has_edge(int u, int v) const { return std::isfinite(weight(u, v)); }

double Graph::weight(int u, int v) const {
    const auto& a = adj[static_cast<std::size_t>(u)];
    auto it = std::lower_bound(a.begin(), a.end(), v, [](const Arc& x, int t) { return x.to < t; });
    if (it == a.end() || it->to != v) return kInf;
    return it->w;
}

Graph graph_from_edges(const PointSet& points, const MetricKind& metric, std::span<const Edge> edges) {
    Graph g;
    g.points = points;
    g.metric = metric;
    g.adj.assign(points.size(), {});
    for (const Edge& e : edges) {
        if (e.u == e.v) continue;
        g.adj[static_cast<std::size_t>(e.u)].push_back({e.v, e.w});
        g.adj[static_cast<std::size_t>(e.v)].push_back({e.u, e.w});
    }
    for (auto& a : g.adj) {
        std::sort(a.begin(), a.end(), [](const Arc& x, const Arc& y) { return x.to < y.to; });
        a.erase(std::unique(a.begin(), a.end(), [](const Arc& x, const Arc& y) { return x.to == y.to; }), a.end());
        g.max_degree = std::max(g.max_degree, static_cast<int>(a.size()));
    }
    return g;
}

namespace {

template <class Adjacent, class Weight>
Graph build_intersection(const PointSet& points, const MetricKind& metric, Adjacent adjacent, Weight weight) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (adjacent(points[i], points[j]))
                edges.push_back({static_cast<int>(i), static_cast<int>(j), weight(points[i], points[j])});
    return graph_from_edges(points, metric, edges);
}

} // namespace

Graph build_udg(const PointSet& points, Norm weight_norm) {
    return build_intersection(
        points, MetricKind::make(Family::UDG, weight_norm),
        [](const Point2D& a, const Point2D& b) { return dist(a, b, Norm::l2()) <= 2.0; },
        [weight_norm](const Point2D& a, const Point2D& b) { return dist(a, b, weight_norm); });
}

Graph build_usg(const PointSet& points, Norm weight_norm) {
    return build_intersection(
        points, MetricKind::make(Family::USG, weight_norm),
        [](const Point2D& a, const Point2D& b) { return dist(a, b, Norm::linf()) <= 2.0; },
        [weight_norm](const Point2D& a, const Point2D& b) { return dist(a, b, weight_norm); });
}

Graph build_hop_udg(const PointSet& points) {
    return build_intersection(
        points, MetricKind::make(Family::HOP_UDG),
        [](const Point2D& a, const Point2D& b) { return dist(a, b, Norm::l2()) <= 2.0; },
        [](const Point2D&, const Point2D&) { return 1.0; });
}

Graph build_graph(const PointSet& points, const MetricKind& metric) {
    switch (metric.family) {
    case Family::UDG: return build_udg(points, metric.norm);
    case Family::USG: return build_usg(points, metric.norm);
    case Family::HOP_UDG: return build_hop_udg(points);
    }
    throw ParameterError("unknown family");
}

Graph induced_subgraph(const Graph& g, std::span<const int> vertices) {
    std::vector<int> local(g.n(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i > 0 && vertices[i] <= vertices[i - 1])
            throw ParameterError("induced_subgraph: vertices must be strictly increasing");
        local[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (const Arc& a : g.adj[static_cast<std::size_t>(vertices[i])]) {
            int j = local[static_cast<std::size_t>(a.to)];
            if (j > static_cast<int>(i)) edges.push_back({static_cast<int>(i), j, a.w});
        }
    return graph_from_edges(g.points.subset(vertices), g.metric, edges);
}

std::vector<int> components(const Adjacency& adj) {
    std::vector<int> label(adj.size(), -1);
    int next = 0;
    std::vector<int> stack;
    for (std::size_t s = 0; s < adj.size(); ++s) {
        if (label[s] >= 0) continue;
        label[s] = next;
        stack.push_back(static_cast<int>(s));
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (const Arc& a : adj[static_cast<std::size_t>(u)])
                if (label[static_cast<std::size_t>(a.to)] < 0) {
                    label[static_cast<std::size_t>(a.to)] = next;
                    stack.push_back(a.to);
                }
        }
        ++next;
    }
    return label;
}

std::vector<int> DistTable::path_to(int t) const {
    std::vector<int> path;
    if (!std::isfinite(dist[static_cast<std::size_t>(t)])) return path;
    for (int v = t; v >= 0; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

DistTable shortest_paths(const Adjacency& adj, int source) {
    const std::size_t n = adj.size();
    if (source < 0 || static_cast<std::size_t>(source) >= n) throw ParameterError("shortest_paths: source out of range");
    DistTable t;
    t.source = source;
    t.dist.assign(n, kInf);
    t.hops.assign(n, std::numeric_limits<int>::max());
    t.parent.assign(n, -1);
    std::vector<char> done(n, 0);
    using Key = std::tuple<double, int, int>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> pq;
    t.dist[static_cast<std::size_t>(source)] = 0.0;
    t.hops[static_cast<std::size_t>(source)] = 0;
    pq.emplace(0.0, 0, source);
    while (!pq.empty()) {
        auto [d, h, u] = pq.top();
        pq.pop();
        auto uu = static_cast<std::size_t>(u);
        if (done[uu]) continue;
        done[uu] = 1;
        for (const Arc& a : adj[uu]) {
            auto v = static_cast<std::size_t>(a.to);
            if (done[v]) continue;
            double nd = d + a.w;
            int nh = h + 1;
            bool better = nd < t.dist[v] || (nd == t.dist[v] && nh < t.hops[v]);
            if (better) {
                t.dist[v] = nd;
                t.hops[v] = nh;
                t.parent[v] = u;
                pq.emplace(nd, nh, a.to);
            } else if (nd == t.dist[v] && nh == t.hops[v] && u < t.parent[v]) {
                t.parent[v] = u;
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (!std::isfinite(t.dist[v])) t.hops[v] = -1;
    return t;
}

std::vector<double> nearest_distance(const Adjacency& adj, std::span<const int> sources) {
    std::vector<double> d(adj.size(), kInf);
    using Key = std::pair<double, int>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> pq;
    for (int s : sources) {
        d[static_cast<std::size_t>(s)] = 0.0;
        pq.emplace(0.0, s);
    }
    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (du > d[static_cast<std::size_t>(u)]) continue;
        for (const Arc& a : adj[static_cast<std::size_t>(u)]) {
            double nd = du + a.w;
            if (nd < d[static_cast<std::size_t>(a.to)]) {
                d[static_cast<std::size_t>(a.to)] = nd;
                pq.emplace(nd, a.to);
            }
        }
    }
    return d;
}

Clients Clients::unit(std::span<const int> vertices) {
    Clients c;
    c.vertex.assign(vertices.begin(), vertices.end());
    c.weight.assign(vertices.size(), 1.0);
    return c;
}

Clients Clients::all(std::size_t n) {
    Clients c;
    c.vertex.resize(n);
    std::iota(c.vertex.begin(), c.vertex.end(), 0);
    c.weight.assign(n, 1.0);
    return c;
}

double Clients::total_weight() const { return std::accumulate(weight.begin(), weight.end(), 0.0); }

double zpow(double x, int z) {
    double r = 1.0;
    for (int i = 0; i < z; ++i) r *= x;
    return r;
}

double cost(const Adjacency& adj, const Clients& clients, std::span<const int> centers, int z) {
    if (centers.empty()) throw ParameterError("cost: empty center set");
    if (z < 1) throw ParameterError("cost: z must be >= 1");
    auto d = nearest_distance(adj, centers);
    double total = 0.0;
    for (std::size_t i = 0; i < clients.size(); ++i)
        total += clients.weight[i] * zpow(d[static_cast<std::size_t>(clients.vertex[i])], z);
    return total;
}

double cost(const Graph& g, const Clients& clients, std::span<const int> centers, int z) {
    return cost(g.adj, clients, centers, z);
}

} // namespace igc
