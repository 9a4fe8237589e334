#include "igc/separator.hpp"

#include "igc/errors.hpp"
#include "igc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace igc {

std::vector<int> SeparatorResult::vertices() const {
    std::vector<int> all;
    for (const auto& p : paths) all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

double max_component_weight(const Adjacency& adj, std::span<const double> weights, std::span<const int> removed) {
    std::vector<char> seen(adj.size(), 0);
    for (int r : removed) seen[static_cast<std::size_t>(r)] = 1;
    double worst = 0.0;
    std::vector<int> stack;
    for (std::size_t s = 0; s < adj.size(); ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        double w = 0.0;
        stack.push_back(static_cast<int>(s));
        while (!stack.empty()) {
            auto u = static_cast<std::size_t>(stack.back());
            stack.pop_back();
            w += weights[u];
            for (const Arc& a : adj[u])
                if (!seen[static_cast<std::size_t>(a.to)]) {
                    seen[static_cast<std::size_t>(a.to)] = 1;
                    stack.push_back(a.to);
                }
        }
        worst = std::max(worst, w);
    }
    return worst;
}

namespace {

bool is_ancestor(const DistTable& t, int a, int v) {
    for (; v >= 0; v = t.parent[static_cast<std::size_t>(v)])
        if (v == a) return true;
    return false;
}

// Tree paths root->u and the part of root->v below their common ancestor.
std::vector<std::vector<int>> candidate_paths(const DistTable& t, int u, int v) {
    if (is_ancestor(t, u, v)) return {t.path_to(v)};
    if (is_ancestor(t, v, u)) return {t.path_to(u)};
    std::vector<int> pu = t.path_to(u);
    std::vector<int> pv = t.path_to(v);
    std::size_t k = 0;
    while (k < pu.size() && k < pv.size() && pu[k] == pv[k]) ++k;
    return {pu, std::vector<int>(pv.begin() + static_cast<std::ptrdiff_t>(k), pv.end())};
}

double path_weight(const Graph& h, const std::vector<int>& p) {
    double w = 0.0;
    for (std::size_t i = 1; i < p.size(); ++i) w += h.weight(p[i - 1], p[i]);
    return w;
}

} // namespace

SeparatorResult sp_separator(const PlanarSpanner& sp, std::span<const double> weights) {
    const Graph& h = sp.h;
    const std::size_t n = h.n();
    if (weights.size() != n) throw ParameterError("sp_separator: weight vector size mismatch");
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (total < 3.0) throw TrivialRegion("sp_separator: total weight below 3");
    auto comp = components(h.adj);
    if (*std::max_element(comp.begin(), comp.end()) != 0) throw PreconditionError("sp_separator: spanner is disconnected");

    // Root: largest weighted eccentricity, smallest index on ties.
    DistMatrix d = apsp(h.adj);
    int root = 0;
    double best_ecc = -1.0;
    for (std::size_t v = 0; v < n; ++v) {
        double ecc = 0.0;
        for (std::size_t u = 0; u < n; ++u)
            if (weights[u] > 0.0) ecc = std::max(ecc, d(v, u));
        if (ecc > best_ecc) {
            best_ecc = ecc;
            root = static_cast<int>(v);
        }
    }
    DistTable tree = shortest_paths(h.adj, root);

    std::vector<std::pair<int, int>> cands;
    for (std::size_t u = 0; u < n; ++u) cands.emplace_back(static_cast<int>(u), static_cast<int>(u));
    for (const Edge& e : h.edges())
        if (tree.parent[static_cast<std::size_t>(e.u)] != e.v && tree.parent[static_cast<std::size_t>(e.v)] != e.u)
            cands.emplace_back(e.u, e.v);
    Triangulation tri = h.metric.family == Family::USG ? linf_delaunay(h.points) : l2_delaunay(h.points);
    cands.insert(cands.end(), tri.edges.begin(), tri.edges.end());

    double best = std::numeric_limits<double>::infinity();
    std::pair<int, int> arg{root, root};
    auto consider = [&](int u, int v) {
        auto paths = candidate_paths(tree, u, v);
        std::vector<int> removed;
        for (const auto& p : paths) removed.insert(removed.end(), p.begin(), p.end());
        double w = max_component_weight(h.adj, weights, removed);
        if (w < best) {
            best = w;
            arg = {u, v};
        }
    };
    for (auto [u, v] : cands) consider(u, v);
    if (best > kSeparatorBalance * total)
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) consider(static_cast<int>(u), static_cast<int>(v));

    SeparatorResult r;
    r.root = root;
    r.paths = candidate_paths(tree, arg.first, arg.second);
    r.balance = best / total;
    for (const auto& p : r.paths) {
        DistTable check = shortest_paths(h.adj, p.front());
        double w = path_weight(h, p);
        double ref = check.dist[static_cast<std::size_t>(p.back())];
        if (std::abs(w - ref) > 1e-9 * std::max(1.0, ref))
            throw ConsistencyError("sp_separator: emitted path is not a shortest path");
    }
    if (r.balance > kSeparatorBalance + 1e-12)
        throw ConsistencyError("sp_separator: balance " + std::to_string(r.balance) + " exceeds 2/3");
    return r;
}

} // namespace igc
