#include "igc/decomposition.hpp"

#include "igc/errors.hpp"

#include <algorithm>
#include <deque>

namespace igc {

bool Region::contains(int v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }

int Region::local(int v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) return -1;
    return static_cast<int>(it - vertices.begin());
}

std::size_t DecompTree::leaf_count() const {
    return static_cast<std::size_t>(std::count_if(regions.begin(), regions.end(), [](const Region& r) { return r.leaf(); }));
}

bool DecompTree::marked(int v) const { return std::binary_search(X.begin(), X.end(), v); }

std::vector<std::vector<int>> split_at_marked(std::span<const int> path, const std::vector<char>& marked) {
    std::vector<std::size_t> cuts;
    for (std::size_t i = 0; i < path.size(); ++i)
        if (marked[static_cast<std::size_t>(path[i])]) cuts.push_back(i);
    if (cuts.empty()) return {std::vector<int>(path.begin(), path.end())};
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    spans.emplace_back(0, cuts.front());
    for (std::size_t k = 1; k < cuts.size(); ++k) spans.emplace_back(cuts[k - 1], cuts[k]);
    spans.emplace_back(cuts.back(), path.size() - 1);
    std::vector<std::vector<int>> out;
    for (auto [a, b] : spans) {
        // A single-vertex piece at either end repeats the neighbouring piece's endpoint.
        if (a == b && path.size() > 1) continue;
        out.emplace_back(path.begin() + static_cast<std::ptrdiff_t>(a), path.begin() + static_cast<std::ptrdiff_t>(b) + 1);
        if (a == b) break;
    }
    return out;
}

namespace {

int count_marked(const std::vector<int>& verts, const std::vector<char>& marked) {
    int c = 0;
    for (int v : verts) c += marked[static_cast<std::size_t>(v)];
    return c;
}

// Vertex sets of the connected components of adj restricted to `keep`.
std::vector<std::vector<int>> local_components(const Adjacency& adj, const std::vector<char>& keep) {
    std::vector<int> label(adj.size(), -1);
    std::vector<std::vector<int>> comps;
    for (std::size_t s = 0; s < adj.size(); ++s) {
        if (!keep[s] || label[s] >= 0) continue;
        std::vector<int> comp{static_cast<int>(s)};
        label[s] = static_cast<int>(comps.size());
        for (std::size_t k = 0; k < comp.size(); ++k)
            for (const Arc& a : adj[static_cast<std::size_t>(comp[k])]) {
                auto t = static_cast<std::size_t>(a.to);
                if (keep[t] && label[t] < 0) {
                    label[t] = label[s];
                    comp.push_back(a.to);
                }
            }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

} // namespace

DecompTree build_tree(const Graph& g, std::span<const int> X) {
    DecompTree tree;
    tree.X.assign(X.begin(), X.end());
    std::sort(tree.X.begin(), tree.X.end());
    tree.X.erase(std::unique(tree.X.begin(), tree.X.end()), tree.X.end());
    std::vector<char> marked(g.n(), 0);
    for (int x : tree.X) {
        if (x < 0 || static_cast<std::size_t>(x) >= g.n()) throw ParameterError("build_tree: marked vertex out of range");
        marked[static_cast<std::size_t>(x)] = 1;
    }

    Region root;
    root.vertices.resize(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) root.vertices[i] = static_cast<int>(i);
    root.x_count = count_marked(root.vertices, marked);
    tree.regions.push_back(std::move(root));

    auto add_child = [&](int parent, RegionKind kind, std::vector<int> verts) {
        Region r;
        r.id = static_cast<int>(tree.regions.size());
        r.parent = parent;
        r.depth = tree.regions[static_cast<std::size_t>(parent)].depth + 1;
        r.kind = kind;
        r.vertices = std::move(verts);
        r.x_count = count_marked(r.vertices, marked);
        tree.regions[static_cast<std::size_t>(parent)].children.push_back(r.id);
        tree.depth = std::max(tree.depth, r.depth);
        tree.regions.push_back(std::move(r));
    };

    std::deque<int> queue{0};
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        if (tree.regions[static_cast<std::size_t>(id)].x_count <= 2) continue;

        std::vector<int> verts = tree.regions[static_cast<std::size_t>(id)].vertices;
        Graph gi = induced_subgraph(g, verts);
        std::vector<std::vector<int>> parts;
        RegionKind kind = RegionKind::Component;

        auto comp = components(gi.adj);
        if (*std::max_element(comp.begin(), comp.end()) > 0) {
            // G[R] itself is disconnected: its components become the children directly.
            std::vector<char> all(gi.n(), 1);
            parts = local_components(gi.adj, all);
            for (auto& part : parts)
                for (int& v : part) v = verts[static_cast<std::size_t>(v)];
            for (auto& part : parts) add_child(id, kind, std::move(part));
        } else {
            PlanarSpanner hi = family_spanner(gi);
            std::vector<double> w(gi.n());
            for (std::size_t i = 0; i < gi.n(); ++i) w[i] = marked[static_cast<std::size_t>(verts[i])];
            SeparatorResult sep = sp_separator(hi, w);

            std::vector<char> keep(gi.n(), 1);
            for (int v : sep.vertices()) keep[static_cast<std::size_t>(v)] = 0;
            parts = local_components(hi.h.adj, keep);
            for (auto& part : parts) {
                for (int& v : part) v = verts[static_cast<std::size_t>(v)];
                add_child(id, RegionKind::Component, std::move(part));
            }
            Region& r = tree.regions[static_cast<std::size_t>(id)];
            r.balance = sep.balance;
            for (const auto& p : sep.paths) {
                std::vector<int> global(p.size());
                for (std::size_t k = 0; k < p.size(); ++k) global[k] = verts[static_cast<std::size_t>(p[k])];
                r.paths.push_back(global);
            }
            r.g_local = std::move(gi);
            r.h_local = std::move(hi);
            auto paths = r.paths; // add_child may reallocate `regions`
            for (const auto& p : paths)
                for (auto piece : split_at_marked(p, marked)) {
                    std::sort(piece.begin(), piece.end());
                    add_child(id, RegionKind::Subpath, std::move(piece));
                }
        }
        for (int c : tree.regions[static_cast<std::size_t>(id)].children) queue.push_back(c);
    }
    return tree;
}

std::vector<int> root_leaf_path(const DecompTree& tree, int s) {
    std::vector<int> chain{0};
    if (!tree.root().contains(s)) throw ParameterError("root_leaf_path: vertex out of range");
    for (;;) {
        const Region& r = tree[chain.back()];
        int next = -1;
        for (int c : r.children)
            if (tree[c].contains(s)) {
                next = c;
                break;
            }
        if (next < 0) break;
        chain.push_back(next);
    }
    return chain;
}

SeparatingVertex separating_vertex(const DecompTree& tree, const Graph& g, int p, int s) {
    SeparatingVertex out;
    DistTable t = shortest_paths(g, p);
    if (!std::isfinite(t.dist[static_cast<std::size_t>(s)]))
        throw PreconditionError("separating_vertex: p and s are disconnected");
    out.pi = t.path_to(s);
    auto chain = root_leaf_path(tree, s);
    auto holds_pi = [&](const Region& r) {
        return std::all_of(out.pi.begin(), out.pi.end(), [&](int v) { return r.contains(v); });
    };
    std::size_t level = 0;
    while (level + 1 < chain.size() && holds_pi(tree[chain[level + 1]])) ++level;
    const Region& ri = tree[chain[level]];
    if (ri.leaf()) {
        out.same_leaf = true;
        out.region = ri.id;
        return out;
    }
    if (!ri.has_separator()) throw ConsistencyError("separating_vertex: path spans a region without separator");
    out.region = ri.id;
    out.s_child = chain[level + 1];

    // p's child: prefer one that does not contain s.
    for (int c : ri.children)
        if (tree[c].contains(p) && !tree[c].contains(s)) {
            out.p_child = c;
            break;
        }
    if (out.p_child < 0)
        for (int c : ri.children)
            if (tree[c].contains(p)) {
                out.p_child = c;
                break;
            }
    const Region& rp = tree[out.p_child];
    std::size_t k = 0;
    if (!rp.contains(s)) {
        for (std::size_t i = 0; i < out.pi.size(); ++i)
            if (rp.contains(out.pi[i])) k = i;
    } else {
        while (k + 1 < out.pi.size() && rp.contains(out.pi[k + 1])) ++k;
    }
    if (k + 1 >= out.pi.size()) throw ConsistencyError("separating_vertex: no exit from p's child");
    out.u = out.pi[k];
    out.v = out.pi[k + 1];

    const Graph& h = ri.h_local->h;
    int lu = ri.local(out.u), lv = ri.local(out.v);
    auto route = shortest_paths(h.adj, lu).path_to(lv);
    if (route.empty()) throw ConsistencyError("separating_vertex: spanner disconnects u and v");
    for (int lx : route) {
        int x = ri.vertices[static_cast<std::size_t>(lx)];
        for (std::size_t j = 0; j < ri.paths.size(); ++j)
            if (std::find(ri.paths[j].begin(), ri.paths[j].end(), x) != ri.paths[j].end()) {
                out.x = x;
                out.path = static_cast<int>(j);
                return out;
            }
    }
    throw ConsistencyError("separating_vertex: no separator vertex between u and v");
}

} // namespace igc
