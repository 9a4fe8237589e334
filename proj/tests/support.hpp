#pragma once

// Shared fixtures and brute-force oracles for the test binaries.

#include "igc/rng.hpp"
#include "igc/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace igc::test {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline PointSet random_points(std::size_t n, double side, std::uint64_t seed) {
    CounterRng rng = CounterRng::derive(seed, "test-points");
    std::vector<Point2D> pts;
    for (std::size_t i = 0; i < n; ++i) {
        double x = rng.uniform(0.0, side);
        double y = rng.uniform(0.0, side);
        pts.push_back({static_cast<std::int64_t>(i), x, y});
    }
    return PointSet(std::move(pts));
}

/// Floyd-Warshall over an adjacency list.
inline std::vector<std::vector<double>> floyd(const Adjacency& adj) {
    const std::size_t n = adj.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (std::size_t u = 0; u < n; ++u) {
        d[u][u] = 0.0;
        for (const Arc& a : adj[u]) d[u][static_cast<std::size_t>(a.to)] = std::min(d[u][static_cast<std::size_t>(a.to)], a.w);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (d[i][k] < kInf)
                for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

/// Bellman-Ford distances from one source over an explicit edge list.
inline std::vector<double> bellman_ford(std::size_t n, const std::vector<Edge>& edges, int source) {
    std::vector<double> d(n, kInf);
    d[static_cast<std::size_t>(source)] = 0.0;
    for (std::size_t it = 0; it + 1 < n + 1; ++it) {
        bool changed = false;
        for (const Edge& e : edges) {
            auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
            if (d[u] + e.w < d[v]) { d[v] = d[u] + e.w; changed = true; }
            if (d[v] + e.w < d[u]) { d[u] = d[v] + e.w; changed = true; }
        }
        if (!changed) break;
    }
    return d;
}

/// Union-find component count after deleting `removed` vertices, returning the heaviest component weight.
inline double heaviest_after_removal(const Adjacency& adj, const std::vector<double>& w, const std::vector<int>& removed) {
    const std::size_t n = adj.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    std::vector<char> gone(n, 0);
    for (int r : removed) gone[static_cast<std::size_t>(r)] = 1;
    for (std::size_t u = 0; u < n; ++u)
        for (const Arc& a : adj[u])
            if (!gone[u] && !gone[static_cast<std::size_t>(a.to)]) parent[static_cast<std::size_t>(find(static_cast<int>(u)))] = find(a.to);
    std::vector<double> sum(n, 0.0);
    for (std::size_t u = 0; u < n; ++u)
        if (!gone[u]) sum[static_cast<std::size_t>(find(static_cast<int>(u)))] += w[u];
    return *std::max_element(sum.begin(), sum.end());
}

/// Direct evaluation of sum w * min_c d^z from a dense matrix.
inline double dense_cost(const std::vector<std::vector<double>>& d, const Clients& X, const std::vector<int>& C, int z) {
    double t = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        double best = kInf;
        for (int c : C) best = std::min(best, d[static_cast<std::size_t>(X.vertex[i])][static_cast<std::size_t>(c)]);
        t += X.weight[i] * std::pow(best, z);
    }
    return t;
}

/// Stirling numbers of the second kind by the recurrence.
inline double stirling2(int n, int k) {
    std::vector<std::vector<double>> S(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(k + 1), 0.0));
    S[0][0] = 1.0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= std::min(i, k); ++j)
            S[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                j * S[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] + S[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    return S[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

} // namespace igc::test
