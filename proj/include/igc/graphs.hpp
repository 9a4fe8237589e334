#pragma once

#include "igc/geometry.hpp"

#include <span>
#include <string>
#include <vector>

namespace igc {

enum class Family { UDG, USG, HOP_UDG };

/// Graph family, edge-weight norm and the locally Euclidean constants that
/// hold for that combination.
struct MetricKind {
    Family family = Family::UDG;
    Norm norm = Norm::l2();
    double c1 = 2.0, c2 = 2.0, c3 = 1.0, c4 = 1.0;
    double c1p = 2.0 / 3.0; // lower bound on d_G / hops for pairs two or more hops apart
    double c2p = 2.0;       // upper bound on any edge weight

    static MetricKind make(Family family, Norm norm = Norm::l2());
    /// Accepts udg-l2, udg-l1, udg-linf, usg-linf, usg-l2, usg-l1, hop-udg,
    /// and udg-l<p> / usg-l<p> for real p >= 1.
    static MetricKind parse(const std::string& name);
    std::string name() const;
    bool weighted() const { return family != Family::HOP_UDG; }
};

struct Arc {
    int to = 0;
    double w = 0.0;
};
using Adjacency = std::vector<std::vector<Arc>>;

struct Edge {
    int u = 0;
    int v = 0;
    double w = 0.0;
};

/// Intersection graph over a point set. Vertex i is points[i].
struct Graph {
    PointSet points;
    MetricKind metric;
    Adjacency adj;
    int max_degree = 0;

    std::size_t n() const { return adj.size(); }
    std::size_t edge_count() const;
    /// Each undirected edge once, u < v, sorted.
    std::vector<Edge> edges() const;
    bool has_edge(int u, int v) const;
    /// Weight of edge uv or +inf.
    double weight(int u, int v) const;
};

Graph build_udg(const PointSet& points, Norm weight_norm = Norm::l2());
Graph build_usg(const PointSet& points, Norm weight_norm = Norm::linf());
Graph build_hop_udg(const PointSet& points);
Graph build_graph(const PointSet& points, const MetricKind& metric);

/// Assemble a graph from an explicit edge list (sorted adjacency, symmetric).
Graph graph_from_edges(const PointSet& points, const MetricKind& metric, std::span<const Edge> edges);

/// G[vertices] with vertices renumbered 0..|vertices|-1 in the given (ascending) order.
Graph induced_subgraph(const Graph& g, std::span<const int> vertices);

/// Connected component label per vertex, labels 0.. in order of smallest vertex.
std::vector<int> components(const Adjacency& adj);

/// Single-source shortest paths. Ties on weight go to fewer hops, then to
/// the smallest parent index, so every path is canonical.
struct DistTable {
    int source = 0;
    std::vector<double> dist;
    std::vector<int> hops;
    std::vector<int> parent; // -1 for the source and unreachable vertices

    bool reachable(int v) const { return parent[static_cast<std::size_t>(v)] >= 0 || v == source; }
    /// Vertices from source to t inclusive; empty if unreachable.
    std::vector<int> path_to(int t) const;
};

DistTable shortest_paths(const Adjacency& adj, int source);
inline DistTable shortest_paths(const Graph& g, int source) { return shortest_paths(g.adj, source); }

/// Distance from every vertex to its nearest source (multi-source Dijkstra).
std::vector<double> nearest_distance(const Adjacency& adj, std::span<const int> sources);

/// Weighted client multiset over vertices.
struct Clients {
    std::vector<int> vertex;
    std::vector<double> weight;

    std::size_t size() const { return vertex.size(); }
    static Clients unit(std::span<const int> vertices);
    static Clients all(std::size_t n);
    double total_weight() const;
};

/// Sum over clients of weight * d(p, centers)^z.
double cost(const Graph& g, const Clients& clients, std::span<const int> centers, int z);
double cost(const Adjacency& adj, const Clients& clients, std::span<const int> centers, int z);

/// x^z for integral z >= 1, with inf^z = inf.
double zpow(double x, int z);

} // namespace igc
