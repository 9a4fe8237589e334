#pragma once

#include "igc/graphs.hpp"

#include <array>
#include <utility>
#include <vector>

namespace igc {

struct Triangulation {
    std::vector<std::pair<int, int>> edges; // u < v, sorted
    std::vector<std::array<int, 3>> triangles;
};

/// Delaunay graph: pq is an edge iff some circle through p and q has no
/// other point strictly inside. Predicates run on perturbed coordinates.
Triangulation l2_delaunay(const PointSet& points);
/// l_inf Delaunay graph via empty axis-parallel squares.
Triangulation linf_delaunay(const PointSet& points);

/// Subgraph of a host graph with a declared stretch bound alpha.
/// `h` shares the host's vertex numbering and points.
struct PlanarSpanner {
    Graph h;
    double alpha = 1.0;
};

inline constexpr double kUdgStretch = 2.42;
inline constexpr double kUsgStretch = 3.0;

/// Delaunay edges of l2 length <= 2, weighted by l2 length.
PlanarSpanner udg_spanner(const Graph& g);
/// l_inf Delaunay edges that are USG edges, weighted by l_inf length.
PlanarSpanner usg_spanner(const Graph& g);
/// Adapts a base spanner (l2 for UDG, l_inf for USG) to the host's weight norm.
PlanarSpanner lp_spanner(const Graph& g, const PlanarSpanner& base);
/// Spanner appropriate for g's family and norm. For hop-UDG the unit-weight
/// UDG Delaunay spanner is returned with alpha set to its measured stretch.
PlanarSpanner family_spanner(const Graph& g);
/// family_spanner of G[subset]; vertices are renumbered as in induced_subgraph.
PlanarSpanner induced_spanner(const Graph& g, std::span<const int> subset);

/// max d_H / d_G over pairs connected in G; +inf if H disconnects such a pair.
double verify_stretch(const Graph& g, const Graph& h);
inline double verify_stretch(const Graph& g, const PlanarSpanner& s) { return verify_stretch(g, s.h); }

/// Number of pairs of edges whose segments cross properly (perturbed coordinates).
std::size_t crossing_count(const Graph& h);
/// Zero crossings and |E| <= 3|V| - 6 (for |V| >= 3).
bool is_planar_embedding(const Graph& h);

/// max over host edges ab of d_H(a,b) - (2 D(a,b) + delta(a,b)).
double usg_edge_bound_excess(const Graph& g, const Graph& h);

} // namespace igc
