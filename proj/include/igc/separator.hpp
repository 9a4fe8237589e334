#pragma once

#include "igc/spanner.hpp"

#include <span>
#include <vector>

namespace igc {

inline constexpr int kMaxSeparatorPaths = 2;
inline constexpr double kSeparatorBalance = 2.0 / 3.0;

/// Up to two vertex-disjoint shortest paths of H. `balance` is the heaviest
/// remaining component divided by the total weight.
struct SeparatorResult {
    std::vector<std::vector<int>> paths;
    double balance = 0.0;
    int root = -1;

    int b() const { return static_cast<int>(paths.size()); }
    std::vector<int> vertices() const; // sorted union of the paths
};

/// Fundamental-cycle separator from a shortest-path tree of h.
/// Throws TrivialRegion when the total weight is below 3 and
/// ConsistencyError if no candidate reaches the 2/3 bound.
SeparatorResult sp_separator(const PlanarSpanner& h, std::span<const double> weights);

/// Heaviest component of h after deleting `removed` (sorted).
double max_component_weight(const Adjacency& adj, std::span<const double> weights, std::span<const int> removed);

} // namespace igc
