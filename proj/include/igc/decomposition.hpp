#pragma once

#include "igc/separator.hpp"

#include <optional>
#include <span>
#include <vector>

namespace igc {

enum class RegionKind { Root, Component, Subpath };

/// Node of the decomposition tree. Vertex ids are global graph indices.
/// Internal regions with a separator also keep G[R] and its spanner, both
/// in local numbering (position in `vertices`).
struct Region {
    int id = 0;
    int parent = -1;
    int depth = 0;
    RegionKind kind = RegionKind::Root;
    std::vector<int> vertices; // sorted
    std::vector<int> children;
    int x_count = 0;

    std::optional<Graph> g_local;
    std::optional<PlanarSpanner> h_local;
    std::vector<std::vector<int>> paths; // separator paths, global ids
    double balance = 0.0;

    bool leaf() const { return children.empty(); }
    bool contains(int v) const;
    /// Position of v in `vertices`, or -1.
    int local(int v) const;
    bool has_separator() const { return h_local.has_value(); }
};

struct DecompTree {
    std::vector<Region> regions;
    std::vector<int> X; // sorted marked vertices
    int depth = 0;

    const Region& root() const { return regions.front(); }
    const Region& operator[](int id) const { return regions[static_cast<std::size_t>(id)]; }
    std::size_t leaf_count() const;
    bool marked(int v) const;
};

/// Recursive separator decomposition until every region holds <= 2 marked vertices.
DecompTree build_tree(const Graph& g, std::span<const int> X);

/// Region ids from the root down to a leaf, all containing s. Where several
/// children contain s the smallest id is taken.
std::vector<int> root_leaf_path(const DecompTree& tree, int s);

struct SeparatingVertex {
    bool same_leaf = false;
    int region = -1;   // R_i, lowest region on s's chain holding all of pi_G(p, s)
    int path = -1;     // index into region.paths
    int x = -1, u = -1, v = -1;
    int p_child = -1, s_child = -1;
    std::vector<int> pi; // canonical pi_G(p, s)
};

SeparatingVertex separating_vertex(const DecompTree& tree, const Graph& g, int p, int s);

/// Subpath pieces of a separator path after breaking at marked vertices.
std::vector<std::vector<int>> split_at_marked(std::span<const int> path, const std::vector<char>& marked);

} // namespace igc
