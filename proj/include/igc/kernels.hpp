#pragma once

// Hot loops with an OpenMP version and a serial reference. The two produce
// identical results; tests compare them and igc_bench times them.

#include "igc/graphs.hpp"

#include <span>
#include <vector>

namespace igc {

/// Dense all-pairs distances with hop counts of the canonical paths.
struct DistMatrix {
    std::size_t n = 0;
    std::vector<double> dist;
    std::vector<int> hops;

    double operator()(std::size_t u, std::size_t v) const { return dist[u * n + v]; }
    int hop(std::size_t u, std::size_t v) const { return hops[u * n + v]; }
    std::span<const double> row(std::size_t u) const { return {dist.data() + u * n, n}; }
};

DistMatrix apsp(const Adjacency& adj);
DistMatrix apsp_serial(const Adjacency& adj);

/// Cost of each center set (rows of `center_sets`, each of size k) against
/// the weighted clients, using precomputed distances.
std::vector<double> batch_cost(const DistMatrix& d, const Clients& clients,
                               const std::vector<std::vector<int>>& center_sets, int z);
std::vector<double> batch_cost_serial(const DistMatrix& d, const Clients& clients,
                                      const std::vector<std::vector<int>>& center_sets, int z);

/// Cost of one center set against precomputed distances.
double matrix_cost(const DistMatrix& d, const Clients& clients, std::span<const int> centers, int z);

/// Threads OpenMP will use for the parallel kernels.
int kernel_threads();

} // namespace igc
