#include "igc/kernels.hpp"

#include "igc/errors.hpp"

#include <limits>

#include <omp.h>

namespace igc {

namespace {

void fill_row(DistMatrix& m, const Adjacency& adj, std::size_t s) {
    DistTable t = shortest_paths(adj, static_cast<int>(s));
    std::copy(t.dist.begin(), t.dist.end(), m.dist.begin() + static_cast<std::ptrdiff_t>(s * m.n));
    std::copy(t.hops.begin(), t.hops.end(), m.hops.begin() + static_cast<std::ptrdiff_t>(s * m.n));
}

DistMatrix empty_matrix(std::size_t n) {
    DistMatrix m;
    m.n = n;
    m.dist.assign(n * n, std::numeric_limits<double>::infinity());
    m.hops.assign(n * n, -1);
    return m;
}

} // namespace

DistMatrix apsp(const Adjacency& adj) {
    DistMatrix m = empty_matrix(adj.size());
    const auto n = static_cast<std::ptrdiff_t>(adj.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t s = 0; s < n; ++s) fill_row(m, adj, static_cast<std::size_t>(s));
    return m;
}

DistMatrix apsp_serial(const Adjacency& adj) {
    DistMatrix m = empty_matrix(adj.size());
    for (std::size_t s = 0; s < adj.size(); ++s) fill_row(m, adj, s);
    return m;
}

double matrix_cost(const DistMatrix& d, const Clients& clients, std::span<const int> centers, int z) {
    if (centers.empty()) throw ParameterError("cost: empty center set");
    double total = 0.0;
    for (std::size_t i = 0; i < clients.size(); ++i) {
        auto p = static_cast<std::size_t>(clients.vertex[i]);
        double best = std::numeric_limits<double>::infinity();
        for (int c : centers) best = std::min(best, d(p, static_cast<std::size_t>(c)));
        total += clients.weight[i] * zpow(best, z);
    }
    return total;
}

std::vector<double> batch_cost(const DistMatrix& d, const Clients& clients,
                               const std::vector<std::vector<int>>& center_sets, int z) {
    for (const auto& c : center_sets)
        if (c.empty()) throw ParameterError("cost: empty center set");
    std::vector<double> out(center_sets.size());
    const auto m = static_cast<std::ptrdiff_t>(center_sets.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m; ++i)
        out[static_cast<std::size_t>(i)] = matrix_cost(d, clients, center_sets[static_cast<std::size_t>(i)], z);
    return out;
}

std::vector<double> batch_cost_serial(const DistMatrix& d, const Clients& clients,
                                      const std::vector<std::vector<int>>& center_sets, int z) {
    std::vector<double> out;
    out.reserve(center_sets.size());
    for (const auto& c : center_sets) out.push_back(matrix_cost(d, clients, c, z));
    return out;
}

int kernel_threads() { return omp_get_max_threads(); }

} // namespace igc
