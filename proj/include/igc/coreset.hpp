#pragma once

#include "igc/kernels.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace igc {

struct ApproxSolution {
    std::vector<int> centers;    // sorted
    std::vector<int> assignment; // per client: index into centers
    double cost = 0.0;
};

/// D^z seeding followed by best-improvement single-swap local search over V.
/// k = 1 is solved exactly.
ApproxSolution approx_solution(const DistMatrix& d, const Clients& X, int k, int z, std::uint64_t seed);
ApproxSolution approx_solution(const Graph& g, const Clients& X, int k, int z, std::uint64_t seed);

struct CoresetParams {
    double eps = 0.2;
    double delta = 0.1;
    int z = 1;
    int k = 1;
    std::size_t m = 0;
    std::uint64_t seed = 0;
};

struct WeightedCoreset {
    std::vector<int> members; // sorted vertex ids
    std::vector<double> weights;
    CoresetParams params;
    std::vector<std::size_t> stage_sizes; // sizes of X_1..X_t and the final set

    Clients as_clients() const { return {members, weights}; }
    double total_weight() const;
};

/// Importance sampling with sigma(p) = w cost(p,A)/cost(X,A) + w/(k W(cluster_A(p))).
/// m draws; repeated draws of a vertex are merged.
WeightedCoreset sensitivity_coreset(const DistMatrix& d, const Clients& X, const ApproxSolution& A,
                                    int k, int z, std::size_t m, std::uint64_t seed);

/// ceil(c k log2(k+1)^2 / eps^2)
std::size_t desk_sample_size(int k, double eps, double c);
inline constexpr double kDefaultSizeConstant = 20.0;

/// log2 applied i times; log^(0) n = n.
double iterated_log(double n, int i);

struct ReductionSchedule {
    int t = 0;
    double rho = 2.0;
    double threshold = 0.0;
    std::vector<double> eps_i;        // i = 1..t
    std::vector<double> delta_i;
    std::vector<std::size_t> target; // nominal |X_i|
    double product = 1.0;             // prod (1 + eps_i)
    double sum = 0.0;
};

double default_rho(int z);
ReductionSchedule reduction_schedule(std::size_t n, int k, int z, double eps, double delta, double rho = 0.0,
                                     double size_constant = kDefaultSizeConstant);

/// Chains sensitivity_coreset through the reduction schedule, then a final pass at eps.
WeightedCoreset iterative_coreset(const DistMatrix& d, const Clients& X, int k, int z, double eps, double delta,
                                  std::uint64_t seed, double size_constant = kDefaultSizeConstant);

struct TrialResult {
    int trial = 0;
    double true_cost = 0.0;
    double coreset_cost = 0.0;
    double rel_err = 0.0;
};

struct CoresetReport {
    std::vector<TrialResult> trials;
    double max_rel_err = 0.0;
};

/// k-center sets for verification: even trials uniform, odd trials drawn
/// near the centers of `near` (empty `near` gives uniform only).
std::vector<std::vector<int>> verification_center_sets(const DistMatrix& d, int k, int trials,
                                                       std::span<const int> near, std::uint64_t seed);

CoresetReport verify_coreset(const DistMatrix& d, const Clients& X, const WeightedCoreset& Y, int z,
                             const std::vector<std::vector<int>>& center_sets);
CoresetReport verify_coreset_serial(const DistMatrix& d, const Clients& X, const WeightedCoreset& Y, int z,
                                    const std::vector<std::vector<int>>& center_sets);

double relative_error(double truth, double estimate);

} // namespace igc
