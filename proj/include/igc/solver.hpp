#pragma once

#include "igc/coreset.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace igc {

struct ClusteringResult {
    std::vector<int> centers; // sorted, exactly k distinct vertices
    double cost = 0.0;        // on the full client set
    std::string method;
    double seconds = 0.0;
    std::size_t coreset_size = 0;
    std::uint64_t partitions = 0; // fpt: partitions visited; brute: subsets visited
};

inline constexpr double kFptBudgetBits = 24.0;
inline constexpr double kBruteBudget = 1e6;

struct FptOptions {
    double delta = 0.1;
    double size_constant = kDefaultSizeConstant;
};

/// Coreset, then every partition of the coreset into at most k groups
/// (restricted-growth strings) with the best center per group over V.
ClusteringResult fpt_cluster(const DistMatrix& d, const Clients& X, int k, int z, double eps, std::uint64_t seed,
                             const FptOptions& opt = {});
ClusteringResult fpt_cluster_serial(const DistMatrix& d, const Clients& X, int k, int z, double eps,
                                    std::uint64_t seed, const FptOptions& opt = {});

/// Best solution over a fixed weighted set by partition enumeration (no sampling).
ClusteringResult partition_search(const DistMatrix& d, const Clients& Y, int k, int z);
ClusteringResult partition_search_serial(const DistMatrix& d, const Clients& Y, int k, int z);

/// Exact optimum over all k-subsets of V.
ClusteringResult brute_force(const DistMatrix& d, const Clients& X, int k, int z);
ClusteringResult brute_force_serial(const DistMatrix& d, const Clients& X, int k, int z);

/// Calls `visit` with every restricted-growth string of length m using at most
/// k distinct labels. Returns the number visited.
std::uint64_t for_each_partition(int m, int k, const std::function<void(std::span<const int>)>& visit);

/// C(n, k) as a double (saturates rather than overflowing).
double binomial(std::size_t n, std::size_t k);

} // namespace igc
