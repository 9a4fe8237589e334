#pragma once

#include "igc/decomposition.hpp"
#include "igc/kernels.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace igc {

/// Constants for the centroid construction. `paper` uses the published
/// values; `desk` shrinks them so hop limits and nets fit small instances.
struct CentroidConfig {
    double eps = 0.3;
    int z = 1;
    double gamma_support = 2.0;
    double gamma_landmark = 2.0;

    static CentroidConfig paper(double eps, int z) { return {eps, z, 1600.0, 1539.0}; }
    static CentroidConfig desk(double eps, int z, double gs = 2.0, double gl = 2.0) { return {eps, z, gs, gl}; }
    void validate() const;
};

/// Grid quotient of G: one special vertex per occupied cell of side mu,
/// adjacent when some G edge joins their cells.
struct SupportGraph {
    double mu = 0.0;
    std::vector<int> f;                 // vertex -> special vertex of its cell
    std::vector<int> special;           // sorted
    std::vector<std::vector<int>> adj;  // indexed by vertex, empty for non-special
    int max_degree = 0;
    long degree_bound = 0;
};

SupportGraph build_support_graph(const Graph& g, double mu);

/// floor(gamma * z * alpha * c2' / (c1' * eps))
long support_hop_limit(const MetricKind& m, double alpha, double eps, int z, double gamma);
/// mu = eps / (gamma * z)
double landmark_mu(double eps, int z, double gamma);
/// K such that a mu-net of a radius-r ball has at most K * max(r, mu)^2 / mu^2 points.
double mu_net_constant(const MetricKind& m);
double mu_net_size_bound(const MetricKind& m, double r, double mu);
/// eps / (z * log2(z / eps))
double errorbound_factor(double eps, int z);

inline constexpr std::int64_t kClamped = INT64_MAX;
/// Nearest multiple of `unit` to d (ties downward) as an integer count, or
/// kClamped when that multiple reaches `clamp`.
std::int64_t round_clamped(double d, double unit, double clamp);

enum class TupleKind { TUPLE1, TUPLE2, LEAF };

struct RoundedTuple {
    TupleKind kind = TupleKind::LEAF;
    int region = -1;
    int path = -1;
    std::array<int, 3> anchors{-1, -1, -1}; // (q1, q2, -1) or (q1, q3, q4) with -1 for undefined
    std::vector<std::pair<int, std::int64_t>> entries;

    friend auto operator<=>(const RoundedTuple&, const RoundedTuple&) = default;
};
using TupleBundle = std::vector<RoundedTuple>;

struct LandmarkSet {
    int region = -1, path = -1, q1 = -1, q2 = -1;
    double D = 0.0;
    std::vector<int> Q;         // path vertices within D / mu^2 of q1, path order
    std::vector<int> landmarks; // sorted
};

struct NetBall {
    int center = -1;
    double radius = 0.0;
    double mu = 0.0;
    std::vector<int> ball;
    std::vector<int> net;
};

enum class Rule { NET, NET_SUB, SUPPORT, LANDMARK };
const char* rule_name(Rule r);

struct Replacement {
    std::vector<int> S;       // sorted input centers
    std::vector<int> rho;     // replacement per entry of S
    std::vector<Rule> rule;
    std::vector<int> S_tilde; // sorted distinct replacements
};

struct ErrorAudit {
    struct Failure {
        int p = -1;
        double cost_S = 0.0, cost_tilde = 0.0, cost_A = 0.0, bound = 0.0;
    };
    std::size_t relevant = 0;
    std::size_t passed = 0;
    std::vector<Failure> failures;
};

/// Builds C_net, C_support and C_landmark for a fixed (X, A) and answers
/// replacement queries against them.
class CentroidBuilder {
public:
    CentroidBuilder(const Graph& g, std::vector<int> X, std::vector<int> A, CentroidConfig cfg);

    const Graph& graph() const { return g_; }
    const CentroidConfig& config() const { return cfg_; }
    const DistMatrix& dist() const { return d_; }
    double dA(int v) const { return dA_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& X() const { return X_; }
    const std::vector<int>& A() const { return A_; }
    const DecompTree& tree() const { return tree_; }
    const SupportGraph& support() const { return support_; }
    double alpha() const { return alpha_; }
    long ell() const { return ell_; }
    double mu() const { return mu_; }

    const std::vector<NetBall>& balls() const { return balls_; }
    const std::vector<int>& c_net() const { return c_net_; }
    const std::vector<int>& c_support() const { return c_support_; }
    const std::vector<int>& c_landmark() const { return c_landmark_; }
    std::vector<int> centroid_set() const;

    /// Every hop distance to X exceeds ell.
    bool in_r_prime(int s) const;
    TupleBundle canonical_tuple(int s) const;
    LandmarkSet landmarks(int region, int path, int q1, int q2) const;
    /// Distance in G[R] for the given region.
    double region_dist(int region, int a, int b) const;
    /// Representative of s's tuple class, or -1 if s is not in any R'_t.
    int landmark_representative(int s) const;
    /// Tuple classes of a leaf: bundle -> smallest member, with member lists.
    const std::map<TupleBundle, std::vector<int>>& leaf_groups(int leaf) const;

    Replacement replace_solution(std::span<const int> S) const;
    ErrorAudit audit(const Replacement& r) const;

private:
    void build_net();
    void build_support();
    void build_landmark();
    const DistMatrix& region_matrix(int region) const;

    const Graph& g_;
    std::vector<int> X_, A_;
    std::vector<char> marked_;
    CentroidConfig cfg_;
    DistMatrix d_;
    std::vector<double> dA_;
    DecompTree tree_;
    SupportGraph support_;
    double alpha_ = 1.0;
    long ell_ = 0;
    double mu_ = 0.0;

    std::vector<NetBall> balls_;
    std::vector<int> ball_of_; // vertex -> index into balls_, -1 if none
    std::vector<int> c_net_, c_support_, c_landmark_;
    std::vector<char> in_support_;
    std::map<int, std::map<TupleBundle, std::vector<int>>> groups_;

    mutable std::mutex cache_mu_;
    mutable std::vector<std::unique_ptr<DistMatrix>> region_cache_;
    mutable std::map<std::array<int, 4>, LandmarkSet> landmark_cache_;
};

} // namespace igc
