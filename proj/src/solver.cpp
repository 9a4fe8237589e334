#include "igc/solver.hpp"

#include "igc/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace igc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Candidate {
    double cost = kInf;
    std::vector<int> centers;

    bool better_than(const Candidate& o) const {
        if (cost != o.cost) return cost < o.cost;
        if (o.centers.empty()) return !centers.empty();
        return centers < o.centers;
    }
};

// Distinct sorted centers, padded with the smallest unused vertices up to k.
std::vector<int> complete(std::vector<int> c, int k, std::size_t n) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t v = 0; v < n && c.size() < static_cast<std::size_t>(k); ++v)
        if (!std::binary_search(c.begin(), c.end(), static_cast<int>(v))) {
            c.insert(std::lower_bound(c.begin(), c.end(), static_cast<int>(v)), static_cast<int>(v));
        }
    return c;
}

// Per-(center, member) weighted costs, row-major by center.
struct CostTable {
    std::size_t n = 0, m = 0;
    std::vector<double> w;

    CostTable(const DistMatrix& d, const Clients& Y, int z) : n(d.n), m(Y.size()), w(n * m) {
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t j = 0; j < m; ++j)
                w[c * m + j] = Y.weight[j] * zpow(d(static_cast<std::size_t>(Y.vertex[j]), c), z);
    }

    Candidate evaluate(std::span<const int> rgs, int k) const {
        int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<double> best(static_cast<std::size_t>(blocks), kInf);
        std::vector<int> arg(static_cast<std::size_t>(blocks), 0);
        std::vector<double> sums(static_cast<std::size_t>(blocks));
        for (std::size_t c = 0; c < n; ++c) {
            std::fill(sums.begin(), sums.end(), 0.0);
            const double* row = w.data() + c * m;
            for (std::size_t j = 0; j < m; ++j) sums[static_cast<std::size_t>(rgs[j])] += row[j];
            for (std::size_t b = 0; b < sums.size(); ++b)
                if (sums[b] < best[b]) {
                    best[b] = sums[b];
                    arg[b] = static_cast<int>(c);
                }
        }
        Candidate out;
        out.cost = 0.0;
        for (double b : best) out.cost += b;
        out.centers = complete(arg, k, n);
        return out;
    }
};

void extend(std::vector<int>& rgs, std::size_t pos, int used, int k, const std::function<void(std::span<const int>)>& visit,
            std::uint64_t& count) {
    if (pos == rgs.size()) {
        ++count;
        visit(rgs);
        return;
    }
    int top = std::min(used + 1, k);
    for (int label = 0; label < top; ++label) {
        rgs[pos] = label;
        extend(rgs, pos + 1, std::max(used, label + 1), k, visit, count);
    }
}

void check_instance(const DistMatrix& d, const Clients& X, int k, int z) {
    if (k < 1) throw ParameterError("k must be >= 1");
    if (z < 1) throw ParameterError("z must be >= 1");
    if (X.size() == 0) throw ParameterError("no clients");
    if (static_cast<std::size_t>(k) > d.n) throw ParameterError("k exceeds the number of vertices");
}

Candidate exact_one_center(const DistMatrix& d, const Clients& X, int z) {
    Candidate best;
    for (std::size_t c = 0; c < d.n; ++c) {
        Candidate cand{matrix_cost(d, X, std::vector<int>{static_cast<int>(c)}, z), {static_cast<int>(c)}};
        if (cand.better_than(best)) best = cand;
    }
    return best;
}

ClusteringResult search(const DistMatrix& d, const Clients& Y, int k, int z, bool parallel) {
    check_instance(d, Y, k, z);
    CostTable table(d, Y, z);
    const int m = static_cast<int>(Y.size());
    const int kk = std::min(k, m);

    // Prefixes split the search into independent ranges.
    const int L = std::min(m, 8);
    std::vector<std::vector<int>> prefixes;
    std::vector<int> tmp(static_cast<std::size_t>(L));
    std::uint64_t dummy = 0;
    extend(tmp, 0, 0, kk, [&](std::span<const int> p) { prefixes.emplace_back(p.begin(), p.end()); }, dummy);

    std::vector<Candidate> best(prefixes.size());
    std::vector<std::uint64_t> counts(prefixes.size(), 0);
    auto run = [&](std::size_t i) {
        std::vector<int> rgs(static_cast<std::size_t>(m));
        std::copy(prefixes[i].begin(), prefixes[i].end(), rgs.begin());
        int used = *std::max_element(prefixes[i].begin(), prefixes[i].end()) + 1;
        extend(rgs, static_cast<std::size_t>(L), used, kk,
               [&](std::span<const int> r) {
                   Candidate c = table.evaluate(r, k);
                   if (c.better_than(best[i])) best[i] = std::move(c);
               },
               counts[i]);
    };
    const auto np = static_cast<std::ptrdiff_t>(prefixes.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < np; ++i) run(static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t i = 0; i < np; ++i) run(static_cast<std::size_t>(i));
    }
    Candidate overall;
    ClusteringResult r;
    for (std::size_t i = 0; i < best.size(); ++i) {
        if (best[i].better_than(overall)) overall = best[i];
        r.partitions += counts[i];
    }
    r.centers = overall.centers;
    r.cost = overall.cost;
    r.method = "partition";
    r.coreset_size = Y.size();
    return r;
}

ClusteringResult fpt_impl(const DistMatrix& d, const Clients& X, int k, int z, double eps, std::uint64_t seed,
                          const FptOptions& opt, bool parallel) {
    auto t0 = Clock::now();
    check_instance(d, X, k, z);
    ClusteringResult r;
    if (k == 1) {
        Candidate c = exact_one_center(d, X, z);
        r.centers = c.centers;
        r.cost = c.cost;
        r.coreset_size = X.size();
    } else {
        WeightedCoreset Y = iterative_coreset(d, X, k, z, eps, opt.delta, seed, opt.size_constant);
        double bits = static_cast<double>(Y.members.size()) * std::log2(static_cast<double>(k));
        if (bits > kFptBudgetBits) {
            std::ostringstream os;
            os << "fpt_cluster: coreset of size " << Y.members.size() << " with k=" << k << " needs " << bits
               << " bits of enumeration, budget is " << kFptBudgetBits;
            throw BudgetError(os.str());
        }
        r = search(d, Y.as_clients(), k, z, parallel);
        r.cost = matrix_cost(d, X, r.centers, z);
    }
    r.method = "fpt";
    r.seconds = since(t0);
    return r;
}

ClusteringResult brute_impl(const DistMatrix& d, const Clients& X, int k, int z, bool parallel) {
    auto t0 = Clock::now();
    check_instance(d, X, k, z);
    const std::size_t n = d.n;
    double total = binomial(n, static_cast<std::size_t>(k));
    if (total > kBruteBudget) {
        std::ostringstream os;
        os << "brute_force: C(" << n << "," << k << ") = " << total << " exceeds " << kBruteBudget;
        throw BudgetError(os.str());
    }
    const std::size_t firsts = n - static_cast<std::size_t>(k) + 1;
    std::vector<Candidate> best(firsts);
    std::vector<std::uint64_t> counts(firsts, 0);
    const std::size_t nc = X.size();

    auto run = [&](std::size_t f) {
        std::vector<int> combo(static_cast<std::size_t>(k));
        // near[depth] holds each client's distance to combo[0..depth].
        std::vector<std::vector<double>> near(static_cast<std::size_t>(k), std::vector<double>(nc));
        combo[0] = static_cast<int>(f);
        for (std::size_t i = 0; i < nc; ++i) near[0][i] = d(static_cast<std::size_t>(X.vertex[i]), f);
        auto rec = [&](auto&& self, std::size_t depth) -> void {
            if (depth + 1 == static_cast<std::size_t>(k)) {
                double c = 0.0;
                for (std::size_t i = 0; i < nc; ++i) c += X.weight[i] * zpow(near[depth][i], z);
                ++counts[f];
                Candidate cand{c, combo};
                if (cand.better_than(best[f])) best[f] = std::move(cand);
                return;
            }
            for (std::size_t v = static_cast<std::size_t>(combo[depth]) + 1; v + (static_cast<std::size_t>(k) - depth - 2) < n; ++v) {
                combo[depth + 1] = static_cast<int>(v);
                for (std::size_t i = 0; i < nc; ++i)
                    near[depth + 1][i] = std::min(near[depth][i], d(static_cast<std::size_t>(X.vertex[i]), v));
                self(self, depth + 1);
            }
        };
        rec(rec, 0);
    };
    const auto nf = static_cast<std::ptrdiff_t>(firsts);
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t f = 0; f < nf; ++f) run(static_cast<std::size_t>(f));
    } else {
        for (std::ptrdiff_t f = 0; f < nf; ++f) run(static_cast<std::size_t>(f));
    }
    Candidate overall;
    ClusteringResult r;
    for (std::size_t f = 0; f < firsts; ++f) {
        if (best[f].better_than(overall)) overall = best[f];
        r.partitions += counts[f];
    }
    r.centers = overall.centers;
    r.cost = overall.cost;
    r.method = "brute";
    r.coreset_size = X.size();
    r.seconds = since(t0);
    return r;
}

} // namespace

std::uint64_t for_each_partition(int m, int k, const std::function<void(std::span<const int>)>& visit) {
    if (m < 1 || k < 1) throw ParameterError("for_each_partition: m and k must be >= 1");
    std::vector<int> rgs(static_cast<std::size_t>(m));
    std::uint64_t count = 0;
    extend(rgs, 0, 0, k, visit, count);
    return count;
}

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::round(r);
}

ClusteringResult partition_search(const DistMatrix& d, const Clients& Y, int k, int z) {
    return search(d, Y, k, z, true);
}

ClusteringResult partition_search_serial(const DistMatrix& d, const Clients& Y, int k, int z) {
    return search(d, Y, k, z, false);
}

ClusteringResult fpt_cluster(const DistMatrix& d, const Clients& X, int k, int z, double eps, std::uint64_t seed,
                             const FptOptions& opt) {
    return fpt_impl(d, X, k, z, eps, seed, opt, true);
}

ClusteringResult fpt_cluster_serial(const DistMatrix& d, const Clients& X, int k, int z, double eps,
                                    std::uint64_t seed, const FptOptions& opt) {
    return fpt_impl(d, X, k, z, eps, seed, opt, false);
}

ClusteringResult brute_force(const DistMatrix& d, const Clients& X, int k, int z) {
    return brute_impl(d, X, k, z, true);
}

ClusteringResult brute_force_serial(const DistMatrix& d, const Clients& X, int k, int z) {
    return brute_impl(d, X, k, z, false);
}

} // namespace igc
