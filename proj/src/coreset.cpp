#include "igc/coreset.hpp"

#include "igc/errors.hpp"
#include "igc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace igc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

// Index drawn proportionally to `w` (all finite, non-negative, positive sum).
std::size_t draw(CounterRng& rng, const std::vector<double>& cumulative) {
    double u = rng.uniform() * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    return static_cast<std::size_t>(it - cumulative.begin());
}

std::vector<double> cumulate(const std::vector<double>& w) {
    std::vector<double> c(w.size());
    std::partial_sum(w.begin(), w.end(), c.begin());
    return c;
}

int client_components(const DistMatrix& d, const Clients& X) {
    std::vector<int> reps;
    for (int p : X.vertex) {
        bool found = false;
        for (int r : reps)
            if (std::isfinite(d(sz(r), sz(p)))) {
                found = true;
                break;
            }
        if (!found) reps.push_back(p);
    }
    return static_cast<int>(reps.size());
}

double cost_with(const DistMatrix& d, const Clients& X, const std::vector<int>& centers, int z) {
    return matrix_cost(d, X, centers, z);
}

} // namespace

ApproxSolution approx_solution(const DistMatrix& d, const Clients& X, int k, int z, std::uint64_t seed) {
    if (k < 1) throw ParameterError("approx_solution: k must be >= 1");
    if (z < 1) throw ParameterError("approx_solution: z must be >= 1");
    if (X.size() == 0) throw ParameterError("approx_solution: no clients");
    if (static_cast<std::size_t>(k) > X.size()) throw ParameterError("approx_solution: k exceeds the number of clients");
    if (static_cast<std::size_t>(k) > d.n) throw ParameterError("approx_solution: k exceeds the number of vertices");
    if (client_components(d, X) > k)
        throw ParameterError("approx_solution: clients span more components than k");
    const std::size_t n = d.n;
    const std::size_t nc = X.size();

    std::vector<int> C;
    if (k == 1) {
        double best = kInf;
        int arg = 0;
        for (std::size_t c = 0; c < n; ++c) {
            double v = 0.0;
            for (std::size_t i = 0; i < nc; ++i) v += X.weight[i] * zpow(d(sz(X.vertex[i]), c), z);
            if (v < best) {
                best = v;
                arg = static_cast<int>(c);
            }
        }
        C = {arg};
    } else {
        CounterRng rng = CounterRng::derive(seed, "approx-seeding");
        std::vector<double> dist(nc, kInf);
        std::vector<char> chosen(n, 0);
        for (int round = 0; round < k; ++round) {
            std::vector<double> w(nc, 0.0);
            bool uncovered = std::any_of(dist.begin(), dist.end(), [](double v) { return !std::isfinite(v); });
            for (std::size_t i = 0; i < nc; ++i) {
                if (chosen[sz(X.vertex[i])]) continue;
                w[i] = uncovered ? (std::isfinite(dist[i]) ? 0.0 : X.weight[i]) : X.weight[i] * zpow(dist[i], z);
            }
            int pick = -1;
            if (std::accumulate(w.begin(), w.end(), 0.0) > 0.0) {
                pick = X.vertex[draw(rng, cumulate(w))];
            } else {
                for (std::size_t v = 0; v < n && pick < 0; ++v)
                    if (!chosen[v]) pick = static_cast<int>(v);
            }
            chosen[sz(pick)] = 1;
            C.push_back(pick);
            for (std::size_t i = 0; i < nc; ++i) dist[i] = std::min(dist[i], d(sz(X.vertex[i]), sz(pick)));
        }

        double current = cost_with(d, X, C, z);
        const double factor = 1.0 - 1.0 / (100.0 * k);
        for (int iter = 0; iter < 1000; ++iter) {
            // Nearest and second-nearest center per client.
            std::vector<double> d1(nc, kInf), d2(nc, kInf);
            std::vector<int> a1(nc, -1);
            for (std::size_t i = 0; i < nc; ++i)
                for (std::size_t c = 0; c < C.size(); ++c) {
                    double v = d(sz(X.vertex[i]), sz(C[c]));
                    if (v < d1[i]) {
                        d2[i] = d1[i];
                        d1[i] = v;
                        a1[i] = static_cast<int>(c);
                    } else if (v < d2[i]) {
                        d2[i] = v;
                    }
                }
            std::vector<char> in_c(n, 0);
            for (int c : C) in_c[sz(c)] = 1;
            std::vector<double> best_cost(n, kInf);
            std::vector<int> best_slot(n, -1);
            const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
            for (std::ptrdiff_t vv = 0; vv < nn; ++vv) {
                auto v = static_cast<std::size_t>(vv);
                if (in_c[v]) continue;
                for (std::size_t slot = 0; slot < C.size(); ++slot) {
                    double total = 0.0;
                    for (std::size_t i = 0; i < nc; ++i) {
                        double keep = a1[i] == static_cast<int>(slot) ? d2[i] : d1[i];
                        total += X.weight[i] * zpow(std::min(keep, d(sz(X.vertex[i]), v)), z);
                    }
                    if (total < best_cost[v]) {
                        best_cost[v] = total;
                        best_slot[v] = static_cast<int>(slot);
                    }
                }
            }
            std::size_t arg = n;
            for (std::size_t v = 0; v < n; ++v)
                if (best_slot[v] >= 0 && (arg == n || best_cost[v] < best_cost[arg])) arg = v;
            if (arg == n || !(best_cost[arg] < factor * current)) break;
            C[sz(best_slot[arg])] = static_cast<int>(arg);
            current = best_cost[arg];
        }
    }

    std::sort(C.begin(), C.end());
    ApproxSolution out;
    out.centers = C;
    out.assignment.resize(nc);
    for (std::size_t i = 0; i < nc; ++i) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < C.size(); ++c)
            if (d(sz(X.vertex[i]), sz(C[c])) < d(sz(X.vertex[i]), sz(C[best]))) best = c;
        out.assignment[i] = static_cast<int>(best);
    }
    out.cost = cost_with(d, X, C, z);
    return out;
}

ApproxSolution approx_solution(const Graph& g, const Clients& X, int k, int z, std::uint64_t seed) {
    return approx_solution(apsp(g.adj), X, k, z, seed);
}

double WeightedCoreset::total_weight() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

WeightedCoreset sensitivity_coreset(const DistMatrix& d, const Clients& X, const ApproxSolution& A, int k, int z,
                                    std::size_t m, std::uint64_t seed) {
    if (k < 1 || z < 1) throw ParameterError("sensitivity_coreset: k and z must be >= 1");
    if (m < static_cast<std::size_t>(k)) throw ParameterError("sensitivity_coreset: sample size below k");
    if (A.centers.empty()) throw ParameterError("sensitivity_coreset: empty seed solution");
    const std::size_t nc = X.size();
    if (nc == 0) throw ParameterError("sensitivity_coreset: no clients");

    std::vector<double> c(nc);
    std::vector<std::size_t> cl(nc);
    std::vector<double> cluster_w(A.centers.size(), 0.0);
    for (std::size_t i = 0; i < nc; ++i) {
        std::size_t best = 0;
        for (std::size_t a = 1; a < A.centers.size(); ++a)
            if (d(sz(X.vertex[i]), sz(A.centers[a])) < d(sz(X.vertex[i]), sz(A.centers[best]))) best = a;
        cl[i] = best;
        cluster_w[best] += X.weight[i];
        c[i] = X.weight[i] * zpow(d(sz(X.vertex[i]), sz(A.centers[best])), z);
    }
    double total = std::accumulate(c.begin(), c.end(), 0.0);
    if (!std::isfinite(total)) throw ParameterError("sensitivity_coreset: seed solution leaves clients unreachable");

    std::vector<double> sigma(nc);
    for (std::size_t i = 0; i < nc; ++i) {
        if (total > 0.0)
            sigma[i] = c[i] / total + X.weight[i] / (k * cluster_w[cl[i]]);
        else
            sigma[i] = X.weight[i];
    }
    double sigma_total = std::accumulate(sigma.begin(), sigma.end(), 0.0);
    auto cum = cumulate(sigma);

    CounterRng rng = CounterRng::derive(seed, "sensitivity");
    std::map<int, double> acc;
    for (std::size_t draw_i = 0; draw_i < m; ++draw_i) {
        std::size_t i = draw(rng, cum);
        double prob = sigma[i] / sigma_total;
        acc[X.vertex[i]] += X.weight[i] / (static_cast<double>(m) * prob);
    }
    WeightedCoreset Y;
    for (auto [v, w] : acc) {
        Y.members.push_back(v);
        Y.weights.push_back(w);
    }
    Y.params.z = z;
    Y.params.k = k;
    Y.params.m = m;
    Y.params.seed = seed;
    Y.stage_sizes = {Y.members.size()};
    return Y;
}

std::size_t desk_sample_size(int k, double eps, double c) {
    double l = std::log2(k + 1.0);
    return static_cast<std::size_t>(std::ceil(c * k * l * l / (eps * eps)));
}

double iterated_log(double n, int i) {
    double v = n;
    for (int j = 0; j < i; ++j) v = v > 0.0 ? std::log2(v) : -kInf;
    return v;
}

double default_rho(int z) { return std::max(2.0, std::ceil(z * std::log2(z + 1.0))); }

ReductionSchedule reduction_schedule(std::size_t n, int k, int z, double eps, double delta, double rho,
                                     double size_constant) {
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("reduction_schedule: eps must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 0.25)) throw ParameterError("reduction_schedule: delta must lie in (0, 1/4)");
    if (k < 1 || z < 1) throw ParameterError("reduction_schedule: k and z must be >= 1");
    ReductionSchedule s;
    s.rho = rho > 0.0 ? rho : default_rho(z);
    s.threshold = std::max(125.0 * k * std::pow(eps, -s.rho) * std::log2(1.0 / delta), s.rho * std::pow(2.0, s.rho + 1.0));
    const double nn = static_cast<double>(n);
    while (iterated_log(nn, s.t) >= s.threshold) ++s.t;
    std::size_t prev = n;
    for (int i = 1; i <= s.t; ++i) {
        double li = iterated_log(nn, i);
        double e = eps / std::pow(li, 1.0 / s.rho);
        s.eps_i.push_back(e);
        s.delta_i.push_back(delta / static_cast<double>(prev));
        std::size_t target = std::max(desk_sample_size(k, e, size_constant), static_cast<std::size_t>(std::ceil(li)));
        s.target.push_back(target);
        prev = target;
        s.product *= 1.0 + e;
        s.sum += e;
    }
    return s;
}

WeightedCoreset iterative_coreset(const DistMatrix& d, const Clients& X, int k, int z, double eps, double delta,
                                  std::uint64_t seed, double size_constant) {
    ReductionSchedule s = reduction_schedule(X.size(), k, z, eps, delta, 0.0, size_constant);
    Clients cur = X;
    std::vector<std::size_t> sizes;
    for (int i = 0; i < s.t; ++i) {
        ApproxSolution A = approx_solution(d, cur, std::min<int>(k, static_cast<int>(cur.size())), z,
                                           CounterRng::derive(seed, "stage-approx", static_cast<std::uint64_t>(i)).key());
        WeightedCoreset Yi = sensitivity_coreset(d, cur, A, k, z, s.target[static_cast<std::size_t>(i)],
                                                 CounterRng::derive(seed, "stage", static_cast<std::uint64_t>(i)).key());
        cur = Yi.as_clients();
        sizes.push_back(cur.size());
    }
    ApproxSolution A = approx_solution(d, cur, std::min<int>(k, static_cast<int>(cur.size())), z,
                                       CounterRng::derive(seed, "final-approx").key());
    std::size_t m = std::max<std::size_t>(desk_sample_size(k, eps, size_constant), static_cast<std::size_t>(k));
    WeightedCoreset Y = sensitivity_coreset(d, cur, A, k, z, m, CounterRng::derive(seed, "final").key());
    sizes.push_back(Y.members.size());
    Y.params.eps = eps;
    Y.params.delta = delta;
    Y.params.seed = seed;
    Y.stage_sizes = sizes;
    return Y;
}

std::vector<std::vector<int>> verification_center_sets(const DistMatrix& d, int k, int trials,
                                                       std::span<const int> near, std::uint64_t seed) {
    const std::size_t n = d.n;
    if (k < 1 || static_cast<std::size_t>(k) > n) throw ParameterError("verification: k out of range");
    std::vector<std::vector<int>> sets;
    for (int t = 0; t < trials; ++t) {
        CounterRng rng = CounterRng::derive(seed, "verify-centers", static_cast<std::uint64_t>(t));
        std::vector<char> used(n, 0);
        std::vector<int> S;
        if (t % 2 == 1 && !near.empty()) {
            std::size_t pool = std::max<std::size_t>(1, n / 10);
            for (std::size_t a = 0; a < near.size() && S.size() < static_cast<std::size_t>(k); ++a) {
                std::vector<int> order(n);
                std::iota(order.begin(), order.end(), 0);
                auto row = d.row(sz(near[a]));
                std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return row[sz(x)] < row[sz(y)]; });
                int pick = order[rng.below(pool)];
                if (!used[sz(pick)]) {
                    used[sz(pick)] = 1;
                    S.push_back(pick);
                }
            }
        }
        while (S.size() < static_cast<std::size_t>(k)) {
            auto v = static_cast<int>(rng.below(n));
            if (used[sz(v)]) continue;
            used[sz(v)] = 1;
            S.push_back(v);
        }
        std::sort(S.begin(), S.end());
        sets.push_back(std::move(S));
    }
    return sets;
}

double relative_error(double truth, double estimate) {
    if (truth == estimate) return 0.0;
    if (truth == 0.0 || !std::isfinite(truth) || !std::isfinite(estimate)) return kInf;
    return std::abs(estimate - truth) / truth;
}

namespace {

TrialResult run_trial(const DistMatrix& d, const Clients& X, const Clients& Y, int z, const std::vector<int>& S, int t) {
    TrialResult r;
    r.trial = t;
    r.true_cost = matrix_cost(d, X, S, z);
    r.coreset_cost = matrix_cost(d, Y, S, z);
    r.rel_err = relative_error(r.true_cost, r.coreset_cost);
    return r;
}

CoresetReport finish(std::vector<TrialResult> trials) {
    CoresetReport rep;
    rep.trials = std::move(trials);
    for (const auto& t : rep.trials) rep.max_rel_err = std::max(rep.max_rel_err, t.rel_err);
    return rep;
}

} // namespace

CoresetReport verify_coreset(const DistMatrix& d, const Clients& X, const WeightedCoreset& Y, int z,
                             const std::vector<std::vector<int>>& center_sets) {
    for (const auto& S : center_sets)
        if (S.empty()) throw ParameterError("verify_coreset: empty center set");
    Clients yc = Y.as_clients();
    std::vector<TrialResult> out(center_sets.size());
    const auto m = static_cast<std::ptrdiff_t>(center_sets.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < m; ++t)
        out[static_cast<std::size_t>(t)] = run_trial(d, X, yc, z, center_sets[static_cast<std::size_t>(t)], static_cast<int>(t));
    return finish(std::move(out));
}

CoresetReport verify_coreset_serial(const DistMatrix& d, const Clients& X, const WeightedCoreset& Y, int z,
                                    const std::vector<std::vector<int>>& center_sets) {
    for (const auto& S : center_sets)
        if (S.empty()) throw ParameterError("verify_coreset: empty center set");
    Clients yc = Y.as_clients();
    std::vector<TrialResult> out;
    for (std::size_t t = 0; t < center_sets.size(); ++t)
        out.push_back(run_trial(d, X, yc, z, center_sets[t], static_cast<int>(t)));
    return finish(std::move(out));
}

} // namespace igc
