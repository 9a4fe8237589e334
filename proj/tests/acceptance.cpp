// Acceptance checks 1-13. One PASS/FAIL line per criterion; exit status is
// the number of failing criteria (capped at 1).

#include "igc/centroid.hpp"
#include "igc/coreset.hpp"
#include "igc/decomposition.hpp"
#include "igc/harness.hpp"
#include "igc/kernels.hpp"
#include "igc/separator.hpp"
#include "igc/solver.hpp"
#include "igc/spanner.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace igc;
using namespace igc::test;

namespace {

constexpr double kTol = 1e-9;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail, double seconds) {
    std::printf("%s %2d %-28s %s (%.1fs)\n", ok ? "PASS" : "FAIL", id, name, detail.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

void run(int id, const char* name, const std::function<bool(std::ostringstream&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, name, ok, detail.str(), s);
}

PointSet box_points(std::size_t n, double side, std::uint64_t seed) {
    ExperimentConfig c;
    c.n = n;
    c.box = side;
    return generate(c, seed);
}

/// Proper crossings on raw coordinates, every pair of edges without a shared endpoint.
std::size_t raw_crossings(const Graph& h) {
    auto e = h.edges();
    std::size_t c = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            if (e[i].u == e[j].u || e[i].u == e[j].v || e[i].v == e[j].u || e[i].v == e[j].v) continue;
            Vec2 a = h.points[static_cast<std::size_t>(e[i].u)].pos(), b = h.points[static_cast<std::size_t>(e[i].v)].pos();
            Vec2 p = h.points[static_cast<std::size_t>(e[j].u)].pos(), q = h.points[static_cast<std::size_t>(e[j].v)].pos();
            if (orient(a, b, p) * orient(a, b, q) < 0 && orient(p, q, a) * orient(p, q, b) < 0) ++c;
        }
    return c;
}

double max_ratio(const DistMatrix& dg, const DistMatrix& dh) {
    double worst = 0.0;
    for (std::size_t u = 0; u < dg.n; ++u)
        for (std::size_t v = u + 1; v < dg.n; ++v)
            if (std::isfinite(dg(u, v)) && dg(u, v) > 0.0) worst = std::max(worst, dh(u, v) / dg(u, v));
    return worst;
}

struct PlanarLog {
    std::size_t spanners = 0, crossings = 0, edge_excess = 0;

    void add(const Graph& h) {
        ++spanners;
        crossings += raw_crossings(h);
        if (h.n() >= 3 && h.edge_count() > 3 * h.n() - 6) ++edge_excess;
    }
};

PlanarLog planar_log;

bool stretch_protocol(std::ostringstream& out, Family fam, Norm norm, int count, std::vector<std::size_t> sizes,
                      double bound, bool per_edge, std::uint64_t base) {
    double worst = 0.0, edge_excess = -kInf;
    for (int i = 0; i < count; ++i) {
        PointSet ps = box_points(sizes[static_cast<std::size_t>(i) % sizes.size()], 6.0, base + static_cast<std::uint64_t>(i));
        Graph g = build_graph(ps, MetricKind::make(fam, norm));
        PlanarSpanner s = family_spanner(g);
        planar_log.add(s.h);
        DistMatrix dg = apsp(g.adj), dh = apsp(s.h.adj);
        worst = std::max(worst, max_ratio(dg, dh));
        if (per_edge)
            for (const Edge& e : g.edges()) {
                DxyStats st = dxy_stats(ps[static_cast<std::size_t>(e.u)], ps[static_cast<std::size_t>(e.v)]);
                edge_excess = std::max(edge_excess, dh(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v)) - (2.0 * st.D + st.delta));
            }
    }
    out << "instances=" << count << " max_ratio=" << worst << " bound=" << bound;
    bool ok = worst <= bound + kTol;
    if (per_edge) {
        out << " max_edge_excess=" << edge_excess;
        ok = ok && edge_excess <= kTol;
    }
    return ok;
}

} // namespace

int main() {
    run(1, "usg-spanner-stretch", [](std::ostringstream& o) {
        return stretch_protocol(o, Family::USG, Norm::linf(), 50, {30, 60, 120}, 3.0, true, 1000);
    });
    run(2, "udg-spanner-stretch", [](std::ostringstream& o) {
        return stretch_protocol(o, Family::UDG, Norm::l2(), 50, {30, 60, 120}, 2.42, false, 2000);
    });
    run(3, "lp-spanner-constants", [](std::ostringstream& o) {
        std::ostringstream a, b;
        bool ok1 = stretch_protocol(a, Family::UDG, Norm::l1(), 20, {80}, 3.42, false, 3000);
        bool ok2 = stretch_protocol(b, Family::UDG, Norm::linf(), 20, {80}, 4.84, false, 3100);
        o << "p=1: " << a.str() << "; p=inf: " << b.str();
        return ok1 && ok2;
    });
    run(4, "spanner-planarity", [](std::ostringstream& o) {
        o << "spanners=" << planar_log.spanners << " crossings=" << planar_log.crossings
          << " over_3n-6=" << planar_log.edge_excess;
        return planar_log.spanners == 140 && planar_log.crossings == 0 && planar_log.edge_excess == 0;
    });
    run(5, "separator-balance", [](std::ostringstream& o) {
        int done = 0, bad_balance = 0, bad_paths = 0, bad_shortest = 0;
        double worst = 0.0;
        for (std::uint64_t seed = 5000; done < 30; ++seed) {
            PointSet ps = box_points(40 + 10 * static_cast<std::size_t>(done % 5), 6.0, seed);
            Graph g = build_graph(ps, MetricKind::make(done % 2 ? Family::USG : Family::UDG, done % 2 ? Norm::linf() : Norm::l2()));
            PlanarSpanner h = family_spanner(g);
            auto comp = components(h.h.adj);
            if (*std::max_element(comp.begin(), comp.end()) != 0) continue;
            std::vector<double> w(g.n(), 1.0);
            if (done % 3 == 0) {
                CounterRng rng = CounterRng::derive(seed, "marks");
                for (double& x : w) x = rng.uniform(0.0, 1.0) < 0.3 ? 1.0 : 0.0;
                if (std::accumulate(w.begin(), w.end(), 0.0) < 3.0) continue;
            }
            ++done;
            SeparatorResult r = sp_separator(h, w);
            double total = std::accumulate(w.begin(), w.end(), 0.0);
            double heavy = heaviest_after_removal(h.h.adj, w, r.vertices()) / total;
            worst = std::max(worst, heavy);
            if (heavy > kSeparatorBalance + kTol) ++bad_balance;
            if (r.b() < 1 || r.b() > 2) ++bad_paths;
            for (const auto& p : r.paths) {
                double len = 0.0;
                for (std::size_t i = 1; i < p.size(); ++i) len += h.h.weight(p[i - 1], p[i]);
                double sp = bellman_ford(h.h.n(), h.h.edges(), p.front())[static_cast<std::size_t>(p.back())];
                if (!(std::abs(len - sp) <= kTol * std::max(1.0, sp))) ++bad_shortest;
            }
        }
        o << "spanners=30 max_balance=" << worst << " bound=2/3 bad_balance=" << bad_balance
          << " bad_path_count=" << bad_paths << " non_shortest=" << bad_shortest;
        return bad_balance == 0 && bad_paths == 0 && bad_shortest == 0;
    });
    run(6, "decomposition-depth-leaves", [](std::ostringstream& o) {
        int bad_depth = 0, bad_leaf = 0, worst_depth = 0;
        for (int i = 0; i < 30; ++i) {
            std::size_t xs = i % 2 ? 40 : 20;
            PointSet ps = box_points(120, 6.0, 6000 + static_cast<std::uint64_t>(i));
            Graph g = build_graph(ps, MetricKind::make(i % 3 == 2 ? Family::USG : Family::UDG, i % 3 == 2 ? Norm::linf() : Norm::l2()));
            std::vector<int> X = choose_clients(g.n(), static_cast<double>(xs) / static_cast<double>(g.n()), 6000 + static_cast<std::uint64_t>(i));
            DecompTree t = build_tree(g, X);
            worst_depth = std::max(worst_depth, t.depth);
            if (t.depth > 4.0 * std::log2(static_cast<double>(X.size())) + 2.0) ++bad_depth;
            for (const Region& r : t.regions) {
                if (!r.leaf()) continue;
                int marked = 0;
                for (int v : r.vertices) marked += std::binary_search(X.begin(), X.end(), v);
                if (marked > 2) ++bad_leaf;
            }
        }
        o << "instances=30 max_depth=" << worst_depth << " depth_violations=" << bad_depth << " heavy_leaves=" << bad_leaf;
        return bad_depth == 0 && bad_leaf == 0;
    });
    run(7, "bounded-distance", [](std::ostringstream& o) {
        std::size_t bad_pairs = 0, bad_edges = 0, pairs = 0;
        for (int i = 0; i < 20; ++i) {
            MetricKind m = MetricKind::make(i % 2 ? Family::USG : Family::UDG, i % 2 ? Norm::linf() : Norm::l2());
            Graph g = build_graph(box_points(150, 6.0, 7000 + static_cast<std::uint64_t>(i)), m);
            DistMatrix d = apsp(g.adj);
            for (std::size_t u = 0; u < g.n(); ++u)
                for (std::size_t v = u + 1; v < g.n(); ++v) {
                    if (!std::isfinite(d(u, v)) || d.hop(u, v) < 2) continue;
                    ++pairs;
                    if (d(u, v) < m.c1p * d.hop(u, v) - kTol) ++bad_pairs;
                }
            for (const Edge& e : g.edges())
                if (e.w > m.c2p + kTol) ++bad_edges;
        }
        o << "pairs=" << pairs << " violations=" << bad_pairs << " heavy_edges=" << bad_edges;
        return bad_pairs == 0 && bad_edges == 0;
    });
    run(8, "mu-net", [](std::ostringstream& o) {
        int bad_cover = 0, bad_size = 0;
        double worst_fill = 0.0;
        for (int i = 0; i < 20; ++i) {
            CounterRng rng = CounterRng::derive(8000, "balls", static_cast<std::uint64_t>(i));
            MetricKind m = MetricKind::make(i % 2 ? Family::USG : Family::UDG, i % 2 ? Norm::linf() : Norm::l2());
            Graph g = build_graph(box_points(300, 8.0, 8000 + static_cast<std::uint64_t>(i)), m);
            DistMatrix d = apsp(g.adj);
            auto v = static_cast<std::size_t>(rng.uniform(0.0, static_cast<double>(g.n())));
            double r = rng.uniform(0.5, 5.0);
            double mu = rng.uniform(0.05, 0.95) * m.c1 / std::sqrt(2.0);
            std::vector<int> ball;
            for (std::size_t u = 0; u < g.n(); ++u)
                if (d(v, u) <= r) ball.push_back(static_cast<int>(u));
            auto net = mu_net(ball, g.points.points(), mu, m.c1);
            for (int u : ball) {
                double best = kInf;
                for (int y : net) best = std::min(best, d(static_cast<std::size_t>(u), static_cast<std::size_t>(y)));
                if (best > m.c4 * std::sqrt(2.0) * mu + kTol) ++bad_cover;
            }
            double cap = mu_net_size_bound(m, r, mu);
            worst_fill = std::max(worst_fill, static_cast<double>(net.size()) / cap);
            if (static_cast<double>(net.size()) > cap) ++bad_size;
        }
        o << "balls=20 uncovered=" << bad_cover << " oversize=" << bad_size << " max_size/bound=" << worst_fill;
        return bad_cover == 0 && bad_size == 0;
    });
    run(9, "centroid-error", [](std::ostringstream& o) {
        ExperimentConfig c;
        c.n = 120;
        c.k = 3;
        c.z = 1;
        c.eps = 0.3;
        c.preset = "desk";
        PointSet ps = generate(c, 9);
        Graph g = build_graph(ps, MetricKind::parse(c.metric));
        DistMatrix d = apsp(g.adj);
        std::vector<int> X(g.n());
        std::iota(X.begin(), X.end(), 0);
        ApproxSolution A = approx_solution(d, Clients::unit(X), c.k, c.z, 9);
        CentroidBuilder cb(g, X, A.centers, centroid_config(c));
        auto sets = verification_center_sets(d, c.k, 50, A.centers, 9);
        std::size_t relevant = 0, passed = 0;
        std::map<Rule, std::size_t> rules;
        for (std::size_t t = 0; t < sets.size(); ++t) {
            Replacement rep = cb.replace_solution(sets[t]);
            for (Rule r : rep.rule) ++rules[r];
            ErrorAudit a = cb.audit(rep);
            relevant += a.relevant;
            passed += a.passed;
            for (const auto& f : a.failures)
                std::fprintf(stderr, "criterion 9 failure: trial=%zu p=%d cost_S=%.6g cost_tilde=%.6g cost_A=%.6g bound=%.6g\n",
                             t, f.p, f.cost_S, f.cost_tilde, f.cost_A, f.bound);
        }
        double rate = relevant ? static_cast<double>(passed) / static_cast<double>(relevant) : 0.0;
        o << "pairs=" << relevant << " pass_rate=" << rate << " |C|=" << cb.centroid_set().size()
          << " rules(net/net-sub/support/landmark)=" << rules[Rule::NET] << "/" << rules[Rule::NET_SUB] << "/"
          << rules[Rule::SUPPORT] << "/" << rules[Rule::LANDMARK];
        return relevant > 0 && rate >= 0.95;
    });
    run(10, "schedule-product", [](std::ostringstream& o) {
        CounterRng rng = CounterRng::derive(10, "schedule-draws");
        int bad = 0, staged = 0;
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            auto n = static_cast<std::size_t>(std::pow(10.0, rng.uniform(1.0, 18.5)));
            int k = 1 + static_cast<int>(rng.uniform(0.0, 10.0));
            int z = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
            double eps = rng.uniform(0.01, 0.99);
            double delta = rng.uniform(0.001, 0.249);
            ReductionSchedule s = reduction_schedule(n, k, z, eps, delta);
            staged += s.t > 0;
            double prod = 1.0;
            for (double e : s.eps_i) prod *= 1.0 + e;
            worst = std::max(worst, (prod - 1.0) / eps);
            if (!(prod <= 1.0 + 10.0 * eps)) ++bad;
        }
        o << "draws=100 with_stages=" << staged << " max (prod-1)/eps=" << worst << " violations=" << bad;
        return bad == 0;
    });
    run(11, "coreset-quality", [](std::ostringstream& o) {
        const double eps = 0.2, limit = 0.3;
        bool ok = true;
        std::ostringstream cells;
        for (int k : {2, 3, 4})
            for (int z : {1, 2}) {
                const std::size_t m = desk_sample_size(k, eps, kDefaultSizeConstant);
                int good300 = 0, good600 = 0;
                std::size_t max_size = 0;
                double worst = 0.0;
                for (std::uint64_t seed = 1; seed <= 20; ++seed)
                    for (std::size_t n : {300u, 600u}) {
                        Graph g = build_udg(box_points(n, 6.0, 11000 + seed));
                        DistMatrix d = apsp(g.adj);
                        Clients X = Clients::all(n);
                        WeightedCoreset Y = iterative_coreset(d, X, k, z, eps, 0.1, seed);
                        if (Y.params.m != m) ok = false;
                        max_size = std::max(max_size, Y.members.size());
                        auto sets = verification_center_sets(d, k, 200, {}, seed);
                        double err = verify_coreset(d, X, Y, z, sets).max_rel_err;
                        worst = std::max(worst, err);
                        if (err <= limit) (n == 300 ? good300 : good600)++;
                    }
                bool cell = good300 >= 19 && good600 >= 19 && max_size <= m;
                ok = ok && cell;
                cells << " k" << k << "z" << z << ":m=" << m << ",good=" << good300 << "/" << good600
                      << ",max_err=" << worst << ",max_size=" << max_size;
            }
        o << "seeds=20 n=300/600" << cells.str();
        return ok;
    });
    run(12, "fpt-vs-brute", [](std::ostringstream& o) {
        const double eps = 0.3;
        int within_eps = 0, within_3eps = 0;
        double worst = 0.0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            std::size_t n = 12 + seed % 7;
            Graph g = build_udg(box_points(n, 3.0, 12000 + seed));
            DistMatrix d = apsp(g.adj);
            Clients X = Clients::all(n);
            ClusteringResult opt = brute_force(d, X, 2, 1);
            ClusteringResult f = fpt_cluster(d, X, 2, 1, eps, seed);
            double ratio = opt.cost > 0.0 ? f.cost / opt.cost : (f.cost == 0.0 ? 1.0 : kInf);
            worst = std::max(worst, ratio);
            within_3eps += ratio <= 1.0 + 3.0 * eps + kTol;
            within_eps += ratio <= 1.0 + eps + kTol;
        }
        o << "seeds=20 max_ratio=" << worst << " within(1+3eps)=" << within_3eps << "/20 within(1+eps)=" << within_eps << "/20";
        return within_3eps == 20 && within_eps >= 17;
    });
    run(13, "sampler-unbiased", [](std::ostringstream& o) {
        Graph g = build_udg(box_points(40, 4.0, 13));
        DistMatrix d = apsp(g.adj);
        Clients X = Clients::all(40);
        ApproxSolution A = approx_solution(d, X, 2, 1, 13);
        const std::vector<int> S{4, 27};
        const double truth = matrix_cost(d, X, S, 1);
        const int reps = 2000;
        double sum = 0.0, sq = 0.0;
        for (int r = 0; r < reps; ++r) {
            WeightedCoreset Y = sensitivity_coreset(d, X, A, 2, 1, 12, 130000 + static_cast<std::uint64_t>(r));
            double c = matrix_cost(d, Y.as_clients(), S, 1);
            sum += c;
            sq += c * c;
        }
        double mean = sum / reps;
        double sd = std::sqrt(std::max(0.0, sq / reps - mean * mean) * reps / (reps - 1));
        double se = sd / std::sqrt(static_cast<double>(reps));
        double zscore = se > 0.0 ? std::abs(mean - truth) / se : (mean == truth ? 0.0 : kInf);
        o << "seeds=2000 truth=" << truth << " mean=" << mean << " se=" << se << " |z|=" << zscore;
        return zscore <= 3.0;
    });
    return failures == 0 ? 0 : 1;
}
