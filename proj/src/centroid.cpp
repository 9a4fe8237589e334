#include "igc/centroid.hpp"

#include "igc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace igc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

} // namespace

void CentroidConfig::validate() const {
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0, 1)");
    if (z < 1) throw ParameterError("z must be >= 1");
    if (!(gamma_support > 0.0) || !(gamma_landmark > 0.0)) throw ParameterError("gamma constants must be positive");
}

const char* rule_name(Rule r) {
    switch (r) {
    case Rule::NET: return "NET";
    case Rule::NET_SUB: return "NET-SUB";
    case Rule::SUPPORT: return "SUPPORT";
    case Rule::LANDMARK: return "LANDMARK";
    }
    return "?";
}

SupportGraph build_support_graph(const Graph& g, double mu) {
    SupportGraph s;
    s.mu = mu;
    const std::size_t n = g.n();
    if (g.metric.family == Family::HOP_UDG) {
        s.f.resize(n);
        s.adj.resize(n);
        for (std::size_t v = 0; v < n; ++v) {
            s.f[v] = static_cast<int>(v);
            s.special.push_back(static_cast<int>(v));
            for (const Arc& a : g.adj[v]) s.adj[v].push_back(a.to);
            s.max_degree = std::max(s.max_degree, static_cast<int>(s.adj[v].size()));
        }
        s.degree_bound = g.max_degree;
        return s;
    }
    if (!(mu > 0.0) || !(mu < g.metric.c1 / std::sqrt(2.0)))
        throw ParameterError("support graph: mu must lie in (0, c1/sqrt(2))");
    std::map<GridKey, int> rep;
    for (std::size_t v = 0; v < n; ++v) rep.try_emplace(grid_cell(g.points[v].pos(), mu), static_cast<int>(v));
    s.f.resize(n);
    for (std::size_t v = 0; v < n; ++v) s.f[v] = rep.at(grid_cell(g.points[v].pos(), mu));
    for (auto& [key, v] : rep) s.special.push_back(v);
    std::sort(s.special.begin(), s.special.end());
    std::vector<std::set<int>> nb(n);
    for (const Edge& e : g.edges()) {
        int a = s.f[sz(e.u)], b = s.f[sz(e.v)];
        if (a == b) continue;
        nb[sz(a)].insert(b);
        nb[sz(b)].insert(a);
    }
    s.adj.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        s.adj[v].assign(nb[v].begin(), nb[v].end());
        s.max_degree = std::max(s.max_degree, static_cast<int>(s.adj[v].size()));
    }
    long w = 2 * static_cast<long>(std::ceil(g.metric.c2 / mu)) + 3;
    s.degree_bound = w * w - 1;
    return s;
}

long support_hop_limit(const MetricKind& m, double alpha, double eps, int z, double gamma) {
    double l = gamma * z * alpha * m.c2p / (m.c1p * eps);
    if (l > 1e15) return static_cast<long>(1e15);
    return static_cast<long>(std::floor(l));
}

double landmark_mu(double eps, int z, double gamma) { return eps / (gamma * z); }

double mu_net_constant(const MetricKind& m) {
    // Ball members lie within a * r of the centre in the plane.
    double a = std::max({1.0, 1.0 / m.c3, m.c2 / m.c1p});
    return (2.0 * a + 2.0) * (2.0 * a + 2.0);
}

double mu_net_size_bound(const MetricKind& m, double r, double mu) {
    double rr = std::max(r, mu);
    return mu_net_constant(m) * rr * rr / (mu * mu);
}

double errorbound_factor(double eps, int z) { return eps / (z * std::log2(z / eps)); }

std::int64_t round_clamped(double d, double unit, double clamp) {
    if (!(clamp > 0.0) || !std::isfinite(d)) return kClamped;
    if (!(unit > 0.0)) return kClamped;
    double k = std::ceil(d / unit - 0.5);
    if (k * unit >= clamp) return kClamped;
    return static_cast<std::int64_t>(k);
}

CentroidBuilder::CentroidBuilder(const Graph& g, std::vector<int> X, std::vector<int> A, CentroidConfig cfg)
    : g_(g), X_(std::move(X)), A_(std::move(A)), cfg_(cfg) {
    cfg_.validate();
    std::sort(X_.begin(), X_.end());
    X_.erase(std::unique(X_.begin(), X_.end()), X_.end());
    std::sort(A_.begin(), A_.end());
    A_.erase(std::unique(A_.begin(), A_.end()), A_.end());
    if (A_.empty()) throw ParameterError("centroid set: A must be non-empty");
    marked_.assign(g.n(), 0);
    for (int x : X_) marked_[sz(x)] = 1;

    d_ = apsp(g.adj);
    dA_ = nearest_distance(g.adj, A_);
    tree_ = build_tree(g, X_);
    region_cache_.resize(tree_.regions.size());
    alpha_ = family_spanner(g).alpha;
    ell_ = support_hop_limit(g.metric, alpha_, cfg_.eps, cfg_.z, cfg_.gamma_support);
    mu_ = landmark_mu(cfg_.eps, cfg_.z, cfg_.gamma_landmark);

    build_net();
    build_support();
    build_landmark();
}

void CentroidBuilder::build_net() {
    ball_of_.assign(g_.n(), -1);
    if (g_.metric.family == Family::HOP_UDG) return;
    const double e = cfg_.eps, z = cfg_.z;
    std::set<int> net;
    for (int p : X_) {
        double dp = dA(p);
        if (!(dp < 1.0)) continue;
        NetBall b;
        b.center = p;
        b.radius = (10.0 * z / e) * dp;
        b.mu = (e * e * e) / (z * z * z) * dp;
        for (std::size_t v = 0; v < g_.n(); ++v)
            if (d_(sz(p), v) <= b.radius) b.ball.push_back(static_cast<int>(v));
        if (b.mu > 0.0)
            b.net = mu_net(b.ball, g_.points.points(), b.mu, g_.metric.c1);
        else
            b.net = {p};
        net.insert(b.net.begin(), b.net.end());
        ball_of_[sz(p)] = static_cast<int>(balls_.size());
        balls_.push_back(std::move(b));
    }
    c_net_.assign(net.begin(), net.end());
}

void CentroidBuilder::build_support() {
    support_ = build_support_graph(g_, cfg_.eps * cfg_.eps / (cfg_.z * cfg_.z));
    // Multi-source BFS in the support graph from f(X), up to ell hops.
    std::vector<long> hop(g_.n(), -1);
    std::vector<int> frontier;
    for (int p : X_) {
        int fp = support_.f[sz(p)];
        if (hop[sz(fp)] < 0) {
            hop[sz(fp)] = 0;
            frontier.push_back(fp);
        }
    }
    for (long level = 0; level < ell_ && !frontier.empty(); ++level) {
        std::vector<int> next;
        for (int u : frontier)
            for (int v : support_.adj[sz(u)])
                if (hop[sz(v)] < 0) {
                    hop[sz(v)] = level + 1;
                    next.push_back(v);
                }
        frontier = std::move(next);
    }
    in_support_.assign(g_.n(), 0);
    for (std::size_t v = 0; v < g_.n(); ++v)
        if (hop[v] >= 0) {
            in_support_[v] = 1;
            c_support_.push_back(static_cast<int>(v));
        }
}

bool CentroidBuilder::in_r_prime(int s) const {
    for (int x : X_) {
        int h = d_.hop(sz(x), sz(s));
        if (h >= 0 && h <= ell_) return false;
    }
    return true;
}

const DistMatrix& CentroidBuilder::region_matrix(int region) const {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto& slot = region_cache_[sz(region)];
    if (!slot) {
        const Region& r = tree_[region];
        if (r.g_local)
            slot = std::make_unique<DistMatrix>(apsp(r.g_local->adj));
        else
            slot = std::make_unique<DistMatrix>(apsp(induced_subgraph(g_, r.vertices).adj));
    }
    return *slot;
}

double CentroidBuilder::region_dist(int region, int a, int b) const {
    const Region& r = tree_[region];
    int la = r.local(a), lb = r.local(b);
    if (la < 0 || lb < 0) throw ParameterError("region_dist: vertex outside region");
    return region_matrix(region)(sz(la), sz(lb));
}

LandmarkSet CentroidBuilder::landmarks(int region, int path, int q1, int q2) const {
    std::array<int, 4> key{region, path, q1, q2};
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = landmark_cache_.find(key);
        if (it != landmark_cache_.end()) return it->second;
    }
    const Region& r = tree_[region];
    LandmarkSet L;
    L.region = region;
    L.path = path;
    L.q1 = q1;
    L.q2 = q2;
    L.D = region_dist(region, q1, q2) + dA(q2);
    const auto& P = r.paths[sz(path)];
    const double reach = L.D / (mu_ * mu_);
    std::size_t first = P.size(), last = 0;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (region_dist(region, P[i], q1) <= reach) {
            L.Q.push_back(P[i]);
            first = std::min(first, i);
            last = i;
        }
    std::set<int> marks;
    if (!L.Q.empty()) {
        const double unit = mu_ * mu_ * L.D;
        if (!(unit > 0.0)) {
            marks.insert(L.Q.begin(), L.Q.end());
        } else {
            const Graph& h = r.h_local->h;
            std::vector<double> pos{0.0};
            for (std::size_t i = first + 1; i <= last; ++i)
                pos.push_back(pos.back() + h.weight(r.local(P[i - 1]), r.local(P[i])));
            auto on_mark = [&](double x) {
                double m = std::round(x / unit);
                return std::abs(m * unit - x) <= 1e-12 * std::max(1.0, x);
            };
            for (std::size_t k = 0; k < pos.size(); ++k) {
                if (on_mark(pos[k])) marks.insert(P[first + k]);
                if (k + 1 < pos.size()) {
                    // A mark strictly inside the edge adds both endpoints.
                    double next = (std::floor(pos[k] / unit + 1e-9) + 1.0) * unit;
                    if (next < pos[k + 1] - 1e-12 * std::max(1.0, pos[k + 1])) {
                        marks.insert(P[first + k]);
                        marks.insert(P[first + k + 1]);
                    }
                }
            }
        }
    }
    L.landmarks.assign(marks.begin(), marks.end());
    std::lock_guard<std::mutex> lock(cache_mu_);
    landmark_cache_.emplace(key, L);
    return L;
}

TupleBundle CentroidBuilder::canonical_tuple(int s) const {
    if (!in_r_prime(s)) throw PreconditionError("canonical_tuple: vertex is within ell hops of X");
    auto chain = root_leaf_path(tree_, s);
    const Region& leaf = tree_[chain.back()];
    std::vector<int> x_leaf;
    for (int v : leaf.vertices)
        if (marked_[sz(v)]) x_leaf.push_back(v);

    TupleBundle bundle;
    for (std::size_t level = 0; level + 1 < chain.size(); ++level) {
        const Region& r = tree_[chain[level]];
        if (!r.has_separator()) continue;
        std::vector<int> xr;
        for (int v : r.vertices)
            if (marked_[sz(v)]) xr.push_back(v);

        int q1 = -1;
        double d1s = kInf;
        for (int q : xr) {
            double dq = region_dist(r.id, q, s);
            if (dq < d1s) {
                d1s = dq;
                q1 = q;
            }
        }
        if (q1 < 0) continue;
        auto Dq = [&](int q) { return region_dist(r.id, q1, q) + dA(q); };
        int q2 = -1;
        for (int q : xr) {
            double v = Dq(q);
            if (mu_ * d1s <= v && v <= d1s / mu_) {
                q2 = q;
                break;
            }
        }
        int q3 = -1, q4 = -1;
        bool flag = false;
        if (q2 < 0) {
            double best3 = kInf, best4 = -kInf;
            for (int q : xr) {
                double v = Dq(q);
                if (v > d1s / mu_ && v < best3) {
                    best3 = v;
                    q3 = q;
                }
                if (v < mu_ * d1s && v > best4) {
                    best4 = v;
                    q4 = q;
                }
            }
            flag = (q4 < 0 || Dq(q4) / mu_ < d1s) && (q3 < 0 || d1s < mu_ * Dq(q3));
        }

        for (std::size_t j = 0; j < r.paths.size(); ++j) {
            RoundedTuple t;
            t.region = r.id;
            t.path = static_cast<int>(j);
            if (q2 >= 0) {
                t.kind = TupleKind::TUPLE1;
                t.anchors = {q1, q2, -1};
                LandmarkSet L = landmarks(r.id, static_cast<int>(j), q1, q2);
                const double D = L.D;
                for (int l : L.landmarks)
                    t.entries.emplace_back(l, round_clamped(region_dist(r.id, s, l), mu_ * mu_ * D, 3.0 * D / (mu_ * mu_)));
                t.entries.emplace_back(q1, round_clamped(d1s, mu_ * D, 3.0 * D / mu_));
                for (int x : x_leaf)
                    t.entries.emplace_back(x, round_clamped(region_dist(r.id, x, s), mu_ * dA(x), dA(x) / mu_));
            } else {
                t.kind = TupleKind::TUPLE2;
                t.anchors = {q1, q3, q4};
                t.entries.emplace_back(-1, flag ? 1 : 0);
            }
            bundle.push_back(std::move(t));
        }
    }
    RoundedTuple lt;
    lt.kind = TupleKind::LEAF;
    lt.region = leaf.id;
    for (int x : x_leaf)
        lt.entries.emplace_back(x, round_clamped(d_(sz(x), sz(s)), mu_ * dA(x), dA(x) / mu_));
    bundle.push_back(std::move(lt));
    return bundle;
}

void CentroidBuilder::build_landmark() {
    std::set<int> reps;
    for (const Region& r : tree_.regions) {
        if (!r.leaf()) continue;
        auto& groups = groups_[r.id];
        for (int s : r.vertices) {
            if (marked_[sz(s)] || !in_r_prime(s)) continue;
            if (root_leaf_path(tree_, s).back() != r.id) continue;
            groups[canonical_tuple(s)].push_back(s);
        }
        for (auto& [bundle, members] : groups) reps.insert(members.front());
    }
    c_landmark_.assign(reps.begin(), reps.end());
}

const std::map<TupleBundle, std::vector<int>>& CentroidBuilder::leaf_groups(int leaf) const {
    static const std::map<TupleBundle, std::vector<int>> none;
    auto it = groups_.find(leaf);
    return it == groups_.end() ? none : it->second;
}

int CentroidBuilder::landmark_representative(int s) const {
    if (!in_r_prime(s)) return -1;
    int leaf = root_leaf_path(tree_, s).back();
    const auto& groups = leaf_groups(leaf);
    auto it = groups.find(canonical_tuple(s));
    if (it == groups.end()) return -1;
    return it->second.front();
}

std::vector<int> CentroidBuilder::centroid_set() const {
    std::set<int> all(c_net_.begin(), c_net_.end());
    all.insert(c_support_.begin(), c_support_.end());
    all.insert(c_landmark_.begin(), c_landmark_.end());
    return {all.begin(), all.end()};
}

Replacement CentroidBuilder::replace_solution(std::span<const int> S_in) const {
    Replacement out;
    out.S.assign(S_in.begin(), S_in.end());
    std::sort(out.S.begin(), out.S.end());
    out.S.erase(std::unique(out.S.begin(), out.S.end()), out.S.end());
    if (out.S.empty()) throw ParameterError("replace_solution: empty solution");
    const std::size_t k = out.S.size();
    out.rho.assign(k, -1);
    out.rule.assign(k, Rule::LANDMARK);

    // Cluster of each client under S, ties to the smallest center.
    std::vector<int> owner(g_.n(), -1);
    std::vector<std::vector<int>> cluster(k);
    for (int p : X_) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < k; ++c)
            if (d_(sz(p), sz(out.S[c])) < d_(sz(p), sz(out.S[best]))) best = c;
        owner[sz(p)] = static_cast<int>(best);
        cluster[best].push_back(p);
    }
    const bool hop = g_.metric.family == Family::HOP_UDG;
    const double e = cfg_.eps, z = cfg_.z;

    std::vector<char> is_net(k, 0);
    if (!hop)
        for (std::size_t c = 0; c < k; ++c) {
            int s = out.S[c];
            int pi = -1;
            double best = kInf;
            for (int q : cluster[c]) {
                // Only cheap clients whose ball reaches s qualify.
                if (!(dA(q) < 1.0) || d_(sz(q), sz(s)) > (10.0 * z / e) * dA(q)) continue;
                double v = dA(q) + d_(sz(q), sz(s));
                if (v < best) {
                    best = v;
                    pi = q;
                }
            }
            if (pi < 0) continue;
            const NetBall& b = balls_[sz(ball_of_[sz(pi)])];
            int pick = -1;
            double bd = kInf;
            for (int y : b.net)
                if (d_(sz(s), sz(y)) < bd) {
                    bd = d_(sz(s), sz(y));
                    pick = y;
                }
            out.rho[c] = pick;
            out.rule[c] = Rule::NET;
            is_net[c] = 1;
        }

    auto net_witness = [&](std::size_t c) -> int {
        int fs = support_.f[sz(out.S[c])];
        for (int q : X_) {
            auto sq = static_cast<std::size_t>(owner[sz(q)]);
            if (sq == c || !is_net[sq]) continue;
            if (d_(sz(q), sz(out.S[sq])) <= e / z && d_(sz(q), sz(out.rho[sq])) > d_(sz(q), sz(fs)))
                return static_cast<int>(sq);
        }
        return -1;
    };
    std::vector<int> witness(k, -1);
    std::vector<char> eligible(k, 0);
    for (std::size_t c = 0; c < k; ++c) {
        if (out.rho[c] >= 0) continue;
        eligible[c] = in_support_[sz(support_.f[sz(out.S[c])])];
        if (eligible[c]) witness[c] = net_witness(c);
    }
    for (std::size_t c = 0; c < k; ++c)
        if (out.rho[c] < 0 && eligible[c] && witness[c] >= 0) {
            out.rho[c] = out.rho[sz(witness[c])];
            out.rule[c] = Rule::NET_SUB;
        }
    for (std::size_t c = 0; c < k; ++c)
        if (out.rho[c] < 0 && eligible[c]) {
            out.rho[c] = support_.f[sz(out.S[c])];
            out.rule[c] = Rule::SUPPORT;
        }
    for (std::size_t c = 0; c < k; ++c) {
        if (out.rho[c] >= 0) continue;
        int rep = landmark_representative(out.S[c]);
        if (rep < 0) throw ConsistencyError("replace_solution: landmark center " + std::to_string(out.S[c]) + " is not in R'_t");
        out.rho[c] = rep;
        out.rule[c] = Rule::LANDMARK;
    }
    out.S_tilde = out.rho;
    std::sort(out.S_tilde.begin(), out.S_tilde.end());
    out.S_tilde.erase(std::unique(out.S_tilde.begin(), out.S_tilde.end()), out.S_tilde.end());
    return out;
}

ErrorAudit CentroidBuilder::audit(const Replacement& r) const {
    ErrorAudit a;
    const int z = cfg_.z;
    const double thr = zpow(10.0 * z / cfg_.eps, z);
    const double factor = errorbound_factor(cfg_.eps, z);
    for (int p : X_) {
        double dS = kInf, dT = kInf;
        for (int c : r.S) dS = std::min(dS, d_(sz(p), sz(c)));
        for (int c : r.S_tilde) dT = std::min(dT, d_(sz(p), sz(c)));
        double cS = zpow(dS, z), cT = zpow(dT, z), cA = zpow(dA(p), z);
        if (!(cS <= thr * cA || cT <= thr * cA)) continue;
        ++a.relevant;
        double bound = factor * (cS + cA);
        if (std::abs(cS - cT) <= bound + 1e-12)
            ++a.passed;
        else
            a.failures.push_back({p, cS, cT, cA, bound});
    }
    return a;
}

} // namespace igc
