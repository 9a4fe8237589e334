#include "igc/harness.hpp"

#include "igc/errors.hpp"
#include "igc/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace igc {

namespace {

const std::set<std::string> kGenerators{"uniform-box", "gaussian-clusters", "grid-jitter"};
const std::set<std::string> kStages{"spanner", "decompose", "coreset", "centroid"};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& what) {
    throw ParameterError("config." + key + ": " + what);
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long long r = std::stoll(v, &pos);
        if (pos != v.size()) bad(key, "not an integer: '" + v + "'");
        return r;
    } catch (const std::logic_error&) {
        bad(key, "not an integer: '" + v + "'");
    }
}

double to_real(const std::string& key, const std::string& v) {
    try {
        return parse_double(v);
    } catch (const ParameterError&) {
        bad(key, "not a number: '" + v + "'");
    }
}

template <class T>
std::string join(const std::vector<T>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
    return os.str();
}

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

} // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (key == "name") name = v;
    else if (key == "generator") generator = v;
    else if (key == "n") {
        long long x = to_int(key, v);
        if (x < 1) bad(key, "must be >= 1");
        n = static_cast<std::size_t>(x);
    } else if (key == "box") box = to_real(key, v);
    else if (key == "clusters") clusters = static_cast<int>(to_int(key, v));
    else if (key == "spread") spread = to_real(key, v);
    else if (key == "jitter") jitter = to_real(key, v);
    else if (key == "metric") metric = v;
    else if (key == "k") k = static_cast<int>(to_int(key, v));
    else if (key == "z") z = static_cast<int>(to_int(key, v));
    else if (key == "eps") eps = to_real(key, v);
    else if (key == "delta") delta = to_real(key, v);
    else if (key == "seeds") {
        seeds.clear();
        for (const auto& s : split(v, ',')) {
            long long x = to_int(key, s);
            if (x < 0) bad(key, "seeds must be non-negative");
            seeds.push_back(static_cast<std::uint64_t>(x));
        }
    } else if (key == "trials") trials = static_cast<int>(to_int(key, v));
    else if (key == "verify_trials") verify_trials = static_cast<int>(to_int(key, v));
    else if (key == "preset") preset = v;
    else if (key == "size_constant") size_constant = to_real(key, v);
    else if (key == "x_frac") x_frac = to_real(key, v);
    else if (key == "stages") stages = split(v, ',');
    else bad(key, "unknown key");
}

void ExperimentConfig::validate() const {
    if (!kGenerators.count(generator)) bad("generator", "unknown generator '" + generator + "'");
    if (n < 1) bad("n", "must be >= 1");
    if (!(box > 0.0) || !std::isfinite(box)) bad("box", "must be positive and finite");
    if (clusters < 1) bad("clusters", "must be >= 1");
    if (!(spread >= 0.0) || !std::isfinite(spread)) bad("spread", "must be non-negative and finite");
    if (!(jitter >= 0.0 && jitter <= 0.5)) bad("jitter", "must lie in [0, 0.5]");
    try {
        MetricKind::parse(metric);
    } catch (const std::exception& e) {
        bad("metric", e.what());
    }
    if (k < 1) bad("k", "must be >= 1");
    if (z < 1) bad("z", "must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) bad("eps", "must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 0.25)) bad("delta", "must lie in (0, 1/4)");
    if (seeds.empty()) bad("seeds", "must list at least one seed");
    if (trials < 1) bad("trials", "must be >= 1");
    if (verify_trials < 1) bad("verify_trials", "must be >= 1");
    if (preset != "desk" && preset != "paper") bad("preset", "must be desk or paper");
    if (!(size_constant > 0.0) || !std::isfinite(size_constant)) bad("size_constant", "must be positive");
    if (!(x_frac > 0.0 && x_frac <= 1.0)) bad("x_frac", "must lie in (0, 1]");
    for (const auto& s : stages)
        if (!kStages.count(s)) bad("stages", "unknown stage '" + s + "'");
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream os;
    os << "name=" << name << '\n'
       << "generator=" << generator << '\n'
       << "n=" << n << '\n'
       << "box=" << fmt(box) << '\n'
       << "clusters=" << clusters << '\n'
       << "spread=" << fmt(spread) << '\n'
       << "jitter=" << fmt(jitter) << '\n'
       << "metric=" << metric << '\n'
       << "k=" << k << '\n'
       << "z=" << z << '\n'
       << "eps=" << fmt(eps) << '\n'
       << "delta=" << fmt(delta) << '\n'
       << "seeds=" << join(seeds) << '\n'
       << "trials=" << trials << '\n'
       << "verify_trials=" << verify_trials << '\n'
       << "preset=" << preset << '\n'
       << "size_constant=" << fmt(size_constant) << '\n'
       << "x_frac=" << fmt(x_frac) << '\n'
       << "stages=" << join(stages) << '\n';
    return os.str();
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParameterError("config line " + std::to_string(lineno) + ": expected key=value");
        cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    cfg.validate();
    return cfg;
}

std::vector<ExperimentConfig> parse_matrix(const std::string& text) {
    std::vector<ExperimentConfig> out;
    std::istringstream in(text);
    std::string line, block;
    auto flush = [&] {
        bool any = false;
        std::istringstream b(block);
        std::string l;
        while (std::getline(b, l)) {
            auto h = l.find('#');
            if (h != std::string::npos) l.resize(h);
            if (!trim(l).empty()) any = true;
        }
        if (any) out.push_back(ExperimentConfig::from_text(block));
        block.clear();
    };
    while (std::getline(in, line)) {
        if (trim(line) == "---") flush();
        else block += line + '\n';
    }
    flush();
    return out;
}

std::vector<Vec2> planted_centers(const ExperimentConfig& cfg, std::uint64_t seed) {
    if (cfg.generator != "gaussian-clusters") return {};
    CounterRng rng = CounterRng::derive(seed, "planted-centers");
    std::vector<Vec2> c;
    for (int i = 0; i < cfg.clusters; ++i) {
        double x = rng.uniform(cfg.box / 6.0, 5.0 * cfg.box / 6.0);
        double y = rng.uniform(cfg.box / 6.0, 5.0 * cfg.box / 6.0);
        c.push_back({x, y});
    }
    return c;
}

PointSet generate(const ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    std::vector<Point2D> pts;
    const std::size_t n = cfg.n;
    if (n == 1) {
        pts.push_back({0, cfg.box / 2.0, cfg.box / 2.0});
        return PointSet(std::move(pts));
    }
    CounterRng rng = CounterRng::derive(seed, cfg.generator);
    if (cfg.generator == "uniform-box") {
        for (std::size_t i = 0; i < n; ++i) {
            double x = rng.uniform(0.0, cfg.box);
            double y = rng.uniform(0.0, cfg.box);
            pts.push_back({static_cast<std::int64_t>(i), x, y});
        }
    } else if (cfg.generator == "gaussian-clusters") {
        auto centers = planted_centers(cfg, seed);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& c = centers[i % centers.size()];
            double x = c.x + cfg.spread * rng.normal();
            double y = c.y + cfg.spread * rng.normal();
            pts.push_back({static_cast<std::int64_t>(i), x, y});
        }
    } else {
        auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
        double h = cfg.box / static_cast<double>(side);
        for (std::size_t i = 0; i < n; ++i) {
            double x = (static_cast<double>(i % side) + 0.5) * h + cfg.jitter * h * rng.uniform(-1.0, 1.0);
            double y = (static_cast<double>(i / side) + 0.5) * h + cfg.jitter * h * rng.uniform(-1.0, 1.0);
            pts.push_back({static_cast<std::int64_t>(i), x, y});
        }
    }
    return PointSet(std::move(pts));
}

std::vector<int> choose_clients(std::size_t n, double x_frac, std::uint64_t seed) {
    if (n == 0) return {};
    auto m = static_cast<std::size_t>(std::ceil(x_frac * static_cast<double>(n)));
    m = std::clamp<std::size_t>(m, 1, n);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    if (m == n) return all;
    CounterRng rng = CounterRng::derive(seed, "clients");
    for (std::size_t i = 0; i < m; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
    all.resize(m);
    std::sort(all.begin(), all.end());
    return all;
}

CentroidConfig centroid_config(const ExperimentConfig& cfg) {
    return cfg.preset == "paper" ? CentroidConfig::paper(cfg.eps, cfg.z) : CentroidConfig::desk(cfg.eps, cfg.z);
}

namespace {

const std::vector<std::string> kColumns{"config",        "seed",         "trial",
                                        "n",             "metric",       "edges",
                                        "clients",       "spanner_alpha", "spanner_stretch",
                                        "planar",        "tree_depth",   "tree_leaves",
                                        "tree_max_x",    "coreset_size", "coreset_max_rel_err",
                                        "centroid_size", "audit_pass_rate", "status",
                                        "message"};
const std::vector<std::string> kTimeColumns{"config", "seed", "trial", "graph_s", "spanner_s", "decompose_s",
                                            "coreset_s", "centroid_s"};

struct Cell {
    const ExperimentConfig* cfg = nullptr;
    std::uint64_t seed = 0;
    int trial = 0;
};

struct CellOut {
    std::map<std::string, std::string> row;
    std::map<std::string, std::string> times;
    bool failed = false;
};

bool has(const ExperimentConfig& c, const std::string& stage) {
    return std::find(c.stages.begin(), c.stages.end(), stage) != c.stages.end();
}

void run_cell(const Cell& cell, CellOut& out) {
    const ExperimentConfig& cfg = *cell.cfg;
    auto& row = out.row;
    auto& tm = out.times;
    std::vector<std::string> problems;

    auto t0 = Clock::now();
    PointSet pts = generate(cfg, cell.seed);
    Graph g = build_graph(pts, MetricKind::parse(cfg.metric));
    std::vector<int> X = choose_clients(g.n(), cfg.x_frac, cell.seed);
    tm["graph_s"] = fmt(since(t0));
    row["n"] = std::to_string(g.n());
    row["metric"] = g.metric.name();
    row["edges"] = std::to_string(g.edge_count());
    row["clients"] = std::to_string(X.size());

    if (has(cfg, "spanner")) {
        t0 = Clock::now();
        PlanarSpanner h = family_spanner(g);
        double stretch = verify_stretch(g, h);
        bool planar = is_planar_embedding(h.h);
        tm["spanner_s"] = fmt(since(t0));
        row["spanner_alpha"] = fmt(h.alpha);
        row["spanner_stretch"] = fmt(stretch);
        row["planar"] = planar ? "1" : "0";
        if (!(stretch <= h.alpha + 1e-9)) problems.push_back("stretch above alpha");
        if (!planar) problems.push_back("spanner not planar");
    }
    if (has(cfg, "decompose")) {
        t0 = Clock::now();
        DecompTree t = build_tree(g, X);
        tm["decompose_s"] = fmt(since(t0));
        int max_x = 0;
        for (const auto& r : t.regions)
            if (r.leaf()) max_x = std::max(max_x, r.x_count);
        row["tree_depth"] = std::to_string(t.depth);
        row["tree_leaves"] = std::to_string(t.leaf_count());
        row["tree_max_x"] = std::to_string(max_x);
        if (max_x > 2) problems.push_back("leaf with more than two clients");
        if (t.depth > 4.0 * std::log2(static_cast<double>(X.size())) + 2.0) problems.push_back("tree too deep");
    }
    if (has(cfg, "coreset") || has(cfg, "centroid")) {
        DistMatrix d = apsp(g.adj);
        Clients clients = Clients::unit(X);
        std::uint64_t key = CounterRng::derive(cell.seed, "cell", static_cast<std::uint64_t>(cell.trial)).key();
        ApproxSolution A = approx_solution(d, clients, cfg.k, cfg.z, key);
        if (has(cfg, "coreset")) {
            t0 = Clock::now();
            WeightedCoreset Y = iterative_coreset(d, clients, cfg.k, cfg.z, cfg.eps, cfg.delta, key, cfg.size_constant);
            auto sets = verification_center_sets(d, cfg.k, cfg.verify_trials, A.centers, key);
            CoresetReport rep = verify_coreset(d, clients, Y, cfg.z, sets);
            tm["coreset_s"] = fmt(since(t0));
            row["coreset_size"] = std::to_string(Y.members.size());
            row["coreset_max_rel_err"] = fmt(rep.max_rel_err);
            for (double w : Y.weights)
                if (!(w > 0.0)) {
                    problems.push_back("non-positive coreset weight");
                    break;
                }
        }
        if (has(cfg, "centroid") && g.metric.family != Family::HOP_UDG) {
            t0 = Clock::now();
            CentroidBuilder cb(g, X, A.centers, centroid_config(cfg));
            auto sets = verification_center_sets(d, cfg.k, 10, {}, key ^ 0x5bd1e995ULL);
            std::size_t relevant = 0, passed = 0;
            for (const auto& S : sets) {
                ErrorAudit a = cb.audit(cb.replace_solution(S));
                relevant += a.relevant;
                passed += a.passed;
            }
            tm["centroid_s"] = fmt(since(t0));
            row["centroid_size"] = std::to_string(cb.centroid_set().size());
            row["audit_pass_rate"] = relevant ? fmt(static_cast<double>(passed) / static_cast<double>(relevant)) : "1";
        }
    }
    if (problems.empty()) {
        row["status"] = "ok";
    } else {
        row["status"] = "fail";
        std::string msg;
        for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
        row["message"] = msg;
        out.failed = true;
    }
}

} // namespace

MatrixReport run_matrix(const std::vector<ExperimentConfig>& configs) {
    std::vector<Cell> cells;
    for (const auto& c : configs)
        for (std::uint64_t s : c.seeds)
            for (int t = 0; t < c.trials; ++t) cells.push_back({&c, s, t});

    std::vector<CellOut> outs(cells.size());
    const auto nc = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < nc; ++i) {
        auto& out = outs[static_cast<std::size_t>(i)];
        try {
            cells[static_cast<std::size_t>(i)].cfg->validate();
            run_cell(cells[static_cast<std::size_t>(i)], out);
        } catch (const std::exception& e) {
            out.row["status"] = "error";
            std::string msg = e.what();
            std::replace(msg.begin(), msg.end(), ',', ';');
            out.row["message"] = msg;
            out.failed = true;
        }
    }

    MatrixReport rep;
    rep.rows.header = kColumns;
    rep.runtimes.header = kTimeColumns;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto& o = outs[i];
        for (auto* m : {&o.row, &o.times}) {
            (*m)["config"] = cells[i].cfg->name;
            (*m)["seed"] = std::to_string(cells[i].seed);
            (*m)["trial"] = std::to_string(cells[i].trial);
        }
        std::vector<std::string> r, t;
        for (const auto& c : kColumns) r.push_back(o.row.count(c) ? o.row[c] : "");
        for (const auto& c : kTimeColumns) t.push_back(o.times.count(c) ? o.times[c] : "");
        rep.rows.add(std::move(r));
        rep.runtimes.add(std::move(t));
        if (o.failed) ++rep.failures;
    }
    return rep;
}

} // namespace igc
