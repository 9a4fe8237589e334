#include "igc/errors.hpp"
#include "igc/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace igc;

namespace {

struct Global {
    std::uint64_t seed = 1;
    std::string preset = "desk";
    std::string out;
    std::string format = "csv";
    std::string config;
};

// Experiment parameters given as flags; only those actually passed override the config file.
struct ParamFlags {
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> opts;

    void add(CLI::App* app, const std::string& key, const std::string& flag, const std::string& help) {
        opts[key] = app->add_option(flag, values[key], help);
    }

    ExperimentConfig resolve(const Global& g) {
        ExperimentConfig cfg;
        if (!g.config.empty()) cfg = ExperimentConfig::from_text(read_file(g.config));
        cfg.preset = g.preset;
        cfg.seeds = {g.seed};
        for (auto& [key, opt] : opts)
            if (opt->count() > 0) cfg.set(key, values[key]);
        cfg.validate();
        return cfg;
    }
};

void emit(const Global& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        write_file(g.out, text.back() == '\n' ? text : text + '\n');
    }
}

void emit_json(const Global& g, const json& j) { emit(g, j.dump(2)); }

void emit_table(const Global& g, const Table& t) {
    if (g.format == "json") {
        emit_json(g, t.to_json());
    } else {
        std::ostringstream os;
        t.write_csv(os);
        emit(g, os.str());
    }
}

struct Instance {
    PointSet pts;
    Graph g;
    std::vector<int> X;
};

Instance load(const std::string& in, const ExperimentConfig& cfg, std::uint64_t seed) {
    Instance I;
    I.pts = in.empty() ? generate(cfg, seed) : read_points(in);
    I.g = build_graph(I.pts, MetricKind::parse(cfg.metric));
    I.X = choose_clients(I.g.n(), cfg.x_frac, seed);
    return I;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clustering coresets on unit-disk and unit-square graph metrics"};
    app.require_subcommand(1);
    app.fallthrough();
    Global G;
    app.add_option("--seed", G.seed, "Random seed")->capture_default_str();
    app.add_option("--preset", G.preset, "Constant preset")->check(CLI::IsMember({"paper", "desk"}))->capture_default_str();
    app.add_option("--out", G.out, "Output file (default: stdout)");
    app.add_option("--format", G.format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--config", G.config, "key=value config file");

    std::string in, method = "fpt", coreset_path, report = "sizes", runtimes_path;
    bool verify = false;
    std::map<std::string, ParamFlags> flags;

    auto sub = [&](const std::string& name, const std::string& help, std::vector<std::string> keys) {
        CLI::App* s = app.add_subcommand(name, help);
        ParamFlags& pf = flags[name];
        static const std::map<std::string, std::pair<std::string, std::string>> known{
            {"generator", {"--generator", "uniform-box | gaussian-clusters | grid-jitter"}},
            {"n", {"--n", "Number of points"}},
            {"box", {"--box", "Side of the sampling box"}},
            {"clusters", {"--clusters", "Planted clusters"}},
            {"spread", {"--spread", "Cluster standard deviation"}},
            {"jitter", {"--jitter", "Grid jitter as a fraction of spacing"}},
            {"metric", {"--metric", "udg-l2 | udg-l1 | udg-linf | usg-linf | usg-l2 | hop-udg"}},
            {"k", {"--k", "Number of centers"}},
            {"z", {"--z", "Cost exponent"}},
            {"eps", {"--eps", "Accuracy"}},
            {"delta", {"--delta", "Failure probability"}},
            {"x_frac", {"--x-frac", "Fraction of vertices used as clients"}},
            {"size_constant", {"--size-constant", "Constant c in the sample size formula"}},
            {"trials", {"--trials", "Number of random center sets"}},
        };
        for (const auto& k : keys) pf.add(s, k, known.at(k).first, known.at(k).second);
        return s;
    };
    const std::vector<std::string> inst{"generator", "n", "box", "clusters", "spread", "jitter", "metric"};
    auto with = [&](std::vector<std::string> extra) {
        std::vector<std::string> k = inst;
        k.insert(k.end(), extra.begin(), extra.end());
        return k;
    };

    auto* gen = sub("gen", "Generate a point set", inst);
    auto* graph = sub("graph", "Build the intersection graph", inst);
    auto* spanner = sub("spanner", "Planar spanner of the graph", inst);
    auto* separator = sub("separator", "Shortest-path separator of the spanner", with({"x_frac"}));
    auto* decompose = sub("decompose", "Recursive separator decomposition", with({"x_frac"}));
    auto* centroid = sub("centroid", "Centroid set and replacement audit", with({"x_frac", "k", "z", "eps", "trials"}));
    auto* coreset = sub("coreset", "Weighted coreset", with({"x_frac", "k", "z", "eps", "delta", "size_constant"}));
    auto* verify_cs = sub("verify-coreset", "Check a coreset against random center sets", with({"x_frac", "trials"}));
    auto* solve = sub("solve", "Solve (k,z)-clustering", with({"x_frac", "k", "z", "eps", "delta", "size_constant"}));
    auto* bench = app.add_subcommand("bench", "Run an experiment matrix from --config");

    for (auto* s : {graph, spanner, separator, decompose, centroid, coreset, verify_cs, solve})
        s->add_option("--in", in, "Points (CSV id,x,y or JSON); generated when omitted");
    spanner->add_flag("--verify", verify, "Report stretch and planarity on stderr");
    centroid->add_option("--report", report, "sizes,errors")->capture_default_str();
    verify_cs->add_option("--coreset", coreset_path, "coreset.json")->required();
    solve->add_option("--method", method, "fpt | brute")->check(CLI::IsMember({"fpt", "brute"}))->capture_default_str();
    bench->add_option("--runtimes", runtimes_path, "Write per-stage runtimes here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        CLI::App* s = app.get_subcommands().front();
        const std::string name = s->get_name();

        if (name == "bench") {
            if (G.config.empty()) throw ParameterError("bench: --config is required");
            auto configs = parse_matrix(read_file(G.config));
            MatrixReport rep = run_matrix(configs);
            emit_table(G, rep.rows);
            if (!runtimes_path.empty()) {
                std::ostringstream os;
                rep.runtimes.write_csv(os);
                write_file(runtimes_path, os.str());
            }
            if (rep.failures) std::cerr << rep.failures << " cell(s) failed\n";
            return rep.exit_code();
        }

        ExperimentConfig cfg = flags[name].resolve(G);

        if (name == "gen") {
            PointSet pts = generate(cfg, G.seed);
            if (G.format == "json") {
                emit_json(G, points_to_json(pts));
            } else {
                std::ostringstream os;
                write_points_csv(os, pts);
                emit(G, os.str());
            }
            return 0;
        }

        Instance I = load(in, cfg, G.seed);

        if (name == "graph") {
            emit_json(G, graph_to_json(I.g));
        } else if (name == "spanner") {
            PlanarSpanner h = family_spanner(I.g);
            if (verify) {
                std::cerr << "stretch=" << fmt(verify_stretch(I.g, h)) << " alpha=" << fmt(h.alpha)
                          << " crossings=" << crossing_count(h.h) << " planar=" << is_planar_embedding(h.h);
                if (I.g.metric.family == Family::USG)
                    std::cerr << " edge_bound_excess=" << fmt(usg_edge_bound_excess(I.g, h.h));
                std::cerr << '\n';
            }
            emit_json(G, spanner_to_json(h));
        } else if (name == "separator") {
            PlanarSpanner h = family_spanner(I.g);
            std::vector<double> w(I.g.n(), 0.0);
            for (int x : I.X) w[static_cast<std::size_t>(x)] = 1.0;
            SeparatorResult r = sp_separator(h, w);
            json paths = json::array();
            for (const auto& p : r.paths) {
                json pj = json::array();
                for (int v : p) pj.push_back(I.pts[static_cast<std::size_t>(v)].id);
                paths.push_back(pj);
            }
            emit_json(G, {{"root", I.pts[static_cast<std::size_t>(r.root)].id},
                          {"balance", r.balance},
                          {"b", r.b()},
                          {"paths", paths}});
        } else if (name == "decompose") {
            emit_json(G, tree_to_json(build_tree(I.g, I.X), I.pts));
        } else if (name == "centroid") {
            DistMatrix d = apsp(I.g.adj);
            ApproxSolution A = approx_solution(d, Clients::unit(I.X), cfg.k, cfg.z, G.seed);
            CentroidBuilder cb(I.g, I.X, A.centers, centroid_config(cfg));
            bool sizes = report.find("sizes") != std::string::npos;
            bool errors = report.find("errors") != std::string::npos;
            Table st{{"metric", "n", "X", "A", "alpha", "ell", "mu", "c_net", "c_support", "c_landmark", "total",
                      "support_max_degree", "support_degree_bound"},
                     {}};
            st.add({I.g.metric.name(), std::to_string(I.g.n()), std::to_string(I.X.size()),
                    std::to_string(A.centers.size()), fmt(cb.alpha()), std::to_string(cb.ell()), fmt(cb.mu()),
                    std::to_string(cb.c_net().size()), std::to_string(cb.c_support().size()),
                    std::to_string(cb.c_landmark().size()), std::to_string(cb.centroid_set().size()),
                    std::to_string(cb.support().max_degree), std::to_string(cb.support().degree_bound)});
            Table et{{"trial", "relevant", "passed", "net", "net_sub", "support", "landmark"}, {}};
            if (errors) {
                int trials = flags[name].opts["trials"]->count() ? cfg.trials : 50;
                auto sets = verification_center_sets(d, cfg.k, trials, A.centers, G.seed);
                for (std::size_t t = 0; t < sets.size(); ++t) {
                    Replacement rep = cb.replace_solution(sets[t]);
                    ErrorAudit a = cb.audit(rep);
                    std::map<Rule, int> cnt;
                    for (Rule r : rep.rule) ++cnt[r];
                    et.add({std::to_string(t), std::to_string(a.relevant), std::to_string(a.passed),
                            std::to_string(cnt[Rule::NET]), std::to_string(cnt[Rule::NET_SUB]),
                            std::to_string(cnt[Rule::SUPPORT]), std::to_string(cnt[Rule::LANDMARK])});
                }
            }
            if (G.format == "json") {
                json j = json::object();
                if (sizes) j["sizes"] = st.to_json().at(0);
                if (errors) j["errors"] = et.to_json();
                emit_json(G, j);
            } else {
                std::ostringstream os;
                if (sizes) st.write_csv(os);
                if (sizes && errors) os << '\n';
                if (errors) et.write_csv(os);
                emit(G, os.str());
            }
        } else if (name == "coreset") {
            DistMatrix d = apsp(I.g.adj);
            WeightedCoreset Y = iterative_coreset(d, Clients::unit(I.X), cfg.k, cfg.z, cfg.eps, cfg.delta, G.seed,
                                                  cfg.size_constant);
            emit_json(G, coreset_to_json(Y, I.pts));
        } else if (name == "verify-coreset") {
            DistMatrix d = apsp(I.g.adj);
            WeightedCoreset Y = coreset_from_json(json::parse(read_file(coreset_path)), I.pts);
            int k = std::max(1, Y.params.k);
            Clients X = Clients::unit(I.X);
            ApproxSolution A = approx_solution(d, X, k, std::max(1, Y.params.z), G.seed);
            int trials = flags[name].opts["trials"]->count() ? cfg.trials : 200;
            auto sets = verification_center_sets(d, k, trials, A.centers, G.seed);
            CoresetReport rep = verify_coreset(d, X, Y, std::max(1, Y.params.z), sets);
            Table t{{"trial", "true_cost", "coreset_cost", "rel_err"}, {}};
            for (const auto& r : rep.trials)
                t.add({std::to_string(r.trial), fmt(r.true_cost), fmt(r.coreset_cost), fmt(r.rel_err)});
            emit_table(G, t);
            std::cerr << "max_rel_err=" << fmt(rep.max_rel_err) << '\n';
        } else if (name == "solve") {
            DistMatrix d = apsp(I.g.adj);
            Clients X = Clients::unit(I.X);
            ClusteringResult r = method == "brute"
                                     ? brute_force(d, X, cfg.k, cfg.z)
                                     : fpt_cluster(d, X, cfg.k, cfg.z, cfg.eps, G.seed, {cfg.delta, cfg.size_constant});
            emit_json(G, result_to_json(r, I.pts));
        }
        return 0;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
