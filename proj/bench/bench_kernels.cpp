// Times each OpenMP kernel against its serial reference and checks that
// both return the same answer.

#include "igc/harness.hpp"
#include "igc/solver.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>

using namespace igc;

namespace {

double time_it(const std::function<void()>& f, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const std::string& kernel, std::size_t n, double serial, double parallel, bool same) {
    std::cout << kernel << ',' << n << ',' << kernel_threads() << ',' << fmt(serial) << ',' << fmt(parallel) << ','
              << fmt(parallel > 0 ? serial / parallel : 0.0) << ',' << (same ? 1 : 0) << '\n';
}

} // namespace

int main(int argc, char** argv) {
    std::size_t n = argc > 1 ? static_cast<std::size_t>(std::atol(argv[1])) : 400;
    int reps = argc > 2 ? std::atoi(argv[2]) : 3;
    ExperimentConfig cfg;
    cfg.n = n;
    PointSet pts = generate(cfg, 7);
    Graph g = build_udg(pts);
    Clients X = Clients::all(n);
    bool all_same = true;

    std::cout << "kernel,n,threads,serial_s,parallel_s,speedup,identical\n";

    DistMatrix a, b;
    double s = time_it([&] { a = apsp_serial(g.adj); }, reps);
    double p = time_it([&] { b = apsp(g.adj); }, reps);
    bool same = a.dist == b.dist && a.hops == b.hops;
    all_same &= same;
    row("apsp", n, s, p, same);

    auto sets = verification_center_sets(a, 4, 2000, {}, 3);
    std::vector<double> c1, c2;
    s = time_it([&] { c1 = batch_cost_serial(a, X, sets, 2); }, reps);
    p = time_it([&] { c2 = batch_cost(a, X, sets, 2); }, reps);
    same = c1 == c2;
    all_same &= same;
    row("batch_cost", n, s, p, same);

    ApproxSolution A = approx_solution(a, X, 3, 1, 11);
    WeightedCoreset Y = sensitivity_coreset(a, X, A, 3, 1, 200, 5);
    CoresetReport r1, r2;
    s = time_it([&] { r1 = verify_coreset_serial(a, X, Y, 1, sets); }, reps);
    p = time_it([&] { r2 = verify_coreset(a, X, Y, 1, sets); }, reps);
    same = r1.max_rel_err == r2.max_rel_err;
    all_same &= same;
    row("verify_coreset", n, s, p, same);

    std::size_t small = std::min<std::size_t>(n, 120);
    std::vector<int> sub(small);
    for (std::size_t i = 0; i < small; ++i) sub[i] = static_cast<int>(i);
    DistMatrix ds = apsp(induced_subgraph(g, sub).adj);
    Clients Xs = Clients::all(small);
    ClusteringResult b1, b2;
    s = time_it([&] { b1 = brute_force_serial(ds, Xs, 2, 1); }, reps);
    p = time_it([&] { b2 = brute_force(ds, Xs, 2, 1); }, reps);
    same = b1.centers == b2.centers && b1.cost == b2.cost;
    all_same &= same;
    row("brute_force", small, s, p, same);

    WeightedCoreset Ys = sensitivity_coreset(ds, Xs, approx_solution(ds, Xs, 2, 1, 3), 2, 1, 40, 9);
    Clients yc = Ys.as_clients();
    if (yc.size() > 18) {
        yc.vertex.resize(18);
        yc.weight.resize(18);
    }
    s = time_it([&] { b1 = partition_search_serial(ds, yc, 2, 1); }, reps);
    p = time_it([&] { b2 = partition_search(ds, yc, 2, 1); }, reps);
    same = b1.centers == b2.centers && b1.cost == b2.cost;
    all_same &= same;
    row("partition_search", yc.size(), s, p, same);

    return all_same ? 0 : 1;
}
