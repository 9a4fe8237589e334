#include "igc/coreset.hpp"
#include "igc/errors.hpp"
#include "igc/solver.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace igc;
using namespace igc::test;

namespace {

std::vector<int> range(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

} // namespace

TEST_SUITE("coreset") {

TEST_CASE("sample size and logs") {
    CHECK(desk_sample_size(1, 0.5, 20.0) == 80);
    CHECK(desk_sample_size(3, 0.2, 20.0) == static_cast<std::size_t>(std::ceil(20.0 * 3 * 4.0 / 0.04)));
    CHECK(iterated_log(1024.0, 0) == 1024.0);
    CHECK(iterated_log(1024.0, 1) == doctest::Approx(10.0));
    CHECK(iterated_log(65536.0, 2) == doctest::Approx(4.0));
    CHECK(default_rho(1) == 2.0);
    CHECK(default_rho(2) == 4.0);
    CHECK(default_rho(3) == 6.0);
}

TEST_CASE("reduction schedule") {
    ReductionSchedule small = reduction_schedule(500, 3, 1, 0.2, 0.1);
    CHECK(small.t == 0);
    CHECK(small.eps_i.empty());
    CHECK_THROWS_AS(reduction_schedule(100, 3, 1, 1.0, 0.1), ParameterError);
    CHECK_THROWS_AS(reduction_schedule(100, 3, 1, 0.2, 0.3), ParameterError);

    ReductionSchedule s = reduction_schedule(1000000, 1, 1, 0.5, 0.1);
    CHECK(s.threshold == doctest::Approx(125.0 * 4.0 * std::log2(10.0)));
    REQUIRE(s.t == 1);
    CHECK(s.eps_i[0] == doctest::Approx(0.5 / std::sqrt(std::log2(1e6))));
    CHECK(s.target[0] == std::max<std::size_t>(desk_sample_size(1, s.eps_i[0], 20.0), 20));

    // Two stages would need log2 n above the threshold, far past any size_t.
    CHECK(reduction_schedule(std::size_t{1} << 62, 1, 1, 0.9, 0.2).t == 1);
    CHECK(s.product == doctest::Approx(1.0 + s.eps_i[0]));
    CHECK(s.sum <= 2.0 * s.eps_i.back() + 1e-12);
    CHECK(s.product <= 1.0 + 10.0 * 0.5);
}

TEST_CASE("approx solution") {
    Graph g = build_udg(random_points(15, 2.5, 4));
    DistMatrix d = apsp(g.adj);
    auto dd = floyd(g.adj);
    Clients X = Clients::all(15);
    ApproxSolution A = approx_solution(d, X, 2, 1, 1);
    double opt = kInf;
    for (int a = 0; a < 15; ++a)
        for (int b = a + 1; b < 15; ++b) opt = std::min(opt, dense_cost(dd, X, {a, b}, 1));
    CHECK(A.cost <= 5.0 * opt + 1e-9);
    CHECK(A.cost == doctest::Approx(dense_cost(dd, X, A.centers, 1)));
    CHECK(std::is_sorted(A.centers.begin(), A.centers.end()));
    REQUIRE(A.assignment.size() == 15);

    ApproxSolution all = approx_solution(d, X, 15, 2, 1);
    CHECK(all.cost == 0.0);

    ApproxSolution one = approx_solution(d, X, 1, 2, 1);
    double best = kInf;
    for (int a = 0; a < 15; ++a) best = std::min(best, dense_cost(dd, X, {a}, 2));
    CHECK(one.cost == doctest::Approx(best));

    CHECK_THROWS_AS(approx_solution(d, X, 0, 1, 1), ParameterError);
    CHECK_THROWS_AS(approx_solution(d, X, 16, 1, 1), ParameterError);
    CHECK_THROWS_AS(approx_solution(d, Clients{}, 1, 1, 1), ParameterError);
}

TEST_CASE("approx solution covers every component") {
    PointSet ps({{0, 0, 0}, {1, 0.5, 0}, {2, 10, 0}, {3, 10.5, 0}, {4, 20, 0}});
    Graph g = build_udg(ps);
    DistMatrix d = apsp(g.adj);
    ApproxSolution A = approx_solution(d, Clients::all(5), 3, 1, 9);
    CHECK(std::isfinite(A.cost));
    CHECK_THROWS_AS(approx_solution(d, Clients::all(5), 2, 1, 9), ParameterError);
}

TEST_CASE("coincident clients collapse") {
    Graph g = build_udg(random_points(30, 3.0, 5));
    DistMatrix d = apsp(g.adj);
    std::vector<int> same(40, 7);
    Clients X = Clients::unit(same);
    ApproxSolution A = approx_solution(d, X, 1, 1, 3);
    WeightedCoreset Y = sensitivity_coreset(d, X, A, 1, 1, 25, 3);
    REQUIRE(Y.members == std::vector<int>{7});
    CHECK(Y.weights[0] == doctest::Approx(40.0));
    CHECK_THROWS_AS(sensitivity_coreset(d, X, A, 2, 1, 1, 3), ParameterError);
}

TEST_CASE("sensitivity sampling is unbiased") {
    Graph g = build_udg(random_points(60, 5.0, 6));
    DistMatrix d = apsp(g.adj);
    Clients X = Clients::unit(range(60));
    ApproxSolution A = approx_solution(d, X, 2, 1, 1);
    std::vector<int> C{3, 40};
    const double truth = matrix_cost(d, X, C, 1);
    double mean = 0.0, wmean = 0.0;
    const int reps = 400;
    for (int r = 0; r < reps; ++r) {
        WeightedCoreset Y = sensitivity_coreset(d, X, A, 2, 1, 30, static_cast<std::uint64_t>(r));
        mean += matrix_cost(d, Y.as_clients(), C, 1) / reps;
        wmean += Y.total_weight() / reps;
        CHECK(std::is_sorted(Y.members.begin(), Y.members.end()));
    }
    CHECK(mean == doctest::Approx(truth).epsilon(0.03));
    CHECK(wmean == doctest::Approx(60.0).epsilon(0.03));
}

TEST_CASE("verification") {
    Graph g = build_udg(random_points(80, 5.0, 7));
    DistMatrix d = apsp(g.adj);
    Clients X = Clients::unit(range(80));
    WeightedCoreset self;
    self.members = range(80);
    self.weights.assign(80, 1.0);
    auto sets = verification_center_sets(d, 3, 30, std::vector<int>{1, 2, 3}, 11);
    REQUIRE(sets.size() == 30);
    for (const auto& S : sets) {
        CHECK(S.size() == 3);
        CHECK(std::is_sorted(S.begin(), S.end()));
        CHECK(std::adjacent_find(S.begin(), S.end()) == S.end());
    }
    CHECK(sets == verification_center_sets(d, 3, 30, std::vector<int>{1, 2, 3}, 11));
    CoresetReport r = verify_coreset(d, X, self, 1, sets);
    CHECK(r.max_rel_err == 0.0);

    // A single point with the full weight is a poor summary.
    WeightedCoreset bad;
    bad.members = {0};
    bad.weights = {80.0};
    CoresetReport rb = verify_coreset(d, X, bad, 1, sets);
    CHECK(rb.max_rel_err > 0.2);
    CoresetReport rs = verify_coreset_serial(d, X, bad, 1, sets);
    CHECK(rs.max_rel_err == rb.max_rel_err);
    for (std::size_t i = 0; i < rs.trials.size(); ++i) CHECK(rs.trials[i].coreset_cost == rb.trials[i].coreset_cost);

    CHECK(relative_error(2.0, 2.0) == 0.0);
    CHECK(relative_error(2.0, 3.0) == doctest::Approx(0.5));
    CHECK(std::isinf(relative_error(0.0, 1.0)));
}

TEST_CASE("iterative coreset") {
    Graph g = build_udg(random_points(200, 8.0, 8));
    DistMatrix d = apsp(g.adj);
    Clients X = Clients::unit(range(200));
    WeightedCoreset Y = iterative_coreset(d, X, 2, 1, 0.4, 0.1, 5);
    WeightedCoreset Y2 = iterative_coreset(d, X, 2, 1, 0.4, 0.1, 5);
    CHECK(Y.members == Y2.members);
    CHECK(Y.weights == Y2.weights);
    CHECK(Y.stage_sizes.back() == Y.members.size());
    CHECK(Y.members.size() <= desk_sample_size(2, 0.4, 20.0));
    CHECK(Y.total_weight() == doctest::Approx(200.0).epsilon(0.25));
    for (double w : Y.weights) CHECK(w > 0.0);
    auto sets = verification_center_sets(d, 2, 40, {}, 3);
    CHECK(verify_coreset(d, X, Y, 1, sets).max_rel_err < 0.4);
}

}
