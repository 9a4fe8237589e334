#include "igc/coreset.hpp"
#include "igc/kernels.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace igc;
using namespace igc::test;

TEST_SUITE("kernels") {

TEST_CASE("apsp parallel equals serial equals floyd") {
    Graph g = build_udg(random_points(90, 7.0, 3));
    DistMatrix a = apsp(g.adj), b = apsp_serial(g.adj);
    CHECK(a.dist == b.dist);
    CHECK(a.hops == b.hops);
    auto f = floyd(g.adj);
    for (std::size_t u = 0; u < g.n(); ++u)
        for (std::size_t v = 0; v < g.n(); ++v) {
            if (std::isinf(f[u][v])) CHECK(std::isinf(a(u, v)));
            else CHECK(a(u, v) == doctest::Approx(f[u][v]).epsilon(1e-12));
        }
}

TEST_CASE("batch cost parallel equals serial equals dense evaluation") {
    Graph g = build_usg(random_points(70, 5.0, 6));
    DistMatrix d = apsp(g.adj);
    auto f = floyd(g.adj);
    Clients X = Clients::all(70);
    auto sets = verification_center_sets(d, 3, 40, {}, 2);
    auto p = batch_cost(d, X, sets, 2), s = batch_cost_serial(d, X, sets, 2);
    CHECK(p == s);
    for (std::size_t i = 0; i < sets.size(); ++i) CHECK(p[i] == doctest::Approx(dense_cost(f, X, sets[i], 2)));
    sets.push_back({});
    CHECK_THROWS(batch_cost(d, X, sets, 1));
}

TEST_CASE("kernel threads positive") { CHECK(kernel_threads() >= 1); }

}
