#include "igc/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace igc;

TEST_SUITE("rng") {

TEST_CASE("streams are reproducible and keyed") {
    CounterRng a = CounterRng::derive(7, "alpha", 3);
    CounterRng b = CounterRng::derive(7, "alpha", 3);
    CounterRng c = CounterRng::derive(7, "alpha", 4);
    CounterRng d = CounterRng::derive(7, "beta", 3);
    std::vector<std::uint64_t> va, vb, vc, vd;
    for (int i = 0; i < 16; ++i) {
        va.push_back(a());
        vb.push_back(b());
        vc.push_back(c());
        vd.push_back(d());
    }
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(va != vd);
    CHECK(a.counter() == 16);
}

TEST_CASE("splitmix64 matches reference outputs") {
    // First outputs of the classic SplitMix64 generator seeded with 0.
    std::uint64_t state = 0;
    auto next = [&] {
        state += 0x9E3779B97F4A7C15ULL;
        return splitmix64(state);
    };
    CHECK(next() == 0xE220A8397B1DCDAFULL);
    CHECK(next() == 0x6E789E6AA1B965F4ULL);
    CHECK(next() == 0x06C45D188009454FULL);
}

TEST_CASE("uniform and below stay in range with sane moments") {
    CounterRng r(42);
    double sum = 0.0, sq = 0.0;
    const int N = 200000;
    for (int i = 0; i < N; ++i) {
        double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sq += u * u;
    }
    CHECK(sum / N == doctest::Approx(0.5).epsilon(0.01));
    CHECK(sq / N - (sum / N) * (sum / N) == doctest::Approx(1.0 / 12.0).epsilon(0.02));

    std::vector<int> hist(7, 0);
    for (int i = 0; i < 70000; ++i) ++hist[r.below(7)];
    for (int h : hist) CHECK(std::abs(h - 10000) < 500);
}

TEST_CASE("normal has unit variance") {
    CounterRng r(9);
    double sum = 0.0, sq = 0.0;
    const int N = 100000;
    for (int i = 0; i < N; ++i) {
        double x = r.normal();
        sum += x;
        sq += x * x;
    }
    CHECK(std::abs(sum / N) < 0.02);
    CHECK(sq / N == doctest::Approx(1.0).epsilon(0.02));
}

}
