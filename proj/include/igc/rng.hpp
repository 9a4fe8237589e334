#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace igc {

/// Counter-based generator built on the SplitMix64 finalizer.
///
/// Output i of a stream is mix(key + (i + 1) * golden), so a stream is fully
/// determined by its 64-bit key and streams with different keys never share
/// state. Keys are derived from (seed, label, index) with derive(), which is
/// how parallel trials obtain independent, reproducible streams.
///
/// All distributions are implemented here rather than through <random>
/// distributions so that outputs are identical across standard libraries.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t key) : key_(key) {}

    static CounterRng derive(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, n); unbiased (rejection on the top range).
    std::uint64_t below(std::uint64_t n);
    /// Standard normal via Box-Muller (one value per call, no caching).
    double normal();

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view s);

} // namespace igc
