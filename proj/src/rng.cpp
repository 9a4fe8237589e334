#include "igc/rng.hpp"

#include <cmath>
#include <numbers>

namespace igc {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

CounterRng CounterRng::derive(std::uint64_t seed, std::string_view label, std::uint64_t index)
{
    std::uint64_t k = splitmix64(seed + kGolden);
    k = splitmix64(k ^ fnv1a(label));
    k = splitmix64(k ^ (index * kGolden + 0x632BE59BD9B4E019ULL));
    return CounterRng(k);
}

CounterRng::result_type CounterRng::operator()()
{
    ++counter_;
    return splitmix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform()
{
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t n)
{
    if (n <= 1)
        return 0;
    const std::uint64_t limit = max() - (max() % n);
    std::uint64_t r;
    do {
        r = (*this)();
    } while (r >= limit);
    return r % n;
}

double CounterRng::normal()
{
    double u1 = uniform();
    while (u1 <= 0.0)
        u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace igc
