#include "migragent/rng.hpp"

#include <cmath>
#include <limits>

namespace migragent {

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::uniform_index(std::size_t n) {
    const std::uint64_t range = n;
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - (max % range + 1) % range;
    std::uint64_t draw = engine_();
    while (draw > limit) draw = engine_();
    return static_cast<std::size_t>(draw % range);
}

double Rng::normal(double mean, double sd) {
    double u = 0.0, v = 0.0, s = 0.0;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return mean + sd * u * std::sqrt(-2.0 * std::log(s) / s);
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint32_t condition, std::uint32_t replication) {
    const std::uint64_t key = (static_cast<std::uint64_t>(condition) << 32) | replication;
    // mix64 is bijective and adding a constant modulo 2^64 is too, so distinct
    // keys give distinct seeds.
    return mix64(mix64(key) + mix64(master));
}

} // namespace migragent
