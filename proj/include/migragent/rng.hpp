#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace migragent {

// Random stream used by one simulation run.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The distributions are implemented here instead of using
// <random>'s, whose algorithms vary between standard libraries; that keeps
// trajectories identical across toolchains for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01();

    // Uniform integer on [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n);

    // Normal deviate via the Marsaglia polar method. The second deviate of
    // each accepted pair is discarded so every call consumes a whole pair.
    double normal(double mean, double sd);

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

// Seed for replication `replication` of condition `condition` under a master
// seed. Injective in (condition, replication) for indices below 2^32.
std::uint64_t derive_seed(std::uint64_t master, std::uint32_t condition, std::uint32_t replication);

} // namespace migragent
