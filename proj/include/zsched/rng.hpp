#pragma once

#include <cstdint>
#include <random>

namespace zsched {

// Seeding scheme
// --------------
// Every random quantity is drawn from its own std::mt19937_64 whose seed is
// derived with SplitMix64 from (base seed, up to three salt words).  Traces use
// salts (stream id, quantity kind) so adding a stream never perturbs the
// samples of the others; replication k of a run uses derive_seed(base, k).
// Exponential variates are produced by inverse CDF on a 53-bit uniform, so
// results do not depend on the standard library's distribution code.

/// One SplitMix64 step: advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

enum class SampleKind : std::uint64_t {
    interarrival = 1,
    execution = 2,
    deadline = 3,
    ctmc = 4,
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Exponential with the given mean (inverse CDF).
    double exponential_mean(double mean);

    /// Exponential with the given rate.
    double exponential_rate(double rate) { return exponential_mean(1.0 / rate); }

private:
    std::mt19937_64 engine_;
};

} // namespace zsched
