#include <zsched/rng.hpp>

#include <cmath>

namespace zsched {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a)
{
    std::uint64_t state = base;
    splitmix64(state);
    state ^= a * 0xd1b54a32d192ed03ULL;
    return splitmix64(state);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b)
{
    return derive_seed(derive_seed(base, a), b);
}

double Rng::exponential_mean(double mean)
{
    // 1 - u lies in (0, 1], so the log is finite; u = 0 would give an exact
    // zero, which no sampled duration may be.
    for (;;) {
        const double x = -mean * std::log1p(-uniform());
        if (x > 0.0) {
            return x;
        }
    }
}

} // namespace zsched
