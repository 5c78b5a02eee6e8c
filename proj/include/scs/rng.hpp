#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace scs {

/// Deterministic random source with a pinned draw discipline, so seeded runs
/// reproduce bit-identically. Raw 64-bit engine words map to open-interval
/// uniforms; a normal consumes exactly two uniforms (Box-Muller cosine
/// branch, no caching); a Bernoulli consumes exactly one.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw on the open interval (0, 1).
    double uniform() {
        const std::uint64_t bits = engine_();
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal draw.
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// 1.0 with probability p, else 0.0.
    double bernoulli(double p) { return uniform() < p ? 1.0 : 0.0; }

private:
    static constexpr double two_pi = 6.283185307179586476925286766559;
    std::mt19937_64 engine_;
};

/// Stateless 64-bit mixer (splitmix64 step).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for replication i of a run seeded with base; replications are
/// independent and order-free under this derivation.
constexpr std::uint64_t replication_seed(std::uint64_t base, std::uint64_t i) noexcept {
    return splitmix64(base + i * 0x9E3779B97F4A7C15ULL);
}

} // namespace scs
