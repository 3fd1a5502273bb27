#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace replenish {

/// SplitMix64 finalizer. Avalanche-quality 64-bit mixer used both as the
/// generator step and to derive independent sub-streams.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// FNV-1a over the bytes of `text`.
constexpr std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Deterministic random stream.
///
/// A stream is identified by (master_seed, label); the starting state is
/// mix64(master_seed ^ mix64(fnv1a64(label))). All distributions below are
/// implemented here rather than taken from <random> so that draw sequences
/// do not depend on the standard library vendor.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t state) : state_(state) {}

    static Rng stream(std::uint64_t master_seed, std::string_view label) {
        return Rng(mix64(master_seed ^ mix64(fnv1a64(label))));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform();
    /// Standard normal via Box-Muller (consumes two uniforms per call).
    double normal();
    /// Gamma(shape, scale=1), Marsaglia-Tsang.
    double gamma(double shape);
    /// Poisson(mean); exact, by Knuth's product method on chunks of mean <= 16.
    std::int64_t poisson(double mean);
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::uint64_t state_;
};

}  // namespace replenish
