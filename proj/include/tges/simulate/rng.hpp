#pragma once

#include <cstdint>
#include <random>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace tges {

/// SplitMix64 finalizer; used to derive independent sub-seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for stream `stream` of a run seeded with `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix_seed(mix_seed(seed) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

/// Named streams. Truth generation and data sampling draw from different
/// streams, so changing n never changes the generated graph.
enum class RngStream : std::uint64_t { Truth = 1, Data = 2, Replicate = 3 };

/// Portable seeded generator: 64-bit Mersenne Twister with Boost's
/// distributions, whose output does not depend on the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, RngStream stream) : engine_(derive_seed(seed, static_cast<std::uint64_t>(stream))) {}

    /// Uniform on [lo, hi); a degenerate range returns lo.
    double uniform(double lo, double hi) {
        if (!(lo < hi)) return lo;
        return boost::random::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    double uniform01() { return uniform(0.0, 1.0); }

    /// Uniform integer on the closed range [lo, hi].
    template <typename Int>
    Int uniform_int(Int lo, Int hi) {
        return boost::random::uniform_int_distribution<Int>(lo, hi)(engine_);
    }

    double normal() { return normal_(engine_); }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    boost::random::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace tges
