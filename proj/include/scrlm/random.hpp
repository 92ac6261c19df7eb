#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <vector>

namespace scrlm {

/// One step of SplitMix64; used for seeding and for hashing seed streams.
std::uint64_t splitmix64(std::uint64_t& state);

/// Mixes a master seed with a path of stream indices (cell, repetition, ...)
/// into an independent 64-bit seed. Order of the path matters.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// xoshiro256** 1.0 (Blackman & Vigna), seeded by running SplitMix64 on the
/// 64-bit seed. Satisfies UniformRandomBitGenerator.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1); safe to pass to log().
    double uniform_open();
    /// Uniform integer in [0, bound), unbiased (Lemire's multiply-shift with rejection).
    std::uint64_t below(std::uint64_t bound);

private:
    std::array<std::uint64_t, 4> s_{};
};

/// Standard normal variates by the 128-layer ziggurat (Marsaglia & Tsang,
/// with Doornik's independent-uniform correction). Layer tables are built
/// once per process.
double standard_normal(Rng& rng);

/// n_sub distinct indices from [0, n_total), drawn by a partial Fisher-Yates
/// shuffle and returned in ascending order. Throws std::invalid_argument when
/// n_sub > n_total.
std::vector<std::size_t> sample_without_replacement(std::size_t n_total, std::size_t n_sub, Rng& rng);

}  // namespace scrlm
