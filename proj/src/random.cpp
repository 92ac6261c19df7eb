#include "scrlm/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace scrlm {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

constexpr int kZigLayers = 128;
constexpr double kZigR = 3.442619855899;         // start of the tail
constexpr double kZigV = 9.91256303526217e-3;    // area of each layer

struct ZigguratTables {
    std::array<double, kZigLayers + 1> x{};
    std::array<double, kZigLayers> ratio{};

    ZigguratTables() {
        double f = std::exp(-0.5 * kZigR * kZigR);
        x[0] = kZigV / f;
        x[1] = kZigR;
        x[kZigLayers] = 0.0;
        for (int i = 2; i < kZigLayers; ++i) {
            x[i] = std::sqrt(-2.0 * std::log(kZigV / x[i - 1] + f));
            f = std::exp(-0.5 * x[i] * x[i]);
        }
        for (int i = 0; i < kZigLayers; ++i) ratio[i] = x[i + 1] / x[i];
    }
};

const ZigguratTables& tables() {
    static const ZigguratTables t;
    return t;
}

double normal_tail(Rng& rng, bool negative) {
    double x = 0.0;
    double y = 0.0;
    do {
        x = std::log(rng.uniform_open()) / kZigR;
        y = std::log(rng.uniform_open());
    } while (-2.0 * y < x * x);
    return negative ? x - kZigR : kZigR - x;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t state = master;
    std::uint64_t h = splitmix64(state);
    for (std::uint64_t v : path) {
        state = h ^ (v + 0x632be59bd9b4e019ULL);
        h = splitmix64(state);
    }
    return h;
}

Rng::Rng(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& word : s_) word = splitmix64(state);
}

Rng::result_type Rng::operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Rng::uniform_open() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>((*this)()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double standard_normal(Rng& rng) {
    const auto& t = tables();
    for (;;) {
        const std::uint64_t bits = rng();
        // Top 53 bits give u in [-1, 1); the low 7 bits pick the layer.
        const double u = 2.0 * (static_cast<double>(bits >> 11) * 0x1.0p-53) - 1.0;
        const auto layer = static_cast<int>(bits & (kZigLayers - 1));
        if (std::fabs(u) < t.ratio[layer]) return u * t.x[layer];
        if (layer == 0) return normal_tail(rng, u < 0.0);

        const double x = u * t.x[layer];
        const double f0 = std::exp(-0.5 * (t.x[layer] * t.x[layer] - x * x));
        const double f1 = std::exp(-0.5 * (t.x[layer + 1] * t.x[layer + 1] - x * x));
        if (f1 + rng.uniform() * (f0 - f1) < 1.0) return x;
    }
}

std::vector<std::size_t> sample_without_replacement(std::size_t n_total, std::size_t n_sub, Rng& rng) {
    if (n_sub > n_total) {
        throw std::invalid_argument("cannot draw " + std::to_string(n_sub) + " distinct indices from " +
                                    std::to_string(n_total));
    }
    std::vector<std::size_t> pool(n_total);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < n_sub; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n_total - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(n_sub);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace scrlm
