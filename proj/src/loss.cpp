#include "scrlm/loss.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "scrlm/parallel.hpp"

namespace scrlm {
namespace {

// Four interleaved accumulators, checked against `limit` every kChunk
// coordinates. With limit = +inf this is the plain squared distance, and any
// early return is >= limit. The accumulators live in two 2-lane vectors,
// lanes (s0, s1) and (s2, s3); the arithmetic is the same as four scalars.
using Lanes = double __attribute__((vector_size(16)));

inline Lanes load2(const double* p) {
    Lanes v;
    std::memcpy(&v, p, sizeof v);
    return v;
}

double squared_distance_until(const double* a, const double* b, std::size_t p, double limit) {
    constexpr std::size_t kChunk = 64;
    Lanes lo = {0.0, 0.0};
    Lanes hi = {0.0, 0.0};
    const std::size_t p4 = p & ~std::size_t{3};
    std::size_t j = 0;
    while (j < p4) {
        const std::size_t stop = std::min(p4, j + kChunk);
        for (; j < stop; j += 4) {
            const Lanes d_lo = load2(a + j) - load2(b + j);
            const Lanes d_hi = load2(a + j + 2) - load2(b + j + 2);
            lo += d_lo * d_lo;
            hi += d_hi * d_hi;
        }
        const double partial = (lo[0] + lo[1]) + (hi[0] + hi[1]);
        if (partial >= limit) return partial;
    }
    double tail = 0.0;
    for (; j < p; ++j) {
        const double d = a[j] - b[j];
        tail += d * d;
    }
    return ((lo[0] + lo[1]) + (hi[0] + hi[1])) + tail;
}

double loss_scale(std::size_t p, double rho) { return static_cast<double>(p) * rho * rho; }

void check_loss_params(std::size_t p, double rho, double f_const) {
    if (p == 0) throw std::invalid_argument("loss: dimension must be >= 1");
    if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("loss: rho must be positive");
    if (!(f_const > 0.0) || !std::isfinite(f_const)) {
        throw std::invalid_argument("loss: F must be positive");
    }
}

}  // namespace

double per_observation_loss(double d_sq, std::size_t p, double rho, double f_const) {
    if (!std::isfinite(d_sq) || d_sq < 0.0) {
        throw std::invalid_argument("per_observation_loss: squared distance must be finite and >= 0");
    }
    check_loss_params(p, rho, f_const);
    return std::min(d_sq / loss_scale(p, rho) - f_const, 0.0);
}

double support_radius(double rho, std::size_t p, double f_const) {
    check_loss_params(p, rho, f_const);
    return rho * std::sqrt(static_cast<double>(p) * f_const);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("squared_distance: dimension mismatch");
    return squared_distance_until(a.data(), b.data(), a.size(),
                                  std::numeric_limits<double>::infinity());
}

double total_loss(std::span<const double> query, const DataMatrix& data, const ScrlmParams& params) {
    if (query.size() != data.n_cols()) {
        throw std::invalid_argument("total_loss: query dimension does not match data");
    }
    const std::size_t p = data.n_cols();
    check_loss_params(p, params.rho, params.f_const);
    const double scale = loss_scale(p, params.rho);
    double sum = 0.0;
    for (std::size_t i = 0; i < data.n_rows(); ++i) {
        const double d_sq = squared_distance(data.row(i), query);
        sum += std::min(d_sq / scale - params.f_const, 0.0);
    }
    return sum;
}

std::vector<double> batch_total_loss(const DataMatrix& data, std::span<const std::size_t> query_rows,
                                     double rho, double f_const, unsigned threads) {
    const std::size_t p = data.n_cols();
    const std::size_t n_rows = data.n_rows();
    check_loss_params(p, rho, f_const);
    for (std::size_t q : query_rows) {
        if (q >= n_rows) throw std::invalid_argument("batch_total_loss: query row out of range");
    }

    const double scale = loss_scale(p, rho);
    // d_sq >= cutoff guarantees d_sq / scale - F rounds to a value >= 0.
    const double cutoff = f_const * scale * (1.0 + 1e-12);

    // Gather the queries so the inner loop walks contiguous memory.
    const std::size_t n_queries = query_rows.size();
    std::vector<double> queries(n_queries * p);
    for (std::size_t k = 0; k < n_queries; ++k) {
        auto src = data.row(query_rows[k]);
        std::copy(src.begin(), src.end(), queries.begin() + static_cast<std::ptrdiff_t>(k * p));
    }

    std::vector<double> out(n_queries, 0.0);
    const std::size_t rows_per_block = std::max<std::size_t>(1, 16384 / p);
    const double* base = data.values().data();

    parallel_for(n_queries, threads, [&](std::size_t q_begin, std::size_t q_end) {
        for (std::size_t r0 = 0; r0 < n_rows; r0 += rows_per_block) {
            const std::size_t r1 = std::min(n_rows, r0 + rows_per_block);
            for (std::size_t k = q_begin; k < q_end; ++k) {
                const double* q = queries.data() + k * p;
                double acc = out[k];
                for (std::size_t i = r0; i < r1; ++i) {
                    const double d_sq = squared_distance_until(base + i * p, q, p, cutoff);
                    if (d_sq < cutoff) acc += std::min(d_sq / scale - f_const, 0.0);
                }
                out[k] = acc;
            }
        }
    });
    return out;
}

}  // namespace scrlm
