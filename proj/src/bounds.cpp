#include "scrlm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scrlm {
namespace {

void check_counts(std::size_t N, std::size_t m, double a) {
    if (N < 1 || m < 1) throw std::invalid_argument("bounds: N and m must be >= 1");
    if (!(a > 0.0) || a > static_cast<double>(m)) {
        throw std::invalid_argument("bounds: a must lie in (0, m]");
    }
}

std::size_t ceil_count(double x) { return static_cast<std::size_t>(std::ceil(x)); }

}  // namespace

double theorem1_probability(std::size_t N, std::size_t p, std::size_t m, std::size_t n, double a) {
    check_counts(N, m, a);
    if (p < 1 || n < 1) throw std::invalid_argument("bounds: p and n must be >= 1");
    const double Nd = static_cast<double>(N);
    const double md = static_cast<double>(m);
    const double e_p = std::exp(-static_cast<double>(p) / 128.0);
    return 1.0 - 10.0 * Nd * Nd * e_p - md * std::exp(-static_cast<double>(n) * a / md) -
           2.0 * md * e_p - md * std::exp(-a * (Nd - 1.0) / md);
}

ThresholdRhs corollary7_rhs(std::size_t N, std::size_t m, double a, double delta) {
    check_counts(N, m, a);
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("bounds: delta must lie in (0, 1)");
    const double md = static_cast<double>(m);
    ThresholdRhs r;
    r.p_vs_N = 128.0 * (2.0 * std::log(static_cast<double>(N)) + std::log(40.0 / delta));
    r.p_vs_m = 128.0 * (std::log(md) + std::log(8.0 / delta));
    r.n = (md / a) * (std::log(md) + std::log(4.0 / delta));
    r.N = r.n + 1.0;
    return r;
}

std::size_t smallest_integer_above(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("threshold must be finite and >= 0");
    return static_cast<std::size_t>(std::floor(x)) + 1;
}

BoundReport corollary7_thresholds(std::size_t N, std::size_t m, double a, double delta, std::size_t p,
                                  std::size_t n) {
    BoundReport r;
    r.N = N;
    r.m = m;
    r.a = a;
    r.delta = delta;
    r.rhs = corollary7_rhs(N, m, a, delta);

    r.p_min_vs_N = ceil_count(r.rhs.p_vs_N) + 1;
    r.p_min_vs_m = ceil_count(r.rhs.p_vs_m) + 1;
    r.n_min = std::max<std::size_t>(1, ceil_count(r.rhs.n));
    r.N_min = ceil_count(r.rhs.N) + 1;

    r.p_strict_vs_N = smallest_integer_above(r.rhs.p_vs_N);
    r.p_strict_vs_m = smallest_integer_above(r.rhs.p_vs_m);
    r.n_strict = smallest_integer_above(r.rhs.n);
    r.N_strict = smallest_integer_above(r.rhs.N);

    r.p = p;
    r.n = n == 0 ? r.n_min : n;
    if (p >= 1) r.prob_lower_bound = theorem1_probability(N, p, m, r.n, a);
    return r;
}

bool assumption1_holds(double sigma_max, double rho) {
    return sigma_max <= rho && rho < std::sqrt(0.6);
}

bool in_theoretical_region(const BoundReport& report, std::size_t N, std::size_t p, std::size_t n,
                           double sigma_max, double rho) {
    return p >= report.p_min_vs_N && p >= report.p_min_vs_m && n >= report.n_min && N >= report.N_min &&
           assumption1_holds(sigma_max, rho);
}

}  // namespace scrlm
