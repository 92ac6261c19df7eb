#pragma once

#include <cstddef>
#include <cstdint>

namespace scrlm {

/// Lower bound on the probability that the extraction recovers every label
/// exactly, for N samples in dimension p with m clusters of weight >= a/m and
/// a subsample of size n:
///
///   1 - 10 N^2 e^{-p/128} - m e^{-n a/m} - 2 m e^{-p/128} - m e^{-a (N-1)/m}
///
/// May be negative, in which case the bound is vacuous.
double theorem1_probability(std::size_t N, std::size_t p, std::size_t m, std::size_t n, double a);

/// Right-hand sides of the four sufficient conditions for success with
/// probability >= 1 - delta (natural logarithms).
struct ThresholdRhs {
    double p_vs_N = 0.0;  // 128 (2 ln N + ln(40/delta))
    double p_vs_m = 0.0;  // 128 (ln m + ln(8/delta))
    double n = 0.0;       // (m/a) (ln m + ln(4/delta))
    double N = 0.0;       // (m/a) (ln m + ln(4/delta)) + 1
};

struct BoundReport {
    std::size_t N = 0;
    std::size_t p = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    double a = 0.0;
    double delta = 0.0;

    ThresholdRhs rhs;

    // Region thresholds as used for the parameter-region plots. Dimension and
    // sample-size conditions read "x > ceil(rhs)", so their minimum is
    // ceil(rhs) + 1. The subsample size is the protocol value ceil(rhs).
    std::size_t p_min_vs_N = 0;
    std::size_t p_min_vs_m = 0;
    std::size_t n_min = 0;
    std::size_t N_min = 0;

    // Smallest integers strictly above each rhs.
    std::size_t p_strict_vs_N = 0;
    std::size_t p_strict_vs_m = 0;
    std::size_t n_strict = 0;
    std::size_t N_strict = 0;

    double prob_lower_bound = 0.0;  // theorem1_probability(N, p, m, n, a)
};

ThresholdRhs corollary7_rhs(std::size_t N, std::size_t m, double a, double delta);

/// Fills every threshold field; prob_lower_bound is evaluated at the given
/// p and n (pass n = 0 to evaluate at n_min).
BoundReport corollary7_thresholds(std::size_t N, std::size_t m, double a, double delta,
                                  std::size_t p = 0, std::size_t n = 0);

/// sigma_max <= rho < sqrt(0.6)
bool assumption1_holds(double sigma_max, double rho);

/// True when (N, p, n) meet every region threshold of the report and the
/// bandwidth condition holds.
bool in_theoretical_region(const BoundReport& report, std::size_t N, std::size_t p, std::size_t n,
                           double sigma_max, double rho);

/// Smallest integer strictly greater than x (x >= 0).
std::size_t smallest_integer_above(double x);

}  // namespace scrlm
