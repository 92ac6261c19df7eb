#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scrlm/model.hpp"
#include "scrlm/types.hpp"

namespace scrlm {

/// Truncated quadratic loss of one observation at squared distance d_sq:
/// min(d_sq / (p rho^2) - F, 0). Lies in [-F, 0] and is zero outside the
/// support radius.
double per_observation_loss(double d_sq, std::size_t p, double rho, double f_const);

/// rho * sqrt(p * F).
double support_radius(double rho, std::size_t p, double f_const);

/// Squared Euclidean distance accumulated coordinate by coordinate.
double squared_distance(std::span<const double> a, std::span<const double> b);

/// Sum of per_observation_loss over every row of data, including a row equal
/// to the query itself.
double total_loss(std::span<const double> query, const DataMatrix& data, const ScrlmParams& params);

/// total_loss for each data row listed in query_rows, in the same order.
///
/// Rows are processed in cache-sized blocks and the work is split across
/// queries, so each query's sum always runs over rows 0..N-1 in order and the
/// output does not depend on the thread count. Pairs whose partial distance
/// already exceeds the support are skipped; that shortcut only fires when the
/// term is exactly zero.
std::vector<double> batch_total_loss(const DataMatrix& data,
                                     std::span<const std::size_t> query_rows,
                                     double rho, double f_const, unsigned threads = 1);

}  // namespace scrlm
