#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "scrlm/types.hpp"

namespace scrlm {

inline constexpr double kDefaultLossConstant = 2.5;

/// Passing this as max_clusters asks fit() to discover the cluster count (T = N).
inline constexpr std::size_t kAutoClusters = 0;

struct ScrlmParams {
    double rho = 0.5;                     // bandwidth
    double f_const = kDefaultLossConstant;
    std::size_t subsample_size = 1;       // n
    std::size_t max_clusters = kAutoClusters;
    std::uint64_t seed = 0;
    unsigned threads = 1;                 // 0 = hardware concurrency

    /// Throws std::invalid_argument if the parameters cannot be applied to a
    /// dataset with n_total rows.
    void validate(std::size_t n_total) const;

    /// T after resolving kAutoClusters against a dataset of n_total rows.
    std::size_t effective_max_clusters(std::size_t n_total) const {
        return max_clusters == kAutoClusters ? n_total : max_clusters;
    }
};

/// Centers found by the extraction loop together with the support radius
/// used to delimit them. Centers are stored in discovery order.
struct ClusterModel {
    std::vector<Point> centers;
    double radius = 0.0;
    std::size_t dimension = 0;

    std::size_t size() const { return centers.size(); }
};

}  // namespace scrlm
