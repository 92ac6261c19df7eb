#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "scrlm/types.hpp"

namespace scrlm {

/// Isotropic Gaussian mixture with an N(0, I) outlier component.
/// Cluster centers are themselves drawn from N(0, I).
struct GmmConfig {
    std::size_t m = 1;
    std::size_t p = 1;
    std::size_t n_samples = 1;
    double outlier_weight = 0.0;
    std::vector<double> cluster_weights;
    std::vector<double> cluster_sigmas;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on any violated constraint.
    void validate() const;
    double sigma_max() const;
};

struct LabeledDataset {
    DataMatrix data;
    LabelVector true_labels;
    std::vector<Point> true_centers;
    GmmConfig config;
};

/// Cluster weights spaced linearly from 0.8/m to 1.2/m, scaled by the inlier
/// mass (1 - outlier_weight).
std::vector<double> paper_weight_schedule(std::size_t m, double outlier_weight);

/// Cluster standard deviations spaced linearly from 1/16 to 1/4; m = 1 gives 1/4.
std::vector<double> paper_sigma_schedule(std::size_t m);

/// Config using both schedules above.
GmmConfig schedule_config(std::size_t m, std::size_t p, std::size_t n_samples, double outlier_weight,
                       std::uint64_t seed);

/// Draws centers, then for each observation a categorical label and a point.
/// Bit-identical for identical configs.
LabeledDataset sample(const GmmConfig& config);

}  // namespace scrlm
