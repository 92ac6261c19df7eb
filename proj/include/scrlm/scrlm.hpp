#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "scrlm/model.hpp"
#include "scrlm/types.hpp"

namespace scrlm {

/// Output of the center-extraction loop.
struct Extraction {
    ClusterModel model;
    std::vector<std::size_t> center_rows;    // data row of each center, discovery order
    std::vector<double> center_losses;       // loss of each center when it was picked
    std::vector<std::size_t> remaining;      // subsample indices never removed, ascending
    bool stopped_early = false;              // loop ended because min loss reached -F
};

struct ScrlmResult {
    ClusterModel model;
    LabelVector labels;
    std::size_t num_clusters = 0;
    std::vector<std::size_t> subsample_indices;
    std::vector<std::size_t> center_rows;
    std::vector<double> center_losses;
    bool stopped_early = false;
};

/// n_sub distinct row indices from [0, n_total) in ascending order,
/// reproducible for a given seed.
std::vector<std::size_t> subsample_indices(std::size_t n_total, std::size_t n_sub, std::uint64_t seed);

/// Runs the extraction loop on a given subsample. Losses are evaluated once
/// against the whole dataset; the loop then repeatedly takes the subsample
/// point with minimum loss (lowest index on ties) as a center while that loss
/// is strictly below -F, and drops every remaining subsample point strictly
/// inside the support radius of the new center.
Extraction extract_centers(const DataMatrix& data, const ScrlmParams& params,
                           std::vector<std::size_t> subsample);

/// Draws the subsample from params.seed, then extracts.
Extraction extract_centers(const DataMatrix& data, const ScrlmParams& params);

/// Nearest-center labels (1-based, lowest center on ties); observations whose
/// nearest center is not strictly inside the radius get -1.
LabelVector assign_labels(const DataMatrix& data, const ClusterModel& model, unsigned threads = 1);

/// subsample -> extract -> assign.
ScrlmResult fit(const DataMatrix& data, const ScrlmParams& params);

}  // namespace scrlm
