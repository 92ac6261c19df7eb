#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "scrlm/model.hpp"
#include "scrlm/types.hpp"

namespace scrlm {

struct KmeansParams {
    std::size_t k = 1;
    std::size_t max_iters = 100;
    double tol = 1e-6;  // stop once no center moves farther than this
    std::uint64_t seed = 0;
    unsigned threads = 1;

    void validate() const;
};

struct KmeansResult {
    LabelVector labels;              // 1..k, every observation assigned
    std::vector<Point> centers;
    double inertia = 0.0;            // sum of squared distances to assigned centers
    std::vector<double> inertia_history;  // inertia after each assignment step
    std::size_t iterations = 0;
    bool converged = false;
};

/// Thrown when SCRLM finds nothing to initialize k-means with.
class NoClustersError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// k-means++ seeding: first center uniform, later ones drawn with probability
/// proportional to the squared distance to the nearest chosen center.
/// Returns the chosen row indices in selection order.
std::vector<std::size_t> kmeanspp_seed_rows(const DataMatrix& data, std::size_t k, std::uint64_t seed);

std::vector<Point> kmeanspp_init(const DataMatrix& data, std::size_t k, std::uint64_t seed);

/// Lloyd iterations from the given centers (params.k is ignored; k is the
/// number of centers). Ties go to the lowest center; an emptied cluster is
/// re-seeded at the observation farthest from its assigned center.
KmeansResult lloyd(const DataMatrix& data, std::vector<Point> init_centers, const KmeansParams& params);

/// k-means++ seeding followed by Lloyd.
KmeansResult kmeanspp(const DataMatrix& data, const KmeansParams& params);

/// Lloyd initialized from the centers SCRLM discovers; k is the discovered count.
KmeansResult scrlm_kmeans(const DataMatrix& data, const ScrlmParams& scrlm_params,
                          const KmeansParams& kmeans_params);

}  // namespace scrlm
