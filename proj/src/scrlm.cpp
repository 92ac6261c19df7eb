#include "scrlm/scrlm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "scrlm/loss.hpp"
#include "scrlm/parallel.hpp"
#include "scrlm/random.hpp"

namespace scrlm {

void ScrlmParams::validate(std::size_t n_total) const {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("rho must be positive and finite");
    if (!(f_const > 0.0) || !std::isfinite(f_const)) {
        throw std::invalid_argument("F must be positive and finite");
    }
    if (subsample_size < 1 || subsample_size > n_total) {
        throw std::invalid_argument("subsample size " + std::to_string(subsample_size) +
                                    " must lie in [1, " + std::to_string(n_total) + "]");
    }
}

std::vector<std::size_t> subsample_indices(std::size_t n_total, std::size_t n_sub, std::uint64_t seed) {
    if (n_sub < 1) throw std::invalid_argument("subsample size must be >= 1");
    Rng rng(seed);
    return sample_without_replacement(n_total, n_sub, rng);
}

Extraction extract_centers(const DataMatrix& data, const ScrlmParams& params,
                           std::vector<std::size_t> subsample) {
    if (subsample.empty()) throw std::invalid_argument("extract_centers: empty subsample");
    std::sort(subsample.begin(), subsample.end());
    if (std::adjacent_find(subsample.begin(), subsample.end()) != subsample.end() ||
        subsample.back() >= data.n_rows()) {
        throw std::invalid_argument("extract_centers: subsample must hold distinct row indices");
    }
    if (!(params.rho > 0.0) || !(params.f_const > 0.0)) {
        throw std::invalid_argument("extract_centers: rho and F must be positive");
    }
    const std::size_t p = data.n_cols();

    Extraction out;
    out.model.dimension = p;
    out.model.radius = support_radius(params.rho, p, params.f_const);

    const std::vector<double> losses =
        batch_total_loss(data, subsample, params.rho, params.f_const, params.threads);

    std::vector<bool> active(subsample.size(), true);
    std::size_t n_active = subsample.size();
    const std::size_t max_clusters = params.effective_max_clusters(data.n_rows());

    out.stopped_early = false;
    for (std::size_t t = 0; t < max_clusters; ++t) {
        std::size_t best = subsample.size();
        double best_loss = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < subsample.size(); ++k) {
            if (active[k] && losses[k] < best_loss) {
                best = k;
                best_loss = losses[k];
            }
        }
        if (n_active == 0 || !(best_loss < -params.f_const)) {
            out.stopped_early = true;
            break;
        }

        const auto center = data.row(subsample[best]);
        out.model.centers.emplace_back(center.begin(), center.end());
        out.center_rows.push_back(subsample[best]);
        out.center_losses.push_back(best_loss);

        for (std::size_t k = 0; k < subsample.size(); ++k) {
            if (!active[k]) continue;
            if (std::sqrt(squared_distance(data.row(subsample[k]), center)) < out.model.radius) {
                active[k] = false;
                --n_active;
            }
        }
    }

    for (std::size_t k = 0; k < subsample.size(); ++k) {
        if (active[k]) out.remaining.push_back(subsample[k]);
    }
    return out;
}

Extraction extract_centers(const DataMatrix& data, const ScrlmParams& params) {
    params.validate(data.n_rows());
    return extract_centers(data, params,
                           subsample_indices(data.n_rows(), params.subsample_size, params.seed));
}

LabelVector assign_labels(const DataMatrix& data, const ClusterModel& model, unsigned threads) {
    for (const auto& c : model.centers) {
        if (c.size() != data.n_cols()) {
            throw std::invalid_argument("assign_labels: center dimension does not match data");
        }
    }
    LabelVector labels(data.n_rows(), kOutlierLabel);
    if (model.centers.empty()) return labels;

    parallel_for(data.n_rows(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto x = data.row(i);
            std::size_t nearest = 0;
            double nearest_sq = squared_distance(x, model.centers[0]);
            for (std::size_t j = 1; j < model.centers.size(); ++j) {
                const double d_sq = squared_distance(x, model.centers[j]);
                if (d_sq < nearest_sq) {
                    nearest = j;
                    nearest_sq = d_sq;
                }
            }
            if (std::sqrt(nearest_sq) < model.radius) labels[i] = static_cast<int>(nearest) + 1;
        }
    });
    return labels;
}

ScrlmResult fit(const DataMatrix& data, const ScrlmParams& params) {
    params.validate(data.n_rows());
    ScrlmResult result;
    result.subsample_indices = subsample_indices(data.n_rows(), params.subsample_size, params.seed);

    Extraction ex = extract_centers(data, params, result.subsample_indices);
    result.labels = assign_labels(data, ex.model, params.threads);
    result.num_clusters = ex.model.size();
    result.model = std::move(ex.model);
    result.center_rows = std::move(ex.center_rows);
    result.center_losses = std::move(ex.center_losses);
    result.stopped_early = ex.stopped_early;
    return result;
}

}  // namespace scrlm
