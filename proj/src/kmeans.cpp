#include "scrlm/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "scrlm/loss.hpp"
#include "scrlm/parallel.hpp"
#include "scrlm/random.hpp"
#include "scrlm/scrlm.hpp"

namespace scrlm {
namespace {

struct AssignStep {
    std::vector<std::size_t> nearest;
    std::vector<double> dist_sq;
    double inertia = 0.0;
};

AssignStep assign_nearest(const DataMatrix& data, const std::vector<Point>& centers, unsigned threads) {
    AssignStep step;
    step.nearest.assign(data.n_rows(), 0);
    step.dist_sq.assign(data.n_rows(), 0.0);
    parallel_for(data.n_rows(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto x = data.row(i);
            std::size_t best = 0;
            double best_sq = squared_distance(x, centers[0]);
            for (std::size_t j = 1; j < centers.size(); ++j) {
                const double d = squared_distance(x, centers[j]);
                if (d < best_sq) {
                    best = j;
                    best_sq = d;
                }
            }
            step.nearest[i] = best;
            step.dist_sq[i] = best_sq;
        }
    });
    for (double d : step.dist_sq) step.inertia += d;
    return step;
}

}  // namespace

void KmeansParams::validate() const {
    if (k < 1) throw std::invalid_argument("k-means: k must be >= 1");
    if (max_iters < 1) throw std::invalid_argument("k-means: max_iters must be >= 1");
    if (!(tol >= 0.0)) throw std::invalid_argument("k-means: tol must be >= 0");
}

std::vector<std::size_t> kmeanspp_seed_rows(const DataMatrix& data, std::size_t k, std::uint64_t seed) {
    const std::size_t n = data.n_rows();
    if (k < 1 || k > n) {
        throw std::invalid_argument("k-means++: k = " + std::to_string(k) + " must lie in [1, " +
                                    std::to_string(n) + "]");
    }
    Rng rng(seed);
    std::vector<std::size_t> rows;
    rows.reserve(k);
    std::vector<bool> chosen(n, false);
    rows.push_back(static_cast<std::size_t>(rng.below(n)));
    chosen[rows.back()] = true;

    std::vector<double> min_sq(n);
    for (std::size_t i = 0; i < n; ++i) min_sq[i] = squared_distance(data.row(i), data.row(rows[0]));
    min_sq[rows[0]] = 0.0;

    while (rows.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!chosen[i]) total += min_sq[i];
        }
        std::size_t pick = n;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double cumulative = 0.0;
            std::size_t last_positive = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (chosen[i] || min_sq[i] <= 0.0) continue;
                cumulative += min_sq[i];
                last_positive = i;
                if (cumulative > target) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) pick = last_positive;  // target rounded up to the total
        } else {
            // Every unchosen point duplicates a center; fall back to a uniform pick.
            std::size_t skip = static_cast<std::size_t>(rng.below(n - rows.size()));
            for (std::size_t i = 0; i < n; ++i) {
                if (chosen[i]) continue;
                if (skip-- == 0) {
                    pick = i;
                    break;
                }
            }
        }
        rows.push_back(pick);
        chosen[pick] = true;
        const auto c = data.row(pick);
        for (std::size_t i = 0; i < n; ++i) {
            if (!chosen[i]) min_sq[i] = std::min(min_sq[i], squared_distance(data.row(i), c));
        }
    }
    return rows;
}

std::vector<Point> kmeanspp_init(const DataMatrix& data, std::size_t k, std::uint64_t seed) {
    std::vector<Point> centers;
    for (std::size_t r : kmeanspp_seed_rows(data, k, seed)) {
        const auto row = data.row(r);
        centers.emplace_back(row.begin(), row.end());
    }
    return centers;
}

KmeansResult lloyd(const DataMatrix& data, std::vector<Point> centers, const KmeansParams& params) {
    if (centers.empty()) throw std::invalid_argument("lloyd: need at least one initial center");
    if (params.max_iters < 1) throw std::invalid_argument("lloyd: max_iters must be >= 1");
    for (const auto& c : centers) {
        if (c.size() != data.n_cols()) throw std::invalid_argument("lloyd: center dimension mismatch");
    }
    const std::size_t k = centers.size();
    const std::size_t p = data.n_cols();
    KmeansResult out;

    for (std::size_t iter = 0; iter < params.max_iters; ++iter) {
        AssignStep step = assign_nearest(data, centers, params.threads);
        out.inertia_history.push_back(step.inertia);
        ++out.iterations;

        std::vector<Point> updated(k, Point(p, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < data.n_rows(); ++i) {
            const auto x = data.row(i);
            Point& acc = updated[step.nearest[i]];
            for (std::size_t j = 0; j < p; ++j) acc[j] += x[j];
            ++counts[step.nearest[i]];
        }

        std::vector<bool> taken(data.n_rows(), false);
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                const double inv = 1.0 / static_cast<double>(counts[c]);
                for (double& v : updated[c]) v *= inv;
                continue;
            }
            // Empty cluster: move it onto the worst-served observation.
            std::size_t far = data.n_rows();
            double far_sq = -1.0;
            for (std::size_t i = 0; i < data.n_rows(); ++i) {
                if (!taken[i] && step.dist_sq[i] > far_sq) {
                    far = i;
                    far_sq = step.dist_sq[i];
                }
            }
            taken[far] = true;
            const auto x = data.row(far);
            updated[c].assign(x.begin(), x.end());
        }

        double shift = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            shift = std::max(shift, std::sqrt(squared_distance(updated[c], centers[c])));
        }
        centers = std::move(updated);
        if (shift <= params.tol) {
            out.converged = true;
            break;
        }
    }

    AssignStep final_step = assign_nearest(data, centers, params.threads);
    out.labels.resize(data.n_rows());
    for (std::size_t i = 0; i < data.n_rows(); ++i) out.labels[i] = static_cast<int>(final_step.nearest[i]) + 1;
    out.inertia = final_step.inertia;
    out.centers = std::move(centers);
    return out;
}

KmeansResult kmeanspp(const DataMatrix& data, const KmeansParams& params) {
    params.validate();
    return lloyd(data, kmeanspp_init(data, params.k, params.seed), params);
}

KmeansResult scrlm_kmeans(const DataMatrix& data, const ScrlmParams& scrlm_params,
                          const KmeansParams& kmeans_params) {
    ScrlmResult fitted = fit(data, scrlm_params);
    if (fitted.num_clusters == 0) {
        throw NoClustersError("SCRLM found no clusters to initialize k-means");
    }
    return lloyd(data, std::move(fitted.model.centers), kmeans_params);
}

}  // namespace scrlm
