#include "scrlm/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "scrlm/random.hpp"

namespace scrlm {

void GmmConfig::validate() const {
    if (m < 1) throw std::invalid_argument("GmmConfig: need at least one cluster");
    if (p < 1) throw std::invalid_argument("GmmConfig: dimension must be >= 1");
    if (n_samples < 1) throw std::invalid_argument("GmmConfig: need at least one sample");
    if (!(outlier_weight >= 0.0 && outlier_weight < 1.0)) {
        throw std::invalid_argument("GmmConfig: outlier weight must lie in [0, 1)");
    }
    if (cluster_weights.size() != m || cluster_sigmas.size() != m) {
        throw std::invalid_argument("GmmConfig: expected " + std::to_string(m) +
                                    " cluster weights and sigmas");
    }
    double total = outlier_weight;
    for (double w : cluster_weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("GmmConfig: negative weight");
        total += w;
    }
    if (std::fabs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("GmmConfig: weights sum to " + std::to_string(total) + ", not 1");
    }
    for (double s : cluster_sigmas) {
        if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("GmmConfig: sigmas must lie in (0, 1)");
    }
}

double GmmConfig::sigma_max() const {
    return cluster_sigmas.empty() ? 0.0 : *std::max_element(cluster_sigmas.begin(), cluster_sigmas.end());
}

std::vector<double> paper_weight_schedule(std::size_t m, double outlier_weight) {
    if (m < 1) throw std::invalid_argument("weight schedule needs m >= 1");
    if (!(outlier_weight >= 0.0 && outlier_weight < 1.0)) {
        throw std::invalid_argument("outlier weight must lie in [0, 1)");
    }
    const double inlier = 1.0 - outlier_weight;
    if (m == 1) return {inlier};
    const double md = static_cast<double>(m);
    const double lo = 0.8 / md;
    const double hi = 1.2 / md;
    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = static_cast<double>(i) / (md - 1.0);
        w[i] = inlier * (lo + (hi - lo) * t);
    }
    return w;
}

std::vector<double> paper_sigma_schedule(std::size_t m) {
    if (m < 1) throw std::invalid_argument("sigma schedule needs m >= 1");
    constexpr double lo = 1.0 / 16.0;
    constexpr double hi = 1.0 / 4.0;
    if (m == 1) return {hi};
    std::vector<double> s(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(m - 1);
        s[i] = lo + (hi - lo) * t;
    }
    return s;
}

GmmConfig schedule_config(std::size_t m, std::size_t p, std::size_t n_samples, double outlier_weight,
                       std::uint64_t seed) {
    GmmConfig c;
    c.m = m;
    c.p = p;
    c.n_samples = n_samples;
    c.outlier_weight = outlier_weight;
    c.cluster_weights = paper_weight_schedule(m, outlier_weight);
    c.cluster_sigmas = paper_sigma_schedule(m);
    c.seed = seed;
    return c;
}

LabeledDataset sample(const GmmConfig& config) {
    config.validate();
    Rng rng(config.seed);
    const std::size_t p = config.p;

    std::vector<Point> centers(config.m, Point(p));
    for (auto& c : centers) {
        for (double& v : c) v = standard_normal(rng);
    }

    // Cumulative table over (outlier, cluster 1, ..., cluster m).
    std::vector<double> cumulative;
    cumulative.reserve(config.m + 1);
    double acc = config.outlier_weight;
    cumulative.push_back(acc);
    for (double w : config.cluster_weights) {
        acc += w;
        cumulative.push_back(acc);
    }

    DataMatrix data(config.n_samples, p);
    LabelVector labels(config.n_samples);
    for (std::size_t i = 0; i < config.n_samples; ++i) {
        const double u = rng.uniform() * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        auto slot = static_cast<std::size_t>(std::distance(cumulative.begin(), it));
        if (slot > config.m) slot = config.m;  // u == acc cannot happen, but stay in range

        auto row = data.row(i);
        if (slot == 0) {
            labels[i] = kOutlierLabel;
            for (double& v : row) v = standard_normal(rng);
        } else {
            labels[i] = static_cast<int>(slot);
            const double sigma = config.cluster_sigmas[slot - 1];
            const Point& mu = centers[slot - 1];
            for (std::size_t j = 0; j < p; ++j) row[j] = mu[j] + sigma * standard_normal(rng);
        }
    }

    return LabeledDataset{std::move(data), std::move(labels), std::move(centers), config};
}

}  // namespace scrlm
