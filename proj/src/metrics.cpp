#include "scrlm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace scrlm {
namespace {

void check_pair(const LabelVector& true_labels, const LabelVector& pred_labels) {
    if (true_labels.size() != pred_labels.size()) {
        throw std::invalid_argument("label vectors differ in length");
    }
    if (true_labels.empty()) throw std::invalid_argument("label vectors are empty");
    validate_labels(true_labels);
    validate_labels(pred_labels);
}

std::vector<int> positive_classes(const LabelVector& labels) {
    std::set<int> s;
    for (int l : labels) {
        if (l > 0) s.insert(l);
    }
    return {s.begin(), s.end()};
}

std::size_t slot_of(const std::vector<int>& classes, int label) {
    if (label == kOutlierLabel) return 0;
    auto it = std::lower_bound(classes.begin(), classes.end(), label);
    return static_cast<std::size_t>(it - classes.begin()) + 1;
}

// Minimum-cost perfect matching on a square n x n matrix.
std::vector<std::size_t> solve_min_cost(const std::vector<double>& cost, std::size_t n) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    // 1-based potentials; column 0 is the virtual source.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), min_to(n + 1);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    std::vector<bool> used(n + 1);

    for (std::size_t row = 1; row <= n; ++row) {
        match[0] = row;
        std::size_t col0 = 0;
        std::fill(min_to.begin(), min_to.end(), kInf);
        std::fill(used.begin(), used.end(), false);
        do {
            used[col0] = true;
            const std::size_t r = match[col0];
            double delta = kInf;
            std::size_t col1 = 0;
            for (std::size_t c = 1; c <= n; ++c) {
                if (used[c]) continue;
                const double reduced = cost[(r - 1) * n + (c - 1)] - u[r] - v[c];
                if (reduced < min_to[c]) {
                    min_to[c] = reduced;
                    way[c] = col0;
                }
                if (min_to[c] < delta) {
                    delta = min_to[c];
                    col1 = c;
                }
            }
            for (std::size_t c = 0; c <= n; ++c) {
                if (used[c]) {
                    u[match[c]] += delta;
                    v[c] -= delta;
                } else {
                    min_to[c] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        do {
            const std::size_t prev = way[col0];
            match[col0] = match[prev];
            col0 = prev;
        } while (col0 != 0);
    }

    std::vector<std::size_t> row_to_col(n);
    for (std::size_t c = 1; c <= n; ++c) row_to_col[match[c] - 1] = c - 1;
    return row_to_col;
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(const LabelVector& true_labels, const LabelVector& pred_labels) {
    check_pair(true_labels, pred_labels);
    pred_classes_ = positive_classes(pred_labels);
    true_classes_ = positive_classes(true_labels);
    counts_.assign(rows() * cols(), 0);
    for (std::size_t i = 0; i < true_labels.size(); ++i) {
        const std::size_t r = slot_of(pred_classes_, pred_labels[i]);
        const std::size_t c = slot_of(true_classes_, true_labels[i]);
        ++counts_[r * cols() + c];
    }
    total_ = true_labels.size();
}

Assignment hungarian_assign(const AssignmentProblem& problem, bool maximize) {
    if (problem.weights.size() != problem.rows * problem.cols) {
        throw std::invalid_argument("hungarian_assign: weight count does not match shape");
    }
    for (double w : problem.weights) {
        if (!std::isfinite(w)) throw std::invalid_argument("hungarian_assign: non-finite weight");
    }
    const std::size_t n = std::max(problem.rows, problem.cols);
    Assignment out;
    if (n == 0) return out;

    std::vector<double> cost(n * n, 0.0);
    for (std::size_t r = 0; r < problem.rows; ++r) {
        for (std::size_t c = 0; c < problem.cols; ++c) {
            const double w = problem.at(r, c);
            cost[r * n + c] = maximize ? -w : w;
        }
    }
    out.row_to_col = solve_min_cost(cost, n);
    for (std::size_t r = 0; r < problem.rows; ++r) {
        const std::size_t c = out.row_to_col[r];
        if (c < problem.cols) out.value += problem.at(r, c);
    }
    return out;
}

double accuracy(const LabelVector& true_labels, const LabelVector& pred_labels, OutlierMatching outliers) {
    const ConfusionMatrix cm(true_labels, pred_labels);
    const std::size_t first = outliers == OutlierMatching::fixed ? 1 : 0;

    AssignmentProblem problem;
    problem.rows = cm.rows() - first;
    problem.cols = cm.cols() - first;
    problem.weights.resize(problem.rows * problem.cols);
    for (std::size_t r = 0; r < problem.rows; ++r) {
        for (std::size_t c = 0; c < problem.cols; ++c) {
            problem.weights[r * problem.cols + c] = static_cast<double>(cm(r + first, c + first));
        }
    }
    double matched = hungarian_assign(problem, true).value;
    if (outliers == OutlierMatching::fixed) matched += static_cast<double>(cm(0, 0));
    return matched / static_cast<double>(cm.total());
}

double purity(const LabelVector& true_labels, const LabelVector& pred_labels) {
    const ConfusionMatrix cm(true_labels, pred_labels);
    std::uint64_t sum = 0;
    for (std::size_t r = 0; r < cm.rows(); ++r) {
        std::uint64_t best = 0;
        for (std::size_t c = 0; c < cm.cols(); ++c) best = std::max(best, cm(r, c));
        sum += best;
    }
    return static_cast<double>(sum) / static_cast<double>(cm.total());
}

}  // namespace scrlm
