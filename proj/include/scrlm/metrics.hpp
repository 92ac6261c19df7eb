#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "scrlm/types.hpp"

namespace scrlm {

/// Contingency table between predicted and true labels. Row/column 0 hold
/// the outlier label -1; the rest follow the sorted distinct positive labels.
class ConfusionMatrix {
public:
    ConfusionMatrix(const LabelVector& true_labels, const LabelVector& pred_labels);

    std::size_t rows() const { return pred_classes_.size() + 1; }
    std::size_t cols() const { return true_classes_.size() + 1; }
    std::uint64_t operator()(std::size_t pred_row, std::size_t true_col) const {
        return counts_[pred_row * cols() + true_col];
    }
    std::uint64_t total() const { return total_; }

    const std::vector<int>& pred_classes() const { return pred_classes_; }
    const std::vector<int>& true_classes() const { return true_classes_; }

private:
    std::vector<int> pred_classes_;
    std::vector<int> true_classes_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Dense matrix handed to the assignment solver.
struct AssignmentProblem {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> weights;  // row-major

    double at(std::size_t r, std::size_t c) const { return weights[r * cols + c]; }
};

struct Assignment {
    /// column assigned to each row of the (padded) square problem
    std::vector<std::size_t> row_to_col;
    /// total weight over the original, unpadded entries
    double value = 0.0;
};

/// Hungarian algorithm (shortest augmenting paths with potentials), O(K^3).
/// Rectangular problems are padded with zero-weight entries. Throws
/// std::invalid_argument on non-finite weights.
Assignment hungarian_assign(const AssignmentProblem& problem, bool maximize);

enum class OutlierMatching {
    /// -1 matches only -1 and never takes part in the permutation
    fixed,
    /// -1 is one more anonymous class on both sides
    as_class,
};

/// Fraction of observations whose predicted label equals the true label under
/// the best one-to-one relabeling of predicted clusters.
double accuracy(const LabelVector& true_labels, const LabelVector& pred_labels,
                OutlierMatching outliers = OutlierMatching::fixed);

/// Sum over predicted clusters (the -1 group counts as one) of the largest
/// overlap with any true class, divided by N.
double purity(const LabelVector& true_labels, const LabelVector& pred_labels);

}  // namespace scrlm
