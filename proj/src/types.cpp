#include "scrlm/types.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace scrlm {

DataMatrix::DataMatrix(std::size_t n_rows, std::size_t n_cols)
    : DataMatrix(n_rows, n_cols, std::vector<double>(n_rows * n_cols, 0.0)) {}

DataMatrix::DataMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<double> values)
    : n_rows_(n_rows), n_cols_(n_cols), values_(std::move(values)) {
    if (n_rows == 0 || n_cols == 0) {
        throw std::invalid_argument("DataMatrix needs at least one row and one column");
    }
    if (values_.size() != n_rows * n_cols) {
        throw std::invalid_argument("DataMatrix: expected " + std::to_string(n_rows * n_cols) +
                                    " values, got " + std::to_string(values_.size()));
    }
    check_finite();
}

void DataMatrix::check_finite() const {
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw std::invalid_argument("DataMatrix: non-finite entry at row " +
                                        std::to_string(k / n_cols_) + ", column " +
                                        std::to_string(k % n_cols_));
        }
    }
}

void validate_labels(const LabelVector& labels) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != kOutlierLabel && labels[i] <= 0) {
            throw std::invalid_argument("label " + std::to_string(labels[i]) + " at position " +
                                        std::to_string(i) + " is neither -1 nor positive");
        }
    }
}

std::size_t count_positive_classes(const LabelVector& labels) {
    std::set<int> seen;
    for (int l : labels) {
        if (l > 0) seen.insert(l);
    }
    return seen.size();
}

}  // namespace scrlm
