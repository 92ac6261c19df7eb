#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace scrlm {

/// Dense N x p matrix of observations, row-major, double precision.
///
/// Construction validates the shape and rejects non-finite entries, so every
/// DataMatrix in the program holds at least one finite observation.
class DataMatrix {
public:
    DataMatrix() = default;
    DataMatrix(std::size_t n_rows, std::size_t n_cols);
    DataMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<double> values);

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return n_cols_; }
    bool empty() const { return n_rows_ == 0; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * n_cols_, n_cols_};
    }
    std::span<double> row(std::size_t i) {
        return {values_.data() + i * n_cols_, n_cols_};
    }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * n_cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * n_cols_ + j]; }

    const std::vector<double>& values() const { return values_; }

    /// Throws std::invalid_argument if any entry is NaN or infinite.
    void check_finite() const;

    friend bool operator==(const DataMatrix&, const DataMatrix&) = default;

private:
    std::size_t n_rows_ = 0;
    std::size_t n_cols_ = 0;
    std::vector<double> values_;
};

/// Cluster labels in {-1, 1, 2, ...}; -1 marks an outlier.
using LabelVector = std::vector<int>;

inline constexpr int kOutlierLabel = -1;

/// Throws std::invalid_argument unless every label is -1 or positive.
void validate_labels(const LabelVector& labels);

/// Number of distinct positive labels.
std::size_t count_positive_classes(const LabelVector& labels);

using Point = std::vector<double>;

}  // namespace scrlm
