#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "scrlm/kmeans.hpp"
#include "scrlm/model.hpp"

namespace scrlm::harness {

enum class ExperimentKind { phase_grid, rho_stability, outlier_sweep, timing_scaling, single_run, bounds_report };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& name);

enum class Method { scrlm, kmeanspp, scrlm_kmeans };

std::string to_string(Method method);
Method parse_method(const std::string& name);

/// Parameters that a grid axis may vary.
inline const std::vector<std::string> kAxisNames = {"N", "p", "m", "n", "rho", "outlier_weight"};

struct GridAxis {
    std::string name;
    std::vector<double> values;
};

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::phase_grid;
    std::string name;
    std::vector<GridAxis> axes;
    std::size_t repetitions = 100;
    std::uint64_t master_seed = 0;

    // Data template: default weight and sigma schedules.
    std::size_t N = 1000;
    std::size_t p = 512;
    std::size_t m = 3;
    double outlier_weight = 0.0;

    // SCRLM template. An unset n is derived per cell from the bound
    // calculator with the inlier-scaled weight constant.
    double rho = 0.5;
    double f_const = kDefaultLossConstant;
    std::optional<std::size_t> n;
    std::size_t max_clusters = kAutoClusters;

    // Bound calculator inputs.
    double a = 0.8;
    double delta = 0.01;

    std::vector<Method> methods = {Method::scrlm};
    std::size_t kmeans_max_iters = 100;
    double kmeans_tol = 1e-6;

    double success_fraction = 0.99;  // cell succeeds with >= ceil(frac * reps) perfect runs
    std::size_t timing_trials = 3;   // timing_scaling: best of this many fits per point
    unsigned threads = 0;            // worker threads; 0 = hardware concurrency

    /// Throws std::invalid_argument when the spec cannot be run.
    void validate() const;
};

/// Everything that determines one cell after axis values are applied.
struct CellParams {
    std::size_t N = 0;
    std::size_t p = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    double rho = 0.0;
    double outlier_weight = 0.0;
    double a_effective = 0.0;   // a scaled by the inlier mass
    double sigma_max = 0.0;
};

struct MethodStats {
    std::size_t success_count = 0;
    double mean_accuracy = 0.0;
    double mean_purity = 0.0;
    /// accuracy with the outlier class allowed into the matching
    double mean_accuracy_outlier_as_class = 0.0;
    double mean_clusters = 0.0;
    std::size_t failed_runs = 0;  // e.g. SCRLM found no center to seed k-means
    std::vector<double> accuracies;
};

struct GridCellResult {
    std::size_t index = 0;
    std::vector<std::pair<std::string, double>> axis_values;
    CellParams params;
    bool skipped = false;
    std::string skip_reason;
    std::size_t repetitions = 0;

    // Primary method (SCRLM) summary.
    std::size_t success_count = 0;
    double mean_accuracy = 0.0;
    double mean_purity = 0.0;
    double mean_runtime_seconds = 0.0;
    bool experimental_success = false;
    bool theoretical_region = false;
    bool bandwidth_condition = false;  // sigma_max <= rho < sqrt(0.6) on its own
    double theorem1_bound = 0.0;

    std::map<std::string, MethodStats> methods;
};

struct TimingPoint {
    std::string axis;
    std::size_t N = 0;
    std::size_t p = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    double wall_seconds = 0.0;
};

struct TimingReport {
    std::vector<TimingPoint> points;
    std::map<std::string, double> slopes;  // log-log slope of time per swept axis
};

/// Resolves a cell's parameters from the spec template and axis values.
CellParams resolve_cell(const ExperimentSpec& spec, const std::vector<std::pair<std::string, double>>& axis_values);

/// Cartesian product of the spec's axes, first axis varying slowest.
std::vector<std::vector<std::pair<std::string, double>>> enumerate_cells(const ExperimentSpec& spec);

/// Runs every cell of a grid experiment (phase_grid, rho_stability,
/// outlier_sweep). Each repetition draws a fresh dataset and runs each method
/// with seeds derived from (master seed, cell index, repetition).
std::vector<GridCellResult> run_grid(const ExperimentSpec& spec);

std::vector<GridCellResult> run_phase_grid(const ExperimentSpec& spec);
std::vector<GridCellResult> run_rho_stability(const ExperimentSpec& spec);
std::vector<GridCellResult> run_outlier_sweep(const ExperimentSpec& spec);

/// Times SCRLM fit while sweeping one axis at a time from the template.
TimingReport run_timing_scaling(const ExperimentSpec& spec);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Runs any kind and returns the full JSON document.
nlohmann::json run_experiment(const ExperimentSpec& spec);

inline constexpr int kResultsSchemaVersion = 1;

nlohmann::json spec_to_json(const ExperimentSpec& spec);
nlohmann::json cells_to_json(const ExperimentSpec& spec, const std::vector<GridCellResult>& cells);
nlohmann::json timing_to_json(const TimingReport& report);

/// Copy of a results document with wall-clock fields removed, for
/// reproducibility comparisons.
nlohmann::json strip_volatile(const nlohmann::json& doc);

}  // namespace scrlm::harness
