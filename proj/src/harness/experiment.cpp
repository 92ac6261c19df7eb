#include "scrlm/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "scrlm/bounds.hpp"
#include "scrlm/metrics.hpp"
#include "scrlm/parallel.hpp"
#include "scrlm/random.hpp"
#include "scrlm/scrlm.hpp"
#include "scrlm/synthgen.hpp"

namespace scrlm::harness {
namespace {

using Clock = std::chrono::steady_clock;

// Seed stream purposes under (master, cell, repetition).
enum : std::uint64_t { kDataStream = 0, kScrlmStream = 1, kKmeansStream = 2 };

// Upper bound on dataset bytes alive at once across concurrent repetitions.
constexpr std::size_t kDatasetMemoryBudget = std::size_t{2} << 30;

bool is_grid_kind(ExperimentKind kind) {
    return kind == ExperimentKind::phase_grid || kind == ExperimentKind::rho_stability ||
           kind == ExperimentKind::outlier_sweep;
}

std::size_t as_count(const std::string& axis, double v) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e15) {
        throw std::invalid_argument("axis " + axis + ": value " + std::to_string(v) + " is not a positive integer");
    }
    return static_cast<std::size_t>(v);
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct RunRecord {
    bool done = false;
    double scrlm_seconds = 0.0;
    std::map<std::string, double> accuracy;
    std::map<std::string, double> accuracy_as_class;
    std::map<std::string, double> purity;
    std::map<std::string, double> clusters;
    std::map<std::string, bool> failed;
};

RunRecord run_once(const ExperimentSpec& spec, const CellParams& cell, std::size_t cell_index, std::size_t rep) {
    RunRecord rec;
    const auto ds = sample(schedule_config(cell.m, cell.p, cell.N, cell.outlier_weight,
                                        derive_seed(spec.master_seed, {cell_index, rep, kDataStream})));
    const auto& truth = ds.true_labels;

    ScrlmParams sp;
    sp.rho = cell.rho;
    sp.f_const = spec.f_const;
    sp.subsample_size = cell.n;
    sp.max_clusters = spec.max_clusters;
    sp.seed = derive_seed(spec.master_seed, {cell_index, rep, kScrlmStream});
    sp.threads = 1;

    KmeansParams kp;
    kp.max_iters = spec.kmeans_max_iters;
    kp.tol = spec.kmeans_tol;
    kp.seed = derive_seed(spec.master_seed, {cell_index, rep, kKmeansStream});
    kp.threads = 1;

    auto record = [&](const std::string& name, const LabelVector& pred, std::size_t clusters) {
        rec.accuracy[name] = accuracy(truth, pred);
        rec.accuracy_as_class[name] = accuracy(truth, pred, OutlierMatching::as_class);
        rec.purity[name] = purity(truth, pred);
        rec.clusters[name] = static_cast<double>(clusters);
        rec.failed[name] = false;
    };
    auto record_failure = [&](const std::string& name) {
        rec.accuracy[name] = 0.0;
        rec.accuracy_as_class[name] = 0.0;
        rec.purity[name] = 0.0;
        rec.clusters[name] = 0.0;
        rec.failed[name] = true;
    };

    for (Method method : spec.methods) {
        const std::string name = to_string(method);
        switch (method) {
            case Method::scrlm: {
                const auto start = Clock::now();
                const ScrlmResult res = fit(ds.data, sp);
                rec.scrlm_seconds = seconds_since(start);
                record(name, res.labels, res.num_clusters);
                break;
            }
            case Method::kmeanspp: {
                kp.k = cell.outlier_weight > 0.0 ? cell.m + 1 : cell.m;
                if (kp.k > cell.N) {
                    record_failure(name);
                    break;
                }
                const KmeansResult res = kmeanspp(ds.data, kp);
                record(name, res.labels, res.centers.size());
                break;
            }
            case Method::scrlm_kmeans: {
                try {
                    const KmeansResult res = scrlm_kmeans(ds.data, sp, kp);
                    record(name, res.labels, res.centers.size());
                } catch (const NoClustersError&) {
                    record_failure(name);
                }
                break;
            }
        }
    }
    rec.done = true;
    return rec;
}

std::size_t required_successes(const ExperimentSpec& spec, std::size_t reps) {
    return static_cast<std::size_t>(std::ceil(spec.success_fraction * static_cast<double>(reps) - 1e-9));
}

void summarize(const ExperimentSpec& spec, GridCellResult& cell, const std::vector<RunRecord>& runs) {
    cell.repetitions = runs.size();
    double runtime = 0.0;
    for (Method method : spec.methods) {
        const std::string name = to_string(method);
        MethodStats stats;
        for (const auto& r : runs) {
            const double acc = r.accuracy.at(name);
            stats.accuracies.push_back(acc);
            stats.mean_accuracy += acc;
            stats.mean_accuracy_outlier_as_class += r.accuracy_as_class.at(name);
            stats.mean_purity += r.purity.at(name);
            stats.mean_clusters += r.clusters.at(name);
            if (acc == 1.0) ++stats.success_count;
            if (r.failed.at(name)) ++stats.failed_runs;
        }
        const double reps = static_cast<double>(runs.size());
        stats.mean_accuracy /= reps;
        stats.mean_accuracy_outlier_as_class /= reps;
        stats.mean_purity /= reps;
        stats.mean_clusters /= reps;
        cell.methods[name] = std::move(stats);
    }
    for (const auto& r : runs) runtime += r.scrlm_seconds;
    cell.mean_runtime_seconds = runtime / static_cast<double>(runs.size());

    const auto primary = cell.methods.find(to_string(Method::scrlm));
    const MethodStats& head = primary != cell.methods.end() ? primary->second : cell.methods.begin()->second;
    cell.success_count = head.success_count;
    cell.mean_accuracy = head.mean_accuracy;
    cell.mean_purity = head.mean_purity;
    cell.experimental_success = cell.success_count >= required_successes(spec, runs.size());
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::phase_grid: return "phase_grid";
        case ExperimentKind::rho_stability: return "rho_stability";
        case ExperimentKind::outlier_sweep: return "outlier_sweep";
        case ExperimentKind::timing_scaling: return "timing_scaling";
        case ExperimentKind::single_run: return "single_run";
        case ExperimentKind::bounds_report: return "bounds_report";
    }
    return "unknown";
}

ExperimentKind parse_kind(const std::string& name) {
    for (auto k : {ExperimentKind::phase_grid, ExperimentKind::rho_stability, ExperimentKind::outlier_sweep,
                   ExperimentKind::timing_scaling, ExperimentKind::single_run, ExperimentKind::bounds_report}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

std::string to_string(Method method) {
    switch (method) {
        case Method::scrlm: return "scrlm";
        case Method::kmeanspp: return "kmeanspp";
        case Method::scrlm_kmeans: return "scrlm_kmeans";
    }
    return "unknown";
}

Method parse_method(const std::string& name) {
    for (auto m : {Method::scrlm, Method::kmeanspp, Method::scrlm_kmeans}) {
        if (to_string(m) == name) return m;
    }
    throw std::invalid_argument("unknown method '" + name + "' (expected scrlm, kmeanspp or scrlm_kmeans)");
}

void ExperimentSpec::validate() const {
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    if (is_grid_kind(kind) && axes.empty()) {
        throw std::invalid_argument(to_string(kind) + " needs at least one grid axis");
    }
    if (kind == ExperimentKind::timing_scaling && axes.empty()) {
        throw std::invalid_argument("timing_scaling needs at least one swept axis");
    }
    for (const auto& axis : axes) {
        if (std::find(kAxisNames.begin(), kAxisNames.end(), axis.name) == kAxisNames.end()) {
            throw std::invalid_argument("unknown grid axis '" + axis.name + "'");
        }
        if (axis.values.empty()) throw std::invalid_argument("grid axis '" + axis.name + "' has no values");
        for (const auto& other : axes) {
            if (&other != &axis && other.name == axis.name) {
                throw std::invalid_argument("grid axis '" + axis.name + "' given twice");
            }
        }
    }
    if (N < 1 || p < 1 || m < 1) throw std::invalid_argument("N, p and m must be >= 1");
    if (!(outlier_weight >= 0.0 && outlier_weight < 1.0)) {
        throw std::invalid_argument("outlier_weight must lie in [0, 1)");
    }
    if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("rho must be positive");
    if (!(f_const > 0.0) || !std::isfinite(f_const)) throw std::invalid_argument("F must be positive");
    if (n && *n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("a must lie in (0, 1]");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    if (methods.empty()) throw std::invalid_argument("at least one method is required");
    if (kmeans_max_iters < 1) throw std::invalid_argument("kmeans_max_iters must be >= 1");
    if (!(kmeans_tol >= 0.0)) throw std::invalid_argument("kmeans_tol must be >= 0");
    if (!(success_fraction > 0.0 && success_fraction <= 1.0)) {
        throw std::invalid_argument("success_fraction must lie in (0, 1]");
    }
    if (timing_trials < 1) throw std::invalid_argument("timing_trials must be >= 1");
}

CellParams resolve_cell(const ExperimentSpec& spec, const std::vector<std::pair<std::string, double>>& axis_values) {
    CellParams c;
    c.N = spec.N;
    c.p = spec.p;
    c.m = spec.m;
    c.rho = spec.rho;
    c.outlier_weight = spec.outlier_weight;
    std::optional<std::size_t> n = spec.n;
    for (const auto& [name, v] : axis_values) {
        if (name == "N") c.N = as_count(name, v);
        else if (name == "p") c.p = as_count(name, v);
        else if (name == "m") c.m = as_count(name, v);
        else if (name == "n") n = as_count(name, v);
        else if (name == "rho") c.rho = v;
        else if (name == "outlier_weight") c.outlier_weight = v;
        else throw std::invalid_argument("unknown grid axis '" + name + "'");
    }
    if (!(c.rho > 0.0) || !std::isfinite(c.rho)) throw std::invalid_argument("rho must be positive");
    if (!(c.outlier_weight >= 0.0 && c.outlier_weight < 1.0)) {
        throw std::invalid_argument("outlier_weight must lie in [0, 1)");
    }
    // Cluster weights are at least a/m of the inlier mass, i.e. a(1 - w)/m overall.
    c.a_effective = spec.a * (1.0 - c.outlier_weight);
    c.n = n ? *n : corollary7_thresholds(c.N, c.m, c.a_effective, spec.delta).n_min;
    const auto sigmas = paper_sigma_schedule(c.m);
    c.sigma_max = *std::max_element(sigmas.begin(), sigmas.end());
    return c;
}

std::vector<std::vector<std::pair<std::string, double>>> enumerate_cells(const ExperimentSpec& spec) {
    std::vector<std::vector<std::pair<std::string, double>>> cells{{}};
    for (const auto& axis : spec.axes) {
        std::vector<std::vector<std::pair<std::string, double>>> next;
        for (const auto& prefix : cells) {
            for (double v : axis.values) {
                auto cell = prefix;
                cell.emplace_back(axis.name, v);
                next.push_back(std::move(cell));
            }
        }
        cells = std::move(next);
    }
    return cells;
}

std::vector<GridCellResult> run_grid(const ExperimentSpec& spec) {
    spec.validate();
    const auto grid = enumerate_cells(spec);
    std::vector<GridCellResult> results(grid.size());
    const unsigned threads = resolve_threads(spec.threads);

    for (std::size_t ci = 0; ci < grid.size(); ++ci) {
        GridCellResult& cell = results[ci];
        cell.index = ci;
        cell.axis_values = grid[ci];
        cell.params = resolve_cell(spec, grid[ci]);
        const CellParams& cp = cell.params;

        const BoundReport report = corollary7_thresholds(cp.N, cp.m, cp.a_effective, spec.delta, cp.p, cp.n);
        cell.theoretical_region = in_theoretical_region(report, cp.N, cp.p, cp.n, cp.sigma_max, cp.rho);
        cell.bandwidth_condition = assumption1_holds(cp.sigma_max, cp.rho);
        cell.theorem1_bound = report.prob_lower_bound;

        if (cp.n > cp.N) {
            cell.skipped = true;
            cell.skip_reason = "subsample size n = " + std::to_string(cp.n) + " exceeds N = " + std::to_string(cp.N);
            continue;
        }

        const std::size_t dataset_bytes = std::max<std::size_t>(1, cp.N * cp.p * sizeof(double));
        const unsigned workers = static_cast<unsigned>(
            std::clamp<std::size_t>(kDatasetMemoryBudget / dataset_bytes, 1, threads));
        std::vector<RunRecord> runs(spec.repetitions);
        run_tasks(spec.repetitions, workers, [&](std::size_t rep) { runs[rep] = run_once(spec, cp, ci, rep); });
        summarize(spec, cell, runs);
    }
    return results;
}

std::vector<GridCellResult> run_phase_grid(const ExperimentSpec& spec) {
    if (spec.kind != ExperimentKind::phase_grid) throw std::invalid_argument("run_phase_grid needs kind phase_grid");
    return run_grid(spec);
}

std::vector<GridCellResult> run_rho_stability(const ExperimentSpec& spec) {
    if (spec.kind != ExperimentKind::rho_stability) {
        throw std::invalid_argument("run_rho_stability needs kind rho_stability");
    }
    const bool has_rho = std::any_of(spec.axes.begin(), spec.axes.end(), [](const GridAxis& a) { return a.name == "rho"; });
    if (!has_rho) throw std::invalid_argument("rho_stability needs a rho axis");
    return run_grid(spec);
}

std::vector<GridCellResult> run_outlier_sweep(const ExperimentSpec& spec) {
    if (spec.kind != ExperimentKind::outlier_sweep) {
        throw std::invalid_argument("run_outlier_sweep needs kind outlier_sweep");
    }
    return run_grid(spec);
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("log_log_slope needs >= 2 paired points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("log_log_slope needs positive values");
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw std::invalid_argument("log_log_slope needs at least two distinct x values");
    return sxy / sxx;
}

TimingReport run_timing_scaling(const ExperimentSpec& spec) {
    spec.validate();
    TimingReport report;
    std::size_t axis_index = 0;
    for (const auto& axis : spec.axes) {
        struct Point {
            CellParams cp;
            LabeledDataset ds;
            ScrlmParams sp;
            double value;
            double best = 0.0;
        };
        std::vector<Point> points;
        for (std::size_t vi = 0; vi < axis.values.size(); ++vi) {
            const CellParams cp = resolve_cell(spec, {{axis.name, axis.values[vi]}});
            if (cp.n > cp.N) continue;
            ScrlmParams sp;
            sp.rho = cp.rho;
            sp.f_const = spec.f_const;
            sp.subsample_size = cp.n;
            sp.max_clusters = spec.max_clusters;
            sp.seed = derive_seed(spec.master_seed, {axis_index, vi, kScrlmStream});
            sp.threads = 1;
            points.push_back({cp,
                              sample(schedule_config(cp.m, cp.p, cp.N, cp.outlier_weight,
                                                     derive_seed(spec.master_seed, {axis_index, vi, kDataStream}))),
                              sp, axis.values[vi]});
        }
        // Trials go round-robin over the points so a slow stretch on a shared
        // machine cannot inflate every trial of one point.
        for (std::size_t t = 0; t < spec.timing_trials; ++t) {
            for (auto& pt : points) {
                const auto start = Clock::now();
                const ScrlmResult res = fit(pt.ds.data, pt.sp);
                const double secs = seconds_since(start);
                if (t == 0 || secs < pt.best) pt.best = secs;
                if (res.labels.size() != pt.cp.N) throw std::logic_error("fit returned a wrong label count");
            }
        }
        std::vector<double> xs, ys;
        for (const auto& pt : points) {
            report.points.push_back({axis.name, pt.cp.N, pt.cp.p, pt.cp.m, pt.cp.n, pt.best});
            xs.push_back(pt.value);
            ys.push_back(pt.best);
        }
        if (xs.size() >= 2) {
            if (axis.name == "m") {
                // Work grows as n m with n ~ m log m; regress against that count.
                std::vector<double> work;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    const auto& pt = report.points[report.points.size() - xs.size() + i];
                    work.push_back(static_cast<double>(pt.n + pt.m));
                }
                report.slopes["m_work"] = log_log_slope(work, ys);
            }
            report.slopes[axis.name] = log_log_slope(xs, ys);
        }
        ++axis_index;
    }
    return report;
}

nlohmann::json spec_to_json(const ExperimentSpec& spec) {
    nlohmann::json j;
    j["kind"] = to_string(spec.kind);
    j["name"] = spec.name;
    j["repetitions"] = spec.repetitions;
    j["master_seed"] = spec.master_seed;
    j["N"] = spec.N;
    j["p"] = spec.p;
    j["m"] = spec.m;
    j["outlier_weight"] = spec.outlier_weight;
    j["rho"] = spec.rho;
    j["F"] = spec.f_const;
    j["n"] = spec.n ? nlohmann::json(*spec.n) : nlohmann::json("derived");
    j["T"] = spec.max_clusters == kAutoClusters ? nlohmann::json("N") : nlohmann::json(spec.max_clusters);
    j["a"] = spec.a;
    j["delta"] = spec.delta;
    j["success_fraction"] = spec.success_fraction;
    j["kmeans_max_iters"] = spec.kmeans_max_iters;
    j["kmeans_tol"] = spec.kmeans_tol;
    j["timing_trials"] = spec.timing_trials;
    j["methods"] = nlohmann::json::array();
    for (Method m : spec.methods) j["methods"].push_back(to_string(m));
    j["axes"] = nlohmann::json::array();
    for (const auto& axis : spec.axes) j["axes"].push_back({{"name", axis.name}, {"values", axis.values}});
    j["seed_derivation"] = "derive_seed(master_seed, [cell, repetition, stream]); stream 0 data, 1 scrlm, 2 kmeans";
    return j;
}

nlohmann::json cells_to_json(const ExperimentSpec& spec, const std::vector<GridCellResult>& cells) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : cells) {
        nlohmann::json j;
        j["index"] = c.index;
        nlohmann::json axes = nlohmann::json::object();
        for (const auto& [name, v] : c.axis_values) axes[name] = v;
        j["axis_values"] = axes;
        j["N"] = c.params.N;
        j["p"] = c.params.p;
        j["m"] = c.params.m;
        j["n"] = c.params.n;
        j["rho"] = c.params.rho;
        j["outlier_weight"] = c.params.outlier_weight;
        j["a_effective"] = c.params.a_effective;
        j["sigma_max"] = c.params.sigma_max;
        j["theoretical_region"] = c.theoretical_region;
        j["bandwidth_condition"] = c.bandwidth_condition;
        j["theorem1_bound"] = c.theorem1_bound;
        j["skipped"] = c.skipped;
        if (c.skipped) {
            j["skip_reason"] = c.skip_reason;
        } else {
            j["repetitions"] = c.repetitions;
            j["success_count"] = c.success_count;
            j["required_successes"] = required_successes(spec, c.repetitions);
            j["experimental_success"] = c.experimental_success;
            j["mean_accuracy"] = c.mean_accuracy;
            j["mean_purity"] = c.mean_purity;
            j["mean_runtime_seconds"] = c.mean_runtime_seconds;
            nlohmann::json methods = nlohmann::json::object();
            for (const auto& [name, s] : c.methods) {
                methods[name] = {{"success_count", s.success_count},
                                 {"mean_accuracy", s.mean_accuracy},
                                 {"mean_accuracy_outlier_as_class", s.mean_accuracy_outlier_as_class},
                                 {"mean_purity", s.mean_purity},
                                 {"mean_clusters", s.mean_clusters},
                                 {"failed_runs", s.failed_runs},
                                 {"accuracies", s.accuracies}};
            }
            j["methods"] = methods;
        }
        out.push_back(std::move(j));
    }
    return out;
}

namespace {

// Column-oriented arrays for plotting: one entry per cell in cell order.
nlohmann::json grid_plot_data(const ExperimentSpec& spec, const std::vector<GridCellResult>& cells) {
    nlohmann::json plot;
    for (const auto& axis : spec.axes) plot["axes"][axis.name] = axis.values;
    nlohmann::json cols = nlohmann::json::object();
    for (const auto& c : cells) {
        for (const auto& [name, v] : c.axis_values) cols[name].push_back(v);
        cols["n"].push_back(c.params.n);
        cols["skipped"].push_back(c.skipped);
        cols["theoretical_region"].push_back(c.theoretical_region);
        cols["bandwidth_condition"].push_back(c.bandwidth_condition);
        cols["experimental_success"].push_back(c.experimental_success);
        cols["success_count"].push_back(c.success_count);
        for (Method m : spec.methods) {
            const std::string name = to_string(m);
            const auto it = c.methods.find(name);
            cols["mean_accuracy"][name].push_back(it == c.methods.end() ? nlohmann::json(nullptr)
                                                                        : nlohmann::json(it->second.mean_accuracy));
        }
    }
    plot["cells"] = cols;
    return plot;
}

}  // namespace

nlohmann::json timing_to_json(const TimingReport& report) {
    nlohmann::json j;
    j["points"] = nlohmann::json::array();
    for (const auto& pt : report.points) {
        j["points"].push_back({{"axis", pt.axis},
                               {"N", pt.N},
                               {"p", pt.p},
                               {"m", pt.m},
                               {"n", pt.n},
                               {"wall_seconds", pt.wall_seconds}});
    }
    j["slopes"] = report.slopes;
    return j;
}

nlohmann::json run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    nlohmann::json doc;
    doc["schema_version"] = kResultsSchemaVersion;
    doc["spec"] = spec_to_json(spec);
    switch (spec.kind) {
        case ExperimentKind::phase_grid:
        case ExperimentKind::rho_stability:
        case ExperimentKind::outlier_sweep: {
            const auto cells = spec.kind == ExperimentKind::phase_grid      ? run_phase_grid(spec)
                               : spec.kind == ExperimentKind::rho_stability ? run_rho_stability(spec)
                                                                            : run_outlier_sweep(spec);
            doc["cells"] = cells_to_json(spec, cells);
            doc["plot_data"] = grid_plot_data(spec, cells);
            std::size_t violations = 0;
            for (const auto& c : cells) {
                if (!c.skipped && c.theoretical_region && !c.experimental_success) ++violations;
            }
            doc["summary"] = {{"cells", cells.size()}, {"theoretical_not_experimental", violations}};
            break;
        }
        case ExperimentKind::timing_scaling:
            doc["timing"] = timing_to_json(run_timing_scaling(spec));
            break;
        case ExperimentKind::single_run: {
            ExperimentSpec one = spec;
            one.axes.clear();
            one.axes.push_back({"N", {static_cast<double>(spec.N)}});
            const auto cells = run_grid(one);
            doc["cells"] = cells_to_json(one, cells);
            break;
        }
        case ExperimentKind::bounds_report: {
            ExperimentSpec grid = spec;
            if (grid.axes.empty()) grid.axes.push_back({"N", {static_cast<double>(spec.N)}});
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& axis_values : enumerate_cells(grid)) {
                const CellParams cp = resolve_cell(grid, axis_values);
                const BoundReport r = corollary7_thresholds(cp.N, cp.m, cp.a_effective, spec.delta, cp.p, cp.n);
                rows.push_back({{"N", cp.N},
                                {"p", cp.p},
                                {"m", cp.m},
                                {"n", cp.n},
                                {"rho", cp.rho},
                                {"p_min_vs_N", r.p_min_vs_N},
                                {"p_min_vs_m", r.p_min_vs_m},
                                {"n_min", r.n_min},
                                {"N_min", r.N_min},
                                {"prob_lower_bound", r.prob_lower_bound},
                                {"theoretical_region",
                                 in_theoretical_region(r, cp.N, cp.p, cp.n, cp.sigma_max, cp.rho)}});
            }
            doc["bounds"] = rows;
            break;
        }
    }
    return doc;
}

nlohmann::json strip_volatile(const nlohmann::json& doc) {
    if (doc.is_object()) {
        nlohmann::json out = nlohmann::json::object();
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            const std::string& key = it.key();
            const bool timing_field = key.size() >= 8 && key.compare(key.size() - 8, 8, "_seconds") == 0;
            if (timing_field || key == "slopes" || key == "timestamp") continue;
            out[key] = strip_volatile(it.value());
        }
        return out;
    }
    if (doc.is_array()) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& v : doc) out.push_back(strip_volatile(v));
        return out;
    }
    return doc;
}

}  // namespace scrlm::harness
