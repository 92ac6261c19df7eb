// Command-line front end: fit, gen, eval, bounds, experiment.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "scrlm/bounds.hpp"
#include "scrlm/harness/config.hpp"
#include "scrlm/harness/dataset_io.hpp"
#include "scrlm/harness/experiment.hpp"
#include "scrlm/metrics.hpp"
#include "scrlm/scrlm.hpp"
#include "scrlm/synthgen.hpp"

namespace {

using scrlm::harness::IoError;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

void emit(const json& doc, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << doc.dump(2) << "\n";
    } else {
        scrlm::harness::save_results(output, doc);
    }
}

scrlm::harness::DatasetFormat format_for(const std::string& name, const std::string& path) {
    return name.empty() ? scrlm::harness::guess_format(path) : scrlm::harness::parse_format(name);
}

struct FitOptions {
    std::string input;
    std::string format;
    bool label_column = false;
    scrlm::ScrlmParams params;
    std::string labels_out;
    std::string output;
};

int run_fit(const FitOptions& o) {
    auto ds = scrlm::harness::load_dataset(o.input, format_for(o.format, o.input), o.label_column);
    const scrlm::ScrlmResult res = scrlm::fit(ds.data, o.params);
    if (!o.labels_out.empty()) scrlm::harness::save_labels(o.labels_out, res.labels);

    json doc;
    doc["schema_version"] = scrlm::harness::kResultsSchemaVersion;
    doc["params"] = {{"rho", o.params.rho},
                     {"F", o.params.f_const},
                     {"n", o.params.subsample_size},
                     {"T", o.params.effective_max_clusters(ds.data.n_rows())},
                     {"seed", o.params.seed}};
    doc["N"] = ds.data.n_rows();
    doc["p"] = ds.data.n_cols();
    doc["num_clusters"] = res.num_clusters;
    doc["radius"] = res.model.radius;
    doc["stopped_early"] = res.stopped_early;
    doc["center_rows"] = res.center_rows;
    doc["center_losses"] = res.center_losses;
    doc["centers"] = res.model.centers;
    std::size_t outliers = 0;
    for (int l : res.labels) outliers += l == scrlm::kOutlierLabel;
    doc["outlier_count"] = outliers;
    if (ds.labels) {
        doc["accuracy"] = scrlm::accuracy(*ds.labels, res.labels);
        doc["purity"] = scrlm::purity(*ds.labels, res.labels);
    }
    if (o.labels_out.empty()) doc["labels"] = res.labels;
    emit(doc, o.output);
    return kExitOk;
}

struct GenOptions {
    std::size_t m = 3;
    std::size_t p = 512;
    std::size_t N = 1000;
    double outlier_weight = 0.0;
    std::uint64_t seed = 0;
    std::string output;
    std::string format;
    bool no_labels = false;
};

int run_gen(const GenOptions& o) {
    const auto ds = scrlm::sample(scrlm::schedule_config(o.m, o.p, o.N, o.outlier_weight, o.seed));
    scrlm::harness::save_dataset(o.output, format_for(o.format, o.output), ds.data,
                                 o.no_labels ? nullptr : &ds.true_labels);
    return kExitOk;
}

struct EvalOptions {
    std::string truth;
    std::string pred;
    std::string output;
};

int run_eval(const EvalOptions& o) {
    const auto truth = scrlm::harness::load_labels(o.truth);
    const auto pred = scrlm::harness::load_labels(o.pred);
    json doc;
    doc["N"] = truth.size();
    doc["accuracy"] = scrlm::accuracy(truth, pred);
    doc["accuracy_outlier_as_class"] = scrlm::accuracy(truth, pred, scrlm::OutlierMatching::as_class);
    doc["purity"] = scrlm::purity(truth, pred);
    emit(doc, o.output);
    return kExitOk;
}

struct BoundsOptions {
    std::size_t N = 20000;
    std::size_t m = 3;
    double a = 0.8;
    double delta = 0.01;
    std::size_t p = 0;
    std::size_t n = 0;
    double rho = 0.5;
    double sigma_max = 0.25;
    std::string output;
};

int run_bounds(const BoundsOptions& o) {
    scrlm::BoundReport r = scrlm::corollary7_thresholds(o.N, o.m, o.a, o.delta, o.p, o.n);
    if (o.p == 0) {
        // Evaluate the bound at the smallest dimension meeting both thresholds.
        r = scrlm::corollary7_thresholds(o.N, o.m, o.a, o.delta, std::max(r.p_min_vs_N, r.p_min_vs_m), o.n);
    }
    json doc;
    doc["N"] = r.N;
    doc["p"] = r.p;
    doc["m"] = r.m;
    doc["n"] = r.n;
    doc["a"] = r.a;
    doc["delta"] = r.delta;
    doc["rhs"] = {{"p_vs_N", r.rhs.p_vs_N}, {"p_vs_m", r.rhs.p_vs_m}, {"n", r.rhs.n}, {"N", r.rhs.N}};
    doc["p_min_vs_N"] = r.p_min_vs_N;
    doc["p_min_vs_m"] = r.p_min_vs_m;
    doc["n_min"] = r.n_min;
    doc["N_min"] = r.N_min;
    doc["strict"] = {{"p_vs_N", r.p_strict_vs_N}, {"p_vs_m", r.p_strict_vs_m}, {"n", r.n_strict}, {"N", r.N_strict}};
    doc["prob_lower_bound"] = r.prob_lower_bound;
    doc["assumption1"] = scrlm::assumption1_holds(o.sigma_max, o.rho);
    doc["theoretical_region"] = scrlm::in_theoretical_region(r, o.N, r.p, r.n, o.sigma_max, o.rho);
    emit(doc, o.output);
    return kExitOk;
}

struct ExperimentOptions {
    std::string preset;
    std::string config;
    std::vector<std::string> set;
    bool full_scale = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> repetitions;
    std::optional<unsigned> threads;
    std::string output;
    bool list = false;
};

int run_experiment_cmd(const ExperimentOptions& o) {
    if (o.list) {
        for (const auto& name : scrlm::harness::preset_names()) std::cout << name << "\n";
        return kExitOk;
    }
    scrlm::harness::ExperimentSpec spec;
    if (!o.preset.empty()) spec = scrlm::harness::preset(o.preset, o.full_scale);
    if (o.full_scale) {
        std::cerr << "warning: full-size grids selected; expect hours to days of compute\n";
    }
    if (!o.config.empty()) scrlm::harness::apply_config(spec, scrlm::harness::load_config(o.config));
    std::string overrides;
    for (const auto& kv : o.set) overrides += kv + "\n";
    scrlm::harness::apply_config(spec, scrlm::harness::parse_config(overrides));
    if (o.seed) spec.master_seed = *o.seed;
    if (o.repetitions) spec.repetitions = *o.repetitions;
    if (o.threads) spec.threads = *o.threads;
    spec.validate();
    emit(scrlm::harness::run_experiment(spec), o.output);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust-loss clustering toolkit"};
    app.require_subcommand(1);

    FitOptions fit_opts;
    auto* fit = app.add_subcommand("fit", "Cluster a dataset with SCRLM");
    fit->add_option("input", fit_opts.input, "Dataset file (csv or binary)")->required();
    fit->add_option("--format", fit_opts.format, "csv or binary (default: from extension)");
    fit->add_flag("--label-column", fit_opts.label_column, "CSV last column holds true labels");
    fit->add_option("--rho", fit_opts.params.rho, "Bandwidth")->capture_default_str();
    fit->add_option("--F,--f-const", fit_opts.params.f_const, "Loss floor constant")->capture_default_str();
    fit->add_option("-n,--subsample-size", fit_opts.params.subsample_size, "Subsample size n")->required();
    fit->add_option("-T,--max-clusters", fit_opts.params.max_clusters, "Cluster cap (0 = N)")->capture_default_str();
    fit->add_option("--seed", fit_opts.params.seed, "Subsample seed")->capture_default_str();
    fit->add_option("--threads", fit_opts.params.threads, "Worker threads (0 = all cores)")->capture_default_str();
    fit->add_option("--labels-out", fit_opts.labels_out, "Write predicted labels, one per line");
    fit->add_option("-o,--output", fit_opts.output, "Result JSON path (default stdout)");

    GenOptions gen_opts;
    auto* gen = app.add_subcommand("gen", "Sample a synthetic mixture with outliers");
    gen->add_option("-m", gen_opts.m, "Number of clusters")->capture_default_str();
    gen->add_option("-p", gen_opts.p, "Dimension")->capture_default_str();
    gen->add_option("-N,--n-samples", gen_opts.N, "Number of observations")->capture_default_str();
    gen->add_option("--outlier-weight", gen_opts.outlier_weight, "Outlier mixture weight")->capture_default_str();
    gen->add_option("--seed", gen_opts.seed, "Seed")->capture_default_str();
    gen->add_option("-o,--output", gen_opts.output, "Output dataset path")->required();
    gen->add_option("--format", gen_opts.format, "csv or binary (default: from extension)");
    gen->add_flag("--no-labels", gen_opts.no_labels, "Omit the true labels");

    EvalOptions eval_opts;
    auto* eval = app.add_subcommand("eval", "Score predicted labels against true labels");
    eval->add_option("truth", eval_opts.truth, "True labels file")->required();
    eval->add_option("pred", eval_opts.pred, "Predicted labels file")->required();
    eval->add_option("-o,--output", eval_opts.output, "Result JSON path (default stdout)");

    BoundsOptions bounds_opts;
    auto* bounds = app.add_subcommand("bounds", "Success-probability bound and parameter thresholds");
    bounds->add_option("-N", bounds_opts.N, "Sample size")->capture_default_str();
    bounds->add_option("-m", bounds_opts.m, "Number of clusters")->capture_default_str();
    bounds->add_option("-a", bounds_opts.a, "Minimum weight constant")->capture_default_str();
    bounds->add_option("--delta", bounds_opts.delta, "Failure probability")->capture_default_str();
    bounds->add_option("-p", bounds_opts.p, "Dimension for the probability bound (0 = threshold)");
    bounds->add_option("-n", bounds_opts.n, "Subsample size for the probability bound (0 = threshold)");
    bounds->add_option("--rho", bounds_opts.rho, "Bandwidth")->capture_default_str();
    bounds->add_option("--sigma-max", bounds_opts.sigma_max, "Largest cluster sd")->capture_default_str();
    bounds->add_option("-o,--output", bounds_opts.output, "Result JSON path (default stdout)");

    ExperimentOptions exp_opts;
    auto* exp = app.add_subcommand("experiment", "Run a simulation study");
    exp->add_option("--preset", exp_opts.preset, "Built-in experiment (see --list)");
    exp->add_option("--config", exp_opts.config, "key = value file applied after the preset");
    exp->add_option("--set", exp_opts.set, "key=value override, repeatable");
    exp->add_flag("--full-scale", exp_opts.full_scale, "Use the full-size grids");
    exp->add_option("--seed", exp_opts.seed, "Master seed");
    exp->add_option("--reps,--repetitions", exp_opts.repetitions, "Repetitions per cell");
    exp->add_option("--threads", exp_opts.threads, "Worker threads (0 = all cores)");
    exp->add_option("-o,--output", exp_opts.output, "Result JSON path (default stdout)");
    exp->add_flag("--list", exp_opts.list, "List presets and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*fit) return run_fit(fit_opts);
        if (*gen) return run_gen(gen_opts);
        if (*eval) return run_eval(eval_opts);
        if (*bounds) return run_bounds(bounds_opts);
        if (*exp) return run_experiment_cmd(exp_opts);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitInvalid;
}
