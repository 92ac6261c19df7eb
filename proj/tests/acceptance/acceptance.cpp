// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion 4   run one
//
// Exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/brute_assign.hpp"
#include "oracles/oracle_cases.hpp"
#include "scrlm/bounds.hpp"
#include "scrlm/harness/experiment.hpp"
#include "scrlm/loss.hpp"
#include "scrlm/metrics.hpp"
#include "scrlm/random.hpp"
#include "scrlm/synthgen.hpp"

using namespace scrlm;
using namespace scrlm::harness;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool rel_eq(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::max(std::abs(want), 1e-300);
}

std::string fmt(double v, int prec = 4) {
    std::ostringstream ss;
    ss.precision(prec);
    ss << v;
    return ss.str();
}

// 1. Loss values and properties.
Outcome criterion1() {
    const auto t0 = Clock::now();
    std::vector<std::string> bad;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) bad.push_back(what);
    };
    expect(per_observation_loss(0.0, 17, 0.7, 2.5) == -2.5, "l(0) = -F");
    expect(per_observation_loss(2.5 * 9 * 0.36, 9, 0.6, 2.5) == 0.0 ||
               std::abs(per_observation_loss(2.5 * 9 * 0.36, 9, 0.6, 2.5)) <= 1e-12,
           "l at the boundary");
    expect(per_observation_loss(10.0, 4, 1.0, 2.5) == 0.0, "l at the exact boundary");
    expect(rel_eq(per_observation_loss(2250.0, 500, 3.0, 2.5), -2.0, 1e-12), "l(2250; p=500, rho=3)");
    expect(support_radius(1.0, 1, 1.0) == 1.0, "R(1,1,1)");
    expect(rel_eq(support_radius(0.5, 3700, 2.5), 48.08846015417836188, 1e-12), "R(0.5,3700)");
    expect(rel_eq(support_radius(3.0, 500, 2.5), 106.06601717798212866, 1e-12), "R(3,500)");

    ScrlmParams params;
    params.rho = 1.0;
    const DataMatrix two(2, 2, {0.0, 0.0, 0.1, 0.0});
    const double origin[] = {0.0, 0.0};
    const double far[] = {40.0, 40.0};
    expect(rel_eq(total_loss(origin, two, params), -4.995, 1e-12), "L two-point");
    expect(total_loss(far, two, params) == 0.0, "L far query");
    const DataMatrix iso(2, 2, {0.0, 0.0, 9.0, 9.0});
    expect(total_loss(iso.row(0), iso, params) == -2.5, "L isolated row");

    Rng rng(20240601);
    std::size_t violations = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t p = 1 + rng.below(4096);
        const double rho = 0.05 + 2.0 * rng.uniform();
        const double F = 0.5 + 4.0 * rng.uniform();
        const double scale = static_cast<double>(p) * rho * rho;
        const double d1 = 2.0 * F * scale * rng.uniform();
        const double d2 = d1 + F * scale * rng.uniform();
        const double l1 = per_observation_loss(d1, p, rho, F);
        const double l2 = per_observation_loss(d2, p, rho, F);
        const bool outside = d1 / scale - F >= 0.0;
        if (!(l1 >= -F && l1 <= 0.0 && l1 <= l2 && (l1 == 0.0) == outside)) ++violations;
        if (!rel_eq(per_observation_loss(d1 / (rho * rho), p, 1.0, F), l1, 1e-12) &&
            std::abs(per_observation_loss(d1 / (rho * rho), p, 1.0, F) - l1) > 1e-12) {
            ++violations;
        }
    }
    expect(violations == 0, std::to_string(violations) + " property violations");
    const double secs = elapsed(t0);
    expect(secs < 1.0, "runtime " + fmt(secs) + " s");

    Outcome o;
    o.pass = bad.empty();
    o.detail = "hand values exact to 1e-12, 1e4 randomized property checks, " + fmt(secs, 3) + " s";
    for (const auto& b : bad) o.detail += "; failed: " + b;
    return o;
}

// 2. Brute-force oracle on 500 tiny datasets.
Outcome criterion2() {
    const auto t0 = Clock::now();
    std::size_t mismatches = 0;
    std::string first;
    std::size_t with_centers = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto c = oracle::make_tiny_case(0xACCE55ULL + seed);
        const std::string why = oracle::compare_with_naive(c);
        if (!why.empty()) {
            if (first.empty()) first = "seed " + std::to_string(seed) + ": " + why;
            ++mismatches;
        }
        with_centers += oracle::naive_fit(c.rows, subsample_indices(c.rows.size(), c.params.subsample_size,
                                                                    c.params.seed),
                                          c.params.rho, c.params.f_const, c.params.max_clusters)
                            .center_rows.empty()
                            ? 0
                            : 1;
    }
    const double secs = elapsed(t0);
    Outcome o;
    o.pass = mismatches == 0 && secs < 10.0;
    o.detail = std::to_string(500 - mismatches) + "/500 exact matches (" + std::to_string(with_centers) +
               " with centers), " + fmt(secs, 3) + " s";
    if (!first.empty()) o.detail += "; first mismatch " + first;
    return o;
}

// 3. Hungarian value against exhaustive permutations.
Outcome criterion3() {
    const auto t0 = Clock::now();
    Rng rng(777);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 1 + rng.below(7);
        const std::size_t rows = trial % 4 == 0 ? 1 + rng.below(7) : k;
        const std::size_t cols = trial % 4 == 0 ? 1 + rng.below(7) : k;
        AssignmentProblem prob{rows, cols, std::vector<double>(rows * cols)};
        for (double& w : prob.weights) w = static_cast<double>(rng.below(1000));
        const bool maximize = trial % 2 == 0;
        if (hungarian_assign(prob, maximize).value !=
            oracle::brute_assignment_value(prob.weights, rows, cols, maximize)) {
            ++mismatches;
        }
    }
    const double secs = elapsed(t0);
    Outcome o;
    o.pass = mismatches == 0 && secs < 5.0;
    o.detail = std::to_string(200 - mismatches) + "/200 exact, " + fmt(secs, 3) + " s";
    return o;
}

ExperimentSpec grid_spec(ExperimentKind kind, std::uint64_t seed) {
    ExperimentSpec s;
    s.kind = kind;
    s.repetitions = 100;
    s.master_seed = seed;
    s.rho = 0.5;
    s.a = 0.8;
    s.delta = 0.01;
    s.threads = 0;
    return s;
}

// 4. Theoretically flagged cells are experimentally successful.
Outcome criterion4() {
    const auto t0 = Clock::now();
    ExperimentSpec s = grid_spec(ExperimentKind::phase_grid, 4);
    s.axes = {{"m", {2, 3, 5}},
              {"p", {512, 1024, 2048, 4096}},
              {"N", {128, 256, 512, 1024, 2048, 4096, 8192, 16384}}};
    const auto cells = run_phase_grid(s);
    std::size_t flagged = 0, contained = 0, experimental = 0, skipped = 0;
    std::string misses;
    for (const auto& c : cells) {
        if (c.skipped) {
            ++skipped;
            continue;
        }
        experimental += c.experimental_success;
        if (c.theoretical_region) {
            ++flagged;
            if (c.success_count >= 99) {
                ++contained;
            } else {
                misses += " (m=" + std::to_string(c.params.m) + ",p=" + std::to_string(c.params.p) +
                          ",N=" + std::to_string(c.params.N) + ": " + std::to_string(c.success_count) + ")";
            }
        }
    }
    const double secs = elapsed(t0);
    Outcome o;
    o.pass = flagged > 0 && contained == flagged;
    o.detail = std::to_string(contained) + "/" + std::to_string(flagged) + " flagged cells with >= 99/100; " +
               std::to_string(experimental) + "/" + std::to_string(cells.size() - skipped) +
               " cells experimentally successful; " + std::to_string(skipped) + " skipped; " + fmt(secs, 4) +
               " s (target 1800 s)";
    if (!misses.empty()) o.detail += "; misses" + misses;
    return o;
}

// 5. p far below the dimension threshold still works.
Outcome criterion5() {
    const auto t0 = Clock::now();
    ExperimentSpec s = grid_spec(ExperimentKind::phase_grid, 5);
    s.m = 3;
    s.axes = {{"N", {4096}}, {"p", {512}}};
    const auto cells = run_phase_grid(s);
    const auto& c = cells.at(0);
    const auto report = corollary7_thresholds(4096, 3, 0.8, 0.01);
    Outcome o;
    o.pass = !c.skipped && c.success_count >= 95 && !c.theoretical_region;
    o.detail = "p=512 vs dimension threshold " + std::to_string(report.p_min_vs_N) + " (N=4096), " +
               std::to_string(c.success_count) + "/100 perfect runs (expected >= 99, accepted >= 95), " +
               fmt(elapsed(t0), 3) + " s";
    return o;
}

// 6. Half outliers: SCRLM perfect, k-means++ clearly worse on the same data.
Outcome criterion6() {
    const auto t0 = Clock::now();
    ExperimentSpec s = grid_spec(ExperimentKind::outlier_sweep, 6);
    s.outlier_weight = 0.5;
    s.max_clusters = kAutoClusters;
    s.p = 1024;
    s.N = 2000;
    s.methods = {Method::scrlm, Method::kmeanspp, Method::scrlm_kmeans};
    s.axes = {{"m", {3, 5, 10}}};
    const auto cells = run_outlier_sweep(s);
    bool ok = true;
    std::string detail;
    for (const auto& c : cells) {
        const auto& sc = c.methods.at("scrlm");
        const auto& km = c.methods.at("kmeanspp");
        const auto& sk = c.methods.at("scrlm_kmeans");
        // Standard accuracy keeps -1 fixed; the score with the outlier label
        // matched like any other cluster is reported alongside.
        const double gap = sc.mean_accuracy - km.mean_accuracy;
        const bool cell_ok = !c.skipped && sc.success_count >= 95 && gap >= 0.15;
        ok = ok && cell_ok;
        detail += " m=" + std::to_string(c.params.m) + " (n=" + std::to_string(c.params.n) +
                  "): scrlm " + std::to_string(sc.success_count) + "/100 perfect, mean " + fmt(sc.mean_accuracy) +
                  "; kmeans++ mean " + fmt(km.mean_accuracy) + " (outlier as class " +
                  fmt(km.mean_accuracy_outlier_as_class) + "); scrlm+kmeans mean " + fmt(sk.mean_accuracy) + ";";
    }
    const double secs = elapsed(t0);
    Outcome o;
    o.pass = ok && secs < 600.0;
    o.detail = "N=2000, p=1024:" + detail + " " + fmt(secs, 4) + " s";
    return o;
}

// 7. Bandwidth sweep.
Outcome criterion7() {
    const auto t0 = Clock::now();
    ExperimentSpec s = grid_spec(ExperimentKind::rho_stability, 7);
    s.m = 3;
    s.N = 1000;
    s.p = 1024;
    const std::vector<double> rhos = {0.20, 0.25, 0.27, 0.40, 0.60, 0.75, 0.80};
    s.axes = {{"rho", rhos}};
    const auto cells = run_rho_stability(s);
    bool ok = true;
    std::string detail;
    for (const auto& c : cells) {
        const double rho = c.params.rho;
        const bool want_flag = rho >= 0.25 && rho < std::sqrt(0.6);
        const bool in_band = rho >= 0.27 && rho <= 0.75;
        const bool flag_ok = c.bandwidth_condition == want_flag && c.params.sigma_max == 0.25;
        const bool band_ok = !in_band || c.success_count >= 99;
        ok = ok && flag_ok && band_ok;
        detail += " rho=" + fmt(rho, 3) + ":" + std::to_string(c.success_count) + "/100" +
                  (c.bandwidth_condition ? "[flag]" : "") + (flag_ok && band_ok ? "" : "!");
    }
    Outcome o;
    o.pass = ok;
    o.detail = "m=3, N=1000, p=1024, sigma_max=0.25:" + detail + "; " + fmt(elapsed(t0), 4) + " s";
    return o;
}

// 8. Concentration and separation frequencies at p = 512.
Outcome criterion8() {
    const auto t0 = Clock::now();
    const std::size_t p = 512;
    const std::size_t pairs = 100000;
    const double bound = 2.0 * std::exp(-static_cast<double>(p) / 128.0);
    const double limit = bound + 3.0 * std::sqrt(bound * (1.0 - bound) / static_cast<double>(pairs));
    const double pd = static_cast<double>(p);
    const auto sig = paper_sigma_schedule(3);

    // One pair per freshly drawn dataset so pairs are independent, centers included.
    auto frequency = [&](std::uint64_t stream, double outlier_weight,
                         const std::function<int(const LabeledDataset&)>& check) {
        std::size_t violations = 0, used = 0;
        for (std::uint64_t k = 0; used < pairs; ++k) {
            const auto ds = sample(schedule_config(3, p, 8, outlier_weight, derive_seed(8, {stream, k})));
            const int r = check(ds);
            if (r < 0) continue;  // no suitable pair in this draw
            ++used;
            violations += static_cast<std::size_t>(r);
        }
        return static_cast<double>(violations) / static_cast<double>(pairs);
    };
    auto sigma_of = [&](int label) { return sig[static_cast<std::size_t>(label - 1)]; };

    const double same = frequency(0, 0.0, [&](const LabeledDataset& ds) {
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t k = i + 1; k < 8; ++k)
                if (ds.true_labels[i] == ds.true_labels[k]) {
                    const double s = sigma_of(ds.true_labels[i]);
                    return squared_distance(ds.data.row(i), ds.data.row(k)) < 2.5 * pd * s * s ? 0 : 1;
                }
        return -1;
    });
    const double negatives = frequency(1, 0.5, [&](const LabeledDataset& ds) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < 8 && idx.size() < 2; ++i)
            if (ds.true_labels[i] == -1) idx.push_back(i);
        if (idx.size() < 2) return -1;
        return squared_distance(ds.data.row(idx[0]), ds.data.row(idx[1])) > 1.5 * pd ? 0 : 1;
    });
    const double mixed = frequency(2, 0.5, [&](const LabeledDataset& ds) {
        std::size_t pos = 8, neg = 8;
        for (std::size_t i = 0; i < 8; ++i) {
            if (ds.true_labels[i] == -1 && neg == 8) neg = i;
            if (ds.true_labels[i] > 0 && pos == 8) pos = i;
        }
        if (pos == 8 || neg == 8) return -1;
        const double s = sigma_of(ds.true_labels[pos]);
        return squared_distance(ds.data.row(pos), ds.data.row(neg)) > pd * (1.5 + 0.75 * s * s) ? 0 : 1;
    });
    const double between = frequency(3, 0.0, [&](const LabeledDataset& ds) {
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t k = i + 1; k < 8; ++k)
                if (ds.true_labels[i] != ds.true_labels[k]) {
                    const double si = sigma_of(ds.true_labels[i]);
                    const double sk = sigma_of(ds.true_labels[k]);
                    const double d = squared_distance(ds.data.row(i), ds.data.row(k));
                    return d > pd * (1.5 + 0.75 * si * si + 0.75 * sk * sk) ? 0 : 1;
                }
        return -1;
    });
    const double secs = elapsed(t0);
    Outcome o;
    o.pass = same <= limit && negatives <= limit && mixed <= limit && between <= limit && secs < 120.0;
    o.detail = "limit " + fmt(limit, 5) + " (bound " + fmt(bound, 5) + "); same-cluster " + fmt(same, 5) +
               ", negatives " + fmt(negatives, 5) + ", positive-negative " + fmt(mixed, 5) +
               ", different clusters " + fmt(between, 5) + "; " + fmt(secs, 3) + " s";
    return o;
}

// 9. Wall time scales linearly in N and in p.
Outcome criterion9() {
    ExperimentSpec s;
    s.kind = ExperimentKind::timing_scaling;
    s.master_seed = 9;
    s.m = 3;
    s.N = 8192;
    s.p = 512;
    s.timing_trials = 9;
    s.axes = {{"N", {2048, 4096, 8192, 16384, 32768}}, {"p", {256, 512, 1024, 2048, 4096}}};
    const auto t0 = Clock::now();
    const auto report = run_timing_scaling(s);
    const double sN = report.slopes.at("N");
    const double sp = report.slopes.at("p");
    Outcome o;
    o.pass = sN >= 0.85 && sN <= 1.15 && sp >= 0.85 && sp <= 1.15;
    std::string times;
    for (const auto& pt : report.points) times += " " + pt.axis + ":" + fmt(pt.wall_seconds * 1e3, 3) + "ms";
    o.detail = "slope vs N " + fmt(sN, 3) + ", vs p " + fmt(sp, 3) + " over 4 doublings each;" + times + "; " +
               fmt(elapsed(t0), 3) + " s";
    return o;
}

// 10. Same seed, same JSON.
Outcome criterion10() {
    std::vector<ExperimentSpec> specs;
    ExperimentSpec g = grid_spec(ExperimentKind::phase_grid, 10);
    g.repetitions = 5;
    g.axes = {{"m", {2, 3}}, {"N", {16, 300}}, {"p", {256}}};
    specs.push_back(g);
    ExperimentSpec r = grid_spec(ExperimentKind::rho_stability, 11);
    r.repetitions = 5;
    r.N = 200;
    r.p = 256;
    r.axes = {{"rho", {0.2, 0.5, 0.8}}};
    specs.push_back(r);
    ExperimentSpec w = grid_spec(ExperimentKind::outlier_sweep, 12);
    w.repetitions = 4;
    w.N = 300;
    w.p = 256;
    w.outlier_weight = 0.5;
    w.methods = {Method::scrlm, Method::kmeanspp, Method::scrlm_kmeans};
    w.axes = {{"m", {2, 4}}};
    specs.push_back(w);
    ExperimentSpec t;
    t.kind = ExperimentKind::timing_scaling;
    t.master_seed = 13;
    t.N = 512;
    t.p = 64;
    t.timing_trials = 1;
    t.axes = {{"N", {512, 1024}}};
    specs.push_back(t);
    ExperimentSpec b;
    b.kind = ExperimentKind::bounds_report;
    b.axes = {{"N", {100, 20000}}, {"m", {1, 3}}};
    specs.push_back(b);
    ExperimentSpec one = grid_spec(ExperimentKind::single_run, 14);
    one.repetitions = 3;
    one.N = 300;
    one.p = 128;
    specs.push_back(one);

    std::size_t identical = 0;
    for (auto spec : specs) {
        spec.threads = 1;
        const std::string first = strip_volatile(run_experiment(spec)).dump();
        spec.threads = 4;
        const std::string second = strip_volatile(run_experiment(spec)).dump();
        const std::string third = strip_volatile(run_experiment(spec)).dump();
        identical += first == second && second == third;
    }
    Outcome o;
    o.pass = identical == specs.size();
    o.detail = std::to_string(identical) + "/" + std::to_string(specs.size()) +
               " experiment kinds byte-identical across three reruns (1 and 4 worker threads)";
    return o;
}

// 11. Bound calculator integers, confirmed against 40-digit mpmath values.
Outcome criterion11() {
    const auto r = corollary7_thresholds(20000, 3, 0.8, 0.01);
    const auto r1 = corollary7_thresholds(1000, 1, 1.0, std::nextafter(1.0, 0.0));
    const bool rhs_ok = rel_eq(r.rhs.p_vs_N, 3596.9311673823083215, 1e-14) &&
                        rel_eq(r.rhs.n, 26.587788134160343793, 1e-14) &&
                        rel_eq(r1.rhs.n, 1.3862943611198906188, 1e-12);
    Outcome o;
    o.pass = r.p_min_vs_N == 3598 && r.n_min == 27 && r1.n_min == 2 && rhs_ok;
    o.detail = "p_min_vs_N=" + std::to_string(r.p_min_vs_N) + " (rhs " + fmt(r.rhs.p_vs_N, 12) + "), n_min=" +
               std::to_string(r.n_min) + " (rhs " + fmt(r.rhs.n, 12) + "), m=1 n_min=" + std::to_string(r1.n_min) +
               " (rhs " + fmt(r1.rhs.n, 12) + ")";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3,  criterion4,
                                                            criterion5, criterion6, criterion7,  criterion8,
                                                            criterion9, criterion10, criterion11};
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            selected.push_back(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: acceptance [--criterion N]...\n";
            return 2;
        }
    }
    if (selected.empty()) {
        selected.resize(criteria.size());
        std::iota(selected.begin(), selected.end(), 1);
    }

    int failures = 0;
    for (int c : selected) {
        if (c < 1 || c > static_cast<int>(criteria.size())) {
            std::cerr << "no criterion " << c << "\n";
            return 2;
        }
        Outcome o;
        try {
            o = criteria[static_cast<std::size_t>(c - 1)]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c << ": " << o.detail << std::endl;
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
