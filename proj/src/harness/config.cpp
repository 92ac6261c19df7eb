#include "scrlm/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "scrlm/harness/dataset_io.hpp"

namespace scrlm::harness {
namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(std::string_view(s).substr(start, pos == std::string::npos ? pos : pos - start)));
        if (pos == std::string::npos) return parts;
        start = pos + 1;
    }
}

double to_double(const std::string& key, const std::string& text) {
    std::string_view sv = text;
    if (!sv.empty() && sv.front() == '+') sv.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (sv.empty() || ec != std::errc() || ptr != sv.data() + sv.size() || !std::isfinite(v)) {
        throw std::invalid_argument(key + ": '" + text + "' is not a finite number");
    }
    return v;
}

template <class Int>
Int to_int(const std::string& key, const std::string& text) {
    Int v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument(key + ": '" + text + "' is not a non-negative integer");
    }
    return v;
}

std::size_t to_count(const std::string& key, const std::string& text) {
    return to_int<std::size_t>(key, text);
}

std::vector<double> pow2_range(int lo, int hi) {
    std::vector<double> v;
    for (int e = lo; e <= hi; ++e) v.push_back(std::ldexp(1.0, e));
    return v;
}

ExperimentSpec grid_base(ExperimentKind kind, std::string name) {
    ExperimentSpec s;
    s.kind = kind;
    s.name = std::move(name);
    s.repetitions = 100;
    s.rho = 0.5;
    s.a = 0.8;
    s.delta = 0.01;
    return s;
}

}  // namespace

ConfigMap parse_config(const std::string& text) {
    ConfigMap out;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
        out[key] = trim(std::string_view(body).substr(eq + 1));
    }
    return out;
}

ConfigMap load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::vector<double> parse_axis_values(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw std::invalid_argument("empty axis value list");
    const auto colon = t.find(':');
    if (colon == std::string::npos) {
        std::vector<double> v;
        for (const auto& part : split(t, ',')) v.push_back(to_double("axis", part));
        return v;
    }
    const auto parts = split(t, ':');
    const std::string& form = parts[0];
    if (form == "pow2" && parts.size() == 3) {
        const int lo = to_int<int>("pow2", parts[1]);
        const int hi = to_int<int>("pow2", parts[2]);
        if (lo > hi || hi > 60) throw std::invalid_argument("pow2: need lo <= hi <= 60");
        return pow2_range(lo, hi);
    }
    if (form == "geom" && parts.size() == 4) {
        const double start = to_double("geom", parts[1]);
        const double ratio = to_double("geom", parts[2]);
        const std::size_t count = to_count("geom", parts[3]);
        if (count < 1 || !(start > 0.0) || !(ratio > 0.0)) {
            throw std::invalid_argument("geom: need start > 0, ratio > 0, count >= 1");
        }
        std::vector<double> v;
        for (std::size_t k = 0; k < count; ++k) v.push_back(start * std::pow(ratio, static_cast<double>(k)));
        return v;
    }
    if (form == "lin" && parts.size() == 4) {
        const double start = to_double("lin", parts[1]);
        const double stop = to_double("lin", parts[2]);
        const std::size_t count = to_count("lin", parts[3]);
        if (count < 1) throw std::invalid_argument("lin: count must be >= 1");
        if (count == 1) return {start};
        std::vector<double> v;
        for (std::size_t k = 0; k < count; ++k) {
            v.push_back(start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1));
        }
        return v;
    }
    throw std::invalid_argument("cannot parse axis values '" + text + "'");
}

std::vector<std::string> preset_names() {
    return {"region-p-N", "region-m-n", "region-m-p", "region-m-N", "rho-N", "rho-p", "rho-m", "rho-n",
            "outliers-m", "outliers-p", "outliers-N", "timing"};
}

ExperimentSpec preset(const std::string& name, bool full_scale) {
    using K = ExperimentKind;
    const std::vector<double> rhos = {0.15, 0.2, 0.25, 0.27, 0.3, 0.4, 0.5, 0.6, 0.7, 0.75, 0.8, 0.9};
    const std::vector<double> ms = full_scale ? std::vector<double>{2, 4, 8, 16, 32, 64}
                                               : std::vector<double>{2, 3, 5, 8, 10};
    const double big_N = full_scale ? 20000 : 4096;
    const double big_p = full_scale ? 3700 : 1024;

    ExperimentSpec s;
    if (name == "region-p-N") {
        s = grid_base(K::phase_grid, name);
        s.m = 3;
        s.axes = {{"p", pow2_range(full_scale ? 4 : 5, 12)}, {"N", pow2_range(7, full_scale ? 17 : 14)}};
    } else if (name == "region-m-n") {
        s = grid_base(K::phase_grid, name);
        s.N = static_cast<std::size_t>(big_N);
        s.p = static_cast<std::size_t>(big_p);
        s.axes = {{"m", ms}, {"n", pow2_range(1, full_scale ? 10 : 8)}};
    } else if (name == "region-m-p") {
        s = grid_base(K::phase_grid, name);
        s.N = static_cast<std::size_t>(big_N);
        s.axes = {{"m", ms}, {"p", pow2_range(full_scale ? 4 : 5, 12)}};
    } else if (name == "region-m-N") {
        s = grid_base(K::phase_grid, name);
        s.p = static_cast<std::size_t>(big_p);
        s.axes = {{"m", ms}, {"N", pow2_range(3, full_scale ? 15 : 12)}};
    } else if (name == "rho-N") {
        s = grid_base(K::rho_stability, name);
        s.m = 3;
        s.p = static_cast<std::size_t>(big_p);
        s.axes = {{"rho", rhos}, {"N", pow2_range(7, full_scale ? 15 : 12)}};
    } else if (name == "rho-p") {
        s = grid_base(K::rho_stability, name);
        s.m = 3;
        s.N = 32;
        s.axes = {{"rho", rhos}, {"p", pow2_range(5, 12)}};
    } else if (name == "rho-m") {
        s = grid_base(K::rho_stability, name);
        s.N = static_cast<std::size_t>(big_N);
        s.p = static_cast<std::size_t>(big_p);
        s.axes = {{"rho", rhos}, {"m", ms}};
    } else if (name == "rho-n") {
        s = grid_base(K::rho_stability, name);
        s.m = 3;
        s.N = static_cast<std::size_t>(big_N);
        s.p = full_scale ? 4200 : 1024;
        s.axes = {{"rho", rhos}, {"n", pow2_range(1, 8)}};
    } else if (name == "outliers-m" || name == "outliers-p" || name == "outliers-N") {
        s = grid_base(K::outlier_sweep, name);
        s.outlier_weight = 0.5;
        s.max_clusters = kAutoClusters;
        s.methods = {Method::scrlm, Method::kmeanspp, Method::scrlm_kmeans};
        s.repetitions = full_scale ? 100 : 20;
        s.m = 3;
        s.p = static_cast<std::size_t>(big_p);
        s.N = full_scale ? 20000 : 2000;
        if (name == "outliers-m") s.axes = {{"m", full_scale ? ms : std::vector<double>{2, 3, 5, 10}}};
        if (name == "outliers-p") s.axes = {{"p", pow2_range(6, full_scale ? 12 : 11)}};
        if (name == "outliers-N") s.axes = {{"N", pow2_range(8, full_scale ? 15 : 12)}};
    } else if (name == "timing") {
        s.kind = K::timing_scaling;
        s.name = name;
        s.m = 3;
        s.N = 2048;
        s.p = 256;
        s.timing_trials = 3;
        s.axes = {{"N", pow2_range(10, full_scale ? 16 : 14)},
                  {"p", pow2_range(7, full_scale ? 13 : 11)},
                  {"m", {2, 4, 8, 16, 32}}};
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return s;
}

void apply_config(ExperimentSpec& spec, const ConfigMap& config) {
    for (const auto& [key, value] : config) {
        if (key == "kind") spec.kind = parse_kind(value);
        else if (key == "name") spec.name = value;
        else if (key == "repetitions") spec.repetitions = to_count(key, value);
        else if (key == "seed" || key == "master_seed") spec.master_seed = to_int<std::uint64_t>(key, value);
        else if (key == "N") spec.N = to_count(key, value);
        else if (key == "p") spec.p = to_count(key, value);
        else if (key == "m") spec.m = to_count(key, value);
        else if (key == "outlier_weight") spec.outlier_weight = to_double(key, value);
        else if (key == "rho") spec.rho = to_double(key, value);
        else if (key == "F" || key == "f_const") spec.f_const = to_double(key, value);
        else if (key == "n" || key == "subsample_size") {
            if (value == "derived" || value == "auto") spec.n.reset();
            else spec.n = to_count(key, value);
        } else if (key == "T" || key == "max_clusters") {
            spec.max_clusters = (value == "N" || value == "auto") ? kAutoClusters : to_count(key, value);
        } else if (key == "a") spec.a = to_double(key, value);
        else if (key == "delta") spec.delta = to_double(key, value);
        else if (key == "success_fraction") spec.success_fraction = to_double(key, value);
        else if (key == "kmeans_max_iters") spec.kmeans_max_iters = to_count(key, value);
        else if (key == "kmeans_tol") spec.kmeans_tol = to_double(key, value);
        else if (key == "timing_trials") spec.timing_trials = to_count(key, value);
        else if (key == "threads") spec.threads = to_int<unsigned>(key, value);
        else if (key == "methods") {
            spec.methods.clear();
            for (const auto& part : split(value, ',')) spec.methods.push_back(parse_method(part));
        } else if (key.rfind("axis.", 0) == 0) {
            const std::string axis = key.substr(5);
            auto values = parse_axis_values(value);
            bool replaced = false;
            for (auto& a : spec.axes) {
                if (a.name == axis) {
                    a.values = values;
                    replaced = true;
                }
            }
            if (!replaced) spec.axes.push_back({axis, std::move(values)});
        } else if (key == "axes") {
            if (value.empty() || value == "none") spec.axes.clear();
            else throw std::invalid_argument("axes: only 'none' is accepted; use axis.<name> = values");
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
}

}  // namespace scrlm::harness
