#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "scrlm/harness/experiment.hpp"

namespace scrlm::harness {

/// Ordered key=value pairs. Later assignments of a key win.
using ConfigMap = std::map<std::string, std::string>;

/// Parses "key = value" lines; '#' starts a comment, blank lines are ignored.
/// Throws std::invalid_argument naming the offending line.
ConfigMap parse_config(const std::string& text);
ConfigMap load_config(const std::filesystem::path& path);

/// Expands an axis value list. Accepted forms:
///   "1,2,3"                   explicit list
///   "pow2:7:14"               2^7 .. 2^14
///   "geom:start:ratio:count"  start * ratio^k
///   "lin:start:stop:count"    evenly spaced, endpoints included
std::vector<double> parse_axis_values(const std::string& text);

/// Built-in experiment definitions, by name.
std::vector<std::string> preset_names();
/// `full_scale` swaps in the full-size grids, which take hours to run.
ExperimentSpec preset(const std::string& name, bool full_scale = false);

/// Applies config entries on top of a spec. Keys are the ExperimentSpec field
/// names; "axis.<name>" adds or replaces a grid axis and "methods" is a
/// comma list.
void apply_config(ExperimentSpec& spec, const ConfigMap& config);

}  // namespace scrlm::harness
