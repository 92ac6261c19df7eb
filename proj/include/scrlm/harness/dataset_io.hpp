#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "scrlm/types.hpp"

namespace scrlm::harness {

enum class DatasetFormat { csv, binary };

DatasetFormat parse_format(const std::string& name);
/// csv for *.csv / *.txt, binary otherwise.
DatasetFormat guess_format(const std::filesystem::path& path);

/// Load/save failure. `offset` is a byte offset into the file (for CSV, the
/// start of the offending line) when one applies.
class IoError : public std::runtime_error {
public:
    IoError(const std::string& what, std::optional<std::uint64_t> offset = std::nullopt);
    std::optional<std::uint64_t> offset() const { return offset_; }

private:
    std::optional<std::uint64_t> offset_;
};

struct Dataset {
    DataMatrix data;
    std::optional<LabelVector> labels;
};

// Binary layout, all little-endian:
//   "SCRM" | u32 version (=1) | u64 N | u64 p | u32 flags (bit 0: labels present)
//   | N*p f64 row-major | [N i32 labels]
inline constexpr char kBinaryMagic[4] = {'S', 'C', 'R', 'M'};
inline constexpr std::uint32_t kBinaryVersion = 1;
inline constexpr std::size_t kBinaryHeaderSize = 4 + 4 + 8 + 8 + 4;

/// CSV: one observation per line, comma separated; when label_column is set
/// the last field of each line is an integer label. Blank lines and lines
/// starting with '#' are skipped.
Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format, bool label_column = false);

void save_dataset(const std::filesystem::path& path, DatasetFormat format, const DataMatrix& data,
                  const LabelVector* labels = nullptr);

/// One integer label per line.
LabelVector load_labels(const std::filesystem::path& path);
void save_labels(const std::filesystem::path& path, const LabelVector& labels);

/// Pretty-printed JSON with a trailing newline.
void save_results(const std::filesystem::path& path, const nlohmann::json& results);

}  // namespace scrlm::harness
