#include "scrlm/harness/dataset_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace scrlm::harness {
namespace {

std::string with_offset(const std::string& what, std::optional<std::uint64_t> offset) {
    if (!offset) return what;
    return what + " (byte offset " + std::to_string(*offset) + ")";
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

double parse_double(std::string_view field, std::uint64_t line_offset, std::size_t line_no) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw IoError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) +
                          "' as a number",
                      line_offset);
    }
    if (!std::isfinite(value)) {
        throw IoError("line " + std::to_string(line_no) + ": non-finite value '" + std::string(field) + "'",
                      line_offset);
    }
    return value;
}

int parse_label(std::string_view field, std::uint64_t line_offset, std::size_t line_no) {
    field = trim(field);
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || (value != kOutlierLabel && value <= 0)) {
        throw IoError("line " + std::to_string(line_no) + ": invalid label '" + std::string(field) + "'",
                      line_offset);
    }
    return value;
}

template <class T>
void put_le(std::string& out, T value) {
    std::array<unsigned char, sizeof(T)> bytes{};
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    out.append(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

template <class T>
T get_le(const std::string& in, std::size_t offset) {
    std::array<unsigned char, sizeof(T)> bytes{};
    std::memcpy(bytes.data(), in.data() + offset, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

Dataset load_csv(const std::filesystem::path& path, bool label_column) {
    const std::string text = read_file(path);
    std::vector<double> values;
    LabelVector labels;
    std::size_t n_cols = 0;
    std::size_t n_rows = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        const std::uint64_t line_offset = pos;
        const std::string_view line = trim(std::string_view(text).substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (label_column) {
            if (fields.size() < 2) {
                throw IoError("line " + std::to_string(line_no) + ": need at least one value and a label",
                              line_offset);
            }
            labels.push_back(parse_label(fields.back(), line_offset, line_no));
            fields.pop_back();
        }
        if (n_rows == 0) {
            n_cols = fields.size();
        } else if (fields.size() != n_cols) {
            throw IoError("line " + std::to_string(line_no) + ": expected " + std::to_string(n_cols) +
                              " values, found " + std::to_string(fields.size()),
                          line_offset);
        }
        for (auto f : fields) values.push_back(parse_double(f, line_offset, line_no));
        ++n_rows;
    }
    if (n_rows == 0) throw IoError("no observations in " + path.string());

    Dataset ds{DataMatrix(n_rows, n_cols, std::move(values)), std::nullopt};
    if (label_column) ds.labels = std::move(labels);
    return ds;
}

Dataset load_binary(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    if (bytes.size() < kBinaryHeaderSize) {
        throw IoError("truncated header: expected " + std::to_string(kBinaryHeaderSize) + " bytes, found " +
                          std::to_string(bytes.size()),
                      bytes.size());
    }
    if (std::memcmp(bytes.data(), kBinaryMagic, 4) != 0) throw IoError("bad magic, expected \"SCRM\"", 0);
    const auto version = get_le<std::uint32_t>(bytes, 4);
    if (version != kBinaryVersion) {
        throw IoError("unsupported format version " + std::to_string(version), 4);
    }
    const auto n_rows = get_le<std::uint64_t>(bytes, 8);
    const auto n_cols = get_le<std::uint64_t>(bytes, 16);
    const auto flags = get_le<std::uint32_t>(bytes, 24);
    if (n_rows == 0 || n_cols == 0) throw IoError("header declares an empty matrix", 8);
    if ((flags & ~std::uint32_t{1}) != 0) throw IoError("unknown header flags", 24);
    const bool has_labels = (flags & 1U) != 0;

    if (n_cols > (std::uint64_t{1} << 40) / n_rows) throw IoError("header declares an implausible size", 8);
    const std::uint64_t value_bytes = n_rows * n_cols * 8;
    const std::uint64_t expected = kBinaryHeaderSize + value_bytes + (has_labels ? n_rows * 4 : 0);
    if (bytes.size() != expected) {
        throw IoError("payload length mismatch: expected " + std::to_string(expected) + " bytes, found " +
                          std::to_string(bytes.size()),
                      std::min<std::uint64_t>(bytes.size(), expected));
    }

    std::vector<double> values(n_rows * n_cols);
    for (std::size_t k = 0; k < values.size(); ++k) {
        const std::size_t off = kBinaryHeaderSize + k * 8;
        values[k] = get_le<double>(bytes, off);
        if (!std::isfinite(values[k])) throw IoError("non-finite value", off);
    }
    Dataset ds{DataMatrix(n_rows, n_cols, std::move(values)), std::nullopt};
    if (has_labels) {
        LabelVector labels(n_rows);
        for (std::size_t i = 0; i < n_rows; ++i) {
            const std::size_t off = kBinaryHeaderSize + value_bytes + i * 4;
            labels[i] = get_le<std::int32_t>(bytes, off);
            if (labels[i] != kOutlierLabel && labels[i] <= 0) throw IoError("invalid label", off);
        }
        ds.labels = std::move(labels);
    }
    return ds;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

void append_double(std::string& out, double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), ptr);
}

}  // namespace

IoError::IoError(const std::string& what, std::optional<std::uint64_t> offset)
    : std::runtime_error(with_offset(what, offset)), offset_(offset) {}

DatasetFormat parse_format(const std::string& name) {
    if (name == "csv") return DatasetFormat::csv;
    if (name == "binary" || name == "bin" || name == "scrm") return DatasetFormat::binary;
    throw std::invalid_argument("unknown dataset format '" + name + "' (expected csv or binary)");
}

DatasetFormat guess_format(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    return (ext == ".csv" || ext == ".txt") ? DatasetFormat::csv : DatasetFormat::binary;
}

Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format, bool label_column) {
    if (format == DatasetFormat::csv) return load_csv(path, label_column);
    return load_binary(path);
}

void save_dataset(const std::filesystem::path& path, DatasetFormat format, const DataMatrix& data,
                  const LabelVector* labels) {
    if (labels && labels->size() != data.n_rows()) {
        throw std::invalid_argument("save_dataset: label count does not match row count");
    }
    std::string out;
    if (format == DatasetFormat::csv) {
        for (std::size_t i = 0; i < data.n_rows(); ++i) {
            const auto row = data.row(i);
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (j) out.push_back(',');
                append_double(out, row[j]);
            }
            if (labels) out += "," + std::to_string((*labels)[i]);
            out.push_back('\n');
        }
    } else {
        out.reserve(kBinaryHeaderSize + data.values().size() * 8 + (labels ? data.n_rows() * 4 : 0));
        out.append(kBinaryMagic, 4);
        put_le<std::uint32_t>(out, kBinaryVersion);
        put_le<std::uint64_t>(out, data.n_rows());
        put_le<std::uint64_t>(out, data.n_cols());
        put_le<std::uint32_t>(out, labels ? 1U : 0U);
        for (double v : data.values()) put_le<double>(out, v);
        if (labels) {
            for (int l : *labels) put_le<std::int32_t>(out, l);
        }
    }
    write_file(path, out);
}

LabelVector load_labels(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    LabelVector labels;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        const std::uint64_t line_offset = pos;
        const std::string_view line = trim(std::string_view(text).substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        labels.push_back(parse_label(line, line_offset, line_no));
    }
    return labels;
}

void save_labels(const std::filesystem::path& path, const LabelVector& labels) {
    std::string out;
    for (int l : labels) out += std::to_string(l) + "\n";
    write_file(path, out);
}

void save_results(const std::filesystem::path& path, const nlohmann::json& results) {
    write_file(path, results.dump(2) + "\n");
}

}  // namespace scrlm::harness
