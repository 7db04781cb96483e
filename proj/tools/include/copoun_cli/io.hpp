#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "copoun/frequency_table.hpp"

namespace copoun::cli {

/// raw: one nonnegative integer per line. freq: CSV with header "value,count".
enum class CountFormat { automatic, raw, freq };

CountFormat parse_count_format(std::string_view name);

/// Throws ParseError (with line number) on malformed or negative entries and
/// DomainError on empty input. `automatic` picks freq when the first
/// non-blank line is the "value,count" header.
FrequencyTable parse_counts(std::string_view text, CountFormat format = CountFormat::automatic);
FrequencyTable load_counts(const std::filesystem::path& path,
                           CountFormat format = CountFormat::automatic);

/// Numeric CSV with a header row.
struct CsvTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  /// Throws DomainError naming the column when it is absent.
  const std::vector<double>& column(std::string_view name) const;
};

CsvTable parse_csv_table(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// One count per line, LF terminated.
std::string format_raw_counts(std::span<const std::int64_t> counts);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

struct RunManifest {
  std::string command;
  std::string input_digest;  ///< sha256 of the input bytes, empty when there is no input file
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string timestamp;  ///< UTC, ISO 8601
};

std::string utc_timestamp();
std::string manifest_json(const RunManifest& manifest);

}  // namespace copoun::cli
