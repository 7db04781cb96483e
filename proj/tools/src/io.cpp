#include "copoun_cli/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "copoun/error.hpp"

namespace copoun::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                          : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::int64_t parse_count(std::string_view field, std::size_t line, std::string_view what) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(std::string(what) + " is not an integer: '" + std::string(field) + "'", line);
  }
  if (v < 0) throw ParseError(std::string(what) + " must be nonnegative: " + std::to_string(v), line);
  return v;
}

double parse_real(std::string_view field, std::size_t line, std::string_view column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("column '" + std::string(column) + "' is not numeric: '" + std::string(field) + "'",
                     line);
  }
  return v;
}

}  // namespace

CountFormat parse_count_format(std::string_view name) {
  if (name == "auto") return CountFormat::automatic;
  if (name == "raw") return CountFormat::raw;
  if (name == "freq") return CountFormat::freq;
  throw DomainError("unknown input format '" + std::string(name) + "' (expected auto, raw or freq)");
}

FrequencyTable parse_counts(std::string_view text, CountFormat format) {
  const auto lines = split_lines(text);
  std::size_t first = 0;
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  if (first == lines.size()) throw DomainError("input contains no counts");

  if (format == CountFormat::automatic) {
    format = trim(lines[first]) == "value,count" ? CountFormat::freq : CountFormat::raw;
  }

  if (format == CountFormat::raw) {
    std::map<std::int64_t, std::int64_t> tally;
    for (std::size_t i = first; i < lines.size(); ++i) {
      const auto line = trim(lines[i]);
      if (line.empty()) continue;
      ++tally[parse_count(line, i + 1, "count")];
    }
    std::vector<FrequencyEntry> entries;
    for (const auto& [value, count] : tally) entries.push_back({value, count});
    return FrequencyTable(std::move(entries));
  }

  if (trim(lines[first]) != "value,count") {
    throw ParseError("expected header 'value,count'", first + 1);
  }
  std::vector<FrequencyEntry> entries;
  for (std::size_t i = first + 1; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) throw ParseError("expected two fields 'value,count'", i + 1);
    const std::int64_t value = parse_count(fields[0], i + 1, "value");
    const std::int64_t count = parse_count(fields[1], i + 1, "count");
    if (!entries.empty() && value <= entries.back().value) {
      throw ParseError("values must be strictly increasing", i + 1);
    }
    entries.push_back({value, count});
  }
  if (entries.empty()) throw DomainError("input contains no counts");
  try {
    return FrequencyTable(std::move(entries));
  } catch (const DomainError& e) {
    throw DomainError(std::string("invalid frequency table: ") + e.what());
  }
}

FrequencyTable load_counts(const std::filesystem::path& path, CountFormat format) {
  return parse_counts(read_file(path), format);
}

const std::vector<double>& CsvTable::column(std::string_view name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw DomainError("missing column '" + std::string(name) + "'");
  return columns[static_cast<std::size_t>(it - names.begin())];
}

CsvTable parse_csv_table(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t first = 0;
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  if (first == lines.size()) throw DomainError("CSV input is empty");

  CsvTable table;
  for (auto f : split_fields(trim(lines[first]))) {
    if (f.empty()) throw ParseError("empty column name", first + 1);
    if (std::find(table.names.begin(), table.names.end(), f) != table.names.end()) {
      throw ParseError("duplicate column '" + std::string(f) + "'", first + 1);
    }
    table.names.emplace_back(f);
  }
  table.columns.resize(table.names.size());
  for (std::size_t i = first + 1; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != table.names.size()) {
      throw ParseError("expected " + std::to_string(table.names.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       i + 1);
    }
    for (std::size_t j = 0; j < fields.size(); ++j)
      table.columns[j].push_back(parse_real(fields[j], i + 1, table.names[j]));
  }
  if (table.rows() == 0) throw DomainError("CSV input has a header but no rows");
  return table;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DomainError("failed writing '" + path.string() + "'");
}

std::string format_raw_counts(std::span<const std::int64_t> counts) {
  std::string out;
  out.reserve(counts.size() * 3);
  char buf[24];
  for (auto c : counts) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, c);
    out.append(buf, ptr);
    out.push_back('\n');
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["input_digest"] = m.input_digest.empty() ? nlohmann::ordered_json(nullptr)
                                             : nlohmann::ordered_json("sha256:" + m.input_digest);
  j["seed"] = m.seed;
  j["tool_version"] = m.tool_version;
  j["timestamp"] = m.timestamp;
  return j.dump(2) + "\n";
}

}  // namespace copoun::cli
