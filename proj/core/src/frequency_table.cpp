#include "copoun/frequency_table.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "copoun/error.hpp"

namespace copoun {

FrequencyTable::FrequencyTable(std::vector<FrequencyEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DomainError("frequency table is empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.value < 0) throw DomainError("frequency table values must be nonnegative");
    if (e.count < 0) throw DomainError("frequency table counts must be nonnegative");
    if (i > 0 && e.value <= entries_[i - 1].value) {
      throw DomainError("frequency table values must be strictly increasing");
    }
    n_ += e.count;
  }
  if (n_ <= 0) throw DomainError("frequency table total count must be positive");
}

FrequencyTable FrequencyTable::from_sample(std::span<const std::int64_t> sample) {
  std::map<std::int64_t, std::int64_t> counts;
  for (auto v : sample) {
    if (v < 0) throw DomainError("sample values must be nonnegative");
    ++counts[v];
  }
  std::vector<FrequencyEntry> entries;
  entries.reserve(counts.size());
  for (const auto& [value, count] : counts) entries.push_back({value, count});
  return FrequencyTable(std::move(entries));
}

std::int64_t FrequencyTable::count_of(std::int64_t value) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), value,
                             [](const FrequencyEntry& e, std::int64_t v) { return e.value < v; });
  return (it != entries_.end() && it->value == value) ? it->count : 0;
}

double FrequencyTable::raw_moment(int order) const {
  const double total =
      weighted_sum([order](std::int64_t v) { return std::pow(static_cast<double>(v), order); });
  return total / static_cast<double>(n_);
}

double FrequencyTable::variance() const {
  const double m = mean();
  return weighted_sum([m](std::int64_t v) {
           const double d = static_cast<double>(v) - m;
           return d * d;
         }) /
         static_cast<double>(n_);
}

std::vector<std::int64_t> FrequencyTable::expand() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (const auto& e : entries_) out.insert(out.end(), static_cast<std::size_t>(e.count), e.value);
  return out;
}

}  // namespace copoun
