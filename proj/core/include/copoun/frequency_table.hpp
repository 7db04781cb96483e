#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace copoun {

struct FrequencyEntry {
  std::int64_t value = 0;
  std::int64_t count = 0;

  friend bool operator==(const FrequencyEntry&, const FrequencyEntry&) = default;
};

/// Observed counts per nonnegative integer value. Values are strictly
/// increasing; zero counts are allowed but the total must be positive.
class FrequencyTable {
 public:
  FrequencyTable() = default;
  /// Throws DomainError when the invariants do not hold.
  explicit FrequencyTable(std::vector<FrequencyEntry> entries);

  static FrequencyTable from_sample(std::span<const std::int64_t> sample);

  const std::vector<FrequencyEntry>& entries() const noexcept { return entries_; }
  std::int64_t n() const noexcept { return n_; }
  std::int64_t max_value() const { return entries_.back().value; }
  /// Count observed at `value` (0 when absent).
  std::int64_t count_of(std::int64_t value) const;

  double mean() const { return raw_moment(1); }
  double raw_moment(int order) const;
  double variance() const;  ///< population (divide-by-n) variance

  /// sum over entries of count * f(value), in increasing value order.
  template <typename F>
  double weighted_sum(F&& f) const {
    double total = 0.0;
    for (const auto& e : entries_) {
      if (e.count != 0) total += static_cast<double>(e.count) * f(e.value);
    }
    return total;
  }

  std::vector<std::int64_t> expand() const;

 private:
  std::vector<FrequencyEntry> entries_;
  std::int64_t n_ = 0;
};

}  // namespace copoun
