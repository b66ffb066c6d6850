#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cregf {

/// Sorted, validated, non-negative lifetime observations. The original order
/// of the input is not retained; ties are kept.
class Sample {
 public:
  /// Sorts and validates. Throws EmptyInput, or NegativeValue naming the
  /// first offending index and value (non-finite values are rejected too).
  static Sample sort_validate(std::span<const double> raw);
  static Sample sort_validate(std::vector<double>&& raw);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  double mean() const noexcept;
  bool all_equal() const noexcept { return values_.front() == values_.back(); }

 private:
  explicit Sample(std::vector<double> sorted) : values_(std::move(sorted)) {}

  std::vector<double> values_;
};

inline Sample sort_validate(std::span<const double> raw) { return Sample::sort_validate(raw); }

}  // namespace cregf
