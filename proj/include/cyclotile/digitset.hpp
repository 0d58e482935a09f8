#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyclotile/intpoly.hpp"

namespace cyclotile {

/// Finite nonempty set of distinct non-negative integers, stored sorted.
class DigitSet {
 public:
  /// Throws InvalidDigitSet on an empty list, a negative entry or a duplicate.
  explicit DigitSet(const std::vector<std::int64_t>& digits);
  static DigitSet fromUnsigned(std::vector<std::uint64_t> digits);
  /// Comma- or space-separated list, e.g. "0,1,8,9".
  static DigitSet parse(std::string_view text);

  const std::vector<std::uint64_t>& digits() const noexcept { return digits_; }
  std::size_t size() const noexcept { return digits_.size(); }
  std::uint64_t max() const noexcept { return digits_.back(); }
  bool contains(std::uint64_t d) const;
  std::uint64_t gcd() const;

  auto begin() const noexcept { return digits_.begin(); }
  auto end() const noexcept { return digits_.end(); }

  std::string toString() const;

  friend bool operator==(const DigitSet&, const DigitSet&) = default;

 private:
  DigitSet() = default;
  std::vector<std::uint64_t> digits_;
};

/// P_D(x) = sum of x^d over d in D.
IntPoly maskPolynomial(const DigitSet& digits);

/// Inverse of maskPolynomial: the exponent set when every coefficient is 0 or 1.
std::optional<DigitSet> digitSetFromMask(const IntPoly& mask);

}  // namespace cyclotile
