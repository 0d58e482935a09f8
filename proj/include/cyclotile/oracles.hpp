#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cyclotile/cyclo.hpp"
#include "cyclotile/digitset.hpp"

namespace cyclotile {

/// Disjoint, sorted, closed intervals with exact rational endpoints.
class IntervalUnion {
 public:
  using Interval = std::pair<mpq_class, mpq_class>;

  IntervalUnion() = default;
  /// Sorts and merges overlapping or touching intervals.
  explicit IntervalUnion(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  mpq_class measure() const;

  /// "[0,1] ∪ [2,3] measure 2".
  std::string toText() const;
  /// One interval per line as "p/q r/s".
  std::string serialize() const;
  static IntervalUnion parse(const std::string& text);
  /// Horizontal strip, one rectangle per interval.
  std::string toSvg(unsigned width = 800, unsigned height = 40) const;

  friend bool operator==(const IntervalUnion& a, const IntervalUnion& b) { return a.intervals_ == b.intervals_; }

 private:
  std::vector<Interval> intervals_;
};

std::string formatRational(const mpq_class& q);

/// Union over v in D + bD + ... + b^{depth-1}D of
/// [v / b^depth, (v + max D / (b - 1)) / b^depth], a cover of T(b, D).
IntervalUnion tileIntervals(std::uint64_t base, const DigitSet& digits, unsigned depth);

/// Complement L with A + L hitting every residue mod `period` exactly once.
struct ResidueTiling {
  std::uint64_t period = 0;
  std::vector<std::uint64_t> complement;
};

/// True iff A + L covers Z/period exactly once.
bool verifyResidueTiling(const DigitSet& a, const ResidueTiling& t);

/// min(10^5, 4 L) with L = lcm of the prime-power spectrum, or #A (max A + 1)
/// when the spectrum is empty.
std::uint64_t defaultPeriodCap(const DigitSet& a);

struct IntegerTileReport {
  std::optional<ResidueTiling> tiling;
  /// Every period that was searched, in order.
  std::vector<std::uint64_t> periodsTried;
  std::uint64_t periodCap = 0;
};

/// Tries the period lcm(S_A) first (with the explicit complement built from
/// the spectrum, then backtracking), then every multiple of #A up to the cap.
/// Requires 0 in A; throws invalid_argument when periodCap < #A. A cap of 0
/// selects defaultPeriodCap.
IntegerTileReport integerTileReport(const DigitSet& a, std::uint64_t periodCap = 0);
std::optional<ResidueTiling> integerTileCheck(const DigitSet& a, std::uint64_t periodCap = 0);

/// Smallest k <= depth with #(D + bD + ... + b^{k-1}D) < #D^k. Heuristic only.
std::optional<unsigned> directSumDiagnostic(std::uint64_t base, const DigitSet& digits, unsigned depth);

struct AbsContResult {
  bool absolutelyContinuous = false;
  IndexSet blocking;
  std::uint64_t cardinality = 0;
};

/// Blocking search on P_D without the #D = b requirement. On acceptance b | #D
/// is checked (std::logic_error otherwise).
AbsContResult absContCheck(std::uint64_t base, const DigitSet& digits);

}  // namespace cyclotile
