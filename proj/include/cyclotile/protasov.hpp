#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyclotile/cyclo.hpp"
#include "cyclotile/digitset.hpp"

namespace cyclotile {

// Integer-labelled tree: level-k vertices are strings j_k...j_1 of base-b
// digits with j_1 != 0, i.e. the integers 1 <= m < b^k with b not dividing m.
// The children of m at level k are l*b^k + m, 0 <= l < b.

class DigitString {
 public:
  /// Vertex m at level k. Throws invalid_argument unless b does not divide m
  /// and m < b^k.
  DigitString(std::uint64_t value, unsigned level, std::uint64_t base);

  /// Most significant digit first, e.g. "01". Bases above 10 separate digits
  /// with '.', e.g. "0.11".
  static DigitString parse(std::string_view text, std::uint64_t base);

  std::uint64_t value() const noexcept { return value_; }
  unsigned level() const noexcept { return level_; }
  std::uint64_t base() const noexcept { return base_; }
  /// j_k, ..., j_1.
  std::vector<std::uint64_t> digits() const;
  std::vector<DigitString> children() const;
  std::optional<DigitString> parent() const;
  std::string toString() const;

  friend bool operator==(const DigitString& a, const DigitString& b) {
    return a.value_ == b.value_ && a.level_ == b.level_ && a.base_ == b.base_;
  }
  friend bool operator<(const DigitString& a, const DigitString& b) {
    if (a.level_ != b.level_) return a.level_ < b.level_;
    return a.value_ < b.value_;
  }

 private:
  std::uint64_t value_;
  unsigned level_;
  std::uint64_t base_;
};

/// b^k / gcd(m, b^k); Φ of this index vanishes at e^{2πi m / b^k}.
std::uint64_t tauIndex(const DigitString& j);

/// Smallest level k at which every vertex has φ(τ) > deg: at level k some prime
/// p^α || b has v_p(τ) >= α(k-1)+1.
unsigned protasovDefaultDepth(std::uint64_t base, std::uint64_t degree);

struct ProtasovResult {
  enum class Status { Blocking, Absent, Inconclusive };

  Status status = Status::Absent;
  /// Symmetric blocking (closed under equal τ), sorted by level then value.
  std::vector<DigitString> blocking;
  /// τ image of the blocking.
  IndexSet tauImage;
  /// Vertex that died (Absent) or was cut by the bound (Inconclusive).
  std::optional<DigitString> witness;
  unsigned depthBound = 0;
  std::uint64_t verticesVisited = 0;
};

const char* statusName(ProtasovResult::Status s);

/// Depth-first first-hit search over the integer tree, with blocking tested by
/// Φ_τ | P_D. Requires #D = b; depthBound 0 selects protasovDefaultDepth.
ProtasovResult protasovDecide(std::uint64_t base, const DigitSet& digits, unsigned depthBound = 0);

struct KenyonResult {
  bool passed = false;
  /// For each m checked, the smallest k with Φ_{b^k / gcd(m, b^k)} | P_D.
  std::map<std::uint64_t, unsigned> k;
  std::optional<std::uint64_t> failingM;
};

/// Root condition for 1 <= m <= mMax. Passing is a necessary condition only.
KenyonResult kenyonBoundedCheck(std::uint64_t base, const DigitSet& digits, std::uint64_t mMax);

}  // namespace cyclotile
