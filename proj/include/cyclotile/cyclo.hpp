#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <vector>

#include "cyclotile/intpoly.hpp"
#include "cyclotile/numtheory.hpp"

namespace cyclotile {

/// Set of cyclotomic indices; a product of the corresponding Φ_n.
using IndexSet = std::set<std::uint64_t>;

/// Index n >= 2 of a cyclotomic polynomial Φ_n, with its factorization and
/// Euler totient (= deg Φ_n) computed once on construction.
class CycIndex {
 public:
  explicit CycIndex(std::uint64_t n);

  std::uint64_t value() const noexcept { return value_; }
  const Factorization& factorization() const noexcept { return factors_; }
  std::uint64_t phi() const noexcept { return phi_; }
  std::uint64_t radical() const noexcept;
  bool isPrimePower() const noexcept { return factors_.size() == 1; }

  friend bool operator==(const CycIndex& a, const CycIndex& b) { return a.value_ == b.value_; }
  friend auto operator<=>(const CycIndex& a, const CycIndex& b) { return a.value_ <=> b.value_; }

 private:
  std::uint64_t value_;
  Factorization factors_;
  std::uint64_t phi_;
};

/// Thread-safe store of generated cyclotomic polynomials keyed by index.
///
/// Persisted as text: a header line `# cyclotile cyclotomic cache v1`, then one
/// record per line `n <exponent:coefficient list>`. Every record read back is
/// verified (monic, degree φ(n), divides x^n - 1, divisible by no Φ_d with
/// d | n, d < n) and recomputed when any check fails.
class CycCache {
 public:
  static constexpr const char* kHeader = "# cyclotile cyclotomic cache v1";

  struct LoadReport {
    std::size_t accepted = 0;
    std::size_t recomputed = 0;
    bool headerOk = true;
  };

  std::shared_ptr<const IntPoly> get(std::uint64_t n);
  bool contains(std::uint64_t n) const;
  std::size_t size() const;
  void clear();

  LoadReport load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  /// Process-wide cache used by cyclotomic().
  static CycCache& global();

  /// True iff `candidate` is exactly Φ_n, checked without regenerating Φ_n.
  static bool verifyEntry(std::uint64_t n, const IntPoly& candidate);

 private:
  IntPoly compute(std::uint64_t n);

  mutable std::shared_mutex mutex_;
  std::map<std::uint64_t, std::shared_ptr<const IntPoly>> entries_;
};

/// Φ_n for n >= 1 (Φ_1 = x - 1), via the global cache.
IntPoly cyclotomic(std::uint64_t n);

/// Φ_n(1): p when n = p^a, otherwise 1. Read off the factorization.
std::uint64_t phiAtOne(const CycIndex& n);

/// Indices E with Φ_d(x^b) = prod over e in E of Φ_e(x).
IndexSet expandIndices(const CycIndex& d, std::uint64_t base);

/// Indices of the cyclotomic factors of Φ_d(x^{b^j}); j = 0 gives {d}.
IndexSet expandIndicesPower(std::uint64_t d, std::uint64_t base, unsigned j);

/// Φ_s | P. P must be nonzero.
bool cycDivides(const CycIndex& s, const IntPoly& p);

/// Same test on a sparse term list; `degree` is the degree of the polynomial.
bool cycDivides(const CycIndex& s, const std::vector<Term>& terms, std::size_t degree);

/// Memoized cycDivides against one fixed nonzero polynomial. Not thread-safe;
/// each search owns one.
class DivisibilityMemo {
 public:
  explicit DivisibilityMemo(const IntPoly& p);

  bool divides(std::uint64_t s);
  std::size_t degree() const noexcept { return degree_; }
  std::size_t testsRun() const noexcept { return tests_; }

 private:
  std::vector<Term> terms_;
  std::size_t degree_;
  std::size_t tests_ = 0;
  std::map<std::uint64_t, bool> known_;
};

}  // namespace cyclotile
