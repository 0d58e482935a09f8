#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cyclotile {

struct Term {
  std::uint64_t exponent;
  mpz_class coeff;
};

/// Dense integer polynomial with arbitrary-precision coefficients.
///
/// Coefficients are indexed by exponent and kept in normal form: trailing
/// zeros are stripped, so the leading coefficient is nonzero unless the
/// polynomial is zero. Values are immutable once built.
class IntPoly {
 public:
  /// Degree sentinel of the zero polynomial.
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const mpz_class& c);
  static IntPoly monomial(std::uint64_t exponent, const mpz_class& c = 1);
  static IntPoly fromTerms(const std::vector<Term>& terms);
  /// x^n - 1
  static IntPoly xPowerMinusOne(std::uint64_t n);

  bool isZero() const noexcept { return coeffs_.empty(); }
  std::size_t degree() const noexcept { return coeffs_.empty() ? npos : coeffs_.size() - 1; }
  const mpz_class& coeff(std::size_t exponent) const noexcept;
  const mpz_class& leading() const;
  const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }
  std::vector<Term> terms() const;
  std::size_t termCount() const noexcept;
  mpz_class valueAtOne() const;

  /// Exponent:coefficient pairs in ascending exponent order, e.g. "0:1 1:1 8:1 9:1".
  /// The zero polynomial prints as "0".
  std::string toString() const;
  static IntPoly parse(std::string_view text);

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);

 private:
  void normalize();
  std::vector<mpz_class> coeffs_;
};

IntPoly multiply(const IntPoly& p, const IntPoly& q);

/// Substitution x -> x^n.
IntPoly composePower(const IntPoly& p, std::uint64_t n);

/// Quotient of exact long division by a divisor with leading coefficient +-1,
/// or nullopt when the remainder is nonzero.
std::optional<IntPoly> divideExact(const IntPoly& p, const IntPoly& q);

}  // namespace cyclotile
