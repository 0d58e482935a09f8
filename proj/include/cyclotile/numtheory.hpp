#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace cyclotile {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

/// Prime factorization by trial division, primes ascending. factorize(1) is empty.
Factorization factorize(std::uint64_t n);

std::uint64_t eulerPhi(std::uint64_t n);
std::uint64_t eulerPhi(const Factorization& f);

/// Product of the distinct primes dividing n.
std::uint64_t radical(std::uint64_t n);

/// All positive divisors of n in ascending order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Returns (p, a) when n = p^a with a >= 1.
std::optional<PrimePower> asPrimePower(std::uint64_t n);

std::vector<std::uint64_t> primesUpTo(std::uint64_t n);

/// Möbius function.
int moebius(std::uint64_t n);

/// a * b, throwing std::overflow_error on wrap-around.
std::uint64_t checkedMul(std::uint64_t a, std::uint64_t b);
std::uint64_t checkedPow(std::uint64_t base, unsigned exp);

}  // namespace cyclotile
