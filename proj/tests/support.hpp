#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "cyclotile/digitset.hpp"
#include "cyclotile/intpoly.hpp"
#include "cyclotile/numtheory.hpp"
#include "cyclotile/productform.hpp"

namespace cyclotile::gen {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

// Φ_n = ∏_{d | n} (x^d - 1)^{μ(n/d)}: multiply the positive factors, then
// divide out the negative ones. Shares no code path with cyclotomic().
inline IntPoly mobiusCyclotomic(std::uint64_t n) {
  IntPoly num = IntPoly::constant(1), den = IntPoly::constant(1);
  for (auto d : divisors(n)) {
    const int mu = moebius(n / d);
    if (mu == 1) num = multiply(num, IntPoly::xPowerMinusOne(d));
    if (mu == -1) den = multiply(den, IntPoly::xPowerMinusOne(d));
  }
  return *divideExact(num, den);
}

inline IntPoly randomPoly(Rng& rng, std::size_t degree, long range) {
  std::vector<mpz_class> c(degree + 1);
  for (auto& x : c) x = static_cast<long>(uniform(rng, 0, 2 * range)) - range;
  if (c.back() == 0) c.back() = 1;
  return IntPoly(std::move(c));
}

inline IntPoly randomMonic(Rng& rng, std::size_t degree, long range) {
  auto p = randomPoly(rng, degree, range);
  auto c = p.coeffs();
  c.back() = uniform(rng, 0, 1) ? 1 : -1;
  return IntPoly(std::move(c));
}

// b digits in [0, maxDigit] containing 0 with gcd 1.
inline DigitSet randomDigitSet(Rng& rng, std::uint64_t b, std::uint64_t maxDigit) {
  for (;;) {
    std::set<std::uint64_t> s{0};
    while (s.size() < b) s.insert(uniform(rng, 1, maxDigit));
    DigitSet d = DigitSet::fromUnsigned({s.begin(), s.end()});
    if (d.gcd() == 1) return d;
  }
}

// One digit per residue class mod b, 0 kept as the class-0 digit.
inline DigitSet randomCompleteResidues(Rng& rng, std::uint64_t b, std::uint64_t maxDigit) {
  for (;;) {
    std::vector<std::uint64_t> v{0};
    for (std::uint64_t r = 1; r < b; ++r) v.push_back(r + b * uniform(rng, 0, (maxDigit - r) / b));
    DigitSet d = DigitSet::fromUnsigned(v);
    if (d.gcd() == 1) return d;
  }
}

// D / gcd(D). Scaling by the gcd maps T(b, D/g) onto T(b, D), so tiling is
// unaffected; the deciders only accept the normalized set.
inline DigitSet normalized(const DigitSet& d) {
  const auto g = d.gcd();
  std::vector<std::uint64_t> v;
  for (auto x : d.digits()) v.push_back(x / g);
  return DigitSet::fromUnsigned(v);
}

// Mixed-radix progressions E_i = c_i {0, ..., f_i - 1}, with random
// multiples of b added to nonzero elements and nondecreasing exponents in
// [0, maxExponent].
inline Decomposition randomDecomposition(Rng& rng, std::uint64_t b, unsigned maxExponent, std::uint64_t maxShift) {
  std::vector<std::uint64_t> primes;
  for (const auto& pp : factorize(b))
    for (unsigned i = 0; i < pp.exponent; ++i) primes.push_back(pp.prime);
  std::shuffle(primes.begin(), primes.end(), rng);
  std::vector<std::uint64_t> radices;
  for (auto p : primes) {
    if (!radices.empty() && uniform(rng, 0, 2) == 0) radices.back() *= p;
    else radices.push_back(p);
  }
  Decomposition dec;
  dec.base = b;
  std::uint64_t c = 1;
  for (auto f : radices) {
    Part part;
    for (std::uint64_t j = 0; j < f; ++j) part.push_back(j == 0 ? 0 : j * c + b * uniform(rng, 0, maxShift));
    dec.parts.push_back(part);
    c *= f;
  }
  for (std::size_t i = 1; i < dec.parts.size(); ++i) dec.exponents.push_back(uniform(rng, 0, maxExponent));
  std::sort(dec.exponents.begin(), dec.exponents.end());
  return dec;
}

// Picks one congruent representative per stage, growing the choice list
// stage by stage so each pick sees the digits produced so far.
inline ModuloChoices randomModuloChoices(Rng& rng, const Decomposition& dec) {
  ModuloChoices choices;
  for (std::size_t i = 0; i < dec.parts.size(); ++i) {
    ModuloChoices trial = choices;
    trial.representatives.resize(i + 1);
    const auto built = buildModuloProductForm(dec, choices);
    const auto& st = built.trace.stages[i];
    if (st.digits.size() > 1 && uniform(rng, 0, 3) != 0) {
      const std::uint64_t from = st.digits[uniform(rng, 1, st.digits.size() - 1)];
      const std::uint64_t to = from + st.modulus * uniform(rng, 1, 3);
      trial.representatives[i].emplace_back(from, to);
      try {
        buildModuloProductForm(dec, trial);
        choices = trial;
        continue;
      } catch (const std::exception&) {
      }
    }
    choices.representatives.resize(i + 1);
  }
  return choices;
}

}  // namespace cyclotile::gen
