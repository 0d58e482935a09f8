#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cyclotile/cyclo.hpp"
#include "cyclotile/digitset.hpp"

namespace cyclotile {

using PrimeExponents = std::map<std::uint64_t, std::vector<unsigned>>;

struct GeneralSpectrum {
  IndexSet indices;
  std::uint64_t cap = 0;
  /// cap >= 2 deg(P)^2: beyond it φ(s) > deg(P), so nothing is missing.
  bool complete = false;
};

struct SpectrumReport {
  IndexSet primePowerSpectrum;
  GeneralSpectrum generalSpectrum;
  /// Exponents a with p^a in the prime-power spectrum, for each prime p | b.
  PrimeExponents perPrimeExponents;
};

/// Prime powers q with Φ_q | P. Complete: every q with φ(q) <= deg P is tested.
IndexSet primePowerSpectrum(const IntPoly& p);

/// All 2 <= s <= cap with Φ_s | P.
GeneralSpectrum generalSpectrum(const IntPoly& p, std::uint64_t cap);

/// The smallest cap certifying completeness, 2 deg(P)^2 (at least 2).
std::uint64_t completeSpectrumCap(const IntPoly& p);

SpectrumReport spectrumReport(std::uint64_t base, const IntPoly& p, std::uint64_t generalCap);

/// #D equals the product of Φ_s(1) over the prime-power spectrum.
bool checkT1(const DigitSet& digits);

/// Every product of >= 2 spectrum prime powers with pairwise distinct primes is
/// itself in the spectrum. Two powers of the same prime never form a subset.
bool checkT2(const DigitSet& digits);

inline constexpr const char* kT2Convention = "distinct-prime-bases";

struct Theorem42Result {
  enum class Clause { None, ForeignPrime, Count, Residue };

  bool passed = false;
  PrimeExponents exponents;
  Clause violated = Clause::None;
  std::string detail;
};

const char* clauseName(Theorem42Result::Clause c);

/// Prime-power spectrum structure forced on tile digit sets of b = prod p_j^{α_j}:
/// only primes of b occur, each p_j exactly α_j times, with exponents forming a
/// complete residue system mod α_j. Throws WrongCardinality unless #D = b.
Theorem42Result checkTheorem42(std::uint64_t base, const DigitSet& digits);

}  // namespace cyclotile
