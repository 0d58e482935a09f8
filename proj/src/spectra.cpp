#include "cyclotile/spectra.hpp"

#include <algorithm>
#include <sstream>

#include "cyclotile/errors.hpp"

namespace cyclotile {

IndexSet primePowerSpectrum(const IntPoly& p) {
  if (p.isZero()) throw std::invalid_argument("primePowerSpectrum: zero polynomial");
  IndexSet out;
  const std::size_t deg = p.degree();
  if (deg == 0) return out;
  const auto terms = p.terms();
  // φ(p^a) >= p^a / 2, so q <= 2 deg covers every candidate.
  const std::uint64_t bound = 2 * static_cast<std::uint64_t>(deg);
  for (auto prime : primesUpTo(bound)) {
    for (std::uint64_t q = prime; q <= bound; q *= prime) {
      CycIndex idx(q);
      if (idx.phi() > deg) break;
      if (cycDivides(idx, terms, deg)) out.insert(q);
    }
  }
  return out;
}

std::uint64_t completeSpectrumCap(const IntPoly& p) {
  const std::uint64_t deg = p.isZero() ? 0 : p.degree();
  return std::max<std::uint64_t>(2, 2 * deg * deg);
}

GeneralSpectrum generalSpectrum(const IntPoly& p, std::uint64_t cap) {
  if (p.isZero()) throw std::invalid_argument("generalSpectrum: zero polynomial");
  if (cap < 2) throw std::invalid_argument("generalSpectrum: cap must be >= 2");
  GeneralSpectrum out;
  out.cap = cap;
  out.complete = cap >= completeSpectrumCap(p);
  const std::size_t deg = p.degree();
  if (deg == 0) return out;
  const auto terms = p.terms();
  for (std::uint64_t s = 2; s <= cap; ++s) {
    CycIndex idx(s);
    if (idx.phi() > deg) continue;
    if (cycDivides(idx, terms, deg)) out.indices.insert(s);
  }
  return out;
}

namespace {

PrimeExponents exponentsForBase(std::uint64_t base, const IndexSet& spectrum) {
  PrimeExponents out;
  for (const auto& pp : factorize(base)) out[pp.prime];
  for (auto q : spectrum) {
    auto pp = asPrimePower(q);
    if (auto it = out.find(pp->prime); it != out.end()) it->second.push_back(pp->exponent);
  }
  for (auto& [prime, exps] : out) std::sort(exps.begin(), exps.end());
  return out;
}

}  // namespace

SpectrumReport spectrumReport(std::uint64_t base, const IntPoly& p, std::uint64_t generalCap) {
  SpectrumReport r;
  r.primePowerSpectrum = primePowerSpectrum(p);
  r.generalSpectrum = generalSpectrum(p, generalCap);
  r.perPrimeExponents = exponentsForBase(base, r.primePowerSpectrum);
  return r;
}

bool checkT1(const DigitSet& digits) {
  const auto spectrum = primePowerSpectrum(maskPolynomial(digits));
  mpz_class product = 1;
  for (auto q : spectrum) product *= static_cast<unsigned long>(phiAtOne(CycIndex(q)));
  return product == static_cast<unsigned long>(digits.size());
}

bool checkT2(const DigitSet& digits) {
  const IntPoly mask = maskPolynomial(digits);
  const auto spectrum = primePowerSpectrum(mask);
  if (mask.degree() == 0) return true;
  const auto terms = mask.terms();

  // Group spectrum elements by prime; a qualifying subset picks at most one
  // element per prime.
  std::vector<std::vector<std::uint64_t>> groups;
  std::map<std::uint64_t, std::size_t> slot;
  for (auto q : spectrum) {
    auto p = asPrimePower(q)->prime;
    auto [it, fresh] = slot.try_emplace(p, groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(q);
  }

  bool ok = true;
  auto visit = [&](auto&& self, std::size_t g, std::uint64_t product, int chosen) -> void {
    if (!ok) return;
    if (g == groups.size()) {
      if (chosen >= 2) {
        CycIndex idx(product);
        if (!cycDivides(idx, terms, mask.degree())) ok = false;
      }
      return;
    }
    self(self, g + 1, product, chosen);
    for (auto q : groups[g]) self(self, g + 1, checkedMul(product, q), chosen + 1);
  };
  visit(visit, 0, 1, 0);
  return ok;
}

const char* clauseName(Theorem42Result::Clause c) {
  switch (c) {
    case Theorem42Result::Clause::None: return "none";
    case Theorem42Result::Clause::ForeignPrime: return "foreign-prime";
    case Theorem42Result::Clause::Count: return "count";
    case Theorem42Result::Clause::Residue: return "residue";
  }
  return "unknown";
}

Theorem42Result checkTheorem42(std::uint64_t base, const DigitSet& digits) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  if (digits.size() != base) {
    throw WrongCardinality("structure check needs #D = b (" + std::to_string(digits.size()) +
                           " != " + std::to_string(base) + ")");
  }
  const auto spectrum = primePowerSpectrum(maskPolynomial(digits));
  Theorem42Result r;
  r.exponents = exponentsForBase(base, spectrum);

  for (auto q : spectrum) {
    if (base % asPrimePower(q)->prime != 0) {
      r.violated = Theorem42Result::Clause::ForeignPrime;
      r.detail = "spectrum element " + std::to_string(q) + " has a prime not dividing " +
                 std::to_string(base);
      return r;
    }
  }
  for (const auto& [prime, alpha] : factorize(base)) {
    const auto& exps = r.exponents[prime];
    if (exps.size() != alpha) {
      r.violated = Theorem42Result::Clause::Count;
      r.detail = "prime " + std::to_string(prime) + " has " + std::to_string(exps.size()) +
                 " spectrum powers, expected " + std::to_string(alpha);
      return r;
    }
    std::vector<bool> seen(alpha, false);
    for (auto a : exps) seen[a % alpha] = true;
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      std::ostringstream os;
      os << "exponents of " << prime << " {";
      for (std::size_t i = 0; i < exps.size(); ++i) os << (i ? "," : "") << exps[i];
      os << "} are not a complete residue system mod " << alpha;
      r.violated = Theorem42Result::Clause::Residue;
      r.detail = os.str();
      return r;
    }
  }
  r.passed = true;
  return r;
}

}  // namespace cyclotile
