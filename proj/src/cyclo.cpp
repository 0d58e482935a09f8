#include "cyclotile/cyclo.hpp"

#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cyclotile {

CycIndex::CycIndex(std::uint64_t n) : value_(n) {
  if (n < 2) throw std::invalid_argument("cyclotomic index must be >= 2, got " + std::to_string(n));
  factors_ = factorize(n);
  phi_ = eulerPhi(factors_);
}

std::uint64_t CycIndex::radical() const noexcept {
  std::uint64_t r = 1;
  for (const auto& pp : factors_) r *= pp.prime;
  return r;
}

// ---------------------------------------------------------------------------
// Cache

CycCache& CycCache::global() {
  static CycCache cache;
  return cache;
}

bool CycCache::contains(std::uint64_t n) const {
  std::shared_lock lock(mutex_);
  return entries_.count(n) != 0;
}

std::size_t CycCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void CycCache::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

std::shared_ptr<const IntPoly> CycCache::get(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("cyclotomic index must be positive");
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(n); it != entries_.end()) return it->second;
  }
  auto poly = std::make_shared<const IntPoly>(compute(n));
  std::unique_lock lock(mutex_);
  return entries_.try_emplace(n, std::move(poly)).first->second;
}

IntPoly CycCache::compute(std::uint64_t n) {
  if (n == 1) return IntPoly{-1, 1};
  const std::uint64_t rad = radical(n);
  if (rad != n) return composePower(*get(rad), n / rad);
  // x^n - 1 = prod_{d | n} Φ_d(x)
  IntPoly acc = IntPoly::xPowerMinusOne(n);
  for (auto d : divisors(n)) {
    if (d == n) break;
    auto q = divideExact(acc, *get(d));
    if (!q) throw std::logic_error("cyclotomic recursion: inexact division");
    acc = std::move(*q);
  }
  return acc;
}

bool CycCache::verifyEntry(std::uint64_t n, const IntPoly& candidate) {
  if (n == 0 || candidate.isZero()) return false;
  if (n == 1) return candidate == IntPoly{-1, 1};
  if (candidate.degree() != eulerPhi(n) || candidate.leading() != 1) return false;
  if (!divideExact(IntPoly::xPowerMinusOne(n), candidate)) return false;
  // A monic divisor of x^n - 1 is a product of distinct Φ_d with d | n; it is
  // Φ_n alone iff no proper divisor's cyclotomic divides it.
  if (candidate.valueAtOne() == 0) return false;
  const auto terms = candidate.terms();
  for (auto d : divisors(n)) {
    if (d < 2 || d == n) continue;
    if (cycDivides(CycIndex(d), terms, candidate.degree())) return false;
  }
  return true;
}

CycCache::LoadReport CycCache::load(const std::filesystem::path& path) {
  LoadReport report;
  std::ifstream in(path);
  if (!in) return report;
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    report.headerOk = false;
    return report;
  }
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::istringstream is(line);
    std::uint64_t n = 0;
    if (!(is >> n) || n == 0) continue;
    std::string rest;
    std::getline(is, rest);
    bool ok = false;
    IntPoly poly;
    try {
      poly = IntPoly::parse(rest);
      ok = verifyEntry(n, poly);
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok) {
      poly = compute(n);
      ++report.recomputed;
    } else {
      ++report.accepted;
    }
    std::unique_lock lock(mutex_);
    entries_.insert_or_assign(n, std::make_shared<const IntPoly>(std::move(poly)));
  }
  return report;
}

void CycCache::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write cache file " + path.string());
  out << kHeader << '\n';
  std::shared_lock lock(mutex_);
  for (const auto& [n, poly] : entries_) out << n << ' ' << poly->toString() << '\n';
}

IntPoly cyclotomic(std::uint64_t n) { return *CycCache::global().get(n); }

std::uint64_t phiAtOne(const CycIndex& n) {
  return n.isPrimePower() ? n.factorization().front().prime : 1;
}

IndexSet expandIndices(const CycIndex& d, std::uint64_t base) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  IndexSet current{d.value()};
  for (const auto& [p, e] : factorize(base)) {
    for (unsigned k = 0; k < e; ++k) {
      IndexSet next;
      for (auto s : current) {
        // Φ_s(x^p) = Φ_sp(x) if p | s, else Φ_s(x) Φ_sp(x)
        if (s % p != 0) next.insert(s);
        next.insert(checkedMul(s, p));
      }
      current = std::move(next);
    }
  }
  return current;
}

IndexSet expandIndicesPower(std::uint64_t d, std::uint64_t base, unsigned j) {
  IndexSet current{d};
  for (unsigned k = 0; k < j; ++k) {
    IndexSet next;
    for (auto s : current) next.merge(expandIndices(CycIndex(s), base));
    current = std::move(next);
  }
  return current;
}

// ---------------------------------------------------------------------------
// Divisibility by Φ_s as vanishing at a primitive s-th root of unity.

namespace {

using Sparse = std::map<std::uint64_t, mpz_class>;

void accumulate(Sparse& into, std::uint64_t e, const mpz_class& c) {
  auto [it, inserted] = into.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) into.erase(it);
  }
}

// Whether sum a_e ζ^e = 0 for a primitive r-th root ζ, r squarefree with the
// given primes, exponents already reduced mod r. Write ζ = ζ_p ζ_{r/p}; the
// powers 1, ζ_p, ..., ζ_p^{p-2} are a basis over Q(ζ_{r/p}) and sum ζ_p^u = 0,
// so the sum vanishes iff the p residue-class sums G_u agree at ζ_{r/p}.
bool vanishes(const Sparse& terms, const std::uint64_t* primes, std::size_t nPrimes, std::uint64_t r) {
  if (terms.empty()) return true;
  if (nPrimes == 0) {
    mpz_class s = 0;
    for (const auto& [e, c] : terms) s += c;
    return s == 0;
  }
  const std::uint64_t p = primes[0];
  const std::uint64_t rest = r / p;
  std::map<std::uint64_t, Sparse> classes;
  for (const auto& [e, c] : terms) accumulate(classes[e % p], e % rest, c);
  std::erase_if(classes, [](const auto& kv) { return kv.second.empty(); });

  if (classes.size() < p) {
    // Some G_u is identically zero, so every G_u must vanish.
    for (const auto& [u, g] : classes) {
      if (!vanishes(g, primes + 1, nPrimes - 1, rest)) return false;
    }
    return true;
  }
  const Sparse& ref = classes.rbegin()->second;
  for (const auto& [u, g] : classes) {
    if (&g == &ref) continue;
    Sparse diff = g;
    for (const auto& [e, c] : ref) accumulate(diff, e, -c);
    if (!vanishes(diff, primes + 1, nPrimes - 1, rest)) return false;
  }
  return true;
}

}  // namespace

bool cycDivides(const CycIndex& s, const std::vector<Term>& terms, std::size_t degree) {
  if (terms.empty()) throw std::invalid_argument("cycDivides: zero polynomial");
  if (s.phi() > degree) return false;
  // s = m * r with r = rad(s): Φ_s(x) = Φ_r(x^m) and the powers 1, ζ_s, ...,
  // ζ_s^{m-1} are a basis of Q(ζ_s) over Q(ζ_r), so P(ζ_s) = 0 iff each
  // residue part P_c(y) (exponents ≡ c mod m) vanishes at y = ζ_r.
  const std::uint64_t r = s.radical();
  const std::uint64_t m = s.value() / r;
  std::vector<std::uint64_t> primes;
  for (const auto& pp : s.factorization()) primes.push_back(pp.prime);

  std::map<std::uint64_t, Sparse> parts;
  for (const auto& t : terms) accumulate(parts[t.exponent % m], (t.exponent / m) % r, t.coeff);
  for (const auto& [c, part] : parts) {
    if (!vanishes(part, primes.data(), primes.size(), r)) return false;
  }
  return true;
}

DivisibilityMemo::DivisibilityMemo(const IntPoly& p) : terms_(p.terms()), degree_(p.degree()) {
  if (p.isZero()) throw std::invalid_argument("DivisibilityMemo: zero polynomial");
}

bool DivisibilityMemo::divides(std::uint64_t s) {
  if (s == 0) throw std::invalid_argument("cyclotomic index must be positive");
  if (s == 1) {
    mpz_class atOne = 0;
    for (const auto& t : terms_) atOne += t.coeff;
    return atOne == 0;
  }
  if (auto it = known_.find(s); it != known_.end()) return it->second;
  ++tests_;
  const bool r = cycDivides(CycIndex(s), terms_, degree_);
  known_.emplace(s, r);
  return r;
}

bool cycDivides(const CycIndex& s, const IntPoly& p) {
  if (p.isZero()) throw std::invalid_argument("cycDivides: zero polynomial");
  if (s.phi() > p.degree()) return false;
  return cycDivides(s, p.terms(), p.degree());
}

}  // namespace cyclotile
