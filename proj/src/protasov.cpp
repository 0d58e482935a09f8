#include "cyclotile/protasov.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "cyclotile/errors.hpp"

namespace cyclotile {

namespace {

std::uint64_t powerOf(std::uint64_t base, unsigned k) { return checkedPow(base, k); }

}  // namespace

DigitString::DigitString(std::uint64_t value, unsigned level, std::uint64_t base)
    : value_(value), level_(level), base_(base) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  if (level < 1) throw std::invalid_argument("vertex level must be >= 1");
  if (value % base == 0) throw std::invalid_argument("last digit of a vertex must be nonzero");
  if (value >= powerOf(base, level)) throw std::invalid_argument("vertex value exceeds its level");
}

DigitString DigitString::parse(std::string_view text, std::uint64_t base) {
  std::vector<std::uint64_t> ds;
  if (base > 10) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto dot = text.find('.', start);
      auto part = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
      if (part.empty()) throw std::invalid_argument("empty digit in vertex string");
      std::uint64_t v = 0;
      for (char c : part) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad digit in vertex string");
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
      }
      ds.push_back(v);
      if (dot == std::string_view::npos) break;
      start = dot + 1;
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad digit in vertex string");
      ds.push_back(static_cast<std::uint64_t>(c - '0'));
    }
  }
  if (ds.empty()) throw std::invalid_argument("empty vertex string");
  std::uint64_t m = 0;
  for (auto d : ds) {
    if (d >= base) throw std::invalid_argument("digit out of range for base");
    m = checkedMul(m, base) + d;
  }
  return DigitString(m, static_cast<unsigned>(ds.size()), base);
}

std::vector<std::uint64_t> DigitString::digits() const {
  std::vector<std::uint64_t> out(level_);
  std::uint64_t m = value_;
  for (unsigned i = level_; i-- > 0;) {
    out[i] = m % base_;
    m /= base_;
  }
  return out;
}

std::vector<DigitString> DigitString::children() const {
  std::vector<DigitString> out;
  const std::uint64_t bk = powerOf(base_, level_);
  for (std::uint64_t l = 0; l < base_; ++l) out.emplace_back(l * bk + value_, level_ + 1, base_);
  return out;
}

std::optional<DigitString> DigitString::parent() const {
  if (level_ == 1) return std::nullopt;
  return DigitString(value_ % powerOf(base_, level_ - 1), level_ - 1, base_);
}

std::string DigitString::toString() const {
  std::string out;
  bool first = true;
  for (auto d : digits()) {
    if (base_ > 10 && !first) out += '.';
    out += std::to_string(d);
    first = false;
  }
  return out;
}

std::uint64_t tauIndex(const DigitString& j) {
  const std::uint64_t bk = powerOf(j.base(), j.level());
  return bk / std::gcd(j.value(), bk);
}

unsigned protasovDefaultDepth(std::uint64_t base, std::uint64_t degree) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  const auto f = factorize(base);
  for (unsigned k = 1;; ++k) {
    std::uint64_t least = UINT64_MAX;
    for (const auto& pp : f) {
      const unsigned e = pp.exponent * (k - 1) + 1;
      least = std::min(least, eulerPhi(checkedPow(pp.prime, e)));
    }
    if (least > degree) return k;
  }
}

const char* statusName(ProtasovResult::Status s) {
  switch (s) {
    case ProtasovResult::Status::Blocking: return "blocking";
    case ProtasovResult::Status::Absent: return "absent";
    case ProtasovResult::Status::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

// All level-k vertices whose τ equals d: m = (b^k / d) c with gcd(c, d) = 1.
std::vector<DigitString> tauFiber(std::uint64_t d, unsigned level, std::uint64_t base) {
  std::vector<DigitString> out;
  const std::uint64_t bk = powerOf(base, level);
  const std::uint64_t step = bk / d;
  for (std::uint64_t c = 1; c < d; ++c) {
    if (std::gcd(c, d) != 1) continue;
    const std::uint64_t m = step * c;
    if (m % base == 0) continue;
    out.emplace_back(m, level, base);
  }
  return out;
}

}  // namespace

ProtasovResult protasovDecide(std::uint64_t base, const DigitSet& digits, unsigned depthBound) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  if (digits.size() != base)
    throw WrongCardinality("digit set has " + std::to_string(digits.size()) + " elements, base is " +
                           std::to_string(base));
  DivisibilityMemo memo(maskPolynomial(digits));
  const std::uint64_t deg = memo.degree();
  ProtasovResult out;
  out.depthBound = depthBound == 0 ? protasovDefaultDepth(base, deg) : depthBound;

  std::set<DigitString> found;
  std::function<bool(const DigitString&)> visit = [&](const DigitString& v) {
    ++out.verticesVisited;
    const std::uint64_t tau = tauIndex(v);
    if (memo.divides(tau)) {
      found.insert(v);
      return true;
    }
    if (eulerPhi(tau) > deg) {
      out.status = ProtasovResult::Status::Absent;
      out.witness = v;
      return false;
    }
    if (v.level() >= out.depthBound) {
      out.status = ProtasovResult::Status::Inconclusive;
      out.witness = v;
      return false;
    }
    for (const auto& c : v.children())
      if (!visit(c)) return false;
    return true;
  };

  for (std::uint64_t m = 1; m < base; ++m)
    if (!visit(DigitString(m, 1, base))) return out;

  // Close under τ-fibers, then confirm the closure is still an antichain.
  std::set<DigitString> closed;
  for (const auto& v : found) {
    const auto tau = tauIndex(v);
    out.tauImage.insert(tau);
    for (auto& w : tauFiber(tau, v.level(), base)) closed.insert(w);
  }
  for (const auto& v : closed) {
    for (auto a = v.parent(); a; a = a->parent())
      if (closed.count(*a)) throw std::logic_error("symmetric closure is not an antichain at " + v.toString());
  }
  out.status = ProtasovResult::Status::Blocking;
  out.blocking.assign(closed.begin(), closed.end());
  return out;
}

KenyonResult kenyonBoundedCheck(std::uint64_t base, const DigitSet& digits, std::uint64_t mMax) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  if (mMax < 1) throw std::invalid_argument("mMax must be >= 1");
  DivisibilityMemo memo(maskPolynomial(digits));
  const std::uint64_t deg = memo.degree();
  KenyonResult out;
  for (std::uint64_t m = 1; m <= mMax; ++m) {
    bool ok = false;
    std::uint64_t bk = 1;
    for (unsigned k = 1;; ++k) {
      bk = checkedMul(bk, base);
      const std::uint64_t idx = bk / std::gcd(m, bk);
      if (idx == 1) continue;  // e^{2πi m/b^k} = 1 and P_D(1) != 0
      if (memo.divides(idx)) {
        out.k[m] = k;
        ok = true;
        break;
      }
      // Later indices are multiples of this one.
      if (eulerPhi(idx) > deg) break;
    }
    if (!ok) {
      out.failingM = m;
      return out;
    }
  }
  out.passed = true;
  return out;
}

}  // namespace cyclotile
