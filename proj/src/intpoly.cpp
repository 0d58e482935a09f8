#include "cyclotile/intpoly.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cyclotile {

namespace {

const mpz_class& zeroCoeff() {
  static const mpz_class zero = 0;
  return zero;
}

}  // namespace

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly(std::vector<mpz_class>{c}); }

IntPoly IntPoly::monomial(std::uint64_t exponent, const mpz_class& c) {
  std::vector<mpz_class> v(exponent + 1);
  v[exponent] = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::fromTerms(const std::vector<Term>& terms) {
  std::uint64_t top = 0;
  for (const auto& t : terms) top = std::max(top, t.exponent);
  std::vector<mpz_class> v(terms.empty() ? 0 : top + 1);
  for (const auto& t : terms) v[t.exponent] += t.coeff;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::xPowerMinusOne(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("xPowerMinusOne: n must be positive");
  std::vector<mpz_class> v(n + 1);
  v[0] = -1;
  v[n] = 1;
  return IntPoly(std::move(v));
}

void IntPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const mpz_class& IntPoly::coeff(std::size_t exponent) const noexcept {
  return exponent < coeffs_.size() ? coeffs_[exponent] : zeroCoeff();
}

const mpz_class& IntPoly::leading() const {
  if (isZero()) throw std::invalid_argument("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

std::vector<Term> IntPoly::terms() const {
  std::vector<Term> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) out.push_back({i, coeffs_[i]});
  }
  return out;
}

std::size_t IntPoly::termCount() const noexcept {
  std::size_t n = 0;
  for (const auto& c : coeffs_) n += (c != 0);
  return n;
}

mpz_class IntPoly::valueAtOne() const {
  mpz_class s = 0;
  for (const auto& c : coeffs_) s += c;
  return s;
}

std::string IntPoly::toString() const {
  if (isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << ' ';
    os << i << ':' << coeffs_[i].get_str();
    first = false;
  }
  return os.str();
}

IntPoly IntPoly::parse(std::string_view text) {
  std::vector<Term> terms;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) {
      if (tok == "0" && terms.empty()) continue;
      throw std::invalid_argument("malformed polynomial term '" + tok + "'");
    }
    std::uint64_t e = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + colon, e);
    if (ec != std::errc() || ptr != tok.data() + colon || colon == 0) {
      throw std::invalid_argument("malformed exponent in '" + tok + "'");
    }
    mpz_class c;
    if (c.set_str(tok.substr(colon + 1), 10) != 0) {
      throw std::invalid_argument("malformed coefficient in '" + tok + "'");
    }
    if (!terms.empty() && terms.back().exponent >= e) {
      throw std::invalid_argument("polynomial terms must be in ascending exponent order");
    }
    terms.push_back({e, c});
  }
  return fromTerms(terms);
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
  return IntPoly(std::move(v));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.isZero() || b.isZero()) return {};
  // Iterate the sparser operand's nonzero terms; cyclotomics of non-squarefree
  // index and masks are mostly zeros.
  const IntPoly& sparse = a.termCount() <= b.termCount() ? a : b;
  const IntPoly& dense = &sparse == &a ? b : a;
  std::vector<mpz_class> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < sparse.coeffs_.size(); ++i) {
    const mpz_class& s = sparse.coeffs_[i];
    if (s == 0) continue;
    for (std::size_t j = 0; j < dense.coeffs_.size(); ++j) {
      const mpz_class& d = dense.coeffs_[j];
      if (d == 0) continue;
      mpz_addmul(v[i + j].get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
    }
  }
  return IntPoly(std::move(v));
}

IntPoly multiply(const IntPoly& p, const IntPoly& q) { return p * q; }

IntPoly composePower(const IntPoly& p, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("composePower: n must be positive");
  if (p.isZero() || n == 1) return p;
  std::vector<mpz_class> v(p.degree() * n + 1);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) v[i * n] = p.coeffs()[i];
  return IntPoly(std::move(v));
}

std::optional<IntPoly> divideExact(const IntPoly& p, const IntPoly& q) {
  if (q.isZero()) throw std::invalid_argument("divideExact: zero divisor");
  const mpz_class& lead = q.leading();
  if (lead != 1 && lead != -1) {
    throw std::invalid_argument("divideExact: divisor must have leading coefficient +-1");
  }
  if (p.isZero()) return IntPoly{};
  const std::size_t dq = q.degree();
  const std::size_t dp = p.degree();
  if (dp < dq) return std::nullopt;

  std::vector<std::pair<std::size_t, mpz_class>> qTerms;
  for (std::size_t j = 0; j < dq; ++j) {
    if (q.coeffs()[j] != 0) qTerms.emplace_back(j, q.coeffs()[j]);
  }
  std::vector<mpz_class> rem = p.coeffs();
  std::vector<mpz_class> quot(dp - dq + 1);
  const bool negLead = lead < 0;
  for (std::size_t i = dp + 1; i-- > dq;) {
    if (rem[i] == 0) continue;
    mpz_class c = negLead ? mpz_class(-rem[i]) : rem[i];
    const std::size_t shift = i - dq;
    for (const auto& [j, qc] : qTerms) {
      mpz_submul(rem[shift + j].get_mpz_t(), c.get_mpz_t(), qc.get_mpz_t());
    }
    rem[i] = 0;
    quot[shift] = std::move(c);
  }
  for (std::size_t i = 0; i < dq; ++i) {
    if (rem[i] != 0) return std::nullopt;
  }
  return IntPoly(std::move(quot));
}

}  // namespace cyclotile
