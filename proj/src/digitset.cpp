#include "cyclotile/digitset.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "cyclotile/errors.hpp"

namespace cyclotile {

DigitSet::DigitSet(const std::vector<std::int64_t>& digits) {
  if (digits.empty()) throw InvalidDigitSet("digit set must be nonempty");
  digits_.reserve(digits.size());
  for (auto d : digits) {
    if (d < 0) throw InvalidDigitSet("negative digit " + std::to_string(d));
    digits_.push_back(static_cast<std::uint64_t>(d));
  }
  std::sort(digits_.begin(), digits_.end());
  if (auto it = std::adjacent_find(digits_.begin(), digits_.end()); it != digits_.end()) {
    throw InvalidDigitSet("duplicate digit " + std::to_string(*it));
  }
}

DigitSet DigitSet::fromUnsigned(std::vector<std::uint64_t> digits) {
  if (digits.empty()) throw InvalidDigitSet("digit set must be nonempty");
  DigitSet d;
  d.digits_ = std::move(digits);
  std::sort(d.digits_.begin(), d.digits_.end());
  if (auto it = std::adjacent_find(d.digits_.begin(), d.digits_.end()); it != d.digits_.end()) {
    throw InvalidDigitSet("duplicate digit " + std::to_string(*it));
  }
  return d;
}

DigitSet DigitSet::parse(std::string_view text) {
  std::vector<std::int64_t> out;
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw InvalidDigitSet("cannot parse digit '" + tok + "'");
    }
    out.push_back(v);
  }
  return DigitSet(out);
}

bool DigitSet::contains(std::uint64_t d) const {
  return std::binary_search(digits_.begin(), digits_.end(), d);
}

std::uint64_t DigitSet::gcd() const {
  std::uint64_t g = 0;
  for (auto d : digits_) g = std::gcd(g, d);
  return g;
}

std::string DigitSet::toString() const {
  std::string out;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(digits_[i]);
  }
  return out;
}

IntPoly maskPolynomial(const DigitSet& digits) {
  std::vector<mpz_class> v(digits.max() + 1);
  for (auto d : digits) v[d] = 1;
  return IntPoly(std::move(v));
}

std::optional<DigitSet> digitSetFromMask(const IntPoly& mask) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < mask.coeffs().size(); ++i) {
    const auto& c = mask.coeffs()[i];
    if (c == 0) continue;
    if (c != 1) return std::nullopt;
    out.push_back(i);
  }
  if (out.empty()) return std::nullopt;
  return DigitSet::fromUnsigned(std::move(out));
}

}  // namespace cyclotile
