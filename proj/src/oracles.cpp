#include "cyclotile/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "cyclotile/phitree.hpp"
#include "cyclotile/spectra.hpp"

namespace cyclotile {

// ---------------------------------------------------------------------------
// Interval unions

IntervalUnion::IntervalUnion(std::vector<Interval> intervals) {
  for (auto& iv : intervals) {
    iv.first.canonicalize();
    iv.second.canonicalize();
    if (iv.second < iv.first) throw std::invalid_argument("interval with right end below left end");
  }
  std::sort(intervals.begin(), intervals.end());
  for (auto& iv : intervals) {
    if (!intervals_.empty() && iv.first <= intervals_.back().second) {
      if (iv.second > intervals_.back().second) intervals_.back().second = iv.second;
    } else {
      intervals_.push_back(std::move(iv));
    }
  }
}

mpq_class IntervalUnion::measure() const {
  mpq_class m = 0;
  for (const auto& [l, r] : intervals_) m += r - l;
  return m;
}

std::string formatRational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string IntervalUnion::toText() const {
  std::string out;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (i) out += " ∪ ";
    out += "[" + formatRational(intervals_[i].first) + "," + formatRational(intervals_[i].second) + "]";
  }
  if (intervals_.empty()) out = "∅";
  return out + " measure " + formatRational(measure());
}

std::string IntervalUnion::serialize() const {
  std::string out;
  for (const auto& [l, r] : intervals_) {
    out += l.get_num().get_str() + "/" + l.get_den().get_str() + " " + r.get_num().get_str() + "/" +
           r.get_den().get_str() + "\n";
  }
  return out;
}

IntervalUnion IntervalUnion::parse(const std::string& text) {
  std::istringstream in(text);
  std::vector<Interval> ivs;
  std::string a, b;
  while (in >> a) {
    if (!(in >> b)) throw std::invalid_argument("interval line needs two endpoints");
    mpq_class l, r;
    if (l.set_str(a, 10) != 0 || r.set_str(b, 10) != 0) throw std::invalid_argument("bad rational endpoint");
    if (l.get_den() == 0 || r.get_den() == 0) throw std::invalid_argument("zero denominator");
    ivs.emplace_back(l, r);
  }
  return IntervalUnion(std::move(ivs));
}

std::string IntervalUnion::toSvg(unsigned width, unsigned height) const {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  if (!intervals_.empty()) {
    const mpq_class lo = intervals_.front().first, hi = intervals_.back().second;
    const mpq_class span = hi > lo ? mpq_class(hi - lo) : mpq_class(1);
    for (const auto& [l, r] : intervals_) {
      // Pixel positions only; the exact endpoints go in the title.
      const double x = mpq_class((l - lo) / span * width).get_d();
      const double w = std::max(0.5, mpq_class((r - l) / span * width).get_d());
      os << "  <rect x=\"" << x << "\" y=\"0\" width=\"" << w << "\" height=\"" << height
         << "\" fill=\"steelblue\"><title>[" << formatRational(l) << "," << formatRational(r)
         << "]</title></rect>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

namespace {

// D + bD + ... + b^{depth-1} D; refuses sizes beyond 5e7 elements.
std::set<std::uint64_t> expansionSums(std::uint64_t base, const DigitSet& digits, unsigned depth,
                                      std::optional<unsigned>* firstCollision = nullptr) {
  std::set<std::uint64_t> cur{0};
  std::uint64_t scale = 1;
  std::uint64_t expected = 1;
  for (unsigned k = 1; k <= depth; ++k) {
    expected = checkedMul(expected, digits.size());
    if (expected > 50'000'000) throw std::invalid_argument("expansion depth too large");
    std::set<std::uint64_t> next;
    for (auto v : cur)
      for (auto d : digits) next.insert(v + checkedMul(scale, d));
    scale = checkedMul(scale, base);
    cur = std::move(next);
    if (firstCollision && !*firstCollision && cur.size() < expected) *firstCollision = k;
  }
  return cur;
}

}  // namespace

IntervalUnion tileIntervals(std::uint64_t base, const DigitSet& digits, unsigned depth) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  const auto sums = expansionSums(base, digits, depth);
  // Common denominator (b - 1) b^depth keeps endpoints integral while merging.
  const mpz_class den = mpz_class(static_cast<unsigned long>(base - 1)) *
                        [&] {
                          mpz_class p;
                          mpz_ui_pow_ui(p.get_mpz_t(), base, depth);
                          return p;
                        }();
  const mpz_class width = static_cast<unsigned long>(digits.max());
  std::vector<std::pair<mpz_class, mpz_class>> merged;
  for (auto v : sums) {
    mpz_class l = mpz_class(static_cast<unsigned long>(v)) * static_cast<unsigned long>(base - 1);
    mpz_class r = l + width;
    if (!merged.empty() && l <= merged.back().second) {
      if (r > merged.back().second) merged.back().second = r;
    } else {
      merged.emplace_back(l, r);
    }
  }
  std::vector<IntervalUnion::Interval> ivs;
  for (auto& [l, r] : merged) ivs.emplace_back(mpq_class(l, den), mpq_class(r, den));
  return IntervalUnion(std::move(ivs));
}

std::optional<unsigned> directSumDiagnostic(std::uint64_t base, const DigitSet& digits, unsigned depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  std::optional<unsigned> first;
  expansionSums(base, digits, depth, &first);
  return first;
}

// ---------------------------------------------------------------------------
// Integer tiling

bool verifyResidueTiling(const DigitSet& a, const ResidueTiling& t) {
  if (t.period == 0 || t.complement.size() * a.size() != t.period) return false;
  std::vector<char> hit(t.period, 0);
  for (auto x : a)
    for (auto l : t.complement) {
      auto r = (x + l) % t.period;
      if (hit[r]) return false;
      hit[r] = 1;
    }
  return true;
}

namespace {

std::uint64_t lcmOf(const IndexSet& s) {
  std::uint64_t l = 1;
  for (auto e : s) l = checkedMul(l / std::gcd(l, e), e);
  return l;
}

// Complement built from the spectrum: the product of Φ_s(x^{t(s)}) over prime
// powers s | n outside S_A, t(s) being the part of n prime to s. Valid when A
// satisfies both divisibility conditions on its spectrum.
std::optional<ResidueTiling> spectralComplement(const DigitSet& a, const IndexSet& spectrum, std::uint64_t n) {
  IntPoly b = IntPoly::constant(1);
  for (const auto& pp : factorize(n)) {
    std::uint64_t rest = n;
    while (rest % pp.prime == 0) rest /= pp.prime;
    std::uint64_t s = 1;
    for (unsigned k = 1; k <= pp.exponent; ++k) {
      s *= pp.prime;
      if (!spectrum.count(s)) b = multiply(b, composePower(cyclotomic(s), rest));
    }
  }
  auto set = digitSetFromMask(b);
  if (!set) return std::nullopt;
  ResidueTiling t{n, {}};
  std::set<std::uint64_t> residues;
  for (auto l : *set) residues.insert(l % n);
  t.complement.assign(residues.begin(), residues.end());
  if (!verifyResidueTiling(a, t)) return std::nullopt;
  return t;
}

// Exact cover of Z/n by translates of A, always covering the smallest
// uncovered residue next.
std::optional<ResidueTiling> backtrackTiling(const DigitSet& a, std::uint64_t n) {
  std::vector<std::uint64_t> res;
  for (auto x : a) res.push_back(x % n);
  std::sort(res.begin(), res.end());
  if (std::adjacent_find(res.begin(), res.end()) != res.end()) return std::nullopt;

  std::vector<char> covered(n, 0);
  auto fits = [&](std::uint64_t t) {
    for (auto x : res)
      if (covered[(x + t) % n]) return false;
    return true;
  };
  auto mark = [&](std::uint64_t t, char v) {
    for (auto x : res) covered[(x + t) % n] = v;
  };
  struct Frame {
    std::uint64_t r;
    std::size_t next = 0;
    std::optional<std::uint64_t> placed;
  };
  std::vector<Frame> stack{Frame{0, 0, std::nullopt}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.placed) {
      mark(*f.placed, 0);
      f.placed.reset();
    }
    bool advanced = false;
    while (f.next < res.size()) {
      const std::uint64_t t = (f.r + n - res[f.next]) % n;
      ++f.next;
      if (!fits(t)) continue;
      mark(t, 1);
      f.placed = t;
      advanced = true;
      break;
    }
    if (!advanced) {
      stack.pop_back();
      continue;
    }
    std::uint64_t r = f.r + 1;
    while (r < n && covered[r]) ++r;
    if (r == n) {
      ResidueTiling t{n, {}};
      for (const auto& fr : stack) t.complement.push_back(*fr.placed);
      std::sort(t.complement.begin(), t.complement.end());
      return t;
    }
    stack.push_back(Frame{r, 0, std::nullopt});
  }
  return std::nullopt;
}

}  // namespace

std::uint64_t defaultPeriodCap(const DigitSet& a) {
  const auto spectrum = primePowerSpectrum(maskPolynomial(a));
  const std::uint64_t l = spectrum.empty() ? checkedMul(a.size(), a.max() + 1) : lcmOf(spectrum);
  return l > 25'000 ? 100'000 : std::min<std::uint64_t>(100'000, 4 * l);
}

IntegerTileReport integerTileReport(const DigitSet& a, std::uint64_t periodCap) {
  if (!a.contains(0)) throw std::invalid_argument("integerTileCheck: 0 must belong to A");
  IntegerTileReport out;
  out.periodCap = periodCap == 0 ? defaultPeriodCap(a) : periodCap;
  if (out.periodCap < a.size()) throw std::invalid_argument("integerTileCheck: periodCap below #A");

  const auto spectrum = primePowerSpectrum(maskPolynomial(a));
  std::optional<std::uint64_t> first;
  if (!spectrum.empty()) {
    const std::uint64_t n = lcmOf(spectrum);
    if (n % a.size() == 0) {
      first = n;
      out.periodsTried.push_back(n);
      if (auto t = spectralComplement(a, spectrum, n)) {
        out.tiling = t;
        return out;
      }
      if (n <= out.periodCap) {
        if (auto t = backtrackTiling(a, n)) {
          out.tiling = t;
          return out;
        }
      }
    }
  }
  for (std::uint64_t n = a.size(); n <= out.periodCap; n += a.size()) {
    if (first && n == *first) continue;
    out.periodsTried.push_back(n);
    if (auto t = backtrackTiling(a, n)) {
      out.tiling = t;
      return out;
    }
  }
  return out;
}

std::optional<ResidueTiling> integerTileCheck(const DigitSet& a, std::uint64_t periodCap) {
  return integerTileReport(a, periodCap).tiling;
}

// ---------------------------------------------------------------------------
// Absolute continuity

AbsContResult absContCheck(std::uint64_t base, const DigitSet& digits) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  AbsContResult out;
  out.cardinality = digits.size();
  auto search = searchBlocking(base, maskPolynomial(digits));
  out.absolutelyContinuous = search.found;
  out.blocking = search.blocking;
  // Every kernel has K(1) = b, so K | P_D forces b | P_D(1) = #D.
  if (out.absolutelyContinuous && out.cardinality % base != 0)
    throw std::logic_error("accepted digit set with " + std::to_string(out.cardinality) +
                           " elements for base " + std::to_string(base));
  return out;
}

}  // namespace cyclotile
