#include "cyclotile/productform.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cyclotile/errors.hpp"
#include "cyclotile/phitree.hpp"

namespace cyclotile {

namespace {

std::string stageLabel(std::size_t i) { return "stage " + std::to_string(i) + ": "; }

void checkParts(const std::vector<Part>& parts) {
  if (parts.empty()) throw std::invalid_argument("decomposition needs at least one part");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw std::invalid_argument("part " + std::to_string(i) + " is empty");
    if (std::find(parts[i].begin(), parts[i].end(), 0) == parts[i].end())
      throw std::invalid_argument("part " + std::to_string(i) + " does not contain 0");
  }
}

std::vector<std::uint64_t> scalesFor(const Decomposition& dec) {
  if (dec.base < 2) throw std::invalid_argument("base must be >= 2");
  checkParts(dec.parts);
  if (dec.exponents.size() + 1 != dec.parts.size())
    throw InvalidRecipe("need " + std::to_string(dec.parts.size() - 1) + " exponents, got " +
                        std::to_string(dec.exponents.size()));
  if (!std::is_sorted(dec.exponents.begin(), dec.exponents.end()))
    throw InvalidRecipe("exponents must be nondecreasing");
  std::vector<std::uint64_t> scales{1};
  for (auto l : dec.exponents) scales.push_back(checkedPow(dec.base, l));
  return scales;
}

std::vector<std::uint64_t> sortedUnique(const Part& part, const std::string& what) {
  std::vector<std::uint64_t> v(part);
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw NotDirectSum(what + " repeats a digit");
  return v;
}

// Adds scale * e to every element; throws on a repeated sum.
std::vector<std::uint64_t> addScaled(const std::vector<std::uint64_t>& acc, const Part& part, std::uint64_t scale,
                                     const std::string& where) {
  std::set<std::uint64_t> out;
  for (auto a : acc)
    for (auto e : part)
      if (!out.insert(a + checkedMul(scale, e)).second)
        throw NotDirectSum(where + "sum " + std::to_string(a + scale * e) + " occurs twice");
  return {out.begin(), out.end()};
}

std::uint64_t lcmOf(const IndexSet& s) {
  std::uint64_t l = 1;
  for (auto e : s) l = checkedMul(l / std::gcd(l, e), e);
  return l;
}

}  // namespace

bool validateDecomposition(const std::vector<Part>& parts, std::uint64_t base) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  checkParts(parts);
  // Residue counts of the product mask mod x^b - 1.
  std::vector<std::uint64_t> counts(base, 0);
  counts[0] = 1;
  for (const auto& part : parts) {
    std::vector<std::uint64_t> next(base, 0);
    for (std::uint64_t r = 0; r < base; ++r)
      if (counts[r])
        for (auto e : part) next[(r + e) % base] += counts[r];
    counts = std::move(next);
  }
  return std::all_of(counts.begin(), counts.end(), [](std::uint64_t c) { return c == 1; });
}

std::vector<std::uint64_t> scaledDirectSum(const std::vector<Part>& parts, const std::vector<std::uint64_t>& scales) {
  if (parts.size() != scales.size()) throw std::invalid_argument("one scale per part expected");
  std::vector<std::uint64_t> acc{0};
  for (std::size_t i = 0; i < parts.size(); ++i)
    acc = addScaled(acc, sortedUnique(parts[i], "part " + std::to_string(i)), scales[i],
                    "part " + std::to_string(i) + ": ");
  return acc;
}

DigitSet buildProductForm(const Decomposition& dec) {
  const auto scales = scalesFor(dec);
  if (!validateDecomposition(dec.parts, dec.base))
    throw InvalidRecipe("parts do not form a complete residue system mod " + std::to_string(dec.base));
  return DigitSet::fromUnsigned(scaledDirectSum(dec.parts, scales));
}

ModuloTrace stageKernels(const Decomposition& dec) {
  scalesFor(dec);
  if (!validateDecomposition(dec.parts, dec.base))
    throw InvalidRecipe("parts do not form a complete residue system mod " + std::to_string(dec.base));
  ModuloTrace trace;
  IndexSet kernel;
  for (std::size_t i = 0; i < dec.parts.size(); ++i) {
    StageTrace st;
    const unsigned l = i == 0 ? 0 : dec.exponents[i - 1];
    DivisibilityMemo memo(maskPolynomial(DigitSet::fromUnsigned(dec.parts[i])));
    for (auto d : rootIndices(dec.base))
      if (memo.divides(d)) st.psi.insert(d);
    for (auto d : st.psi) {
      auto ex = expandIndicesPower(d, dec.base, l);
      kernel.insert(ex.begin(), ex.end());
    }
    st.kernel = kernel;
    st.modulus = lcmOf(kernel);
    if (!st.psi.empty()) {
      const std::uint64_t lo = checkedPow(dec.base, l), hi = checkedMul(lo, dec.base);
      if (st.modulus % lo != 0 || hi % st.modulus != 0)
        throw std::logic_error(stageLabel(i) + "modulus " + std::to_string(st.modulus) + " outside [b^l, b^{l+1}]");
    }
    trace.stages.push_back(std::move(st));
  }
  return trace;
}

ModuloProductForm buildModuloProductForm(const Decomposition& dec, const ModuloChoices& choices) {
  const auto scales = scalesFor(dec);
  ModuloTrace trace = stageKernels(dec);
  const std::size_t k = dec.parts.size();
  if (choices.representatives.size() > k || choices.reduce.size() > k)
    throw InvalidRecipe("more modulo choices than stages");

  std::vector<std::uint64_t> cur{0};
  std::size_t expected = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const std::string where = stageLabel(i);
    auto& st = trace.stages[i];
    const std::uint64_t n = st.modulus;
    cur = addScaled(cur, sortedUnique(dec.parts[i], where + "part"), scales[i], where);
    expected *= dec.parts[i].size();

    std::set<std::uint64_t> digits(cur.begin(), cur.end());
    if (i < choices.reduce.size() && choices.reduce[i]) {
      std::set<std::uint64_t> reduced;
      for (auto x : digits)
        if (!reduced.insert(x % n).second)
          throw NotDirectSum(where + "reducing mod " + std::to_string(n) + " merges digits");
      digits = std::move(reduced);
    }
    if (i < choices.representatives.size()) {
      for (const auto& [from, to] : choices.representatives[i]) {
        if (!digits.count(from))
          throw InvalidRepresentative(where + std::to_string(from) + " is not a digit of this stage");
        if (from % n != to % n)
          throw InvalidRepresentative(where + std::to_string(to) + " is not congruent to " + std::to_string(from) +
                                      " mod " + std::to_string(n));
        digits.erase(from);
        if (!digits.insert(to).second)
          throw NotDirectSum(where + "representative " + std::to_string(to) + " is already a digit");
        st.replacements.emplace_back(from, to);
      }
    }
    cur.assign(digits.begin(), digits.end());
    if (cur.size() != expected)
      throw NotDirectSum(where + "expected " + std::to_string(expected) + " digits, have " + std::to_string(cur.size()));
    st.digits = cur;
  }

  DigitSet result = DigitSet::fromUnsigned(cur);
  DivisibilityMemo memo(maskPolynomial(result));
  for (auto e : trace.stages.back().kernel)
    if (!memo.divides(e))
      throw std::logic_error("final kernel factor Φ_" + std::to_string(e) + " does not divide the mask");
  return {std::move(result), std::move(trace)};
}

ModuloProductForm buildWeakProductForm(const Decomposition& dec,
                                       const std::vector<std::pair<std::uint64_t, std::uint64_t>>& replacements) {
  scalesFor(dec);
  const unsigned lk = dec.exponents.empty() ? 0 : dec.exponents.back();
  const std::uint64_t modulus = checkedPow(dec.base, lk + 1);
  for (const auto& [from, to] : replacements)
    if (from % modulus != to % modulus)
      throw InvalidRepresentative(std::to_string(to) + " is not congruent to " + std::to_string(from) + " mod " +
                                  std::to_string(modulus));
  // n_k divides b^{l_k + 1}, so these are valid last-stage representatives.
  ModuloChoices choices;
  choices.representatives.resize(dec.parts.size());
  choices.representatives.back() = replacements;
  return buildModuloProductForm(dec, choices);
}

HigherOrderProductForm buildHigherOrderProductForm(const DigitSet& inner, unsigned innerOrder,
                                                   const std::vector<Part>& regrouping,
                                                   const std::vector<unsigned>& exponents, std::uint64_t base) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  checkParts(regrouping);
  if (exponents.size() + 1 != regrouping.size())
    throw InvalidRegrouping("need " + std::to_string(regrouping.size() - 1) + " exponents, got " +
                            std::to_string(exponents.size()));
  if (!std::is_sorted(exponents.begin(), exponents.end()))
    throw InvalidRegrouping("exponents must be nondecreasing");

  std::vector<std::uint64_t> flat;
  try {
    flat = scaledDirectSum(regrouping, std::vector<std::uint64_t>(regrouping.size(), 1));
  } catch (const NotDirectSum& e) {
    throw InvalidRegrouping(std::string("regrouped parts are not a direct sum: ") + e.what());
  }
  if (flat != inner.digits()) throw InvalidRegrouping("regrouped parts do not multiply out to the inner set");

  std::vector<std::uint64_t> scales{1};
  for (auto l : exponents) scales.push_back(checkedPow(base, l));
  return {DigitSet::fromUnsigned(scaledDirectSum(regrouping, scales)), innerOrder + 1};
}

std::optional<IndexSet> cyclotomicFactorIndices(const IntPoly& p) {
  if (p.isZero()) return std::nullopt;
  IntPoly rest = p;
  IndexSet out;
  // φ(s) <= deg implies s <= 2 deg^2.
  for (std::uint64_t s = 2; rest.degree() > 0; ++s) {
    const std::uint64_t deg = rest.degree();
    if (s > std::max<std::uint64_t>(2, 2 * deg * deg)) return std::nullopt;
    CycIndex idx(s);
    if (idx.phi() > deg || !cycDivides(idx, rest)) continue;
    rest = *divideExact(rest, cyclotomic(s));
    if (cycDivides(idx, rest)) return std::nullopt;  // repeated factor
    out.insert(s);
  }
  if (rest != IntPoly::constant(1)) return std::nullopt;
  return out;
}

std::optional<DigitSet> liftKernel(const IndexSet& kernel, std::uint64_t base, const IntPoly& q) {
  if (!isBlocking(kernel, base)) throw InvalidKernel("kernel indices are not a blocking for base " + std::to_string(base));
  if (q.valueAtOne() != 1) throw std::invalid_argument("liftKernel: Q(1) must be 1");
  const IntPoly p = multiply(kernelFromBlocking({kernel, base}), q);
  auto digits = digitSetFromMask(p);
  if (!digits || digits->size() != base) return std::nullopt;
  return digits;
}

std::optional<DigitSet> liftKernel(const IntPoly& kernel, std::uint64_t base, const IntPoly& q) {
  auto indices = cyclotomicFactorIndices(kernel);
  if (!indices) throw InvalidKernel("kernel is not a product of distinct cyclotomic polynomials");
  return liftKernel(*indices, base, q);
}

}  // namespace cyclotile
