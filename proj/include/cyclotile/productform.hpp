#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cyclotile/cyclo.hpp"
#include "cyclotile/digitset.hpp"

namespace cyclotile {

using Part = std::vector<std::uint64_t>;

/// D = E_0 + b^{l_1} E_1 + ... + b^{l_k} E_k with l_1 <= ... <= l_k.
struct Decomposition {
  std::uint64_t base = 0;
  std::vector<Part> parts;
  /// l_1..l_k; one fewer than parts.
  std::vector<unsigned> exponents;
};

/// Product of the part masks reduced mod x^b - 1 equals 1 + x + ... + x^{b-1}.
/// Throws invalid_argument on an empty part or a part without 0.
bool validateDecomposition(const std::vector<Part>& parts, std::uint64_t base);

/// {sum of scales[i] * g_i : g_i in parts[i]}; throws NotDirectSum on a
/// repeated sum.
std::vector<std::uint64_t> scaledDirectSum(const std::vector<Part>& parts,
                                           const std::vector<std::uint64_t>& scales);

DigitSet buildProductForm(const Decomposition& dec);

struct StageTrace {
  /// S_i: divisors d > 1 of b with Φ_d | P_{E_i}.
  IndexSet psi;
  /// Factor indices of K^{(i)} = Ψ_0(x) Ψ_1(x^{b^{l_1}}) ... Ψ_i(x^{b^{l_i}}).
  IndexSet kernel;
  /// n_i = lcm of the kernel indices.
  std::uint64_t modulus = 1;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> replacements;
  /// D^{(i)} after the stage's modulo action.
  std::vector<std::uint64_t> digits;
};

struct ModuloTrace {
  std::vector<StageTrace> stages;
};

/// Stage kernels and moduli of a product-form decomposition, with
/// b^{l_i} | n_i | b^{l_i + 1} checked at every stage that has a nonempty S_i.
ModuloTrace stageKernels(const Decomposition& dec);

struct ModuloChoices {
  /// Per stage, pairs (digit, representative) with representative ≡ digit mod n_i.
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> representatives;
  /// Per stage, reduce every digit into [0, n_i) before the replacements.
  std::vector<bool> reduce;
};

struct ModuloProductForm {
  DigitSet digits;
  ModuloTrace trace;
};

/// D^{(0)} ≡ E_0, D^{(i)} ≡ D^{(i-1)} + b^{l_i} E_i (mod n_i). Verifies that the
/// final kernel K^{(k)} divides the resulting mask.
ModuloProductForm buildModuloProductForm(const Decomposition& dec, const ModuloChoices& choices = {});

/// Replaces digits of the product form by representatives mod b^{l_k + 1}:
/// the modulo construction with a single action at the last stage.
ModuloProductForm buildWeakProductForm(
    const Decomposition& dec, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& replacements);

struct HigherOrderProductForm {
  DigitSet digits;
  unsigned order = 0;
};

/// D = G_0 + b^{l_1} G_1 + ... + b^{l_k} G_k where G_0 + ... + G_k (unscaled)
/// must equal `inner` as a set, inner being of order `innerOrder`.
HigherOrderProductForm buildHigherOrderProductForm(const DigitSet& inner, unsigned innerOrder,
                                                   const std::vector<Part>& regrouping,
                                                   const std::vector<unsigned>& exponents,
                                                   std::uint64_t base);

/// P = K Q; the digit set of exponents when every coefficient is 0 or 1 and
/// P(1) = b. Throws InvalidKernel unless `kernel` is a blocking for `base`, and
/// invalid_argument unless Q(1) = 1.
std::optional<DigitSet> liftKernel(const IndexSet& kernel, std::uint64_t base, const IntPoly& q);

/// Kernel given as a polynomial: it must factor into distinct cyclotomics whose
/// indices form a blocking.
std::optional<DigitSet> liftKernel(const IntPoly& kernel, std::uint64_t base, const IntPoly& q);

/// Indices of a product of distinct cyclotomics, or nullopt.
std::optional<IndexSet> cyclotomicFactorIndices(const IntPoly& p);

}  // namespace cyclotile
