#include <gtest/gtest.h>

#include "cyclotile/errors.hpp"
#include "cyclotile/phitree.hpp"
#include "cyclotile/productform.hpp"
#include "cyclotile/recipe.hpp"
#include "support.hpp"

using namespace cyclotile;

namespace {

const Decomposition kModuloDec{12, {{0, 1}, {0, 4, 8}, {0, 2}}, {0, 1}};

ModuloChoices moduloChoices() {
  ModuloChoices c;
  c.representatives = {{}, {{5, 17}}, {{24, 72}, {28, 76}, {32, 80}}};
  return c;
}

std::string fixture(const std::string& name) { return std::string(CYCLOTILE_FIXTURES) + "/recipes/" + name; }

}  // namespace

TEST(ValidateDecomposition, Examples) {
  EXPECT_TRUE(validateDecomposition({{0, 1}, {0, 4, 8}, {0, 2}}, 12));
  EXPECT_TRUE(validateDecomposition({{0, 1}, {0, 2}}, 4));
  EXPECT_FALSE(validateDecomposition({{0, 1}, {0, 1}}, 4));
  EXPECT_THROW(validateDecomposition({{1, 2}}, 4), std::invalid_argument);
}

TEST(BuildProductForm, Examples) {
  EXPECT_EQ(buildProductForm({4, {{0, 1}, {0, 2}}, {1}}), DigitSet({0, 1, 8, 9}));
  EXPECT_EQ(buildProductForm(kModuloDec), DigitSet({0, 1, 4, 5, 8, 9, 24, 25, 28, 29, 32, 33}));
  EXPECT_EQ(buildProductForm({7, {{0, 1, 2, 3, 4, 5, 6}}, {}}), DigitSet({0, 1, 2, 3, 4, 5, 6}));
  EXPECT_THROW(buildProductForm({4, {{0, 1}, {0, 2}}, {}}), InvalidRecipe);
  EXPECT_THROW(buildProductForm({4, {{0, 1}, {0, 1}}, {1}}), InvalidRecipe);
  EXPECT_THROW(buildProductForm({12, {{0, 1}, {0, 4, 8}, {0, 2}}, {2, 1}}), InvalidRecipe);
}

TEST(ScaledDirectSum, DetectsCollisions) {
  EXPECT_EQ(scaledDirectSum({{0, 1}, {0, 1}}, {1, 2}), (std::vector<std::uint64_t>{0, 1, 2, 3}));
  EXPECT_THROW(scaledDirectSum({{0, 1}, {0, 1}}, {1, 1}), NotDirectSum);
}

TEST(StageKernels, ModuloExample) {
  const auto t = stageKernels(kModuloDec);
  ASSERT_EQ(t.stages.size(), 3u);
  EXPECT_EQ(t.stages[1].kernel, (IndexSet{2, 3, 6, 12}));
  EXPECT_EQ(t.stages[1].modulus, 12u);
  EXPECT_EQ(t.stages[2].kernel, (IndexSet{2, 3, 6, 12, 16, 48}));
  EXPECT_EQ(t.stages[2].modulus, 48u);
}

TEST(StageKernels, SinglePartIsRootBlocking) {
  for (std::uint64_t b = 2; b <= 12; ++b) {
    Part all(b);
    std::iota(all.begin(), all.end(), 0);
    const auto t = stageKernels({b, {all}, {}});
    EXPECT_EQ(t.stages[0].kernel, rootIndices(b));
    EXPECT_EQ(t.stages[0].modulus, b);
  }
}

TEST(BuildModulo, Example) {
  const auto r = buildModuloProductForm(kModuloDec, moduloChoices());
  EXPECT_EQ(r.digits, DigitSet({0, 1, 4, 8, 9, 17, 25, 33, 41, 72, 76, 80}));
  EXPECT_EQ(r.trace.stages[1].digits, (std::vector<std::uint64_t>{0, 1, 4, 8, 9, 17}));
  EXPECT_EQ(decideTileDigitSet(12, r.digits).verdict, Verdict::Tile);
  EXPECT_TRUE(checkP1(12, r.digits).holds);
}

TEST(BuildModulo, SingleStageChoice) {
  ModuloChoices c;
  c.representatives = {{}, {{5, 17}}};
  const auto r = buildModuloProductForm(kModuloDec, c);
  EXPECT_EQ(r.trace.stages[1].digits, (std::vector<std::uint64_t>{0, 1, 4, 8, 9, 17}));
}

TEST(BuildModulo, IdentityChoicesGiveProductForm) {
  EXPECT_EQ(buildModuloProductForm(kModuloDec).digits, buildProductForm(kModuloDec));
}

TEST(BuildModulo, RejectsBadRepresentatives) {
  ModuloChoices c;
  c.representatives = {{}, {{5, 18}}};
  EXPECT_THROW(buildModuloProductForm(kModuloDec, c), InvalidRepresentative);
  c.representatives = {{}, {{6, 18}}};
  EXPECT_THROW(buildModuloProductForm(kModuloDec, c), InvalidRepresentative);
  c.representatives = {{}, {{5, 17}, {9, 17}}};
  EXPECT_THROW(buildModuloProductForm(kModuloDec, c), TileError);
}

TEST(BuildModulo, ReduceMode) {
  ModuloChoices c;
  c.reduce = {false, true, true};
  const auto r = buildModuloProductForm(kModuloDec, c);
  for (auto d : r.digits) EXPECT_LT(d, 48u);
  EXPECT_EQ(decideTileDigitSet(12, r.digits).verdict, Verdict::Tile);
}

TEST(BuildWeak, Example) {
  const auto r = buildWeakProductForm({4, {{0, 1}, {0, 2}}, {1}}, {{9, 25}});
  EXPECT_EQ(r.digits, DigitSet({0, 1, 8, 25}));
  EXPECT_EQ(decideTileDigitSet(4, r.digits).verdict, Verdict::Tile);
  EXPECT_THROW(buildWeakProductForm({4, {{0, 1}, {0, 2}}, {1}}, {{9, 17}}), InvalidRepresentative);
}

TEST(BuildHigherOrder, SecondOrderExample) {
  const auto inner = buildProductForm({12, {{0, 1, 8, 9, 16, 17}, {0, 2}}, {1}});
  const auto r = buildHigherOrderProductForm(inner, 1, {{0, 1}, {0, 8}, {0, 16, 32}}, {1, 2}, 12);
  EXPECT_EQ(r.digits, DigitSet({0, 1, 96, 97, 2304, 2305, 2400, 2401, 4608, 4609, 4704, 4705}));
  EXPECT_EQ(r.order, 2u);
}

TEST(BuildHigherOrder, TrivialRegrouping) {
  const auto inner = buildProductForm({4, {{0, 1}, {0, 2}}, {1}});
  const auto r = buildHigherOrderProductForm(inner, 1, {inner.digits()}, {}, 4);
  EXPECT_EQ(r.digits, inner);
}

TEST(BuildHigherOrder, RejectsWrongRegrouping) {
  const auto inner = buildProductForm({4, {{0, 1}, {0, 2}}, {1}});
  EXPECT_THROW(buildHigherOrderProductForm(inner, 1, {{0, 1}, {0, 2}}, {1}, 4), InvalidRegrouping);
  EXPECT_THROW(buildHigherOrderProductForm(inner, 1, {{0, 1}, {0, 8}}, {}, 4), InvalidRegrouping);
}

TEST(FirstOrderReading, ProductOfSharedExponents) {
  const auto d = buildProductForm({12, {{0, 1}, {0, 2}, {0, 16, 32}}, {2, 2}});
  EXPECT_EQ(decideTileDigitSet(12, d).verdict, Verdict::Tile);
  EXPECT_EQ(pkOrder(12, d), 1u);
}

TEST(LiftKernel, Examples) {
  EXPECT_EQ(liftKernel(IndexSet{2, 16}, 4, IntPoly::constant(1)), DigitSet({0, 1, 8, 9}));
  EXPECT_EQ(liftKernel(multiply(cyclotomic(2), cyclotomic(16)), 4, IntPoly::constant(1)), DigitSet({0, 1, 8, 9}));
  EXPECT_EQ(liftKernel(rootIndices(6), 6, IntPoly::constant(1)), DigitSet({0, 1, 2, 3, 4, 5}));
  // (1 + x + x^8 + x^9)(1 - x + x^3) has negative coefficients.
  EXPECT_FALSE(liftKernel(IndexSet{2, 16}, 4, IntPoly{1, -1, 0, 1}).has_value());
  EXPECT_THROW(liftKernel(IndexSet{2}, 4, IntPoly::constant(1)), InvalidKernel);
  EXPECT_THROW(liftKernel(IndexSet{2, 16}, 4, IntPoly{2, -1, 1}), std::invalid_argument);
}

TEST(LiftKernel, CancellingQuotient) {
  // (1 + x + x^2 + x^3)(1 - x + x^4) = 1 + x^5 + x^6 + x^7.
  EXPECT_EQ(liftKernel(IndexSet{2, 4}, 4, IntPoly{1, -1, 0, 0, 1}), DigitSet({0, 5, 6, 7}));
}

TEST(LiftKernel, RootBlockingGivesConsecutiveDigits) {
  for (std::uint64_t b = 2; b <= 20; ++b) {
    std::vector<std::int64_t> v(b);
    std::iota(v.begin(), v.end(), 0);
    EXPECT_EQ(liftKernel(rootIndices(b), b, IntPoly::constant(1)), DigitSet(v));
  }
}

TEST(CyclotomicFactorIndices, Examples) {
  EXPECT_EQ(cyclotomicFactorIndices(maskPolynomial(DigitSet({0, 1, 8, 9}))), (IndexSet{2, 16}));
  EXPECT_FALSE(cyclotomicFactorIndices(multiply(cyclotomic(2), cyclotomic(2))).has_value());
  EXPECT_FALSE(cyclotomicFactorIndices(IntPoly{2, 1}).has_value());
}

TEST(Recipes, Fixtures) {
  const auto m = buildFromRecipe(loadRecipe(fixture("modulo_b12.json")));
  EXPECT_EQ(m.digits, DigitSet({0, 1, 4, 8, 9, 17, 25, 33, 41, 72, 76, 80}));
  EXPECT_EQ(m.order, 1u);
  const auto h = buildFromRecipe(loadRecipe(fixture("second_order_b12.json")));
  EXPECT_EQ(h.digits, DigitSet({0, 1, 96, 97, 2304, 2305, 2400, 2401, 4608, 4609, 4704, 4705}));
  EXPECT_EQ(h.order, 2u);
  const auto w = buildFromRecipe(loadRecipe(fixture("weak_b4.json")));
  EXPECT_EQ(w.digits, DigitSet({0, 1, 8, 25}));
  const auto c = buildFromRecipe(loadRecipe(fixture("complete_residues_b6.json")));
  EXPECT_EQ(c.digits, DigitSet({0, 1, 2, 3, 4, 5}));
}

TEST(Recipes, ErrorsAreRecipeErrors) {
  EXPECT_THROW(parseRecipe("{}"), InvalidRecipe);
  EXPECT_THROW(parseRecipe("not json"), InvalidRecipe);
  EXPECT_THROW(buildFromRecipe(parseRecipe(R"({"base":4,"kind":"product","parts":[[0,1],[0,1]],"exponents":[1]})")),
               InvalidRecipe);
  EXPECT_THROW(parseRecipe(R"({"base":4,"kind":"spiral","parts":[[0,1,2,3]],"exponents":[]})"), InvalidRecipe);
}

TEST(ConstructionProperties, RandomFormsAreTiles) {
  gen::Rng rng(61);
  for (int i = 0; i < 40; ++i) {
    const std::uint64_t bases[] = {4, 6, 8, 9, 12};
    const auto b = bases[gen::uniform(rng, 0, 4)];
    Decomposition dec;
    std::optional<ModuloProductForm> built;
    do {
      dec = gen::randomDecomposition(rng, b, 2, 3);
      built = buildModuloProductForm(dec, gen::randomModuloChoices(rng, dec));
    } while (built->digits.gcd() != 1);
    const auto& r = *built;
    for (std::size_t s = 0; s < r.trace.stages.size(); ++s) {
      const auto& st = r.trace.stages[s];
      if (st.psi.empty()) continue;
      const unsigned l = s == 0 ? 0 : dec.exponents[s - 1];
      ASSERT_EQ(st.modulus % checkedPow(b, l), 0u);
      ASSERT_EQ(checkedPow(b, l + 1) % st.modulus, 0u);
    }
    ASSERT_EQ(decideTileDigitSet(b, r.digits).verdict, Verdict::Tile) << r.digits.toString();
    ASSERT_TRUE(checkP1(b, r.digits).holds) << r.digits.toString();
  }
}
