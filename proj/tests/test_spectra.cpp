#include <gtest/gtest.h>

#include "cyclotile/errors.hpp"
#include "cyclotile/spectra.hpp"
#include "support.hpp"

using namespace cyclotile;

namespace {

IntPoly mask(std::initializer_list<std::int64_t> d) { return maskPolynomial(DigitSet(d)); }

}  // namespace

TEST(PrimePowerSpectrum, Examples) {
  EXPECT_EQ(primePowerSpectrum(mask({0, 1, 8, 9})), (IndexSet{2, 16}));
  EXPECT_EQ(primePowerSpectrum(mask({0, 1, 4, 5})), (IndexSet{2, 8}));
  EXPECT_EQ(primePowerSpectrum(mask({0, 1, 2, 3, 4, 5})), (IndexSet{2, 3}));
  EXPECT_TRUE(primePowerSpectrum(mask({0, 1, 3})).empty());
}

TEST(PrimePowerSpectrum, MatchesExhaustiveDivision) {
  gen::Rng rng(31);
  for (int i = 0; i < 80; ++i) {
    const auto d = gen::uniform(rng, 0, 1) ? gen::randomDigitSet(rng, gen::uniform(rng, 2, 9), 90)
                                               : gen::randomCompleteResidues(rng, gen::uniform(rng, 2, 9), 90);
    const auto p = maskPolynomial(d);
    IndexSet expected;
    for (std::uint64_t q = 2; q <= 2 * p.degree() + 2; ++q)
      if (asPrimePower(q) && divideExact(p, gen::mobiusCyclotomic(q))) expected.insert(q);
    ASSERT_EQ(primePowerSpectrum(p), expected) << d.toString();
  }
}

TEST(GeneralSpectrum, Examples) {
  const auto g = generalSpectrum(mask({0, 1, 8, 9}), 100);
  EXPECT_EQ(g.indices, (IndexSet{2, 16}));
  const auto full = generalSpectrum(mask({0, 1, 8, 9}), completeSpectrumCap(mask({0, 1, 8, 9})));
  EXPECT_TRUE(full.complete);
  EXPECT_EQ(full.indices, (IndexSet{2, 16}));
  EXPECT_EQ(generalSpectrum(mask({0, 1, 2, 3, 4, 5}), 10).indices, (IndexSet{2, 3, 6}));
  EXPECT_EQ(generalSpectrum(IntPoly{1, 0, 1}, 10).indices, (IndexSet{4}));
  EXPECT_FALSE(generalSpectrum(mask({0, 1, 2, 3, 4, 5}), 10).complete);
}

TEST(GeneralSpectrum, EveryIndexDivides) {
  gen::Rng rng(32);
  for (int i = 0; i < 40; ++i) {
    const auto d = gen::randomCompleteResidues(rng, gen::uniform(rng, 2, 8), 60);
    const auto p = maskPolynomial(d);
    for (auto s : generalSpectrum(p, 400).indices) ASSERT_TRUE(divideExact(p, gen::mobiusCyclotomic(s))) << s;
  }
}

TEST(CheckT1, Examples) {
  EXPECT_TRUE(checkT1(DigitSet({0, 1, 8, 9})));
  EXPECT_FALSE(checkT1(DigitSet({0, 1, 3})));
  EXPECT_TRUE(checkT1(DigitSet({0, 1})));
}

TEST(CheckT2, Examples) {
  EXPECT_TRUE(checkT2(DigitSet({0, 1, 8, 9})));
  EXPECT_TRUE(checkT2(DigitSet({0, 1, 2, 3, 4, 5})));
  EXPECT_TRUE(checkT2(DigitSet({0, 1, 2, 3, 8, 9, 10, 11})));
  EXPECT_STREQ(kT2Convention, "distinct-prime-bases");
}

TEST(CheckT2, FailsWithoutMixedFactor) {
  const DigitSet d({0, 1, 2, 3, 7, 8});
  const auto p = maskPolynomial(d);
  EXPECT_EQ(primePowerSpectrum(p), (IndexSet{2, 3}));
  EXPECT_FALSE(cycDivides(CycIndex(6), p));
  EXPECT_FALSE(checkT2(d));
}

TEST(Theorem42, Examples) {
  const auto a = checkTheorem42(4, DigitSet({0, 1, 8, 9}));
  EXPECT_TRUE(a.passed);
  EXPECT_EQ(a.exponents.at(2), (std::vector<unsigned>{1, 4}));

  const auto b = checkTheorem42(4, DigitSet({0, 1, 4, 5}));
  EXPECT_FALSE(b.passed);
  EXPECT_EQ(b.exponents.at(2), (std::vector<unsigned>{1, 3}));
  EXPECT_EQ(b.violated, Theorem42Result::Clause::Residue);

  const auto c = checkTheorem42(6, DigitSet({0, 1, 2, 3, 4, 5}));
  EXPECT_TRUE(c.passed);
  EXPECT_EQ(c.exponents.at(2), (std::vector<unsigned>{1}));
  EXPECT_EQ(c.exponents.at(3), (std::vector<unsigned>{1}));
}

TEST(Theorem42, CountClause) {
  const auto d = checkTheorem42(4, DigitSet({0, 1, 2, 4}));
  EXPECT_FALSE(d.passed);
  EXPECT_EQ(d.violated, Theorem42Result::Clause::Count);
  EXPECT_THROW(checkTheorem42(2, DigitSet({0, 1, 2})), WrongCardinality);
}

TEST(Theorem42, NoForeignPrimeWhenCardinalityIsBase) {
  // Φ_{p^a} | P forces p | P(1) = b.
  gen::Rng rng(33);
  for (int i = 0; i < 200; ++i) {
    const auto b = gen::uniform(rng, 2, 10);
    const auto r = checkTheorem42(b, gen::randomDigitSet(rng, b, 80));
    ASSERT_NE(r.violated, Theorem42Result::Clause::ForeignPrime);
  }
}

TEST(SpectrumReport, ExponentsFollowBasePrimes) {
  const auto r = spectrumReport(12, maskPolynomial(DigitSet({0, 1, 4, 5, 8, 9, 24, 25, 28, 29, 32, 33})), 2000);
  EXPECT_EQ(r.primePowerSpectrum, (IndexSet{2, 3, 16}));
  EXPECT_EQ(r.perPrimeExponents.at(2), (std::vector<unsigned>{1, 4}));
  EXPECT_EQ(r.perPrimeExponents.at(3), (std::vector<unsigned>{1}));
}
