#include <gtest/gtest.h>

#include "cyclotile/digitset.hpp"
#include "cyclotile/errors.hpp"
#include "cyclotile/intpoly.hpp"
#include "support.hpp"

using namespace cyclotile;

TEST(MaskPolynomial, Examples) {
  EXPECT_EQ(maskPolynomial(DigitSet({0, 1, 8, 9})), IntPoly::parse("0:1 1:1 8:1 9:1"));
  EXPECT_EQ(maskPolynomial(DigitSet({0})), IntPoly::constant(1));
  EXPECT_EQ(maskPolynomial(DigitSet({0, 1, 2, 3})), (IntPoly{1, 1, 1, 1}));
}

TEST(MaskPolynomial, RejectsBadDigits) {
  EXPECT_THROW(DigitSet({0, 1, 1}), InvalidDigitSet);
  EXPECT_THROW(DigitSet({0, -1}), InvalidDigitSet);
  EXPECT_THROW(DigitSet::parse("0,x"), InvalidDigitSet);
}

TEST(MaskPolynomial, RoundTripsThroughDigitSet) {
  const DigitSet d({0, 3, 17, 40});
  const auto p = maskPolynomial(d);
  EXPECT_EQ(p.termCount(), 4u);
  EXPECT_EQ(digitSetFromMask(p), d);
  EXPECT_FALSE(digitSetFromMask(IntPoly{1, -1, 1}).has_value());
}

TEST(Multiply, Examples) {
  EXPECT_EQ(multiply(IntPoly{1, 1}, IntPoly::parse("0:1 8:1")), IntPoly::parse("0:1 1:1 8:1 9:1"));
  const IntPoly p{3, 0, -2, 7};
  EXPECT_EQ(multiply(p, IntPoly::constant(1)), p);
  EXPECT_EQ(multiply(IntPoly{1, 1, 1}, IntPoly{1, -1}), (IntPoly{1, 0, 0, -1}));
  EXPECT_TRUE(multiply(p, IntPoly()).isZero());
}

TEST(ComposePower, Examples) {
  EXPECT_EQ(composePower(IntPoly{1, 1}, 3), (IntPoly{1, 0, 0, 1}));
  EXPECT_EQ(composePower(IntPoly{1, 1, 1}, 1), (IntPoly{1, 1, 1}));
  EXPECT_EQ(composePower(IntPoly{1, 0, 1}, 4), IntPoly::parse("0:1 8:1"));
  EXPECT_THROW(composePower(IntPoly{1, 1}, 0), std::invalid_argument);
}

TEST(DivideExact, Examples) {
  EXPECT_EQ(divideExact(IntPoly::parse("0:1 1:1 8:1 9:1"), IntPoly{1, 1}), IntPoly::parse("0:1 8:1"));
  EXPECT_EQ(divideExact(IntPoly{-1, 0, 0, 0, 1}, IntPoly{1, 0, 1}), (IntPoly{-1, 0, 1}));
  EXPECT_FALSE(divideExact(IntPoly{1, 1, 1}, IntPoly{1, 1}).has_value());
  EXPECT_THROW(divideExact(IntPoly{1, 1}, IntPoly()), std::invalid_argument);
}

TEST(IntPolyText, ParseAndPrint) {
  const auto p = IntPoly::parse("0:1 1:-1 2:1");
  EXPECT_EQ(p, (IntPoly{1, -1, 1}));
  EXPECT_EQ(IntPoly::parse(p.toString()), p);
  EXPECT_EQ(IntPoly::parse("").isZero(), true);
}

TEST(IntPolyText, BigCoefficients) {
  IntPoly p = IntPoly::constant(1);
  for (int i = 0; i < 80; ++i) p = multiply(p, IntPoly{1, 1});
  EXPECT_GT(mpz_sizeinbase(p.coeff(40).get_mpz_t(), 2), 64u);
  EXPECT_EQ(IntPoly::parse(p.toString()), p);
}

TEST(IntPolyProperties, DivisionUndoesMultiplication) {
  gen::Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    const auto p = gen::randomPoly(rng, gen::uniform(rng, 0, 200), 50);
    const auto q = gen::randomMonic(rng, gen::uniform(rng, 0, 200), 50);
    EXPECT_EQ(divideExact(multiply(p, q), q), p);
  }
}

TEST(IntPolyProperties, ComposePowerIsMultiplicative) {
  gen::Rng rng(12);
  for (int i = 0; i < 40; ++i) {
    const auto p = gen::randomPoly(rng, gen::uniform(rng, 0, 40), 9);
    const auto q = gen::randomPoly(rng, gen::uniform(rng, 0, 40), 9);
    const auto n = gen::uniform(rng, 1, 12);
    EXPECT_EQ(composePower(multiply(p, q), n), multiply(composePower(p, n), composePower(q, n)));
  }
}

TEST(IntPolyProperties, MaskValueAtOneIsCardinality) {
  gen::Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto b = gen::uniform(rng, 2, 12);
    const auto d = gen::randomDigitSet(rng, b, 300);
    EXPECT_EQ(maskPolynomial(d).valueAtOne(), static_cast<long>(d.size()));
  }
}
