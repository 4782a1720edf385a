#include <gtest/gtest.h>

#include "stratpoint/linalg.hpp"
#include "stratpoint/rational.hpp"

using namespace stratpoint;

TEST(Rational, ParsesIntegersFractionsAndDecimalsExactly) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-3/7"), Rational(-3, 7));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("-1.5e-3"), Rational(-3, 2000));
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  // Leading zeros are decimal, never octal.
  EXPECT_EQ(parse_rational("-0.09"), Rational(-9, 100));
  EXPECT_EQ(parse_rational("007/010"), Rational(7, 10));
  EXPECT_EQ(parse_rational("2.50e1"), Rational(25));
  EXPECT_EQ(parse_rational("-0"), Rational(0));
}

TEST(Rational, RejectsMalformedNumbers) {
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational("1..2"), ParseError);
}

TEST(Rational, FormatParseRoundTrip) {
  for (const Rational& v : {Rational(0), Rational(-3, 7), Rational(22, 7), Rational(5)})
    EXPECT_EQ(parse_rational(format_rational(v)), v);
  EXPECT_EQ(format_rational(Rational(-6, 14)), "-3/7");
}

TEST(Rational, RationalizeRecoversSmallFractions) {
  EXPECT_EQ(rationalize(1.0 / 3.0), Rational(1, 3));
  EXPECT_EQ(rationalize(-0.75), Rational(-3, 4));
  EXPECT_EQ(rationalize(2.0), Rational(2));
  const double pi = 3.141592653589793;
  EXPECT_EQ(rationalize(pi), Rational(103993, 33102));
  // No denominator <= 10^6 is within 1e-15: the binary64 value is kept.
  EXPECT_EQ(rationalize(pi, 1e-15), from_double(pi));
  EXPECT_THROW(rationalize(std::nan("")), std::domain_error);
}

TEST(Linalg, RankDeterminantAndSolve) {
  Matrix m = {{1, 2}, {2, 4}};
  EXPECT_EQ(linalg::rank(m), 1u);
  EXPECT_EQ(linalg::determinant({{2, 1}, {1, 1}}), Rational(1));
  const auto s = linalg::solve({{2, 1}, {1, 1}}, {3, 2}, 2);
  ASSERT_TRUE(s);
  EXPECT_TRUE(s->unique);
  EXPECT_EQ(s->solution, (Vector{1, 1}));
  EXPECT_FALSE(linalg::solve({{1, 1}, {1, 1}}, {0, 1}, 2));
  const auto rows = linalg::independent_rows({{1, 0}, {2, 0}, {0, 1}}, 2);
  EXPECT_EQ(rows, (std::vector<std::size_t>{0, 2}));
}
