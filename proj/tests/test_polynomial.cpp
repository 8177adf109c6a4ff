#include <gtest/gtest.h>

#include <random>

#include "ctbp/sturm.hpp"

using namespace ctbp;

namespace {

QPoly from_roots(std::initializer_list<int> roots) {
  QPoly p{Rational(1)};
  for (int r : roots) p = p * QPoly{Rational(-r), Rational(1)};
  return p;
}

}  // namespace

TEST(Rational, RoundTripsDoublesExactly) {
  for (double x : {0.1, -3.75, 1e-300, 123456789.123, 5e-324}) EXPECT_EQ(to_double(to_rational(x)), x);
  EXPECT_THROW(to_rational(std::nan("")), Error);
}

TEST(Rational, ToDoubleRoundsToNearest) {
  Rational third(1, 3);
  EXPECT_EQ(to_double(third), 1.0 / 3.0);
  Rational just_below_one = Rational(1) - Rational(1, mpz_class(1) << 80);
  EXPECT_EQ(to_double(just_below_one), 1.0);
}

TEST(Rational, ParsesDecimalFractionAndExponent) {
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("1e-2"), Rational(1, 100));
  EXPECT_EQ(parse_rational("2.5E1"), Rational(25));
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
}

TEST(Polynomial, ArithmeticAndEvaluation) {
  QPoly p{Rational(1), Rational(2), Rational(3)};  // 1 + 2u + 3u^2
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p(Rational(2)), Rational(17));
  EXPECT_EQ(p.derivative(), (QPoly{Rational(2), Rational(6)}));
  auto [q, r] = (p * QPoly{Rational(-1), Rational(1)} + QPoly{Rational(5)}).divmod(QPoly{Rational(-1), Rational(1)});
  EXPECT_EQ(q, p);
  EXPECT_EQ(r, QPoly{Rational(5)});
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p - p).degree(), -1);
}

TEST(Polynomial, TaylorShiftMatchesEvaluation) {
  QPoly p = from_roots({1, -2, 3, 5});
  QPoly s = p.shifted(Rational(7, 3));
  for (int k = -3; k <= 3; ++k) EXPECT_EQ(s(Rational(k)), p(Rational(Rational(k) + Rational(7, 3))));
}

TEST(Polynomial, ReversalSwapsRootsWithReciprocals) {
  QPoly p = from_roots({2, -3});
  QPoly r = p.reversed();
  EXPECT_EQ(r(Rational(1, 2)), 0);
  EXPECT_EQ(r(Rational(-1, 3)), 0);
}

TEST(Polynomial, SquarefreeDecompositionGroupsByMultiplicity) {
  QPoly p = from_roots({1, 2, 2, 3, 3, 3});
  auto parts = squarefree_decomposition(p);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].monic(), from_roots({1}));
  EXPECT_EQ(parts[1].monic(), from_roots({2}));
  EXPECT_EQ(parts[2].monic(), from_roots({3}));
}

TEST(Sturm, CountsDistinctRootsOnHalfOpenIntervals) {
  QPoly p = from_roots({-2, 0, 1, 1, 4});
  EXPECT_EQ(count_distinct_roots(p, {}), 4);
  EXPECT_EQ(count_distinct_roots(p, {Rational(-2), Rational(1)}), 2);  // (-2, 1]
  EXPECT_EQ(count_distinct_roots(p, {Rational(1), std::nullopt}), 1);
}

TEST(Sturm, TarskiQuerySumsSignsAtRoots) {
  QPoly p = from_roots({-2, 1, 3});
  QPoly q{Rational(0), Rational(1)};  // sign(u)
  EXPECT_EQ(tarski_query(p, q, {}), 1);   // -1 + 1 + 1
  EXPECT_EQ(tarski_query(p, q * q, {}), 3);
}

TEST(Sturm, IsolationEnclosesEachRootOnce) {
  QPoly p = from_roots({-7, -1, 0, 2, 9}) * QPoly{Rational(1), Rational(0), Rational(1)};
  auto roots = isolate_squarefree(p);
  ASSERT_EQ(roots.size(), 5u);
  const int expect[] = {-7, -1, 0, 2, 9};
  for (size_t i = 0; i < roots.size(); ++i) {
    EXPECT_LE(roots[i].lo, Rational(expect[i]));
    EXPECT_GE(roots[i].hi, Rational(expect[i]));
    if (i) EXPECT_LE(roots[i - 1].hi, roots[i].lo);  // half-open
  }
}

TEST(Sturm, RefinementNarrowsIrrationalRoot) {
  QPoly p{Rational(-2), Rational(0), Rational(1)};
  auto roots = isolate_squarefree(p);
  ASSERT_EQ(roots.size(), 2u);
  auto r = roots[1];
  refine(p, r, Rational(1, mpz_class(1) << 60));
  EXPECT_NEAR(to_double(r.mid()), std::sqrt(2.0), 1e-15);
  EXPECT_LE(r.hi - r.lo, Rational(1, mpz_class(1) << 60));
}

TEST(Sturm, MultiplicityFromSquarefreeFactors) {
  QPoly p = from_roots({-3, 2, 2});
  auto roots = isolate_with_multiplicity(p);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0].multiplicity, 1);
  EXPECT_EQ(roots[1].multiplicity, 2);
}

TEST(FloatIsolation, AgreesWithExactOnRandomProducts) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(-20, 20);
  for (int it = 0; it < 200; ++it) {
    std::vector<int> rs;
    for (int k = 0; k < 4; ++k) rs.push_back(pick(rng));
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    QPoly p{Rational(1)};
    for (int r : rs) p = p * QPoly{Rational(-r), Rational(1)};
    auto fl = isolate_float(convert<double>(p));
    ASSERT_EQ(fl.size(), rs.size());
    for (size_t i = 0; i < rs.size(); ++i) EXPECT_NEAR(fl[i].value, rs[i], 1e-9 * (1 + std::abs(rs[i])));
  }
}
