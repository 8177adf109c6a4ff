#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ctbp/atlas.hpp"
#include "ctbp/phase.hpp"
#include "oracles.hpp"

using namespace ctbp;

namespace {

const MassTriple kUnit{1, 1, 1};

MassTriple random_masses(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(std::log(0.1), std::log(10.0));
  return {std::exp(d(rng)), std::exp(d(rng)), std::exp(d(rng))};
}

std::string pattern(const RegionReport& r) {
  std::string s;
  for (const auto& x : r.roots) s += x.sign > 0 ? '+' : '-';
  return s;
}

const std::map<Triple, BetaPoint>& unit_representatives() {
  static const auto reps = region_representatives(kUnit);
  return reps;
}

}  // namespace

TEST(Gamma, EqualMassPointAtOne) {
  auto s = gamma_point(1.0, kUnit);
  ASSERT_FALSE(s.at_infinity);
  EXPECT_DOUBLE_EQ(s.point.b1, -1.0 / 28);
  EXPECT_DOUBLE_EQ(s.point.b2, -1.0 / 28);
  auto exact_pt = gamma_point_exact(Rational(1), exact(kUnit));
  ASSERT_TRUE(exact_pt);
  EXPECT_EQ(exact_pt->first, Rational(-1, 28));
  // The defining property: u = 1 is a double zero there.
  auto f = build_quintic(couplings_of(exact_pt->first, exact_pt->second), exact(kUnit));
  EXPECT_EQ(f(Rational(1)), 0);
  EXPECT_EQ(f.derivative()(Rational(1)), 0);
}

TEST(Gamma, AgreesWithCramerOracle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> t(-1.5, 1.5);
  int n = 0;
  for (int it = 0; it < 500; ++it) {
    const MassTriple m = random_masses(rng);
    const double u = std::tan(t(rng));
    if (std::abs(u) < 0.05 || std::abs(u + 1) < 0.05 || std::abs(u) > 20) continue;
    auto s = gamma_point(u, m);
    auto c = oracle::gamma_cramer(u, {m.m1, m.m2, m.m3});
    if (s.at_infinity || !c) continue;
    const double scale = 1 + std::hypot(s.point.b1, s.point.b2);
    if (scale > 1e4) continue;
    EXPECT_NEAR(s.point.b1, (*c)[0], 1e-6 * scale);
    EXPECT_NEAR(s.point.b2, (*c)[1], 1e-6 * scale);
    ++n;
  }
  EXPECT_GT(n, 300);
}

TEST(Gamma, DoubleZeroExactForRationalParameters) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 13);
  for (int it = 0; it < 300; ++it) {
    Rational u(num(rng), den(rng));
    u.canonicalize();
    Masses<Rational> m{Rational(den(rng)), Rational(den(rng)), Rational(den(rng))};
    auto c = gamma_point_exact(u, m);
    if (!c) continue;
    auto f = build_quintic(couplings_of(c->first, c->second), m);
    EXPECT_EQ(f(u), 0);
    EXPECT_EQ(f.derivative()(u), 0);
  }
}

TEST(Gamma, PointsAtInfinity) {
  EXPECT_TRUE(gamma_point(-1.0, kUnit).at_infinity);
  auto sp = special_points(1.0);
  EXPECT_TRUE(gamma_point(sp.xi_minus, kUnit).at_infinity);
  EXPECT_TRUE(gamma_point(sp.xi_plus, kUnit).at_infinity);
  EXPECT_FALSE(gamma_point(0.3, kUnit).at_infinity);
  // u = infinity is an ordinary point of the curve.
  auto inf = gamma_point(std::numeric_limits<double>::infinity(), kUnit);
  EXPECT_FALSE(inf.at_infinity);
  EXPECT_NEAR(inf.point.b1, gamma_point(1e8, kUnit).point.b1, 1e-6);
}

TEST(Gamma, BranchesAreContinuousInsideEachInterval) {
  auto sp = special_points(1.0);
  auto samples = trace_gamma(kUnit, -6, 6, 601);
  ASSERT_FALSE(samples.empty());
  for (size_t i = 1; i < samples.size(); ++i) {
    const auto& a = samples[i - 1];
    const auto& b = samples[i];
    if (a.at_infinity || b.at_infinity || a.branch != b.branch) continue;
    // Distance in the compactified plane b / (1 + |b|).
    const double na = 1 + std::hypot(a.point.b1, a.point.b2), nb = 1 + std::hypot(b.point.b1, b.point.b2);
    const double jump = std::hypot(a.point.b1 / na - b.point.b1 / nb, a.point.b2 / na - b.point.b2 / nb);
    EXPECT_LT(jump, 0.05) << "u=" << a.u << ".." << b.u;
  }
  std::set<int> branches;
  int at_inf = 0;
  for (const auto& s : samples) {
    branches.insert(s.branch);
    if (s.at_infinity) {
      ++at_inf;
      EXPECT_TRUE(std::abs(s.u - sp.xi_minus) < 1e-12 || std::abs(s.u + 1) < 1e-12 || std::abs(s.u - sp.xi_plus) < 1e-12);
    }
  }
  EXPECT_EQ(branches, (std::set<int>{1, 2, 3}));
  EXPECT_EQ(at_inf, 3);
}

TEST(SpecialPoints, EqualMassClosedForms) {
  auto sp = special_points(1.0);
  EXPECT_NEAR(sp.xi_plus, (-13 + std::sqrt(105.0)) / 8, 1e-15);
  EXPECT_NEAR(sp.xi_minus, (-13 - std::sqrt(105.0)) / 8, 1e-15);
  EXPECT_DOUBLE_EQ(sp.eta_minus, -2);
  EXPECT_DOUBLE_EQ(sp.eta_plus, -0.5);
  EXPECT_DOUBLE_EQ(sp.eta0, 1);
  EXPECT_DOUBLE_EQ(sp.xi0, -1);
}

TEST(SpecialPoints, ProductsOrderingAndCertificates) {
  for (double mu : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const MassTriple m{mu, mu, 1};
    auto sp = special_points(mu);
    EXPECT_NEAR(sp.xi_minus * sp.xi_plus, 1, 1e-12);
    EXPECT_NEAR(sp.eta_minus * sp.eta_plus, 1, 1e-12);
    EXPECT_LT(sp.xi_minus, sp.eta_minus);
    EXPECT_LT(sp.eta_minus, sp.xi0);
    EXPECT_LT(sp.xi0, sp.eta_plus);
    EXPECT_LT(sp.eta_plus, sp.xi_plus);
    EXPECT_LT(sp.xi_plus, sp.eta0);
    auto g = gamma_curve(m);
    for (double xi : {sp.xi_minus, sp.xi_plus, sp.xi0})
      EXPECT_LE(std::abs(g.d(xi)) / detail::abs_scale(g.d, xi), 1e-9) << mu;
    for (double eta : {sp.eta_minus, sp.eta_plus, sp.eta0}) {
      // c'(eta) relative to the chord scale, by central differences.
      const double h = 1e-4;
      auto p = gamma_point(eta + h, m), q = gamma_point(eta - h, m), c = gamma_point(eta, m);
      const double d1 = std::hypot(p.point.b1 - q.point.b1, p.point.b2 - q.point.b2) / (2 * h);
      const double d2 = std::hypot(p.point.b1 + q.point.b1 - 2 * c.point.b1, p.point.b2 + q.point.b2 - 2 * c.point.b2) / (h * h);
      EXPECT_LT(d1, 1e-3 * d2) << mu << " " << eta;
    }
  }
}

TEST(SpecialPoints, GeneralMassRouteMatchesClosedForms) {
  for (double mu : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    auto a = special_points(mu);
    auto b = special_points(MassTriple{mu, mu, 1});
    EXPECT_NEAR(a.xi_minus, b.xi_minus, 1e-12 * std::abs(a.xi_minus));
    EXPECT_NEAR(a.xi_plus, b.xi_plus, 1e-12 * std::abs(a.xi_plus));
    EXPECT_NEAR(a.eta_minus, b.eta_minus, 1e-12 * std::abs(a.eta_minus));
    EXPECT_NEAR(a.eta_plus, b.eta_plus, 1e-12 * std::abs(a.eta_plus));
    EXPECT_NEAR(a.eta0, b.eta0, 1e-12);
  }
  EXPECT_THROW(special_points(0.0), Error);
  EXPECT_THROW(special_points(-1.0), Error);
}

TEST(Cusp, LocalFormAtOne) {
  for (double mu : {0.5, 1.0, 2.0, 10.0}) {
    auto cf = cusp_local_form(1.0, MassTriple{mu, mu, 1});
    EXPECT_NEAR(cf.gamma1, (7 + 8 * mu) / (24 + 80 * mu + 64 * mu * mu), 1e-12);
    EXPECT_NEAR(cf.gamma2, 3 * (7 + 8 * mu) / (8 * (3 + 4 * mu) * (3 + 4 * mu)), 1e-12);
  }
  auto at_one = cusp_local_form(1.0, kUnit);
  EXPECT_NEAR(at_one.gamma1, 15.0 / 168, 1e-14);
  EXPECT_NEAR(at_one.gamma2, 45.0 / 392, 1e-14);
}

TEST(Cusp, OtherCuspsAreRegular) {
  auto sp = special_points(1.0);
  for (double eta : {sp.eta_plus, sp.eta_minus}) {
    auto cf = cusp_local_form(eta, kUnit);
    EXPECT_NE(cf.gamma1, 0);
    EXPECT_NE(cf.gamma2, 0);
  }
}

TEST(Cusp, RegularParameterRejected) {
  try {
    cusp_local_form(0.3, kUnit);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotACusp);
  }
}

TEST(Regions, ThirteenDistinctTriples) {
  std::set<Triple> s(kRegionTriples.begin(), kRegionTriples.end());
  EXPECT_EQ(s.size(), 13u);
  for (int id = 1; id <= 13; ++id) {
    EXPECT_EQ(region_id(region_triple(id)), id);
    EXPECT_EQ(region_id(region_triple(id, Labeling::Mirror), Labeling::Mirror), id);
  }
  EXPECT_EQ(region_triple(2), (Triple{2, 0, 1}));
  EXPECT_EQ(region_triple(2, Labeling::Mirror), (Triple{0, 2, 1}));
  EXPECT_EQ(region_id({5, 0, 0}), 0);
}

TEST(Classify, AnchorIsRegionOne) {
  auto r = classify({1, 1}, kUnit);
  EXPECT_FALSE(r.boundary);
  EXPECT_EQ(r.triple, (Triple{0, 0, 1}));
  EXPECT_EQ(r.region, 1);
  EXPECT_EQ(pattern(r), "-");
  EXPECT_EQ(r.negative_u, (std::array<int, 3>{0, 0, 1}));
}

TEST(Classify, AxesAndCurveAreBoundary) {
  // The exact curve point c(1) = (-1/28, -1/28) has no double representation.
  EXPECT_TRUE(classify_exact(Rational(-1, 28), Rational(-1, 28), exact(kUnit)).boundary);
  EXPECT_FALSE(classify_exact(Rational(-1, 27), Rational(-1, 28), exact(kUnit)).boundary);
  for (BetaPoint b : {BetaPoint{2, 0}, BetaPoint{0, -3}}) {
    try {
      classify(b, kUnit);
      FAIL() << b.b1 << "," << b.b2;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Boundary);
    }
  }
}

TEST(Classify, AgreesWithScanOracle) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> b(-6, 6);
  int n = 0;
  for (int it = 0; it < 400; ++it) {
    const MassTriple m = random_masses(rng);
    const BetaPoint p{b(rng), b(rng)};
    RegionReport r;
    try {
      r = classify(p, m);
    } catch (const Error&) {
      continue;
    }
    bool easy = true;
    for (size_t i = 0; i < r.roots.size(); ++i) {
      const double u = r.roots[i].u;
      if (std::abs(u) < 1e-2 || std::abs(u + 1) < 1e-2 || std::abs(u) > 1e3) easy = false;
      if (i && u - r.roots[i - 1].u < 1e-2 * (1 + std::abs(u))) easy = false;
    }
    if (!easy) continue;
    EXPECT_EQ(r.triple, oracle::scan_counts({p.b1, p.b2, 1}, {m.m1, m.m2, m.m3}));
    ++n;
  }
  EXPECT_GT(n, 300);
}

TEST(Classify, SignMatchesPotentialOfReconstructedConfiguration) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> b(-6, 6);
  int n = 0;
  for (int it = 0; it < 200; ++it) {
    const MassTriple m = random_masses(rng);
    const BetaPoint p{b(rng), b(rng)};
    RegionReport r;
    try {
      r = classify(p, m);
    } catch (const Error&) {
      continue;
    }
    const CouplingTriple a{p.b1, p.b2, 1};
    for (const auto& root : r.roots) {
      // U carries the sign of the potential of the sign-adjusted system at x = 1.
      const double U = reduced_potential(root.u, p);
      EXPECT_EQ(root.sign, U > 0 ? 1 : -1);
      CentralConfigResult cc;
      try {
        cc = collinear_cc(root.u, a, m, 1.0, 1e-7);
      } catch (const Error&) {
        continue;
      }
      if (std::abs(cc.lambda) < 1e-9 * std::abs(cc.V)) continue;
      EXPECT_EQ(root.sign, cc.lambda > 0 ? -1 : 1) << "u=" << root.u;
      ++n;
    }
  }
  EXPECT_GT(n, 100);
}

TEST(Classify, SignTableRows) {
  const auto& reps = unit_representatives();
  for (const auto& row : oracle::sign_table()) {
    auto it = reps.find(row.triple);
    ASSERT_NE(it, reps.end());
    EXPECT_EQ(pattern(classify(it->second, kUnit)), row.signs)
        << row.triple[0] << row.triple[1] << row.triple[2];
  }
}

TEST(Classify, RegionSixSplitsAcrossTheParabola) {
  // Both points sit in the (1,1,1) region near the parabola vertex (-1/4, -1/4).
  auto inside = classify({-0.3, -0.3}, kUnit);
  auto outside = classify({-0.2, -0.2}, kUnit);
  EXPECT_EQ(inside.triple, (Triple{1, 1, 1}));
  EXPECT_EQ(outside.triple, (Triple{1, 1, 1}));
  EXPECT_LT(zero_potential_parabola({-0.3, -0.3}), 0);
  EXPECT_GT(zero_potential_parabola({-0.2, -0.2}), 0);
  EXPECT_EQ(pattern(inside), "+-+");
  EXPECT_EQ(pattern(outside), "+--");
}

TEST(Regions, RepresentativesCoverAllThirteen) {
  const auto& reps = unit_representatives();
  EXPECT_EQ(reps.size(), 13u);
  for (const auto& [t, p] : reps) EXPECT_EQ(classify(p, kUnit).triple, t);
}

TEST(ReducedPotential, Values) {
  EXPECT_DOUBLE_EQ(reduced_potential(1, {1, 1}), -2.5);
  EXPECT_LT(reduced_potential(1e-9, {1, 1}), -1e8);
  for (double u : {0.0, -1.0}) {
    try {
      reduced_potential(u, {1, 1});
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::CollisionPoint);
    }
  }
  // On the parabola the numerator has a double zero, so U vanishes there.
  for (double t : {-3.0, -0.5, 0.7, 4.0}) {
    const BetaPoint b{-(t - 1) * (t - 1) / 4, -(t + 1) * (t + 1) / 4};
    EXPECT_NEAR(zero_potential_parabola(b), 0, 1e-12);
    const double u = -(1 + b.b1 + b.b2) / (2 * b.b1);
    if (std::abs(u) < 1e-6 || std::abs(u + 1) < 1e-6) continue;
    EXPECT_NEAR(reduced_potential(u, b), 0, 1e-12);
  }
}

TEST(ReducedPotential, MatchesPotentialOfReconstructedConfiguration) {
  // U(u) a3 equals V at x = 1 for the sign-adjusted couplings.
  const BetaPoint b{1, 1};
  const CouplingTriple a{1, 1, 1};
  for (double u : {0.5, 1.0, 3.0}) {
    auto c = reconstruct_collinear(u, 1.0, kUnit);
    const double V = potential(c, pair_couplings(collinear_couplings(u, a)));
    EXPECT_NEAR(reduced_potential(u, b), V, 1e-12);
  }
}

TEST(Parabola, DefectValuesAndCurveSide) {
  EXPECT_DOUBLE_EQ(zero_potential_parabola({0, 0}), 1);
  EXPECT_DOUBLE_EQ(zero_potential_parabola({-0.25, -0.25}), 0);
  int sign = 0;
  for (const auto& s : trace_gamma(kUnit, -50, 50, 4001)) {
    if (s.at_infinity) continue;
    const double d = zero_potential_parabola(s.point);
    if (std::abs(d) < 1e-12) continue;
    const int sd = d > 0 ? 1 : -1;
    if (sign == 0) sign = sd;
    EXPECT_EQ(sd, sign) << s.u;
  }
}

TEST(Raster, BoxAroundAnchor) {
  auto rows = raster_sweep({{0.9, 1.1, 3}, {0.9, 1.1, 3}}, kUnit);
  ASSERT_EQ(rows.size(), 9u);
  for (const auto& r : rows) EXPECT_EQ(r.report.region, 1);
  // Row-major: b1 varies fastest.
  EXPECT_EQ(rows[1].b2, rows[0].b2);
  EXPECT_GT(rows[1].b1, rows[0].b1);
  EXPECT_GT(rows[3].b2, rows[0].b2);
}

TEST(Raster, StraddlingTheBeta1Axis) {
  auto rows = raster_sweep({{2, 2, 1}, {-0.01, 0.01, 3}}, kUnit);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_TRUE(rows[1].report.boundary);
  const auto& lo = rows[0].report.triple;
  const auto& hi = rows[2].report.triple;
  EXPECT_EQ(lo[0], hi[0]);
  EXPECT_EQ(std::abs(lo[1] - hi[1]), 1);
  EXPECT_EQ(std::abs(lo[2] - hi[2]), 1);
}

TEST(Raster, EmptyGridAndThreadIndependence) {
  EXPECT_TRUE(raster_sweep({{0, 1, 0}, {0, 1, 5}}, kUnit).empty());
  const GridSpec g{{-3, 3, 13}, {-3, 3, 11}};
  auto a = raster_sweep(g, kUnit, 1);
  auto b = raster_sweep(g, kUnit, 3);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].b1, b[i].b1);
    EXPECT_EQ(a[i].b2, b[i].b2);
    EXPECT_EQ(a[i].report.triple, b[i].report.triple);
    EXPECT_EQ(a[i].report.boundary, b[i].report.boundary);
  }
}

TEST(Crossings, SegmentThroughKnownCurvePoint) {
  const double u0 = 2.5;
  auto p = gamma_point(u0, kUnit).point;
  auto d = gamma_derivative(u0, kUnit);
  const double nd = std::hypot(d[0], d[1]), h = 1e-3;
  auto cr = gamma_segment_crossings({p.b1 - h * d[1] / nd, p.b2 + h * d[0] / nd},
                                    {p.b1 + h * d[1] / nd, p.b2 - h * d[0] / nd}, kUnit);
  bool found = false;
  for (const auto& c : cr)
    if (std::abs(c.u - u0) < 1e-6) {
      found = true;
      EXPECT_NEAR(c.t, 0.5, 1e-6);
    }
  EXPECT_TRUE(found);
  EXPECT_TRUE(gamma_segment_crossings({1, 1}, {1.1, 1.2}, kUnit).empty());
}
