#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ctbp/phase.hpp"
#include "ctbp/symmetry.hpp"

namespace ctbp {

/// Two parameter points on either side of one transversal crossing.
struct CrossingPair {
  BetaPoint before;
  BetaPoint after;
  int kind = 0;                           // 1: b1-axis, 2: b2-axis, 3: curve
  IntervalId interval = IntervalId::I3;   // curve crossings only
};

namespace detail {

inline double random_magnitude(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
  return std::exp(d(rng));
}

inline double random_signed(std::mt19937_64& rng, double lo, double hi) {
  std::bernoulli_distribution s(0.5);
  return s(rng) ? random_magnitude(rng, lo, hi) : -random_magnitude(rng, lo, hi);
}

}  // namespace detail

/// A vertical (b1-axis) or horizontal (b2-axis) segment across an axis, shrunk
/// until the curve no longer meets it.
inline std::optional<CrossingPair> axis_crossing_pair(std::mt19937_64& rng, const MassTriple& m, int axis) {
  const double b = detail::random_signed(rng, 0.05, 20);
  double delta = 0.1 * std::min(1.0, std::abs(b));
  auto seg = [&](double d) {
    return axis == 1 ? std::make_pair(BetaPoint{b, -d}, BetaPoint{b, d}) : std::make_pair(BetaPoint{-d, b}, BetaPoint{d, b});
  };
  auto [a0, b0] = seg(delta);
  double closest = delta;
  for (const auto& c : gamma_segment_crossings(a0, b0, m)) {
    const double off = std::abs(axis == 1 ? c.point.b2 : c.point.b1);
    if (off == 0) return std::nullopt;
    closest = std::min(closest, off);
  }
  delta = std::min(delta, 0.5 * closest);
  auto [a1, b1] = seg(delta);
  if (!gamma_segment_crossings(a1, b1, m).empty()) return std::nullopt;
  return CrossingPair{a1, b1, axis, IntervalId::I3};
}

/// A short segment through c(u) along the curve normal, certified to meet the
/// curve exactly once and to stay off both axes.
inline std::optional<CrossingPair> gamma_crossing_pair(std::mt19937_64& rng, const MassTriple& m) {
  std::uniform_real_distribution<double> t(-1.5, 1.5);
  const double u = std::tan(t(rng));
  auto sp = special_points(m);
  for (double s : {sp.xi_minus, sp.xi_plus, -1.0, 0.0, sp.eta_minus, sp.eta_plus, sp.eta0})
    if (std::abs(u - s) < 0.02 * std::max(1.0, std::abs(s))) return std::nullopt;
  auto g = gamma_point(u, m);
  if (g.at_infinity) return std::nullopt;
  const BetaPoint p = g.point;
  const double norm = std::hypot(p.b1, p.b2);
  if (!(norm < 1e4) || std::abs(p.b1) < 1e-6 || std::abs(p.b2) < 1e-6) return std::nullopt;
  auto d = gamma_derivative(u, m);
  const double nd = std::hypot(d[0], d[1]);
  if (!(nd > 0)) return std::nullopt;
  const double n1 = -d[1] / nd, n2 = d[0] / nd;
  double delta = 1e-3 * std::min({1.0 + norm, std::abs(p.b1), std::abs(p.b2)});
  for (int it = 0; it < 30; ++it, delta *= 0.5) {
    BetaPoint a{p.b1 - delta * n1, p.b2 - delta * n2}, b{p.b1 + delta * n1, p.b2 + delta * n2};
    if (a.b1 * b.b1 <= 0 || a.b2 * b.b2 <= 0) continue;
    auto cr = gamma_segment_crossings(a, b, m);
    if (cr.size() != 1) continue;
    if (cr[0].t <= 0 || cr[0].t >= 1) continue;
    return CrossingPair{a, b, 3, interval_of(u)};
  }
  return std::nullopt;
}

/// Whether the counts on both sides of a pair obey the crossing rules.
inline bool crossing_rule_holds(const CrossingPair& c, const RootCounts& a, const RootCounts& b) {
  const int d1 = b[0] - a[0], d2 = b[1] - a[1], d3 = b[2] - a[2];
  if (c.kind == 1) return d1 == 0 && std::abs(d2) == 1 && std::abs(d3) == 1;
  if (c.kind == 2) return d2 == 0 && std::abs(d1) == 1 && std::abs(d3) == 1;
  const std::array<int, 3> d{d1, d2, d3};
  for (size_t i = 0; i < 3; ++i) {
    const bool hit = static_cast<size_t>(c.interval) == i;
    if (hit && std::abs(d[i]) != 2) return false;
    if (!hit && d[i] != 0) return false;
  }
  return true;
}

struct SuiteResult {
  std::string name;
  bool pass = true;
  double max_residual = 0;
  int samples = 0;
};

/// Seeded cross-module property suites; each iteration draws fresh inputs.
inline std::vector<SuiteResult> run_verification(std::uint64_t seed, int iterations) {
  std::vector<SuiteResult> out;
  if (iterations <= 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coupling(-3, 3);
  auto masses = [&] { return MassTriple{detail::random_magnitude(rng, 0.1, 10), detail::random_magnitude(rng, 0.1, 10),
                                        detail::random_magnitude(rng, 0.1, 10)}; };
  auto reduced = [&] {
    double u = detail::random_signed(rng, 0.02, 50);
    if (std::abs(u + 1) < 0.01) u = -2.5;
    return u;
  };

  SuiteResult fcov{"f_covariance"};
  SuiteResult gcov{"gamma_covariance"};
  SuiteResult equi{"count_equivariance"};
  for (int it = 0; it < iterations; ++it) {
    const MassTriple m = masses();
    const CouplingTriple a{coupling(rng), coupling(rng), coupling(rng)};
    const double u = reduced();
    for (Perm g : kAllPerms) {
      const double r = check_f_covariance(g, u, a, m);
      fcov.max_residual = std::max(fcov.max_residual, r);
      ++fcov.samples;
      try {
        const double rg = check_gamma_covariance(g, u, m);
        gcov.max_residual = std::max(gcov.max_residual, rg);
        ++gcov.samples;
      } catch (const Error&) {
      }
      try {
        auto n = count_roots_by_interval(a, m);
        auto n2 = count_roots_by_interval(act_alpha(g, a), act_mass(g, m));
        if (permute_counts(g, n) != n2) equi.pass = false;
        ++equi.samples;
      } catch (const Error&) {
      }
    }
  }
  fcov.pass = fcov.max_residual <= 1e-10;
  gcov.pass = gcov.max_residual <= 1e-10;
  out.push_back(fcov);
  out.push_back(gcov);
  out.push_back(equi);

  SuiteResult dz{"double_zero"};
  for (int it = 0; it < iterations; ++it) {
    const MassTriple m = masses();
    const double u = reduced();
    auto me = exact(m);
    const Rational uq = to_rational(u);
    auto c = gamma_point_exact(uq, me);
    if (!c) continue;
    QPoly f = build_quintic(couplings_of(c->first, c->second), me);
    if (f(uq) != 0 || f.derivative()(uq) != 0) dz.pass = false;
    auto s = gamma_point(u, m);
    if (s.at_infinity) continue;
    auto fd = build_quintic(couplings_of(s.point.b1, s.point.b2), m);
    auto basis = basis_polynomials(m);
    double scale = 0, dscale = 0;
    for (int i = 0; i < 3; ++i) {
      const double w = i == 0 ? s.point.b1 : (i == 1 ? s.point.b2 : 1.0);
      scale += std::abs(w * basis[static_cast<size_t>(i)](u));
      dscale += std::abs(w * basis[static_cast<size_t>(i)].derivative()(u));
    }
    dz.max_residual = std::max({dz.max_residual, std::abs(fd(u)) / scale, std::abs(fd.derivative()(u)) / dscale});
    ++dz.samples;
  }
  dz.pass = dz.pass && dz.max_residual <= 1e-10;
  out.push_back(dz);

  SuiteResult cross{"crossing_rule"};
  const MassTriple unit{1, 1, 1};
  for (int it = 0; it < iterations; ++it) {
    const MassTriple m = it % 2 == 0 ? unit : masses();
    std::optional<CrossingPair> c;
    const int kind = it % 3;
    c = kind == 2 ? gamma_crossing_pair(rng, m) : axis_crossing_pair(rng, m, kind + 1);
    if (!c) continue;
    auto ra = classify_exact(to_rational(c->before.b1), to_rational(c->before.b2), exact(m));
    auto rb = classify_exact(to_rational(c->after.b1), to_rational(c->after.b2), exact(m));
    if (ra.boundary || rb.boundary) continue;
    if (!crossing_rule_holds(*c, ra.triple, rb.triple)) cross.pass = false;
    ++cross.samples;
  }
  out.push_back(cross);

  SuiteResult grad{"gradient"};
  std::normal_distribution<double> gauss(0, 1);
  for (int it = 0; it < iterations; ++it) {
    Configuration c;
    c.m = masses();
    for (auto& q : c.q) q = Vec3(gauss(rng), gauss(rng), gauss(rng));
    c.recenter();
    const PairCouplings g{coupling(rng), coupling(rng), coupling(rng)};
    auto gd = gradient_and_alpha_matrix(c, g);
    const double scale = std::max({c.distance(0, 1), c.distance(0, 2), c.distance(1, 2)});
    const double h = 1e-6 * scale;
    for (size_t i = 0; i < 3; ++i) {
      Vec3 fd;
      for (int k = 0; k < 3; ++k) {
        Configuration cp = c, cm = c;
        cp.q[i][k] += h;
        cm.q[i][k] -= h;
        fd[k] = (potential(cp, g) - potential(cm, g)) / (2 * h);
      }
      const double r = (fd - gd.grad[i]).norm() / std::max(1e-300, gd.grad[i].norm());
      grad.max_residual = std::max(grad.max_residual, r);
    }
    ++grad.samples;
  }
  grad.pass = grad.max_residual <= 1e-6;
  out.push_back(grad);

  SuiteResult lag{"lagrange_identity"};
  for (int it = 0; it < iterations; ++it) {
    const MassTriple m = masses();
    const CouplingTriple a{coupling(rng), coupling(rng), coupling(rng)};
    std::vector<CentralConfigResult> ccs;
    try {
      ccs = physical_collinear_ccs(a, m);
    } catch (const Error&) {
      continue;
    }
    const PairCouplings g = pair_couplings(a);
    for (const auto& cc : ccs) {
      // Multiplier from the force balance alone, independent of V.
      auto gd = gradient_and_alpha_matrix(cc.config, g);
      const Vec3 ctr = cc.config.center();
      double num = 0, den = 0;
      for (size_t i = 0; i < 3; ++i) {
        const Vec3 w = cc.config.mass(static_cast<int>(i)) * (cc.config.q[i] - ctr);
        num += gd.grad[i].dot(w);
        den += w.squaredNorm();
      }
      const double lambda = num / den;
      const double V = potential(cc.config, g), I = moment_of_inertia(cc.config);
      const double r = std::abs(V + lambda * I) / std::max({std::abs(V), std::abs(lambda * I), 1e-300});
      lag.max_residual = std::max(lag.max_residual, r);
      ++lag.samples;
    }
  }
  lag.pass = lag.max_residual <= 1e-10;
  out.push_back(lag);
  return out;
}

}  // namespace ctbp
