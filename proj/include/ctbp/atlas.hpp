#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "ctbp/quintic.hpp"

namespace ctbp {

/// Reduced parameters (a1/a3, a2/a3).
struct BetaPoint {
  double b1 = 0;
  double b2 = 0;
};

template <class T>
Couplings<T> couplings_of(const T& b1, const T& b2) {
  return {b1, b2, T(1)};
}

// ---------------------------------------------------------------------------
// Discriminant curve

/// c(u) = (n1(u)/d(u), n2(u)/d(u)).
template <class T>
struct GammaCurve {
  Polynomial<T> n1, n2, d;
};

template <class T>
GammaCurve<T> gamma_curve(const Masses<T>& m) {
  using P = Polynomial<T>;
  const T& m1 = m.m1;
  const T& m2 = m.m2;
  const T& m3 = m.m3;
  const P u{T(0), T(1)};
  const P w{T(1), T(1)};
  P g1{T(-2 * m2 * (m1 + m3)), T(-m1 * (-3 * m1 + m2 - 3 * m3)), T(m1 * (3 * m1 + m2 + m3))};
  P g2 = u.pow(3) * P{T(m2 * (m1 + 3 * m2 + m3)), T(m2 * (-m1 + 3 * (m2 + m3))), T(-2 * m1 * (m2 + m3))};
  P g3 = w.pow(3) * P{T(2 * m2 * (m1 + m3)), T(3 * m3 * (m2 + m3) + m1 * (4 * m2 + 3 * m3)), T(2 * m1 * (m2 + m3))};
  return {T(-m3 / m1) * g1, T(-m3 / m2) * g2, g3};
}

/// Quadratic factor of d whose roots are the finite points at infinity besides u = -1.
template <class T>
Polynomial<T> infinity_quadratic(const Masses<T>& m) {
  const T& m1 = m.m1;
  const T& m2 = m.m2;
  const T& m3 = m.m3;
  return Polynomial<T>{T(2 * m2 * (m1 + m3)), T(3 * m3 * (m2 + m3) + m1 * (4 * m2 + 3 * m3)), T(2 * m1 * (m2 + m3))};
}

/// Roots (xi_minus, xi_plus) of the infinity quadratic; -1 lies between them.
inline std::pair<double, double> infinity_parameters(const MassTriple& m) {
  auto q = infinity_quadratic(m);
  const double a = q.coeff(2), b = q.coeff(1), c = q.coeff(0);
  const double disc = std::sqrt(b * b - 4 * a * c);
  // Stable form; b > 0 for positive masses.
  const double r1 = (-b - disc) / (2 * a);
  const double r2 = c / (a * r1);
  return {std::min(r1, r2), std::max(r1, r2)};
}

struct GammaSample {
  double u = 0;
  bool at_infinity = false;
  BetaPoint point;        // valid when !at_infinity
  double dir1 = 0;        // unit direction of escape when at_infinity
  double dir2 = 0;
  int branch = 0;         // 1: (xi-, -1), 2: (-1, xi+), 3: the rest through u = infinity
};

inline int gamma_branch(double u, const MassTriple& m) {
  auto [xm, xp] = infinity_parameters(m);
  if (u >= xm && u < -1) return 1;
  if (u >= -1 && u < xp) return 2;
  return 3;
}

/// c(u). A sample whose denominator satisfies |d(u)| <= inf_tol * sum |d_i||u|^i
/// is reported as the point at infinity with direction (n1, n2) normalized.
/// u = +-infinity is accepted and evaluates the limit through the reversed chart.
inline GammaSample gamma_point(double u, const MassTriple& m, double inf_tol = 1e-12) {
  m.validate();
  auto g = gamma_curve(m);
  GammaSample s;
  s.u = u;
  if (std::isinf(u)) {
    s.branch = 3;
    const int n = 5;
    s.point = {g.n1.reversed(n)(0.0) / g.d.reversed(n)(0.0), g.n2.reversed(n)(0.0) / g.d.reversed(n)(0.0)};
    return s;
  }
  s.branch = gamma_branch(u, m);
  const double d = g.d(u), n1 = g.n1(u), n2 = g.n2(u);
  if (d == 0 || std::abs(d) <= inf_tol * detail::abs_scale(g.d, u)) {
    s.at_infinity = true;
    const double nn = std::hypot(n1, n2);
    s.dir1 = nn > 0 ? n1 / nn : 0;
    s.dir2 = nn > 0 ? n2 / nn : 0;
    return s;
  }
  s.point = {n1 / d, n2 / d};
  return s;
}

/// Exact c(u) for rational u; nullopt at a point at infinity.
inline std::optional<std::pair<Rational, Rational>> gamma_point_exact(const Rational& u, const Masses<Rational>& m) {
  auto g = gamma_curve(m);
  Rational d = g.d(u);
  if (d == 0) return std::nullopt;
  Rational b1 = g.n1(u) / d, b2 = g.n2(u) / d;
  b1.canonicalize();
  b2.canonicalize();
  return std::make_pair(b1, b2);
}

/// c'(u) via the quotient rule.
inline std::array<double, 2> gamma_derivative(double u, const MassTriple& m) {
  auto g = gamma_curve(m);
  const double d = g.d(u), dd = g.d.derivative()(u);
  return {(g.n1.derivative()(u) * d - g.n1(u) * dd) / (d * d), (g.n2.derivative()(u) * d - g.n2(u) * dd) / (d * d)};
}

/// Taylor coefficients of c(eta + t) up to t^order.
inline std::vector<std::array<double, 2>> gamma_taylor(double eta, const MassTriple& m, int order) {
  auto g = gamma_curve(m);
  auto n1 = g.n1.shifted(eta), n2 = g.n2.shifted(eta), d = g.d.shifted(eta);
  std::vector<std::array<double, 2>> a(static_cast<size_t>(order) + 1);
  const double d0 = d.coeff(0);
  for (int k = 0; k <= order; ++k) {
    double s1 = n1.coeff(k), s2 = n2.coeff(k);
    for (int j = 1; j <= k; ++j) {
      s1 -= d.coeff(j) * a[static_cast<size_t>(k - j)][0];
      s2 -= d.coeff(j) * a[static_cast<size_t>(k - j)][1];
    }
    a[static_cast<size_t>(k)] = {s1 / d0, s2 / d0};
  }
  return a;
}

// ---------------------------------------------------------------------------
// Special points

struct SpecialPoints {
  double xi_minus = 0, xi_plus = 0, xi0 = -1;
  double eta_minus = 0, eta_plus = 0, eta0 = 1;
};

/// Closed forms for masses (mu, mu, 1).
inline SpecialPoints special_points(double mu) {
  if (!(mu > 0) || !std::isfinite(mu)) throw Error(ErrorKind::InvalidInput, "mu must be positive");
  SpecialPoints s;
  const double mu2 = mu * mu, mu3 = mu2 * mu;
  const double xd = std::sqrt(9 + 36 * mu + 44 * mu2 + 16 * mu3);
  const double xb = -3 - 6 * mu - 4 * mu2;
  const double xden = 4 * mu * (1 + mu);
  const double ed = std::sqrt(21 + 80 * mu + 92 * mu2 + 32 * mu3);
  const double eb = -5 - 12 * mu - 8 * mu2;
  const double eden = 2 * (1 + 5 * mu + 4 * mu2);
  s.xi_minus = (xb - xd) / xden;
  s.xi_plus = (xb + xd) / xden;
  s.eta_minus = (eb - ed) / eden;
  s.eta_plus = (eb + ed) / eden;
  return s;
}

/// Wronskian det[f_i; f_i'; f_i''], whose zeros are where c'(u) vanishes
/// (besides the factors u^2 (1+u)^2).
template <class T>
Polynomial<T> singularity_polynomial(const Masses<T>& m) {
  auto f = basis_polynomials(m);
  std::array<Polynomial<T>, 3> d1, d2;
  for (int i = 0; i < 3; ++i) {
    d1[i] = f[i].derivative();
    d2[i] = d1[i].derivative();
  }
  return f[0] * (d1[1] * d2[2] - d1[2] * d2[1]) - f[1] * (d1[0] * d2[2] - d1[2] * d2[0]) +
         f[2] * (d1[0] * d2[1] - d1[1] * d2[0]);
}

/// Special points for arbitrary masses: xi from the infinity quadratic, eta
/// from the real roots of the cubic cofactor of the Wronskian, one per interval.
inline SpecialPoints special_points(const MassTriple& m) {
  m.validate();
  SpecialPoints s;
  std::tie(s.xi_minus, s.xi_plus) = infinity_parameters(m);
  auto me = exact(m);
  QPoly w = singularity_polynomial(me);
  QPoly uw = QPoly{0, 0, 1} * QPoly{1, 2, 1};
  QPoly cubic = w.divmod(uw).first;
  auto er = exact_real_roots(cubic, Rational(1, 1) / Rational(mpz_class(1) << 70));
  s.eta_minus = s.eta_plus = s.eta0 = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : er.roots) {
    const double v = to_double(r.enclosure.mid());
    switch (r.interval) {
      case IntervalId::I1: s.eta_minus = v; break;
      case IntervalId::I2: s.eta_plus = v; break;
      case IntervalId::I3: s.eta0 = v; break;
    }
  }
  return s;
}

struct CuspLocalForm {
  double gamma1 = 0;  // t^3 coefficient across the cusp direction
  double gamma2 = 0;  // t^2 coefficient along it
};

/// Leading coefficients of c(eta + t) - c(eta) in the frame (J v, v), v = c2 / |c2|_inf.
inline CuspLocalForm cusp_local_form(double eta, const MassTriple& m, double tol = 1e-8) {
  m.validate();
  auto g = gamma_curve(m);
  if (std::abs(g.d(eta)) <= 1e-12 * detail::abs_scale(g.d, eta))
    throw Error(ErrorKind::NotACusp, "parameter maps to infinity");
  auto a = gamma_taylor(eta, m, 3);
  const auto& c1 = a[1];
  const auto& c2 = a[2];
  const auto& c3 = a[3];
  const double n1 = std::hypot(c1[0], c1[1]);
  const double scale = std::max(std::hypot(c2[0], c2[1]), std::hypot(c3[0], c3[1]));
  if (!(n1 <= tol * scale)) throw Error(ErrorKind::NotACusp, "c'(eta) does not vanish");
  const double inf = std::max(std::abs(c2[0]), std::abs(c2[1]));
  if (inf == 0) throw Error(ErrorKind::NotACusp, "degenerate cusp: second derivative vanishes");
  const double v0 = c2[0] / inf, v1 = c2[1] / inf;
  CuspLocalForm out;
  out.gamma2 = v0 * c2[0] + v1 * c2[1];
  out.gamma1 = -v1 * c3[0] + v0 * c3[1];
  return out;
}

// ---------------------------------------------------------------------------
// Regions

using Triple = RootCounts;

/// Region i+1 of the canonical numbering has triple kRegionTriples[i].
inline constexpr std::array<Triple, 13> kRegionTriples = {{
    {0, 0, 1}, {2, 0, 1}, {1, 0, 0}, {1, 2, 0}, {1, 3, 1}, {1, 1, 1}, {3, 1, 1},
    {2, 1, 0}, {0, 1, 0}, {0, 2, 1}, {0, 1, 2}, {1, 0, 2}, {1, 1, 3},
}};

/// Mirror swaps labels 2<->10, 3<->9 and 11<->12, the numbering used when
/// regions are drawn with beta1 > 0, beta2 < 0 as region 3.
enum class Labeling { Canonical, Mirror };

inline int relabel(int id, Labeling l) {
  if (l == Labeling::Canonical) return id;
  switch (id) {
    case 2: return 10;
    case 10: return 2;
    case 3: return 9;
    case 9: return 3;
    case 11: return 12;
    case 12: return 11;
    default: return id;
  }
}

/// 0 when the triple is not one of the thirteen.
inline int region_id(const Triple& t, Labeling l = Labeling::Canonical) {
  for (size_t i = 0; i < kRegionTriples.size(); ++i)
    if (kRegionTriples[i] == t) return relabel(static_cast<int>(i) + 1, l);
  return 0;
}

inline Triple region_triple(int id, Labeling l = Labeling::Canonical) {
  if (id < 1 || id > 13) throw Error(ErrorKind::InvalidInput, "region id out of range");
  return kRegionTriples[static_cast<size_t>(relabel(id, l)) - 1];
}

/// U(u) = -(b1 u^2 + (1 + b1 + b2) u + b2) / (u (1 + u)).
inline double reduced_potential(double u, const BetaPoint& b) {
  if (u == 0 || u == -1) throw Error(ErrorKind::CollisionPoint, "U has poles at u = 0 and u = -1");
  return -(b.b1 * u * u + (1 + b.b1 + b.b2) * u + b.b2) / (u * (1 + u));
}

/// Numerator of -U(u) u (1 + u).
template <class T>
Polynomial<T> potential_numerator(const T& b1, const T& b2) {
  return Polynomial<T>{b2, T(1 + b1 + b2), b1};
}

/// (b1 - b2)^2 + 2 (b1 + b2) + 1: zero on the parabola where U acquires a double zero.
inline double zero_potential_parabola(const BetaPoint& b) {
  const double d = b.b1 - b.b2;
  return d * d + 2 * (b.b1 + b.b2) + 1;
}

struct RootSign {
  double u = 0;
  IntervalId interval = IntervalId::I3;
  int sign = 0;  // sign of U at the root
};

struct RegionReport {
  Triple triple{0, 0, 0};
  int region = 0;  // canonical id, 0 when boundary
  bool boundary = false;
  std::vector<RootSign> roots;
  std::array<int, 3> negative_u{0, 0, 0};  // roots with U < 0 per interval
};

namespace detail {

/// With `precise`, reported root values are refined to about 2^-60 relative;
/// otherwise they are isolating-interval midpoints (enough for the sweep).
inline RegionReport classify_impl(const Rational& b1, const Rational& b2, const Masses<Rational>& m,
                                  bool precise = false) {
  RegionReport rep;
  if (b1 == 0 || b2 == 0) {
    rep.boundary = true;
    return rep;
  }
  QPoly f = build_quintic(couplings_of(b1, b2), m);
  ExactRoots er = exact_real_roots(f);
  for (const auto& r : er.roots)
    if (r.collision || r.factor > 0) {
      rep.boundary = true;
      return rep;
    }
  const QPoly num = potential_numerator(b1, b2);
  std::vector<std::vector<QPoly>> seqs;
  for (const auto& s : er.factors) seqs.push_back(signed_remainder_sequence(s, s.derivative() * num));
  for (auto& r : er.roots) {
    int sn;
    if (r.enclosure.exact()) {
      sn = sign_of(num(r.enclosure.lo));
    } else {
      const auto& seq = seqs[static_cast<size_t>(r.factor)];
      sn = sign_variations(seq, r.enclosure.lo) - sign_variations(seq, r.enclosure.hi);
    }
    if (precise && !r.enclosure.exact()) {
      Rational w = abs(r.enclosure.hi) + abs(r.enclosure.lo) + 1;
      w /= Rational(mpz_class(1) << 60);
      refine(er.factors[static_cast<size_t>(r.factor)], r.enclosure, w);
    }
    const int denom = r.interval == IntervalId::I2 ? -1 : 1;
    RootSign rs;
    rs.u = to_double(r.enclosure.mid());
    rs.interval = r.interval;
    rs.sign = -sn * denom;
    rep.roots.push_back(rs);
    ++rep.triple[static_cast<size_t>(r.interval)];
    if (rs.sign < 0) ++rep.negative_u[static_cast<size_t>(r.interval)];
  }
  rep.region = region_id(rep.triple);
  return rep;
}

}  // namespace detail

/// Never throws for Boundary; the report carries the flag instead.
inline RegionReport classify_exact(const Rational& b1, const Rational& b2, const Masses<Rational>& m) {
  return detail::classify_impl(b1, b2, m);
}

inline RegionReport classify(const BetaPoint& b, const MassTriple& m) {
  m.validate();
  if (!std::isfinite(b.b1) || !std::isfinite(b.b2)) throw Error(ErrorKind::InvalidInput, "beta must be finite");
  auto rep = detail::classify_impl(to_rational(b.b1), to_rational(b.b2), exact(m), true);
  if (rep.boundary) throw Error(ErrorKind::Boundary, "parameter lies on an axis or on the discriminant curve");
  return rep;
}

// ---------------------------------------------------------------------------
// Raster sweep

struct GridAxis {
  double min = 0;
  double max = 0;
  int n = 0;
};

struct GridSpec {
  GridAxis b1;
  GridAxis b2;
};

struct RasterRow {
  Rational b1, b2;  // exact grid coordinates
  RegionReport report;
};

inline Rational grid_coordinate(const GridAxis& a, int k) {
  if (a.n <= 1) return to_rational(a.min);
  Rational lo = to_rational(a.min), hi = to_rational(a.max);
  Rational x = lo + (hi - lo) * k / (a.n - 1);
  x.canonicalize();
  return x;
}

/// Row-major sweep: outer loop over b2 ascending, inner over b1. Rows are
/// delivered to `sink` in that order regardless of the thread count.
inline void raster_sweep(const GridSpec& g, const MassTriple& m, const std::function<void(const RasterRow&)>& sink,
                         unsigned threads = 1) {
  m.validate();
  if (g.b1.n < 0 || g.b2.n < 0) throw Error(ErrorKind::InvalidInput, "grid steps must be non-negative");
  if (g.b1.n == 0 || g.b2.n == 0) return;
  const auto me = exact(m);
  std::vector<Rational> xs, ys;
  for (int i = 0; i < g.b1.n; ++i) xs.push_back(grid_coordinate(g.b1, i));
  for (int j = 0; j < g.b2.n; ++j) ys.push_back(grid_coordinate(g.b2, j));
  threads = std::max(1u, threads);
  for (size_t j = 0; j < ys.size(); ++j) {
    std::vector<RasterRow> row(xs.size());
    auto work = [&](size_t start) {
      Masses<Rational> mm = me;  // private copy, mpq values are not shared across threads
      for (size_t i = start; i < xs.size(); i += threads) {
        Rational b1 = xs[i], b2 = ys[j];
        row[i].b1 = b1;
        row[i].b2 = b2;
        row[i].report = detail::classify_impl(b1, b2, mm);
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& t : pool) t.join();
    }
    for (const auto& r : row) sink(r);
  }
}

inline std::vector<RasterRow> raster_sweep(const GridSpec& g, const MassTriple& m, unsigned threads = 1) {
  std::vector<RasterRow> out;
  raster_sweep(g, m, [&](const RasterRow& r) { out.push_back(r); }, threads);
  return out;
}

// ---------------------------------------------------------------------------
// Tracing and crossings

/// Samples of c on [u_min, u_max]: `samples` uniform parameters plus the
/// special points in range, refined where consecutive points jump in the
/// compactified chart b / (1 + |b|).
inline std::vector<GammaSample> trace_gamma(const MassTriple& m, double u_min, double u_max, int samples,
                                            double max_step = 0.02, int max_depth = 12) {
  m.validate();
  if (!(u_min <= u_max) || samples < 0) throw Error(ErrorKind::InvalidInput, "bad u-range");
  std::vector<double> us;
  for (int i = 0; i < samples; ++i)
    us.push_back(samples == 1 ? u_min : u_min + (u_max - u_min) * i / (samples - 1));
  auto sp = infinity_parameters(m);
  for (double s : {sp.first, -1.0, sp.second})
    if (s >= u_min && s <= u_max && samples > 0) us.push_back(s);
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());

  auto compact = [](const GammaSample& s) -> std::array<double, 2> {
    if (s.at_infinity) return {s.dir1, s.dir2};
    const double n = 1 + std::hypot(s.point.b1, s.point.b2);
    return {s.point.b1 / n, s.point.b2 / n};
  };
  std::vector<GammaSample> out;
  std::function<void(double, const GammaSample&, double, const GammaSample&, int)> fill =
      [&](double a, const GammaSample& sa, double b, const GammaSample& sb, int depth) {
        if (depth >= max_depth || sa.at_infinity || sb.at_infinity) return;
        auto pa = compact(sa), pb = compact(sb);
        if (std::hypot(pa[0] - pb[0], pa[1] - pb[1]) <= max_step) return;
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) return;
        GammaSample sm = gamma_point(mid, m);
        fill(a, sa, mid, sm, depth + 1);
        out.push_back(sm);
        fill(mid, sm, b, sb, depth + 1);
      };
  for (size_t i = 0; i < us.size(); ++i) {
    GammaSample s = gamma_point(us[i], m);
    if (i > 0) fill(us[i - 1], gamma_point(us[i - 1], m), us[i], s, 0);
    out.push_back(s);
  }
  return out;
}

struct Crossing {
  double u = 0;     // curve parameter (infinity encoded as +inf)
  double t = 0;     // position on the segment, 0 at a and 1 at b
  BetaPoint point;
};

/// Points where c meets the closed segment [a, b], from the exact real roots of
/// n . (c(u) - a) = 0 with n normal to the segment.
inline std::vector<Crossing> gamma_segment_crossings(const BetaPoint& a, const BetaPoint& b, const MassTriple& m) {
  const auto me = exact(m);
  auto g = gamma_curve(me);
  const Rational ax = to_rational(a.b1), ay = to_rational(a.b2);
  const Rational dx = to_rational(b.b1) - ax, dy = to_rational(b.b2) - ay;
  const Rational nx = -dy, ny = dx;
  const Rational off = nx * ax + ny * ay;
  QPoly line = nx * g.n1 + ny * g.n2 - off * g.d;
  std::vector<Crossing> out;
  const Rational len2 = dx * dx + dy * dy;
  if (len2 == 0) return out;
  auto consider = [&](double u, const Rational& px, const Rational& py) {
    Rational t = ((px - ax) * dx + (py - ay) * dy) / len2;
    if (t >= 0 && t <= 1) out.push_back({u, to_double(t), {to_double(px), to_double(py)}});
  };
  if (line.is_zero()) return out;
  auto er = exact_real_roots(line, Rational(1) / Rational(mpz_class(1) << 80));
  for (const auto& r : er.roots) {
    Rational u = r.enclosure.mid();
    Rational d = g.d(u);
    if (d == 0) continue;
    consider(to_double(u), Rational(g.n1(u) / d), Rational(g.n2(u) / d));
  }
  if (line.degree() < 5) {
    // c(infinity) lies on the line.
    Rational px = g.n1.coeff(5) / g.d.coeff(5), py = g.n2.coeff(5) / g.d.coeff(5);
    consider(std::numeric_limits<double>::infinity(), px, py);
  }
  std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) { return x.t < y.t; });
  return out;
}

/// One certified sample per triple: points offset from c(u) along its normal
/// for tan-spaced u, plus points beside both axes.
inline std::map<Triple, BetaPoint> region_representatives(const MassTriple& m, int samples = 2000,
                                                          double offset = 1e-5) {
  m.validate();
  const auto me = exact(m);
  std::map<Triple, BetaPoint> out;
  auto try_point = [&](double b1, double b2) {
    if (!std::isfinite(b1) || !std::isfinite(b2)) return;
    auto rep = detail::classify_impl(to_rational(b1), to_rational(b2), me);
    if (!rep.boundary && rep.region != 0) out.emplace(rep.triple, BetaPoint{b1, b2});
  };
  const double pi = std::acos(-1.0);
  for (int i = 1; i < samples; ++i) {
    const double u = std::tan(-pi / 2 + pi * i / samples);
    if (std::abs(u) < 1e-3 || std::abs(u + 1) < 1e-3) continue;
    auto s = gamma_point(u, m);
    if (s.at_infinity) continue;
    auto d = gamma_derivative(u, m);
    const double nd = std::hypot(d[0], d[1]);
    if (!(nd > 0) || !std::isfinite(nd)) continue;
    const double h = offset * (1 + std::hypot(s.point.b1, s.point.b2));
    for (int side : {1, -1}) try_point(s.point.b1 - side * h * d[1] / nd, s.point.b2 + side * h * d[0] / nd);
  }
  for (double x : {-1e3, -10.0, -2.0, -0.5, -0.01, 0.01, 0.5, 2.0, 10.0, 1e3})
    for (double e : {1e-4, -1e-4}) {
      try_point(x, e);
      try_point(e, x);
    }
  return out;
}

}  // namespace ctbp
