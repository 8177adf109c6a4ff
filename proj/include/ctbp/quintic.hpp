#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "ctbp/sturm.hpp"

namespace ctbp {

template <class T>
struct Masses {
  T m1, m2, m3;

  T total() const { return T(m1 + m2 + m3); }
  void validate() const {
    if (!(m1 > 0 && m2 > 0 && m3 > 0)) throw Error(ErrorKind::InvalidInput, "masses must be positive");
    if constexpr (std::is_same_v<T, double>)
      if (!std::isfinite(m1) || !std::isfinite(m2) || !std::isfinite(m3))
        throw Error(ErrorKind::InvalidInput, "masses must be finite");
  }
};
using MassTriple = Masses<double>;

/// Couplings of V = -a3/r12 - a1/r23 - a2/r13, i.e. a_i = gamma_jk.
template <class T>
struct Couplings {
  T a1, a2, a3;

  bool all_zero() const { return a1 == 0 && a2 == 0 && a3 == 0; }
};
using CouplingTriple = Couplings<double>;

template <class T>
using ReducedQuintic = Polynomial<T>;

inline Masses<Rational> exact(const MassTriple& m) { return {to_rational(m.m1), to_rational(m.m2), to_rational(m.m3)}; }
inline Couplings<Rational> exact(const CouplingTriple& a) {
  return {to_rational(a.a1), to_rational(a.a2), to_rational(a.a3)};
}
inline MassTriple approx(const Masses<Rational>& m) { return {to_double(m.m1), to_double(m.m2), to_double(m.m3)}; }

/// Gravitational couplings a_i = m_j m_k.
template <class T>
Couplings<T> gravitational(const Masses<T>& m) {
  return {T(m.m2 * m.m3), T(m.m1 * m.m3), T(m.m1 * m.m2)};
}

#ifdef CTBP_INJECT_F2_SIGN_FAULT
inline constexpr int kF2Sign = -1;
#else
inline constexpr int kF2Sign = 1;
#endif

/// The three polynomials with f = a1 f1 + a2 f2 + a3 f3.
template <class T>
std::array<Polynomial<T>, 3> basis_polynomials(const Masses<T>& m) {
  using P = Polynomial<T>;
  const P u{T(0), T(1)};
  const P one_plus_u{T(1), T(1)};
  const P u2 = u * u;
  const P w2 = one_plus_u * one_plus_u;
  P f1 = m.m1 * (u2 * w2 * P{m.m2, T(m.m2 + m.m3)});
  P f2 = T(-m.m2) * (w2 * P{T(m.m1 + m.m3), m.m1});
  P f3 = T(-m.m3) * (u2 * P{m.m2, T(-m.m1)});
  if (kF2Sign < 0) f2 = -f2;
  return {f1, f2, f3};
}

/// f(u; a, m) from its expanded coefficients.
template <class T>
ReducedQuintic<T> build_quintic(const Couplings<T>& a, const Masses<T>& m) {
  const T& m1 = m.m1;
  const T& m2 = m.m2;
  const T& m3 = m.m3;
  const T a2 = kF2Sign < 0 ? T(-a.a2) : a.a2;
  std::vector<T> c(6);
  c[5] = a.a1 * m1 * (m2 + m3);
  c[4] = a.a1 * m1 * (3 * m2 + 2 * m3);
  c[3] = a.a1 * m1 * (3 * m2 + m3) - a2 * m1 * m2 + a.a3 * m1 * m3;
  c[2] = a.a1 * m1 * m2 - a2 * m2 * (3 * m1 + m3) - a.a3 * m2 * m3;
  c[1] = -a2 * m2 * (3 * m1 + 2 * m3);
  c[0] = -a2 * m2 * (m1 + m3);
  ReducedQuintic<T> f(std::move(c));
  if (f.is_zero()) throw Error(ErrorKind::AllZero, "the reduced quintic vanishes identically");
  return f;
}

enum class IntervalId { I1 = 0, I2 = 1, I3 = 2 };

inline std::string_view to_string(IntervalId i) {
  switch (i) {
    case IntervalId::I1: return "I1";
    case IntervalId::I2: return "I2";
    case IntervalId::I3: return "I3";
  }
  return "?";
}

/// Interval of a point off the collision set {-1, 0}.
template <class T>
IntervalId interval_of(const T& u) {
  if (u < -1) return IntervalId::I1;
  if (u < 0) return IntervalId::I2;
  return IntervalId::I3;
}

struct Root {
  double value = 0;
  int multiplicity = 1;
  IntervalId interval = IntervalId::I3;
  double lo = 0;  // enclosure, lo <= root <= hi
  double hi = 0;
};

struct RootList {
  std::vector<Root> roots;
  double enclosure_width = 0;  // largest hi - lo over the list

  int total_multiplicity() const {
    int s = 0;
    for (const auto& r : roots) s += r.multiplicity;
    return s;
  }
};

enum class Arithmetic { Exact, Floating };

struct IsolationOptions {
  Arithmetic mode = Arithmetic::Exact;
  double rel_tol = 1e-10;  // floating mode: multiple-root and collision threshold
};

/// A real root of f in exact arithmetic, tied to its squarefree factor.
struct ExactRoot {
  IsolatedRoot enclosure;
  int factor = 0;  // index into ExactRoots::factors, multiplicity = factor + 1
  bool collision = false;
  IntervalId interval = IntervalId::I3;
};

struct ExactRoots {
  std::vector<QPoly> factors;
  std::vector<ExactRoot> roots;  // increasing
  bool root_at_infinity = false;
};

namespace detail {

inline void separate_from(const QPoly& s, IsolatedRoot& r, const Rational& x) {
  if (!r.exact() && r.lo < x && x <= r.hi && s(x) == 0) {
    r.lo = r.hi = x;  // the enclosure holds exactly one root
    return;
  }
  while (!r.exact() && r.lo < x && x <= r.hi) refine(s, r, Rational((r.hi - r.lo) / 2));
  while (!r.exact() && s(r.lo) == 0) refine(s, r, Rational((r.hi - r.lo) / 2));
}

}  // namespace detail

/// Exact isolation of every real root, refined to width <= `width` (0 keeps the
/// isolating intervals, which is all classification needs).
inline ExactRoots exact_real_roots(const QPoly& f, const Rational& width = 0) {
  if (f.is_zero()) throw Error(ErrorKind::AllZero, "the reduced quintic vanishes identically");
  ExactRoots out;
  out.root_at_infinity = f.degree() < 5;
  out.factors = squarefree_decomposition(f);
  for (size_t k = 0; k < out.factors.size(); ++k) {
    const QPoly& s = out.factors[k];
    for (auto r : isolate_squarefree(s)) {
      ExactRoot er;
      er.factor = static_cast<int>(k);
      detail::separate_from(s, r, Rational(-1));
      detail::separate_from(s, r, Rational(0));
      if (width > 0) {
        refine(s, r, width);
        detail::separate_from(s, r, Rational(0));
      }
      er.enclosure = r;
      if (r.exact() && (r.lo == -1 || r.lo == 0)) er.collision = true;
      er.interval = interval_of(r.exact() ? r.lo : r.mid());
      out.roots.push_back(er);
    }
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [](const ExactRoot& a, const ExactRoot& b) { return a.enclosure.mid() < b.enclosure.mid(); });
  return out;
}

namespace detail {

inline RootList to_root_list(const ExactRoots& er) {
  RootList out;
  for (const auto& r : er.roots) {
    if (r.collision) throw Error(ErrorKind::DegenerateAtCollision, "root at a collision point u in {-1, 0}");
  }
  if (er.root_at_infinity) throw Error(ErrorKind::DegenerateAtCollision, "root at u = infinity (leading coefficient zero)");
  for (const auto& r : er.roots) {
    Root o;
    o.multiplicity = r.factor + 1;
    o.interval = r.interval;
    o.value = to_double(r.enclosure.mid());
    o.lo = to_double(r.enclosure.lo);
    o.hi = to_double(r.enclosure.hi);
    if (o.lo > o.value) o.lo = o.value;
    if (o.hi < o.value) o.hi = o.value;
    out.enclosure_width = std::max(out.enclosure_width, to_double(Rational(r.enclosure.hi - r.enclosure.lo)));
    out.roots.push_back(o);
  }
  return out;
}

inline Rational default_width(const QPoly& f) {
  // 2^-64 relative to the root bound keeps doubles exact to the last bit.
  Rational b = root_bound(f);
  mpz_class two64 = mpz_class(1) << 64;
  Rational w = b / Rational(two64);
  if (w > Rational(1, 1u << 30)) w = Rational(1, 1u << 30);
  w.canonicalize();
  return w;
}

inline RootList isolate_floating(const Polynomial<double>& q, double rel) {
  if (q.is_zero()) throw Error(ErrorKind::AllZero, "the reduced quintic vanishes identically");
  const double mag = q.magnitude();
  if (q.degree() < 5 || std::abs(q.coeff(5)) <= rel * mag)
    throw Error(ErrorKind::DegenerateAtCollision, "root at u = infinity (leading coefficient zero)");
  if (detail::near_zero(q, -1.0, rel) || detail::near_zero(q, 0.0, rel))
    throw Error(ErrorKind::DegenerateAtCollision, "root at a collision point u in {-1, 0}");
  RootList out;
  for (const auto& r : isolate_float(q, rel)) {
    Root o{r.value, r.multiplicity, interval_of(r.value), r.lo, r.hi};
    out.enclosure_width = std::max(out.enclosure_width, r.hi - r.lo);
    out.roots.push_back(o);
  }
  return out;
}

}  // namespace detail

inline RootList isolate_real_roots(const ReducedQuintic<Rational>& q) {
  return detail::to_root_list(exact_real_roots(q, detail::default_width(q)));
}

/// Doubles are exact rationals, so Exact mode works for any finite input.
inline RootList isolate_real_roots(const ReducedQuintic<double>& q, const IsolationOptions& opt = {}) {
  if (opt.mode == Arithmetic::Floating) return detail::isolate_floating(q, opt.rel_tol);
  return isolate_real_roots(convert<Rational>(q));
}

using RootCounts = std::array<int, 3>;

/// Simple roots per open interval; roots at the collision points are ignored.
inline RootCounts count_roots_by_interval(const ReducedQuintic<Rational>& f) {
  RootCounts n{0, 0, 0};
  auto er = exact_real_roots(f);
  for (const auto& r : er.roots) {
    if (r.collision) continue;
    if (r.factor > 0) throw Error(ErrorKind::OnDiscriminant, "multiple root inside an interval");
    ++n[static_cast<size_t>(r.interval)];
  }
  return n;
}

inline RootCounts count_roots_by_interval(const CouplingTriple& a, const MassTriple& m, const IsolationOptions& opt = {}) {
  m.validate();
  if (opt.mode == Arithmetic::Exact) return count_roots_by_interval(build_quintic(exact(a), exact(m)));
  auto q = build_quintic(a, m);
  RootCounts n{0, 0, 0};
  for (const auto& r : isolate_float(q, opt.rel_tol)) {
    if (detail::near_zero(q, -1.0, opt.rel_tol) && std::abs(r.value + 1) <= 1e-6) continue;
    if (std::abs(q.coeff(0)) <= opt.rel_tol * q.magnitude() && std::abs(r.value) <= 1e-6) continue;
    if (r.multiplicity > 1) throw Error(ErrorKind::OnDiscriminant, "multiple root inside an interval");
    ++n[static_cast<size_t>(interval_of(r.value))];
  }
  return n;
}

}  // namespace ctbp
