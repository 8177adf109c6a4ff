#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "ctbp/atlas.hpp"

namespace ctbp {

/// Elements of S3 generated by pi1 = (1 2) and pi2 = (2 3):
/// P3 = pi1 pi2, P4 = pi2 pi1, P5 = pi1 pi2 pi1.
enum class Perm { P0 = 0, P1, P2, P3, P4, P5 };

inline constexpr std::array<Perm, 6> kAllPerms = {Perm::P0, Perm::P1, Perm::P2, Perm::P3, Perm::P4, Perm::P5};

/// Generators in the order they act (rightmost factor first).
inline std::vector<int> generator_word(Perm g) {
  switch (g) {
    case Perm::P0: return {};
    case Perm::P1: return {1};
    case Perm::P2: return {2};
    case Perm::P3: return {2, 1};
    case Perm::P4: return {1, 2};
    case Perm::P5: return {1, 2, 1};
  }
  return {};
}

template <class T>
Masses<T> act_mass(Perm g, Masses<T> m) {
  for (int k : generator_word(g)) {
    if (k == 1)
      std::swap(m.m1, m.m2);
    else
      std::swap(m.m2, m.m3);
  }
  return m;
}

template <class T>
Couplings<T> act_alpha(Perm g, Couplings<T> a) {
  for (int k : generator_word(g)) {
    if (k == 1) {
      std::swap(a.a1, a.a2);
    } else {
      T a2 = -a.a3, a3 = -a.a2;
      a.a2 = a2;
      a.a3 = a3;
    }
  }
  return a;
}

/// Group product g * h (h acts first), identified through the action on labels.
inline Perm compose(Perm g, Perm h) {
  Masses<int> probe{1, 2, 3};
  auto image = act_mass(g, act_mass(h, probe));
  for (Perm p : kAllPerms) {
    auto q = act_mass(p, probe);
    if (q.m1 == image.m1 && q.m2 == image.m2 && q.m3 == image.m3) return p;
  }
  return Perm::P0;
}

inline Perm inverse(Perm g) {
  for (Perm p : kAllPerms)
    if (compose(p, g) == Perm::P0) return p;
  return Perm::P0;
}

/// Projective action on u in R u {inf}; infinity is +inf.
inline double act_u(Perm g, double u) {
  const double inf = std::numeric_limits<double>::infinity();
  if (std::isinf(u)) u = inf;
  for (int k : generator_word(g)) {
    if (k == 1)
      u = std::isinf(u) ? 0.0 : (u == 0 ? inf : 1 / u);
    else
      u = std::isinf(u) ? inf : -(1 + u);
  }
  return u;
}

/// Exact variant; nullopt stands for infinity.
inline std::optional<Rational> act_u(Perm g, std::optional<Rational> u) {
  for (int k : generator_word(g)) {
    if (k == 1) {
      if (!u)
        u = Rational(0);
      else if (*u == 0)
        u.reset();
      else
        u = Rational(1 / *u);
    } else if (u) {
      u = Rational(-(1 + *u));
    }
  }
  return u;
}

/// psi on the beta chart, generator by generator.
template <class T>
std::pair<T, T> act_beta(Perm g, std::pair<T, T> b) {
  for (int k : generator_word(g)) {
    if (k == 1) {
      std::swap(b.first, b.second);
    } else {
      if (b.second == 0) throw Error(ErrorKind::ChartUndefined, "image coupling a3 vanishes");
      b = {T(-b.first / b.second), T(T(1) / b.second)};
    }
  }
  return b;
}

inline BetaPoint act_beta(Perm g, const BetaPoint& b) {
  auto r = act_beta(g, std::pair<double, double>{b.b1, b.b2});
  return {r.first, r.second};
}

/// Image of each interval under h_g (Table of interval permutations).
inline std::array<IntervalId, 3> interval_permutation(Perm g) {
  std::array<IntervalId, 3> img{IntervalId::I1, IntervalId::I2, IntervalId::I3};
  for (int k : generator_word(g)) {
    for (auto& i : img) {
      if (k == 1) {
        if (i == IntervalId::I1)
          i = IntervalId::I2;
        else if (i == IntervalId::I2)
          i = IntervalId::I1;
      } else {
        if (i == IntervalId::I1)
          i = IntervalId::I3;
        else if (i == IntervalId::I3)
          i = IntervalId::I1;
      }
    }
  }
  return img;
}

/// Counts of the transformed system predicted from counts of the original.
inline RootCounts permute_counts(Perm g, const RootCounts& n) {
  auto img = interval_permutation(g);
  RootCounts out{0, 0, 0};
  for (size_t i = 0; i < 3; ++i) out[static_cast<size_t>(img[i])] = n[i];
  return out;
}

/// |f(u; a, m) - k(u) f(h_g u; phi_g a, pi_g m)| / max(1, |f(u; a, m)|), where
/// k accumulates -u^5 for pi1 and -1 for pi2 along the generator word.
template <class T>
T check_f_covariance(Perm g, const T& u, const Couplings<T>& a, const Masses<T>& m) {
  const T lhs = build_quintic(a, m)(u);
  T factor(1), x = u;
  Couplings<T> aa = a;
  Masses<T> mm = m;
  for (int k : generator_word(g)) {
    if (k == 1) {
      if (x == 0) throw Error(ErrorKind::InvalidInput, "u at a pole of the action");
      factor *= T(-(x * x * x * x * x));
      x = T(T(1) / x);
      aa = act_alpha(Perm::P1, aa);
      mm = act_mass(Perm::P1, mm);
    } else {
      factor = -factor;
      x = T(-(1 + x));
      aa = act_alpha(Perm::P2, aa);
      mm = act_mass(Perm::P2, mm);
    }
  }
  const T rhs = factor * build_quintic(aa, mm)(x);
  T diff = lhs - rhs;
  if (diff < 0) diff = -diff;
  T scale = lhs < 0 ? T(-lhs) : lhs;
  if (scale < 1) scale = 1;
  return T(diff / scale);
}

/// |c(u; m) - psi(c(h_g u; pi_g m))| / max(1, |c(u; m)|) with psi applied in
/// reverse generator order, which is what undoes h_g on the curve.
inline double check_gamma_covariance(Perm g, double u, const MassTriple& m) {
  auto lhs = gamma_point(u, m);
  auto rhs = gamma_point(act_u(g, u), act_mass(g, m));
  if (lhs.at_infinity || rhs.at_infinity) throw Error(ErrorKind::InvalidInput, "curve point at infinity");
  // Compared as projective coupling classes: the beta chart divides by a
  // coordinate that can be near zero on the image, which would amplify rounding.
  CouplingTriple a{rhs.point.b1, rhs.point.b2, 1.0};
  auto w = generator_word(g);
  for (auto it = w.rbegin(); it != w.rend(); ++it) a = act_alpha(*it == 1 ? Perm::P1 : Perm::P2, a);
  const double l[3] = {lhs.point.b1, lhs.point.b2, 1.0};
  const double r[3] = {a.a1, a.a2, a.a3};
  const double cx = l[1] * r[2] - l[2] * r[1], cy = l[2] * r[0] - l[0] * r[2], cz = l[0] * r[1] - l[1] * r[0];
  const double nl = std::sqrt(l[0] * l[0] + l[1] * l[1] + l[2] * l[2]);
  const double nr = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  return std::sqrt(cx * cx + cy * cy + cz * cz) / (nl * nr);
}

/// Exact variant: zero iff the identity holds.
inline Rational check_gamma_covariance(Perm g, const Rational& u, const Masses<Rational>& m) {
  auto lhs = gamma_point_exact(u, m);
  auto hu = act_u(g, std::optional<Rational>(u));
  if (!lhs || !hu) throw Error(ErrorKind::InvalidInput, "curve point at infinity");
  auto rhs = gamma_point_exact(*hu, act_mass(g, m));
  if (!rhs) throw Error(ErrorKind::InvalidInput, "curve point at infinity");
  auto p = *rhs;
  auto w = generator_word(g);
  for (auto it = w.rbegin(); it != w.rend(); ++it) p = act_beta(*it == 1 ? Perm::P1 : Perm::P2, p);
  Rational d = abs(lhs->first - p.first) + abs(lhs->second - p.second);
  return d;
}

}  // namespace ctbp
