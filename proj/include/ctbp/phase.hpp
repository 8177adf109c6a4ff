#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "ctbp/quintic.hpp"

namespace ctbp {

using Vec3 = Eigen::Vector3d;

/// Pairwise couplings of V = -sum gamma_ij / r_ij.
struct PairCouplings {
  double g12 = 0, g13 = 0, g23 = 0;

  double operator()(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i == 0 && j == 1) return g12;
    if (i == 0 && j == 2) return g13;
    return g23;
  }
};

inline PairCouplings pair_couplings(const CouplingTriple& a) { return {a.a3, a.a2, a.a1}; }
inline CouplingTriple coupling_triple(const PairCouplings& g) { return {g.g23, g.g13, g.g12}; }

struct Configuration {
  std::array<Vec3, 3> q{Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
  MassTriple m{1, 1, 1};

  double mass(int i) const { return i == 0 ? m.m1 : (i == 1 ? m.m2 : m.m3); }
  Vec3 center() const { return (m.m1 * q[0] + m.m2 * q[1] + m.m3 * q[2]) / m.total(); }
  double distance(int i, int j) const { return (q[static_cast<size_t>(i)] - q[static_cast<size_t>(j)]).norm(); }
  void recenter() {
    const Vec3 c = center();
    for (auto& x : q) x -= c;
  }
};

struct PhasePoint {
  Configuration config;
  std::array<Vec3, 3> p{Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
};

enum class CcKind { Collinear, NonCollinear };

struct CentralConfigResult {
  CcKind kind = CcKind::Collinear;
  double r12 = 0, r13 = 0, r23 = 0;
  double lambda = 0;
  double V = 0;
  double I = 0;
  double residual = 0;  // relative, see multiplier_of
  Configuration config;
};

struct IntegralValue {
  double H = 0;
  Vec3 L = Vec3::Zero();
  Vec3 P = Vec3::Zero();
  Vec3 Q = Vec3::Zero();
};

enum class CriticalPointClass { CollinearPhase, Equilibrium, RelativeEquilibrium, Regular };

inline std::string_view to_string(CriticalPointClass c) {
  switch (c) {
    case CriticalPointClass::CollinearPhase: return "CollinearPhase";
    case CriticalPointClass::Equilibrium: return "Equilibrium";
    case CriticalPointClass::RelativeEquilibrium: return "RelativeEquilibrium";
    case CriticalPointClass::Regular: return "Regular";
  }
  return "?";
}

inline void check_no_collision(const Configuration& c) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!(c.distance(i, j) > 0)) throw Error(ErrorKind::Collision, "two bodies coincide");
}

inline double potential(const Configuration& c, const PairCouplings& g) {
  check_no_collision(c);
  double v = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) v -= g(i, j) / c.distance(i, j);
  return v;
}

/// I = sum m_i |q_i - Q|^2.
inline double moment_of_inertia(const Configuration& c) {
  const Vec3 ctr = c.center();
  double s = 0;
  for (int i = 0; i < 3; ++i) s += c.mass(i) * (c.q[static_cast<size_t>(i)] - ctr).squaredNorm();
  return s;
}

namespace detail {

inline bool violates_triangle(double r12, double r13, double r23) {
  const double s = std::max({r12, r13, r23});
  const double tol = 1e-12 * s;
  return r12 > r13 + r23 + tol || r13 > r12 + r23 + tol || r23 > r12 + r13 + tol;
}

}  // namespace detail

/// Reduced form (1/M)(m1 m2 r12^2 + m1 m3 r13^2 + m2 m3 r23^2).
inline double moment_of_inertia(double r12, double r13, double r23, const MassTriple& m) {
  m.validate();
  if (!(r12 >= 0 && r13 >= 0 && r23 >= 0) || detail::violates_triangle(r12, r13, r23))
    throw Error(ErrorKind::NotRealizable, "distances violate the triangle inequality");
  return (m.m1 * m.m2 * r12 * r12 + m.m1 * m.m3 * r13 * r13 + m.m2 * m.m3 * r23 * r23) / m.total();
}

/// Body 1 at the origin, body 2 on the positive x-axis, body 3 with y >= 0,
/// then recentred so the centre of mass is the origin.
inline Configuration embed_triangle(double r12, double r13, double r23, const MassTriple& m) {
  if (!(r12 > 0) || !(r13 >= 0) || !(r23 >= 0) || detail::violates_triangle(r12, r13, r23))
    throw Error(ErrorKind::NotRealizable, "distances violate the triangle inequality");
  Configuration c;
  c.m = m;
  const double x = (r12 * r12 + r13 * r13 - r23 * r23) / (2 * r12);
  const double y2 = r13 * r13 - x * x;
  c.q[0] = Vec3::Zero();
  c.q[1] = Vec3(r12, 0, 0);
  c.q[2] = Vec3(x, y2 > 0 ? std::sqrt(y2) : 0.0, 0);
  c.recenter();
  return c;
}

/// Collinear configuration on the x-axis with r2 - r3 = scale, r3 - r1 = u scale.
inline Configuration reconstruct_collinear(double u, double scale, const MassTriple& m) {
  m.validate();
  if (u == 0 || u == -1) throw Error(ErrorKind::CollisionInput, "u in {-1, 0} is a collision");
  if (!(scale > 0) || !std::isfinite(u)) throw Error(ErrorKind::InvalidInput, "scale must be positive");
  const double x = scale, y = u * scale;
  const double r2 = (m.m1 * (x + y) + m.m3 * x) / m.total();
  const double r3 = r2 - x;
  const double r1 = r3 - y;
  Configuration c;
  c.m = m;
  c.q = {Vec3(r1, 0, 0), Vec3(r2, 0, 0), Vec3(r3, 0, 0)};
  return c;
}

/// Couplings for which a root u of f(.; a, m) is a genuine central
/// configuration: the signs of the gaps y = u x and z = -(1+u) x are absorbed.
inline CouplingTriple collinear_couplings(double u, const CouplingTriple& a) {
  return {a.a1, u > 0 ? a.a2 : -a.a2, 1 + u > 0 ? a.a3 : -a.a3};
}

struct GradientDecomposition {
  std::array<Vec3, 3> grad;  // dV/dq_i
  Eigen::Matrix3d A;         // dV/dq_i = sum_j A_ij q_j
};

inline GradientDecomposition gradient_and_alpha_matrix(const Configuration& c, const PairCouplings& g) {
  check_no_collision(c);
  GradientDecomposition out;
  out.A.setZero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const double r = c.distance(i, j);
      const double k = g(i, j) / (r * r * r);
      out.A(i, j) = -k;
      out.A(i, i) += k;
    }
  for (int i = 0; i < 3; ++i) {
    Vec3 s = Vec3::Zero();
    for (int j = 0; j < 3; ++j) s += out.A(i, j) * c.q[static_cast<size_t>(j)];
    out.grad[static_cast<size_t>(i)] = s;
  }
  return out;
}

struct MultiplierResult {
  double lambda = 0;
  double residual = 0;           // max_i |dV/dq_i - lambda m_i (q_i - Q)| / max_i |dV/dq_i|
  double absolute_residual = 0;  // the same without normalisation
};

/// lambda = -V / I and the central-configuration residual.
inline MultiplierResult multiplier_of(const Configuration& c, const PairCouplings& g, double tol = 1e-9) {
  const double I = moment_of_inertia(c);
  if (!(I > 0)) throw Error(ErrorKind::Collision, "all bodies coincide");
  MultiplierResult r;
  r.lambda = -potential(c, g) / I;
  auto gd = gradient_and_alpha_matrix(c, g);
  const Vec3 ctr = c.center();
  double gmax = 0;
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<size_t>(i);
    gmax = std::max(gmax, gd.grad[k].norm());
    r.absolute_residual =
        std::max(r.absolute_residual, (gd.grad[k] - r.lambda * c.mass(i) * (c.q[k] - ctr)).norm());
  }
  r.residual = gmax > 0 ? r.absolute_residual / gmax : r.absolute_residual;
  if (!(r.residual <= tol))
    throw Error(ErrorKind::NotACentralConfiguration, "force is not proportional to the offset from the centre");
  return r;
}

inline CentralConfigResult describe_cc(const Configuration& c, const PairCouplings& g, CcKind kind, double tol) {
  auto mr = multiplier_of(c, g, tol);
  CentralConfigResult out;
  out.kind = kind;
  out.r12 = c.distance(0, 1);
  out.r13 = c.distance(0, 2);
  out.r23 = c.distance(1, 2);
  out.lambda = mr.lambda;
  out.V = potential(c, g);
  out.I = moment_of_inertia(c);
  out.residual = mr.residual;
  out.config = c;
  return out;
}

/// The collinear central configuration encoded by a root u of f(.; a, m),
/// certified against the couplings returned by collinear_couplings.
inline CentralConfigResult collinear_cc(double u, const CouplingTriple& a, const MassTriple& m, double scale = 1,
                                        double tol = 1e-9) {
  auto c = reconstruct_collinear(u, scale, m);
  return describe_cc(c, pair_couplings(collinear_couplings(u, a)), CcKind::Collinear, tol);
}

/// Collinear central configurations of the system a itself, one per body
/// ordering: roots in I3 of f(a), in I2 of f(a1, -a2, a3), in I1 of f(a1, -a2, -a3).
inline std::vector<CentralConfigResult> physical_collinear_ccs(const CouplingTriple& a, const MassTriple& m,
                                                               double tol = 1e-9) {
  m.validate();
  std::vector<CentralConfigResult> out;
  const std::array<CouplingTriple, 3> variants = {CouplingTriple{a.a1, -a.a2, -a.a3},
                                                  CouplingTriple{a.a1, -a.a2, a.a3}, a};
  for (size_t k = 0; k < 3; ++k) {
    RootList rl;
    try {
      rl = isolate_real_roots(build_quintic(variants[k], m));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::AllZero) continue;
      throw;
    }
    for (const auto& r : rl.roots)
      if (static_cast<size_t>(r.interval) == k && r.multiplicity == 1)
        out.push_back(describe_cc(reconstruct_collinear(r.value, 1, m), pair_couplings(a), CcKind::Collinear, tol));
  }
  return out;
}

struct Distances {
  double r12, r13, r23;
};

/// r_ij = (gamma_ij M / (m_i m_j lambda))^(1/3) when every argument is
/// positive and the strict triangle inequalities hold.
inline std::optional<Distances> noncollinear_cc(const PairCouplings& g, const MassTriple& m, double lambda) {
  m.validate();
  if (lambda == 0) throw Error(ErrorKind::InvalidInput, "lambda must be nonzero");
  const double M = m.total();
  const double a12 = g.g12 * M / (m.m1 * m.m2 * lambda);
  const double a13 = g.g13 * M / (m.m1 * m.m3 * lambda);
  const double a23 = g.g23 * M / (m.m2 * m.m3 * lambda);
  if (!(a12 > 0 && a13 > 0 && a23 > 0)) return std::nullopt;
  Distances d{std::cbrt(a12), std::cbrt(a13), std::cbrt(a23)};
  if (!(d.r12 < d.r13 + d.r23 && d.r13 < d.r12 + d.r23 && d.r23 < d.r12 + d.r13)) return std::nullopt;
  return d;
}

/// Unit normal of the plane through the origin containing the configuration.
inline Vec3 configuration_normal(const Configuration& c) {
  Vec3 n = (c.q[1] - c.q[0]).cross(c.q[2] - c.q[0]);
  const double scale = std::max({c.distance(0, 1), c.distance(0, 2), c.distance(1, 2)});
  if (n.norm() > 1e-12 * scale * scale) return n.normalized();
  // Collinear: any direction orthogonal to the line.
  Vec3 d = c.q[0] - c.q[1];
  if (d.norm() == 0) d = c.q[0] - c.q[2];
  d.normalize();
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(d[i]) < std::abs(d[k])) k = i;
  return d.cross(Vec3::Unit(k)).normalized();
}

/// p_i = m_i e x q_i with e normal to the plane and |e|^2 = lambda.
inline PhasePoint build_relative_equilibrium(const Configuration& cc, const PairCouplings& g, double tol = 1e-9) {
  auto mr = multiplier_of(cc, g, tol);
  if (!(mr.lambda > 0)) throw Error(ErrorKind::NonpositiveMultiplier, "relative equilibria need lambda > 0");
  Configuration c = cc;
  c.recenter();
  const Vec3 e = std::sqrt(mr.lambda) * configuration_normal(c);
  PhasePoint pp;
  pp.config = c;
  for (size_t i = 0; i < 3; ++i) pp.p[i] = c.mass(static_cast<int>(i)) * e.cross(c.q[i]);
  return pp;
}

/// Angular velocity of a relative equilibrium built from a planar CC.
inline Vec3 rotation_vector(const PhasePoint& pp, const PairCouplings& g) {
  auto mr = multiplier_of(pp.config, g, 1e300);
  return std::sqrt(std::max(0.0, mr.lambda)) * configuration_normal(pp.config);
}

inline IntegralValue integral_map(const PhasePoint& pp, const PairCouplings& g) {
  IntegralValue v;
  v.H = potential(pp.config, g);
  for (size_t i = 0; i < 3; ++i) {
    v.H += pp.p[i].squaredNorm() / (2 * pp.config.mass(static_cast<int>(i)));
    v.L += pp.config.q[i].cross(pp.p[i]);
    v.P += pp.p[i];
  }
  v.Q = pp.config.center();
  return v;
}

/// Transposed derivative of (H, L, P, Q): rows q1, q2, q3, p1, p2, p3.
inline Eigen::Matrix<double, 18, 10> integral_jacobian(const PhasePoint& pp, const PairCouplings& g) {
  Eigen::Matrix<double, 18, 10> J;
  J.setZero();
  auto gd = gradient_and_alpha_matrix(pp.config, g);
  const double M = pp.config.m.total();
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<size_t>(i);
    const int rq = 3 * i, rp = 9 + 3 * i;
    const double mi = pp.config.mass(i);
    const Vec3& q = pp.config.q[k];
    const Vec3& p = pp.p[k];
    for (int b = 0; b < 3; ++b) {
      J(rq + b, 0) = gd.grad[k][b];
      J(rp + b, 0) = p[b] / mi;
    }
    // L = sum q x p: dL_a/dq_b = eps_abc p_c, dL_a/dp_c = eps_abc q_b.
    for (int a = 0; a < 3; ++a) {
      const Vec3 ea = Vec3::Unit(a);
      for (int b = 0; b < 3; ++b) {
        const Vec3 eb = Vec3::Unit(b);
        J(rq + b, 1 + a) = ea.dot(eb.cross(p));
        J(rp + b, 1 + a) = ea.dot(q.cross(eb));
      }
    }
    for (int b = 0; b < 3; ++b) {
      J(rp + b, 4 + b) = 1;
      J(rq + b, 7 + b) = mi / M;
    }
  }
  return J;
}

struct RankResult {
  int rank = 0;
  CriticalPointClass cls = CriticalPointClass::Regular;
  std::array<double, 10> sigma{};  // descending
  double ratio = 0;                // sigma_10 / sigma_1
  double releq_residual = 0;       // relative residual of the rotating-frame equations
};

namespace detail {

inline bool all_parallel(const PhasePoint& pp, double tol) {
  Eigen::Matrix<double, 3, 6> X;
  for (int i = 0; i < 3; ++i) {
    X.col(i) = pp.config.q[static_cast<size_t>(i)];
    X.col(3 + i) = pp.p[static_cast<size_t>(i)];
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 6>> svd(X);
  auto s = svd.singularValues();
  return s(0) == 0 || s(1) <= tol * s(0);
}

/// Least-squares w with p_i = m_i w x q_i, and the relative residual of both
/// p_i = m_i w x q_i and dV/dq_i = p_i x w.
inline std::pair<Vec3, double> rotating_frame_fit(const PhasePoint& pp, const PairCouplings& g) {
  Eigen::Matrix<double, 9, 3> A;
  Eigen::Matrix<double, 9, 1> b;
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<size_t>(i);
    const Vec3& q = pp.config.q[k];
    const double m = pp.config.mass(i);
    Eigen::Matrix3d cross;  // w -> m w x q = -m [q]_x w
    cross << 0, q.z(), -q.y(), -q.z(), 0, q.x(), q.y(), -q.x(), 0;
    A.block<3, 3>(3 * i, 0) = m * cross;
    b.segment<3>(3 * i) = pp.p[k];
  }
  Vec3 w = A.colPivHouseholderQr().solve(b);
  auto gd = gradient_and_alpha_matrix(pp.config, g);
  double res = 0, scale = 0;
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<size_t>(i);
    const double m = pp.config.mass(i);
    res = std::max(res, (pp.p[k] - m * w.cross(pp.config.q[k])).norm());
    res = std::max(res, (gd.grad[k] - pp.p[k].cross(w)).norm());
    scale = std::max({scale, pp.p[k].norm(), gd.grad[k].norm()});
  }
  return {w, scale > 0 ? res / scale : res};
}

}  // namespace detail

/// Numerical rank of the integral-map derivative and the critical-point class:
/// Equilibrium (grad V = 0, p = 0), then CollinearPhase (all q_i, p_i on one
/// line), then RelativeEquilibrium; rank 10 is Regular.
inline RankResult jacobian_rank(const PhasePoint& pp, const PairCouplings& g, double tol = 1e-9) {
  if (!(tol > 0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
  auto J = integral_jacobian(pp, g);
  Eigen::JacobiSVD<Eigen::Matrix<double, 18, 10>> svd(J);
  auto s = svd.singularValues();
  RankResult r;
  for (int i = 0; i < 10; ++i) r.sigma[static_cast<size_t>(i)] = s(i);
  r.ratio = s(0) > 0 ? s(9) / s(0) : 0;
  for (int i = 0; i < 10; ++i)
    if (s(i) > tol * s(0)) ++r.rank;
  auto fit = detail::rotating_frame_fit(pp, g);
  r.releq_residual = fit.second;
  if (r.rank == 10) {
    r.cls = CriticalPointClass::Regular;
    return r;
  }
  auto gd = gradient_and_alpha_matrix(pp.config, g);
  double gmax = 0, gscale = 0, pmax = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) {
        const double rij = pp.config.distance(i, j);
        gscale = std::max(gscale, std::abs(g(i, j)) / (rij * rij));
      }
  for (size_t i = 0; i < 3; ++i) {
    gmax = std::max(gmax, gd.grad[i].norm());
    pmax = std::max(pmax, pp.p[i].norm());
  }
  if (gmax <= tol * gscale && pmax == 0)
    r.cls = CriticalPointClass::Equilibrium;
  else if (detail::all_parallel(pp, tol))
    r.cls = CriticalPointClass::CollinearPhase;
  else
    r.cls = CriticalPointClass::RelativeEquilibrium;
  return r;
}

}  // namespace ctbp
