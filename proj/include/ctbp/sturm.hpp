#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "ctbp/polynomial.hpp"

namespace ctbp {

using QPoly = Polynomial<Rational>;

/// Signed remainder sequence of (p, q).
inline std::vector<QPoly> signed_remainder_sequence(const QPoly& p, const QPoly& q) {
  std::vector<QPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  QPoly a = p, b = q;
  while (!b.is_zero()) {
    seq.push_back(b);
    QPoly r = -a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return seq;
}

/// Sturm chain of p, i.e. the signed remainder sequence of (p, p').
inline std::vector<QPoly> sturm_chain(const QPoly& p) { return signed_remainder_sequence(p, p.derivative()); }

/// Sign variations at x; nullopt with `at_plus` selects +inf or -inf.
inline int sign_variations(const std::vector<QPoly>& seq, const std::optional<Rational>& x, bool at_plus = true) {
  int last = 0, v = 0;
  for (const auto& p : seq) {
    int s;
    if (x) {
      s = sign_of(p(*x));
    } else {
      s = sign_of(p.leading());
      if (!at_plus && (p.degree() % 2 == 1)) s = -s;
    }
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

/// Endpoint of a half-open interval (lo, hi]; nullopt means the matching infinity.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
};

/// Sum of sign(q(x)) over the distinct real roots x of p in (lo, hi].
inline int tarski_query(const QPoly& p, const QPoly& q, const Interval& iv) {
  // Work with the squarefree part so that a multiple root at an endpoint
  // does not zero the whole sequence.
  const QPoly g = gcd(p, p.derivative());
  const QPoly s = g.degree() > 0 ? p.divmod(g).first : p;
  auto seq = signed_remainder_sequence(s, s.derivative() * q);
  return sign_variations(seq, iv.lo, false) - sign_variations(seq, iv.hi, true);
}

/// Distinct real roots of p in (lo, hi].
inline int count_distinct_roots(const QPoly& p, const Interval& iv) { return tarski_query(p, QPoly::constant(1), iv); }

/// Cauchy bound: every root has |x| < bound.
inline Rational root_bound(const QPoly& p) {
  Rational m = 0;
  const Rational lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coeff(i)) / lead;
    if (r > m) m = r;
  }
  return m + 1;
}

/// A root known to lie in (lo, hi], or exactly at lo == hi.
struct IsolatedRoot {
  Rational lo;
  Rational hi;
  int multiplicity = 1;
  bool exact() const { return lo == hi; }
  Rational mid() const {
    Rational m = (lo + hi) / 2;
    m.canonicalize();
    return m;
  }
};

namespace detail {

inline void bisect_isolate(const QPoly& s, const std::vector<QPoly>& chain, Rational lo, Rational hi, int count,
                           std::vector<IsolatedRoot>& out) {
  if (count == 0) return;
  if (s(hi) == 0 && count == 1) {
    out.push_back({hi, hi, 1});
    return;
  }
  if (count == 1) {
    out.push_back({lo, hi, 1});
    return;
  }
  Rational mid = (lo + hi) / 2;
  mid.canonicalize();
  int vlo = sign_variations(chain, lo), vmid = sign_variations(chain, mid), vhi = sign_variations(chain, hi);
  bisect_isolate(s, chain, lo, mid, vlo - vmid, out);
  bisect_isolate(s, chain, mid, hi, vmid - vhi, out);
}

}  // namespace detail

/// Isolates the distinct real roots of a squarefree polynomial in increasing order.
inline std::vector<IsolatedRoot> isolate_squarefree(const QPoly& s) {
  std::vector<IsolatedRoot> out;
  if (s.degree() <= 0) return out;
  auto chain = sturm_chain(s);
  Rational b = root_bound(s);
  Rational lo = -b;
  int total = sign_variations(chain, lo) - sign_variations(chain, b);
  detail::bisect_isolate(s, chain, lo, b, total, out);
  return out;
}

/// Shrinks a simple-root enclosure of squarefree s until hi - lo <= width.
inline void refine(const QPoly& s, IsolatedRoot& r, const Rational& width) {
  if (r.exact()) return;
  int shi = sign_of(s(r.hi));
  if (shi == 0) {
    r.lo = r.hi;
    return;
  }
  while (r.hi - r.lo > width) {
    Rational mid = r.mid();
    int sm = sign_of(s(mid));
    if (sm == 0) {
      r.lo = r.hi = mid;
      return;
    }
    if (sm == shi)
      r.hi = mid;
    else
      r.lo = mid;
  }
}

/// All distinct real roots of p with multiplicities, increasing.
inline std::vector<IsolatedRoot> isolate_with_multiplicity(const QPoly& p) {
  std::vector<std::pair<IsolatedRoot, const QPoly*>> all;
  auto factors = squarefree_decomposition(p);
  for (size_t k = 0; k < factors.size(); ++k)
    for (auto r : isolate_squarefree(factors[k])) {
      r.multiplicity = static_cast<int>(k) + 1;
      all.emplace_back(r, &factors[k]);
    }
  // Enclosures from different factors may overlap; shrink until disjoint.
  auto disjoint = [](const IsolatedRoot& a, const IsolatedRoot& b) {
    return a.hi < b.lo || b.hi < a.lo || (a.hi == b.lo && !b.exact()) || (b.hi == a.lo && !a.exact());
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < all.size(); ++i)
      for (size_t j = i + 1; j < all.size(); ++j) {
        auto& [ri, pi] = all[i];
        auto& [rj, pj] = all[j];
        if (disjoint(ri, rj)) continue;
        Rational w = std::max(Rational(ri.hi - ri.lo), Rational(rj.hi - rj.lo)) / 2;
        refine(*pi, ri, w);
        refine(*pj, rj, w);
        changed = true;
      }
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first.hi < b.first.hi; });
  std::vector<IsolatedRoot> out;
  for (auto& [r, f] : all) out.push_back(r);
  return out;
}

// ---------------------------------------------------------------------------
// Floating-point isolation.

struct FloatRoot {
  double value;
  double lo;
  double hi;
  int multiplicity;
};

namespace detail {

inline double abs_scale(const Polynomial<double>& p, double x) {
  double s = 0, ax = std::abs(x), pw = 1;
  for (double c : p.coefficients()) {
    s += std::abs(c) * pw;
    pw *= ax;
  }
  return s;
}

inline bool near_zero(const Polynomial<double>& p, double x, double rel) {
  return std::abs(p(x)) <= rel * abs_scale(p, x);
}

inline double bisect_float(const Polynomial<double>& p, double a, double b) {
  double fa = p(a);
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    double fm = p(m);
    if (fm == 0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

inline std::vector<double> float_distinct_roots(const Polynomial<double>& p, double rel, std::vector<int>* mult) {
  std::vector<double> roots;
  if (p.degree() <= 0) return roots;
  if (p.degree() == 1) {
    roots.push_back(-p.coeff(0) / p.coeff(1));
    if (mult) mult->push_back(1);
    return roots;
  }
  double bound = 1;
  for (int i = 0; i < p.degree(); ++i) bound = std::max(bound, 1 + std::abs(p.coeff(i) / p.leading()));
  std::vector<double> crit = float_distinct_roots(p.derivative(), rel, nullptr);
  std::vector<double> breaks{-bound};
  for (double c : crit)
    if (c > -bound && c < bound) breaks.push_back(c);
  breaks.push_back(bound);
  std::vector<bool> at_root(breaks.size(), false);
  for (size_t i = 1; i + 1 < breaks.size(); ++i) at_root[i] = near_zero(p, breaks[i], rel);
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (at_root[i]) {
      roots.push_back(breaks[i]);
      if (mult) {
        int k = 1;
        Polynomial<double> d = p.derivative();
        while (d.degree() > 0 && near_zero(d, breaks[i], rel)) {
          ++k;
          d = d.derivative();
        }
        mult->push_back(k);
      }
    }
    double a = breaks[i], b = breaks[i + 1];
    if (at_root[i] || at_root[i + 1]) continue;
    double fa = p(a), fb = p(b);
    if (fa == 0 || fb == 0 || (fa < 0) == (fb < 0)) continue;
    roots.push_back(bisect_float(p, a, b));
    if (mult) mult->push_back(1);
  }
  return roots;
}

}  // namespace detail

/// Roots of p in floating point: bisection between critical points, with a
/// critical point counted as a multiple root when |p| <= rel * sum |c_i||x|^i.
inline std::vector<FloatRoot> isolate_float(const Polynomial<double>& p, double rel = 1e-10) {
  std::vector<int> mult;
  auto r = detail::float_distinct_roots(p, rel, &mult);
  std::vector<FloatRoot> out;
  for (size_t i = 0; i < r.size(); ++i) {
    double w = 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(r[i]));
    out.push_back({r[i], r[i] - w, r[i] + w, mult[i]});
  }
  return out;
}

}  // namespace ctbp
