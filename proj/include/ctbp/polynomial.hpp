#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <type_traits>
#include <utility>
#include <vector>

#include "ctbp/rational.hpp"

namespace ctbp {

/// Dense univariate polynomial, coefficient i multiplies u^i.
/// T is either double or Rational; division-based routines assume a field.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<T> low_to_high) : c_(low_to_high) { trim(); }
  explicit Polynomial(std::vector<T> low_to_high) : c_(std::move(low_to_high)) { trim(); }

  static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }
  static Polynomial monomial(const T& v, int k) {
    std::vector<T> c(static_cast<size_t>(k) + 1, T(0));
    c[static_cast<size_t>(k)] = v;
    return Polynomial(std::move(c));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coefficients() const { return c_; }
  T coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : T(0); }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }

  template <class Arg>
  auto operator()(const Arg& arg) const {
    // GMP expression templates evaluate to Rational first.
    using X = std::conditional_t<!std::is_arithmetic_v<Arg> && std::is_constructible_v<Rational, Arg>, Rational, Arg>;
    const X x(arg);
    X acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      if constexpr (std::is_same_v<X, double> && !std::is_same_v<T, double>)
        acc = acc * x + to_double(*it);
      else
        acc = acc * x + X(*it);
    }
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  /// u^n p(1/u); n defaults to the degree.
  Polynomial reversed(int n = -1) const {
    if (n < 0) n = degree();
    std::vector<T> r(static_cast<size_t>(n) + 1, T(0));
    for (int i = 0; i <= degree(); ++i) r[static_cast<size_t>(n - i)] = c_[static_cast<size_t>(i)];
    return Polynomial(std::move(r));
  }

  /// p(u + a).
  Polynomial shifted(const T& a) const {
    std::vector<T> r = c_;
    const int n = degree();
    for (int i = 0; i < n; ++i)
      for (int j = n - 1; j >= i; --j) r[static_cast<size_t>(j)] += a * r[static_cast<size_t>(j) + 1];
    return Polynomial(std::move(r));
  }

  Polynomial operator-() const {
    std::vector<T> r = c_;
    for (auto& v : r) v = -v;
    return Polynomial(std::move(r));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  Polynomial pow(int k) const {
    Polynomial r = constant(T(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Euclidean division: *this = q*d + r with deg r < deg d.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    std::vector<T> r = c_;
    const int dd = d.degree();
    if (dd < 0) throw Error(ErrorKind::InvalidInput, "polynomial division by zero");
    if (degree() < dd) return {Polynomial{}, *this};
    std::vector<T> q(static_cast<size_t>(degree() - dd) + 1, T(0));
    const T lead = d.leading();
    for (int k = degree() - dd; k >= 0; --k) {
      T t = r[static_cast<size_t>(k + dd)] / lead;
      q[static_cast<size_t>(k)] = t;
      for (int j = 0; j <= dd; ++j) r[static_cast<size_t>(k + j)] -= t * d.c_[static_cast<size_t>(j)];
      r[static_cast<size_t>(k + dd)] = T(0);
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    return *this * (T(1) / leading());
  }

  /// Largest |coefficient|, as a double.
  double magnitude() const {
    double m = 0;
    for (const auto& v : c_) m = std::max(m, std::abs(to_double(v)));
    return m;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

template <class T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Yun's algorithm. Element k-1 holds the monic squarefree factor whose roots
/// have multiplicity k; constant factors are kept so the index is meaningful.
template <class T>
std::vector<Polynomial<T>> squarefree_decomposition(const Polynomial<T>& p) {
  std::vector<Polynomial<T>> out;
  if (p.degree() <= 0) return out;
  Polynomial<T> dp = p.derivative();
  Polynomial<T> a = gcd(p, dp);
  Polynomial<T> b = p.divmod(a).first;
  Polynomial<T> c = dp.divmod(a).first;
  Polynomial<T> d = c - b.derivative();
  while (b.degree() > 0) {
    Polynomial<T> g = gcd(b, d);
    out.push_back(g);
    b = b.divmod(g).first;
    c = d.divmod(g).first;
    d = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() <= 0) out.pop_back();
  return out;
}

template <class To, class From>
Polynomial<To> convert(const Polynomial<From>& p) {
  std::vector<To> c;
  c.reserve(p.coefficients().size());
  for (const auto& v : p.coefficients()) {
    if constexpr (std::is_same_v<To, Rational>)
      c.push_back(to_rational(v));
    else
      c.push_back(static_cast<To>(to_double(v)));
  }
  return Polynomial<To>(std::move(c));
}

}  // namespace ctbp
