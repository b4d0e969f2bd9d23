#pragma once

#include <algorithm>
#include <climits>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "jacobi/errors.hpp"
#include "jacobi/params.hpp"

namespace jacobi {

/// Polynomial in one indeterminate X with rational coefficients; the
/// coefficient ring of series that carry a single unknown h_k = X.
class XPoly {
 public:
  XPoly() = default;
  XPoly(const Rational& c) : c_{c} { trim(); }  // NOLINT: implicit by design of the coefficient ring
  XPoly(long c) : XPoly(Rational(c)) {}         // NOLINT
  static XPoly X() { return XPoly(std::vector<Rational>{Rational(0), Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
  Rational operator()(const Rational& x) const;

  XPoly& operator+=(const XPoly& o);
  XPoly& operator-=(const XPoly& o);
  XPoly& operator*=(const XPoly& o);
  XPoly& operator*=(const Rational& s);
  XPoly& operator/=(const Rational& s);
  friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
  friend XPoly operator-(XPoly a, const XPoly& b) { return a -= b; }
  friend XPoly operator*(XPoly a, const XPoly& b) { return a *= b; }
  friend XPoly operator-(XPoly a) { return a *= Rational(-1); }
  friend bool operator==(const XPoly& a, const XPoly& b) { return a.c_ == b.c_; }
  friend std::ostream& operator<<(std::ostream& os, const XPoly& p);

 private:
  explicit XPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  void trim();
  std::vector<Rational> c_;
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const XPoly& p) { return p.is_zero(); }

/// Truncated power series sum c_k t^k known modulo t^trunc. A series with
/// trunc == kExact is a polynomial known exactly (precision infinity).
template <typename C>
class Series {
 public:
  static constexpr int kExact = INT_MAX;

  Series() = default;
  Series(std::vector<C> coeffs, int trunc) : c_(std::move(coeffs)), trunc_(trunc) { normalize(); }
  static Series polynomial(std::vector<C> coeffs) { return Series(std::move(coeffs), kExact); }
  static Series polynomial(std::initializer_list<long> coeffs) {
    std::vector<C> c;
    for (long v : coeffs) c.emplace_back(C(Rational(v)));
    return polynomial(std::move(c));
  }

  int trunc() const { return trunc_; }
  bool exact() const { return trunc_ == kExact; }
  /// Number of stored coefficients (all others below trunc are zero).
  int size() const { return static_cast<int>(c_.size()); }
  C operator[](int k) const { return k < size() ? c_[k] : C(); }
  const std::vector<C>& coeffs() const { return c_; }

  /// Index of the first nonzero coefficient; trunc() for a series with none known.
  int valuation() const {
    for (int i = 0; i < size(); ++i) {
      if (!is_zero(c_[i])) return i;
    }
    return trunc_;
  }

  friend Series operator+(const Series& a, const Series& b) {
    const int tr = std::min(a.trunc_, b.trunc_);
    std::vector<C> r(std::min<std::size_t>(std::max(a.c_.size(), b.c_.size()), clamp_len(tr)));
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size()) r[i] += a.c_[i];
      if (i < b.c_.size()) r[i] += b.c_[i];
    }
    return Series(std::move(r), tr);
  }
  friend Series operator-(const Series& a) {
    Series r = a;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }
  friend Series operator+(const Series& a, const C& s) { return a + Series(std::vector<C>{s}, kExact); }
  friend Series operator-(const Series& a, const C& s) { return a + Series(std::vector<C>{-s}, kExact); }

  /// Product; precision follows min(trunc_a + val_b, trunc_b + val_a).
  friend Series operator*(const Series& a, const Series& b) {
    const int tr = std::min(sat_add(a.trunc_, b.valuation()), sat_add(b.trunc_, a.valuation()));
    if (a.c_.empty() || b.c_.empty()) return Series({}, tr);
    const std::size_t n = std::min(a.c_.size() + b.c_.size() - 1, clamp_len(tr));
    std::vector<C> r(n);
    for (std::size_t i = 0; i < a.c_.size() && i < n; ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size() && i + j < n; ++j) {
        r[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return Series(std::move(r), tr);
  }
  friend Series operator*(const Series& a, const Rational& s) {
    Series r = a;
    for (auto& c : r.c_) c *= s;
    r.normalize();
    return r;
  }
  friend Series operator*(const Rational& s, const Series& a) { return a * s; }

  Series derivative() const {
    std::vector<C> r;
    for (int k = 1; k < size(); ++k) {
      C c = c_[k];
      c *= Rational(k);
      r.push_back(std::move(c));
    }
    return Series(std::move(r), exact() ? kExact : trunc_ - 1);
  }

  /// Antiderivative with zero constant term.
  Series integrate() const {
    std::vector<C> r(c_.size() + 1);
    for (int k = 0; k < size(); ++k) {
      r[k + 1] = c_[k];
      r[k + 1] /= Rational(k + 1);
    }
    return Series(std::move(r), exact() ? kExact : trunc_ + 1);
  }

  /// Quotient q with q (t - 1) = a; q_0 = -a_0, q_k = q_{k-1} - a_k.
  Series div_by_t_minus_1() const {
    if (exact()) throw DomainError("div_by_t_minus_1: needs a finite truncation");
    std::vector<C> q(static_cast<std::size_t>(trunc_));
    C prev{};
    for (int k = 0; k < trunc_; ++k) {
      prev -= (*this)[k];
      q[k] = prev;
    }
    return Series(std::move(q), trunc_);
  }

  /// Drops the constant term and divides by t.
  Series shift_down() const {
    std::vector<C> r;
    for (int k = 1; k < size(); ++k) r.push_back(c_[k]);
    return Series(std::move(r), exact() ? kExact : trunc_ - 1);
  }

  Series truncated(int trunc) const {
    std::vector<C> r(c_.begin(), c_.begin() + std::min(size(), std::max(trunc, 0)));
    return Series(std::move(r), std::min(trunc, trunc_));
  }

  friend bool operator==(const Series& a, const Series& b) { return a.trunc_ == b.trunc_ && a.c_ == b.c_; }

 private:
  static int sat_add(int x, int y) {
    if (x == kExact || y == kExact) return kExact;
    long s = static_cast<long>(x) + y;
    return s >= kExact ? kExact : static_cast<int>(s);
  }
  static std::size_t clamp_len(int tr) { return tr == kExact ? SIZE_MAX : static_cast<std::size_t>(std::max(tr, 0)); }

  void normalize() {
    if (!exact() && static_cast<int>(c_.size()) > trunc_) c_.resize(static_cast<std::size_t>(std::max(trunc_, 0)));
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }

  std::vector<C> c_;
  int trunc_ = kExact;
};

using RationalSeries = Series<Rational>;
using UnknownSeries = Series<XPoly>;

/// exp(a) for a with zero constant term: e_0 = 1, n e_n = sum_k k a_k e_{n-k}.
RationalSeries exp(const RationalSeries& a);

double eval(const RationalSeries& a, double t);
Rational eval_horner_rational(const RationalSeries& a, const Rational& t);

/// Coefficients c_0..c_{trunc-1} converted to double.
std::vector<double> to_doubles(const RationalSeries& a);

/// "p/q" coefficients separated by commas, followed by " + O(t^D)".
std::string dump(const RationalSeries& a);

UnknownSeries lift(const RationalSeries& a);

}  // namespace jacobi
