#include "jacobi/ratseries.hpp"

#include <sstream>

namespace jacobi {

void XPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational XPoly::operator()(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

XPoly& XPoly::operator+=(const XPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

XPoly& XPoly::operator-=(const XPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

XPoly& XPoly::operator*=(const XPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

XPoly& XPoly::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

XPoly& XPoly::operator/=(const Rational& s) {
  for (auto& c : c_) c /= s;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const XPoly& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    if (sgn(p.c_[i]) == 0) continue;
    if (!first) os << " + ";
    os << p.c_[i];
    if (i > 0) os << "*X";
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os;
}

RationalSeries exp(const RationalSeries& a) {
  if (sgn(a[0]) != 0) throw DomainError("exp: constant term must be zero");
  if (a.exact()) throw DomainError("exp: needs a finite truncation");
  const int n = a.trunc();
  std::vector<Rational> e(static_cast<std::size_t>(n));
  if (n == 0) return RationalSeries({}, 0);
  e[0] = 1;
  // k a_k is reused for every n
  std::vector<Rational> ka(static_cast<std::size_t>(n));
  for (int k = 1; k < n; ++k) ka[k] = a[k] * k;
  for (int m = 1; m < n; ++m) {
    Rational s = 0;
    for (int k = 1; k <= m; ++k) {
      if (sgn(ka[k]) != 0) s += ka[k] * e[m - k];
    }
    s /= m;
    e[m] = std::move(s);
  }
  return RationalSeries(std::move(e), n);
}

double eval(const RationalSeries& a, double t) {
  double r = 0;
  for (int k = a.size() - 1; k >= 0; --k) r = r * t + a[k].get_d();
  return r;
}

Rational eval_horner_rational(const RationalSeries& a, const Rational& t) {
  Rational r = 0;
  for (int k = a.size() - 1; k >= 0; --k) r = r * t + a[k];
  return r;
}

std::vector<double> to_doubles(const RationalSeries& a) {
  std::vector<double> r(static_cast<std::size_t>(a.size()));
  for (int k = 0; k < a.size(); ++k) r[k] = a[k].get_d();
  return r;
}

std::string dump(const RationalSeries& a) {
  std::ostringstream os;
  for (int k = 0; k < a.size(); ++k) {
    if (k) os << ",";
    os << a[k];
  }
  if (!a.exact()) os << " + O(t^" << a.trunc() << ")";
  return os.str();
}

UnknownSeries lift(const RationalSeries& a) {
  std::vector<XPoly> c;
  c.reserve(a.coeffs().size());
  for (const auto& q : a.coeffs()) c.emplace_back(q);
  return UnknownSeries(std::move(c), a.trunc());
}

}  // namespace jacobi
