#include "jacobi/params.hpp"

#include <cctype>
#include <sstream>

namespace jacobi {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Rational parse_decimal(std::string_view s, std::string_view original) {
  auto fail = [&] { throw DomainError("cannot parse number '" + std::string(original) + "'"); };
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part[0] == '+' || exp_part[0] == '-')) {
      exp_negative = exp_part[0] == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) fail();
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  long frac_len = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) fail();
    if (!int_part.empty() && !all_digits(int_part)) fail();
    if (!frac_part.empty() && !all_digits(frac_part)) fail();
    digits = std::string(int_part) + std::string(frac_part);
    frac_len = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) fail();
    digits = std::string(s);
  }
  Rational q(mpz_class(digits, 10));
  long shift = exponent - frac_len;
  if (shift > 0) {
    q *= pow10(static_cast<unsigned long>(shift));
  } else if (shift < 0) {
    q /= pow10(static_cast<unsigned long>(-shift));
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw DomainError("empty number");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(s.substr(0, slash), text);
    Rational den = parse_decimal(s.substr(slash + 1), text);
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }
  return parse_decimal(s, text);
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(Method m) {
  switch (m) {
    case Method::rk: return "rk";
    case Method::series: return "series";
    case Method::mc: return "mc";
    case Method::asymptotic: return "asymptotic";
    case Method::glued: return "glued";
  }
  return "?";
}

const ExactConstants& EnsembleParams::exact() const {
  if (!exact_) throw DomainError("parameters were not supplied as exact rationals");
  return *exact_;
}

bool EnsembleParams::integer_N() const {
  if (exact_) return exact_->N.get_den() == 1;
  return N_ == std::floor(N_);
}

std::string EnsembleParams::describe() const {
  std::ostringstream os;
  if (exact_) {
    os << "a=" << exact_->a << " b=" << exact_->b << " N=" << exact_->N;
  } else {
    os.precision(17);
    os << "a=" << a_ << " b=" << b_ << " N=" << N_;
  }
  return os.str();
}

namespace {

template <typename T>
void check_domain(const T& a, const T& b, const T& N) {
  if (!(a > -1)) throw DomainError("a must exceed -1");
  if (!(b > -1)) throw DomainError("b must exceed -1");
  if (!(N > 0)) throw DomainError("N must be positive");
}

// b-quadruple and the two elementary symmetric combinations built from it.
template <typename T>
void derived(const T& a, const T& b, const T& N, std::array<T, 4>& bv, T& e2, T& e2p, T& lead) {
  bv[0] = N + (a + b) / 2;
  bv[1] = (a - b) / 2;
  bv[2] = -(a + b) / 2;
  bv[3] = -N - (a + b) / 2;
  e2p = bv[0] * bv[2] + bv[0] * bv[3] + bv[2] * bv[3];
  e2 = e2p + bv[1] * (bv[0] + bv[2] + bv[3]);
  lead = N * (N + b);
}

}  // namespace

EnsembleParams derive(const Rational& a, const Rational& b, const Rational& N) {
  check_domain(a, b, N);
  ExactConstants ex;
  ex.a = a;
  ex.b = b;
  ex.N = N;
  derived<Rational>(a, b, N, ex.bvec, ex.e2, ex.e2p, ex.lead_exp);
  for (auto& q : ex.bvec) q.canonicalize();
  ex.e2.canonicalize();
  ex.e2p.canonicalize();
  ex.lead_exp.canonicalize();

  EnsembleParams p;
  p.a_ = a.get_d();
  p.b_ = b.get_d();
  p.N_ = N.get_d();
  for (int i = 0; i < 4; ++i) p.bvec_[i] = ex.bvec[i].get_d();
  p.e2_ = ex.e2.get_d();
  p.e2p_ = ex.e2p.get_d();
  p.lead_exp_ = ex.lead_exp.get_d();
  p.exact_ = std::move(ex);
  return p;
}

EnsembleParams derive(double a, double b, double N) {
  check_domain(a, b, N);
  EnsembleParams p;
  p.a_ = a;
  p.b_ = b;
  p.N_ = N;
  derived<double>(a, b, N, p.bvec_, p.e2_, p.e2p_, p.lead_exp_);
  return p;
}

}  // namespace jacobi
