#include "btr/scalar.hpp"

#include <map>
#include <mutex>
#include <ostream>
#include <vector>

#include "btr/errors.hpp"

namespace btr {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::InsufficientTruncation: return "InsufficientTruncation";
    case ErrorKind::LogarithmicTerm: return "LogarithmicTerm";
    case ErrorKind::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorKind::AlphaZero: return "AlphaZero";
    case ErrorKind::NonHolomorphicBlob: return "NonHolomorphicBlob";
    case ErrorKind::UnstablePair: return "UnstablePair";
    case ErrorKind::NonSquareU: return "NonSquareU";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
  }
  return "Error";
}

Rational parse_rational(std::string_view s) {
  std::string t;
  for (char c : s)
    if (c != ' ') t.push_back(c);
  if (t.empty()) throw Error(ErrorKind::Validation, "empty rational");
  if (t[0] == '+') t.erase(0, 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    char c = t[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0);
    if (!ok) throw Error(ErrorKind::Validation, "malformed rational '" + std::string(s) + "'");
  }
  Rational q;
  if (q.set_str(t, 10) != 0) throw Error(ErrorKind::Validation, "malformed rational '" + std::string(s) + "'");
  if (sgn(q.get_den()) == 0) throw Error(ErrorKind::Validation, "zero denominator in '" + std::string(s) + "'");
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

Scalar Scalar::frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return Scalar(r);
}

Scalar Scalar::parse(std::string_view s) {
  auto pos = s.find("eps*");
  if (pos == std::string_view::npos) return Scalar(parse_rational(s));
  Rational d = parse_rational(s.substr(pos + 4));
  std::string_view head = s.substr(0, pos);
  while (!head.empty() && (head.back() == ' ')) head.remove_suffix(1);
  bool neg = false;
  if (!head.empty() && (head.back() == '+' || head.back() == '-')) {
    neg = head.back() == '-';
    head.remove_suffix(1);
  }
  Rational v = head.empty() ? Rational(0) : parse_rational(head);
  if (neg) d = -d;
  return Scalar(v, d);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  v_ += o.v_;
  if (sgn(o.d_) != 0) d_ += o.d_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  v_ -= o.v_;
  if (sgn(o.d_) != 0) d_ -= o.d_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  bool da = sgn(d_) != 0, db = sgn(o.d_) != 0;
  if (!da && !db) {
    v_ *= o.v_;
    return *this;
  }
  Rational nd = 0;
  if (da) nd = d_ * o.v_;
  if (db) nd += v_ * o.d_;
  v_ *= o.v_;
  d_ = nd;
  return *this;
}

void Scalar::add_mul(const Scalar& a, const Scalar& b) {
  bool da = sgn(a.d_) != 0, db = sgn(b.d_) != 0;
  if (da) d_ += a.d_ * b.v_;
  if (db) d_ += a.v_ * b.d_;
  v_ += a.v_ * b.v_;
}

Scalar Scalar::inverse() const {
  if (sgn(v_) == 0) throw Error(ErrorKind::ZeroLeadingCoefficient, "inverse of a scalar with zero value part");
  Rational iv = 1 / v_;
  if (sgn(d_) == 0) return Scalar(iv);
  return Scalar(iv, -d_ * iv * iv);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r(1), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::string Scalar::str() const {
  if (sgn(d_) == 0) return rational_str(v_);
  std::string s = sgn(v_) == 0 ? std::string() : rational_str(v_);
  if (sgn(d_) < 0)
    s += "-eps*" + rational_str(-d_);
  else
    s += (s.empty() ? "eps*" : "+eps*") + rational_str(d_);
  return s;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Rational factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
  return Rational(r);
}

Rational double_factorial_odd(int k) {
  mpz_class r = 1;
  for (int j = 2 * k - 1; j > 1; j -= 2) r *= j;
  return Rational(r);
}

Rational binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Rational bernoulli(int n) {
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(table.size()) <= n) {
    int m = static_cast<int>(table.size());
    Rational s = 0;
    for (int k = 0; k < m; ++k) s += binomial(m + 1, k) * table[k];
    table.push_back(-s / (m + 1));
  }
  return table[n];
}

}  // namespace btr
