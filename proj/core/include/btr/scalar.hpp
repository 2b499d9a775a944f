#ifndef BTR_SCALAR_HPP
#define BTR_SCALAR_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace btr {

using Rational = mpq_class;

// Exact rational with an optional first-order part: v + eps*d, eps^2 = 0.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : v_(v) {}
  Scalar(int v) : v_(v) {}
  Scalar(const Rational& v) : v_(v) {}
  Scalar(Rational v, Rational d) : v_(std::move(v)), d_(std::move(d)) {}
  static Scalar frac(long p, long q);
  static Scalar eps(const Rational& d) { return Scalar(Rational(0), d); }

  // Accepts "p/q", "p", and "p/q+eps*r/s" (also "eps*r/s").
  static Scalar parse(std::string_view s);

  const Rational& value() const { return v_; }
  const Rational& deriv() const { return d_; }
  bool is_zero() const { return sgn(v_) == 0 && sgn(d_) == 0; }
  bool is_exact() const { return sgn(d_) == 0; }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  // this += a * b without temporaries for the common case.
  void add_mul(const Scalar& a, const Scalar& b);

  Scalar operator-() const { return Scalar(-v_, -d_); }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_ && a.d_ == b.d_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar inverse() const;
  Scalar pow(int e) const;

  // "p/q" when exact, "p/q+eps*r/s" otherwise.
  std::string str() const;

 private:
  Rational v_{0};
  Rational d_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

Rational parse_rational(std::string_view s);
std::string rational_str(const Rational& q);

Rational factorial(int n);
// (2k-1)!! with (-1)!! = 1.
Rational double_factorial_odd(int k);
Rational binomial(int n, int k);
// Standard convention: B_1 = -1/2, B_2 = 1/6, B_4 = -1/30.
Rational bernoulli(int n);

}  // namespace btr

#endif
