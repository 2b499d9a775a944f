#ifndef BTR_SERIES_HPP
#define BTR_SERIES_HPP

#include <climits>
#include <map>
#include <string>

#include "btr/scalar.hpp"

namespace btr {

// Known-order sentinel for data that is exact (no truncation).
constexpr int kExact = 1 << 28;

inline int order_add(int a, int b) {
  if (a >= kExact || b >= kExact) return kExact;
  long s = static_cast<long>(a) + b;
  return s >= kExact ? kExact : static_cast<int>(s);
}
inline int order_min(int a, int b) { return a < b ? a : b; }

enum class Weight : int { Function = 0, Form = 1, Quadratic = 2 };

// Truncated Laurent series in one local coordinate zeta on one branch,
// tagged with its differential weight. Coefficients above order() are unknown.
class Series1 {
 public:
  Series1() = default;
  explicit Series1(Weight w, int order = kExact, int branch = 0) : w_(w), order_(order), branch_(branch) {}
  static Series1 monomial(const Scalar& c, int d, Weight w, int order = kExact);

  Weight weight() const { return w_; }
  int order() const { return order_; }
  int branch() const { return branch_; }
  void set_order(int o);
  void set_branch(int b) { branch_ = b; }

  const std::map<int, Scalar>& terms() const { return c_; }
  bool empty() const { return c_.empty(); }
  // Lowest degree present; order()+1 when identically zero to known order.
  int floor() const;
  Scalar coeff(int d) const;
  void add(int d, const Scalar& v);

  Series1& operator+=(const Series1& o);
  Series1& operator-=(const Series1& o);
  friend Series1 operator+(Series1 a, const Series1& b) { return a += b; }
  friend Series1 operator-(Series1 a, const Series1& b) { return a -= b; }
  Series1 scaled(const Scalar& s) const;
  // Product; weights add. Coefficients are produced up to min(limit, known order).
  Series1 mul(const Series1& o, int limit = kExact) const;
  Series1 truncated(int order) const;

  friend bool operator==(const Series1& a, const Series1& b) {
    return a.w_ == b.w_ && a.order_ == b.order_ && a.c_ == b.c_;
  }

  std::string str() const;

 private:
  Weight w_ = Weight::Form;
  int order_ = kExact;
  int branch_ = 0;
  std::map<int, Scalar> c_;
};

// zeta -> -zeta, including the sign of each d zeta factor.
Series1 involution_pullback(const Series1& f);
// (odd, even) parts with respect to the involution.
std::pair<Series1, Series1> odd_even_split(const Series1& f);
Scalar residue(const Series1& f);
// Primitive vanishing at zeta = 0 of a 1-form.
Series1 primitive_from_p(const Series1& f);
// Multiplicative inverse as a function-weight series; the weight tag is kept.
Series1 invert_unit(const Series1& f, int limit = kExact);

}  // namespace btr

#endif
