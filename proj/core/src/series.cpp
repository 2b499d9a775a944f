#include "btr/series.hpp"

#include <sstream>
#include <vector>

#include "btr/errors.hpp"

namespace btr {

namespace {

int sigma_sign(int d, Weight w) {
  int e = d + static_cast<int>(w);
  return (e % 2 == 0) ? 1 : -1;
}

}  // namespace

Series1 Series1::monomial(const Scalar& c, int d, Weight w, int order) {
  Series1 s(w, order);
  s.add(d, c);
  return s;
}

void Series1::set_order(int o) {
  order_ = o;
  for (auto it = c_.upper_bound(o); it != c_.end();) it = c_.erase(it);
}

int Series1::floor() const { return c_.empty() ? order_add(order_, 1) : c_.begin()->first; }

Scalar Series1::coeff(int d) const {
  if (d > order_) throw InsufficientTruncation(d, order_, "Series1::coeff");
  auto it = c_.find(d);
  return it == c_.end() ? Scalar() : it->second;
}

void Series1::add(int d, const Scalar& v) {
  if (d > order_ || v.is_zero()) return;
  auto [it, ins] = c_.try_emplace(d, v);
  if (!ins) {
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
  }
}

Series1& Series1::operator+=(const Series1& o) {
  if (o.w_ != w_ && !o.c_.empty() && !c_.empty())
    throw Error(ErrorKind::ArityMismatch, "adding series of different weights");
  if (c_.empty()) w_ = o.w_;
  set_order(order_min(order_, o.order_));
  for (const auto& [d, v] : o.c_) add(d, v);
  return *this;
}

Series1& Series1::operator-=(const Series1& o) { return *this += o.scaled(Scalar(-1)); }

Series1 Series1::scaled(const Scalar& s) const {
  Series1 r(w_, order_, branch_);
  if (s.is_zero()) return r;
  for (const auto& [d, v] : c_) r.add(d, v * s);
  return r;
}

Series1 Series1::mul(const Series1& o, int limit) const {
  int w = static_cast<int>(w_) + static_cast<int>(o.w_);
  if (w > 2) throw Error(ErrorKind::ArityMismatch, "product weight exceeds quadratic");
  int ord = order_min(order_add(order_, o.floor()), order_add(o.order_, floor()));
  ord = order_min(ord, limit);
  Series1 r(static_cast<Weight>(w), ord, branch_);
  for (const auto& [da, va] : c_) {
    for (const auto& [db, vb] : o.c_) {
      if (da + db > ord) break;
      r.add(da + db, va * vb);
    }
  }
  return r;
}

Series1 Series1::truncated(int order) const {
  Series1 r = *this;
  r.set_order(order_min(order, order_));
  return r;
}

std::string Series1::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, v] : c_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << v << ")z^" << d;
  }
  if (first) os << "0";
  if (order_ < kExact) os << " + O(z^" << order_ + 1 << ")";
  return os.str();
}

Series1 involution_pullback(const Series1& f) {
  Series1 r(f.weight(), f.order(), f.branch());
  for (const auto& [d, v] : f.terms()) r.add(d, sigma_sign(d, f.weight()) == 1 ? v : -v);
  return r;
}

std::pair<Series1, Series1> odd_even_split(const Series1& f) {
  Series1 odd(f.weight(), f.order(), f.branch()), even(f.weight(), f.order(), f.branch());
  for (const auto& [d, v] : f.terms()) (sigma_sign(d, f.weight()) == 1 ? even : odd).add(d, v);
  return {odd, even};
}

Scalar residue(const Series1& f) {
  if (f.weight() != Weight::Form) throw Error(ErrorKind::ArityMismatch, "residue of a non-form series");
  return f.coeff(-1);
}

Series1 primitive_from_p(const Series1& f) {
  if (f.weight() != Weight::Form) throw Error(ErrorKind::ArityMismatch, "primitive of a non-form series");
  if (f.order() >= -1 && !f.coeff(-1).is_zero())
    throw Error(ErrorKind::LogarithmicTerm, "nonzero residue at the ramification point");
  Series1 r(Weight::Function, order_add(f.order(), 1), f.branch());
  for (const auto& [d, v] : f.terms()) r.add(d + 1, v / Scalar(d + 1));
  return r;
}

Series1 invert_unit(const Series1& f, int limit) {
  if (f.empty()) throw Error(ErrorKind::ZeroLeadingCoefficient, "inverse of a zero series");
  int fl = f.floor();
  Scalar lead_inv = f.coeff(fl).inverse();
  // Relative order of f: order - floor; the inverse has floor -fl.
  int rel = f.order() >= kExact ? kExact : f.order() - fl;
  int top = order_min(order_add(rel, -fl), limit);
  if (top >= kExact) {
    if (f.terms().size() == 1) return Series1::monomial(lead_inv, -fl, f.weight(), kExact);
    throw Error(ErrorKind::SizeLimitExceeded, "invert_unit of an exact polynomial needs a finite limit");
  }
  Series1 r(f.weight(), top, f.branch());
  if (top < -fl) return r;
  int n = top + fl;  // number of extra coefficients
  std::vector<Scalar> u;  // normalized f / (c zeta^fl)
  u.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    auto it = f.terms().find(fl + k);
    u.push_back(it == f.terms().end() ? Scalar() : it->second * lead_inv);
  }
  std::vector<Scalar> inv(n + 1);
  inv[0] = Scalar(1);
  for (int k = 1; k <= n; ++k) {
    Scalar s;
    for (int j = 1; j <= k; ++j)
      if (!u[j].is_zero()) s.add_mul(u[j], inv[k - j]);
    inv[k] = -s;
  }
  for (int k = 0; k <= n; ++k) r.add(-fl + k, inv[k] * lead_inv);
  return r;
}

}  // namespace btr
