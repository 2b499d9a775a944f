#include "btr/local_form.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "btr/errors.hpp"

namespace btr {

Key::Key(std::initializer_list<int> branches, std::initializer_list<int> degrees) {
  if (branches.size() != degrees.size() || branches.size() > static_cast<std::size_t>(kMaxArity))
    throw Error(ErrorKind::ArityMismatch, "key size");
  auto b = branches.begin();
  auto d = degrees.begin();
  for (; b != branches.end(); ++b, ++d) push(*b, *d);
}

bool operator<(const Key& a, const Key& b) {
  if (a.n != b.n) return a.n < b.n;
  for (int i = 0; i < a.n; ++i)
    if (a.br(i) != b.br(i)) return a.br(i) < b.br(i);
  for (int i = 0; i < a.n; ++i)
    if (a.deg(i) != b.deg(i)) return a.deg(i) < b.deg(i);
  return false;
}

std::size_t KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 1469598103934665603ull ^ k.n;
  for (int i = 0; i < k.n; ++i) {
    std::uint64_t x = (static_cast<std::uint64_t>(static_cast<std::uint16_t>(k.v[i])) << 16) |
                      static_cast<std::uint16_t>(k.v[kMaxArity + i]);
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

void LocalForm::set_order(int v, int o) {
  order_[v] = o;
  if (o >= kExact) return;
  for (auto it = c_.begin(); it != c_.end();) {
    if (it->first.deg(v) > o)
      it = c_.erase(it);
    else
      ++it;
  }
}

void LocalForm::set_orders(int o) {
  for (int v = 0; v < arity_; ++v) set_order(v, o);
}

int LocalForm::min_order() const {
  int m = kExact;
  for (int o : order_) m = std::min(m, o);
  return m;
}

Scalar LocalForm::get(const Key& k) const {
  if (k.arity() != arity_) throw Error(ErrorKind::ArityMismatch, "key arity");
  for (int v = 0; v < arity_; ++v)
    if (k.deg(v) > order_[v]) throw InsufficientTruncation(k.deg(v), order_[v], "LocalForm::get");
  auto it = c_.find(k);
  return it == c_.end() ? Scalar() : it->second;
}

void LocalForm::add(const Key& k, const Scalar& s) {
  if (s.is_zero()) return;
  for (int v = 0; v < arity_; ++v)
    if (k.deg(v) > order_[v]) return;
  auto [it, ins] = c_.try_emplace(k, s);
  if (!ins) {
    it->second += s;
    if (it->second.is_zero()) c_.erase(it);
  }
}

void LocalForm::add_mul(const Key& k, const Scalar& a, const Scalar& b) {
  for (int v = 0; v < arity_; ++v)
    if (k.deg(v) > order_[v]) return;
  auto [it, ins] = c_.try_emplace(k);
  it->second.add_mul(a, b);
  if (it->second.is_zero()) c_.erase(it);
}

int LocalForm::min_degree(int v) const {
  int m = 0;
  bool first = true;
  for (const auto& [k, s] : c_) {
    if (first || k.deg(v) < m) m = k.deg(v);
    first = false;
  }
  return m;
}

int LocalForm::max_degree(int v) const {
  int m = 0;
  bool first = true;
  for (const auto& [k, s] : c_) {
    if (first || k.deg(v) > m) m = k.deg(v);
    first = false;
  }
  return m;
}

LocalForm& LocalForm::operator+=(const LocalForm& o) {
  if (o.arity_ != arity_) throw Error(ErrorKind::ArityMismatch, "adding forms of different arity");
  for (int v = 0; v < arity_; ++v)
    if (o.order_[v] < order_[v]) set_order(v, o.order_[v]);
  for (const auto& [k, s] : o.c_) add(k, s);
  return *this;
}

LocalForm& LocalForm::operator-=(const LocalForm& o) {
  if (o.arity_ != arity_) throw Error(ErrorKind::ArityMismatch, "subtracting forms of different arity");
  for (int v = 0; v < arity_; ++v)
    if (o.order_[v] < order_[v]) set_order(v, o.order_[v]);
  for (const auto& [k, s] : o.c_) add(k, -s);
  return *this;
}

LocalForm LocalForm::scaled(const Scalar& s) const {
  LocalForm r(arity_);
  r.order_ = order_;
  if (s.is_zero()) return r;
  for (const auto& [k, v] : c_) r.c_.emplace(k, v * s);
  return r;
}

LocalForm LocalForm::permuted(const std::vector<int>& perm) const {
  LocalForm r(arity_);
  for (int i = 0; i < arity_; ++i) r.order_[i] = order_[perm[i]];
  for (const auto& [k, s] : c_) {
    Key nk(arity_);
    for (int i = 0; i < arity_; ++i) nk.set(i, k.br(perm[i]), k.deg(perm[i]));
    r.c_.emplace(nk, s);
  }
  return r;
}

LocalForm LocalForm::symmetrized() const {
  std::vector<int> perm(arity_);
  std::iota(perm.begin(), perm.end(), 0);
  LocalForm r(arity_, min_order());
  long count = 0;
  do {
    r += permuted(perm);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return r.scaled(Scalar(Rational(1, count)));
}

bool LocalForm::is_symmetric() const {
  if (arity_ < 2) return true;
  std::vector<int> perm(arity_);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    for (const auto& [k, s] : c_) {
      Key nk(arity_);
      for (int i = 0; i < arity_; ++i) nk.set(i, k.br(perm[i]), k.deg(perm[i]));
      auto it = c_.find(nk);
      if (it == c_.end() || !(it->second == s)) return false;
    }
  }
  return true;
}

LocalForm LocalForm::filtered(const std::function<bool(const Key&)>& keep) const {
  LocalForm r(arity_);
  r.order_ = order_;
  for (const auto& [k, s] : c_)
    if (keep(k)) r.c_.emplace(k, s);
  return r;
}

std::vector<std::pair<Key, Scalar>> LocalForm::sorted() const {
  std::vector<std::pair<Key, Scalar>> out(c_.begin(), c_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool operator==(const LocalForm& a, const LocalForm& b) {
  if (a.arity_ != b.arity_ || a.order_ != b.order_ || a.c_.size() != b.c_.size()) return false;
  for (const auto& [k, s] : a.c_) {
    auto it = b.c_.find(k);
    if (it == b.c_.end() || !(it->second == s)) return false;
  }
  return true;
}

std::string LocalForm::str() const {
  std::ostringstream os;
  os << "LocalForm(arity=" << arity_ << ", orders=[";
  for (int v = 0; v < arity_; ++v) os << (v ? "," : "") << (order_[v] >= kExact ? std::string("exact") : std::to_string(order_[v]));
  os << "])";
  for (const auto& [k, s] : sorted()) {
    os << "\n  [";
    for (int i = 0; i < k.arity(); ++i) os << (i ? "," : "") << k.br(i) + 1;
    os << "] (";
    for (int i = 0; i < k.arity(); ++i) os << (i ? "," : "") << k.deg(i);
    os << ") " << s;
  }
  return os.str();
}

bool agree(const LocalForm& a, const LocalForm& b, std::string* why) {
  if (a.arity() != b.arity()) {
    if (why) *why = "arity mismatch";
    return false;
  }
  auto known = [&](const Key& k) {
    for (int v = 0; v < a.arity(); ++v)
      if (k.deg(v) > a.order(v) || k.deg(v) > b.order(v)) return false;
    return true;
  };
  auto check = [&](const LocalForm& x, const LocalForm& y) {
    for (const auto& [k, s] : x.entries()) {
      if (!known(k)) continue;
      auto it = y.entries().find(k);
      Scalar t = it == y.entries().end() ? Scalar() : it->second;
      if (!(t == s)) {
        if (why) {
          std::ostringstream os;
          os << "mismatch at branches [";
          for (int i = 0; i < k.arity(); ++i) os << (i ? "," : "") << k.br(i) + 1;
          os << "] degrees (";
          for (int i = 0; i < k.arity(); ++i) os << (i ? "," : "") << k.deg(i);
          os << "): " << s << " vs " << t;
          *why = os.str();
        }
        return false;
      }
    }
    return true;
  };
  return check(a, b) && check(b, a);
}

LocalForm tensor(const LocalForm& a, const LocalForm& b) {
  int n = a.arity() + b.arity();
  if (n > kMaxArity) throw Error(ErrorKind::SizeLimitExceeded, "tensor arity");
  LocalForm r(n);
  for (int v = 0; v < a.arity(); ++v) r.set_order(v, a.order(v));
  for (int v = 0; v < b.arity(); ++v) r.set_order(a.arity() + v, b.order(v));
  for (const auto& [ka, sa] : a.entries()) {
    for (const auto& [kb, sb] : b.entries()) {
      Key k = ka;
      for (int i = 0; i < kb.arity(); ++i) k.push(kb.br(i), kb.deg(i));
      r.add(k, sa * sb);
    }
  }
  return r;
}

LocalForm involution_pullback(const LocalForm& f, int v) {
  LocalForm r(f.arity());
  for (int w = 0; w < f.arity(); ++w) r.set_order(w, f.order(w));
  for (const auto& [k, s] : f.entries()) r.add(k, (k.deg(v) % 2 == 0) ? -s : s);
  return r;
}

std::pair<LocalForm, LocalForm> odd_even_split(const LocalForm& f, const std::vector<int>& vars) {
  auto is_odd = [&](const Key& k) {
    for (int v : vars)
      if (k.deg(v) % 2 != 0) return false;
    return true;
  };
  LocalForm odd = f.filtered(is_odd);
  LocalForm even = f - odd;
  return {odd, even};
}

LocalForm odd_part_all(const LocalForm& f) {
  return f.filtered([&](const Key& k) {
    for (int v = 0; v < k.arity(); ++v)
      if (k.deg(v) % 2 != 0) return false;
    return true;
  });
}

}  // namespace btr
