#include "btr/residue.hpp"

#include <unordered_map>

#include "btr/errors.hpp"

namespace btr {

namespace {

void require_polar_known(const LocalForm& f, int k, const char* where) {
  if (f.order(k) < -2) throw InsufficientTruncation(-2, f.order(k), where);
}

LocalForm project_P_impl(const CurveSpec* spec, const LocalForm& f, int k) {
  require_polar_known(f, k, "project_P");
  LocalForm r(f.arity());
  for (int v = 0; v < f.arity(); ++v) r.set_order(v, f.order(v));
  if (spec) r.set_order(k, spec->phi02.order(1));
  else r.set_order(k, kExact);
  for (const auto& [key, s] : f.entries()) {
    int d = key.deg(k);
    if (d > -2) continue;
    r.add(key, s);
    if (!spec) continue;
    int i = key.br(k);
    int a = -d - 2;
    for (const auto& [pk, ps] : spec->phi02.entries()) {
      if (pk.br(0) != i || pk.deg(0) != a) continue;
      Key nk = key;
      nk.set(k, pk.br(1), pk.deg(1));
      r.add(nk, s * ps / Scalar(a + 1));
    }
  }
  if (spec) {
    int need = -f.min_degree(k) - 2;
    if (need > spec->phi02.order(0)) throw InsufficientTruncation(need, spec->phi02.order(0), "project_P phi02");
  }
  return r;
}

}  // namespace

LocalForm project_P(const CurveSpec& spec, const LocalForm& f, int k) { return project_P_impl(&spec, f, k); }
LocalForm project_H(const CurveSpec& spec, const LocalForm& f, int k) { return f - project_P(spec, f, k); }
LocalForm project_P_std(const LocalForm& f, int k) { return project_P_impl(nullptr, f, k); }
LocalForm project_H_std(const LocalForm& f, int k) { return f - project_P_std(f, k); }

LocalForm holomorphic_part_std(const LocalForm& f) {
  for (int v = 0; v < f.arity(); ++v) require_polar_known(f, v, "holomorphic_part_std");
  return f.filtered([](const Key& k) {
    for (int v = 0; v < k.arity(); ++v)
      if (k.deg(v) <= -2) return false;
    return true;
  });
}

namespace {

struct SubKey {
  std::array<std::int16_t, 2 * kMaxArity> v{};
  int n = 0;
  friend bool operator==(const SubKey& a, const SubKey& b) { return a.n == b.n && a.v == b.v; }
};

struct SubKeyHash {
  std::size_t operator()(const SubKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < 2 * k.n; ++i) {
      h ^= static_cast<std::uint16_t>(k.v[i]);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

void check_holo_side(const LocalForm& f, int var) {
  for (const auto& [k, s] : f.entries()) {
    if (k.deg(var) == -1) throw Error(ErrorKind::LogarithmicTerm, "integrated side has a simple pole");
    if (k.deg(var) < -1) throw Error(ErrorKind::NonHolomorphicBlob, "integrated side is not holomorphic");
  }
}

void check_orders(const LocalForm& polar, int pv, const LocalForm& holo, int hv) {
  if (polar.empty()) return;
  require_polar_known(polar, pv, "contract");
  int need = -polar.min_degree(pv) - 2;
  if (need > holo.order(hv)) throw InsufficientTruncation(need, holo.order(hv), "contract");
}

}  // namespace

LocalForm contract(const LocalForm& a, const LocalForm& b, const std::vector<PairSpec>& pairs) {
  std::vector<bool> a_paired(a.arity(), false), b_paired(b.arity(), false);
  for (const auto& p : pairs) {
    a_paired[p.a_var] = true;
    b_paired[p.b_var] = true;
    if (p.a_is_polar) {
      check_holo_side(b, p.b_var);
      check_orders(a, p.a_var, b, p.b_var);
    } else {
      check_holo_side(a, p.a_var);
      check_orders(b, p.b_var, a, p.a_var);
    }
  }
  std::vector<int> a_rest, b_rest;
  for (int v = 0; v < a.arity(); ++v)
    if (!a_paired[v]) a_rest.push_back(v);
  for (int v = 0; v < b.arity(); ++v)
    if (!b_paired[v]) b_rest.push_back(v);
  int n = static_cast<int>(a_rest.size() + b_rest.size());
  if (n > kMaxArity) throw Error(ErrorKind::SizeLimitExceeded, "contraction arity");
  LocalForm r(n);
  for (std::size_t i = 0; i < a_rest.size(); ++i) r.set_order(static_cast<int>(i), a.order(a_rest[i]));
  for (std::size_t i = 0; i < b_rest.size(); ++i)
    r.set_order(static_cast<int>(a_rest.size() + i), b.order(b_rest[i]));
  if (a.empty() || b.empty()) return r;

  std::unordered_map<SubKey, std::vector<const std::pair<const Key, Scalar>*>, SubKeyHash> index;
  index.reserve(b.size());
  for (const auto& e : b.entries()) {
    SubKey sk;
    sk.n = static_cast<int>(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      sk.v[2 * p] = static_cast<std::int16_t>(e.first.br(pairs[p].b_var));
      sk.v[2 * p + 1] = static_cast<std::int16_t>(e.first.deg(pairs[p].b_var));
    }
    index[sk].push_back(&e);
  }
  for (const auto& [ka, sa] : a.entries()) {
    SubKey sk;
    sk.n = static_cast<int>(pairs.size());
    Rational factor = 1;
    bool ok = true;
    for (std::size_t p = 0; p < pairs.size() && ok; ++p) {
      int d = ka.deg(pairs[p].a_var);
      int q, other;
      if (pairs[p].a_is_polar) {
        q = -d - 2;
        other = q;
      } else {
        q = d;
        other = -d - 2;
      }
      if (q < 0) {
        ok = false;
        break;
      }
      factor /= (q + 1);
      sk.v[2 * p] = static_cast<std::int16_t>(ka.br(pairs[p].a_var));
      sk.v[2 * p + 1] = static_cast<std::int16_t>(other);
    }
    if (!ok) continue;
    auto it = index.find(sk);
    if (it == index.end()) continue;
    Scalar fa = sa * Scalar(factor);
    for (const auto* eb : it->second) {
      Key k(n);
      int pos = 0;
      for (int v : a_rest) k.set(pos++, ka.br(v), ka.deg(v));
      for (int v : b_rest) k.set(pos++, eb->first.br(v), eb->first.deg(v));
      r.add_mul(k, fa, eb->second);
    }
  }
  return r;
}

LocalForm pair_edge(const LocalForm& omega_side, const LocalForm& phi_side, int omega_var, int phi_var) {
  return contract(omega_side, phi_side, {PairSpec{omega_var, phi_var, true}});
}

KernelData::KernelData(const CurveSpec& spec, int branch) : denom_(Weight::Function, spec.input_order, branch) {
  denom_.add(2, spec.branches[branch].alpha * Scalar(2));
  for (const auto& [d, c] : spec.omega01_tail[branch])
    if (d % 2 == 0) denom_.add(d, c * Scalar(2));
  inv_ = Series1(Weight::Function, -3, branch);
}

const Series1& KernelData::inverse(int top) const {
  if (top > top_) {
    inv_ = invert_unit(denom_, top);
    top_ = top;
    if (inv_.order() < top) throw InsufficientTruncation(top + 4, denom_.order(), "recursion kernel (omega01 tail)");
  }
  return inv_;
}

LocalForm kernel_apply(const CurveSpec& spec, const KernelData& kd, int branch, const LocalForm& integrand) {
  int n = integrand.arity();
  LocalForm out(n);
  for (int v = 1; v < n; ++v) out.set_order(v, integrand.order(v));
  out.set_order(0, spec.phi02.order(1));
  if (integrand.empty()) return out;
  int floor = integrand.min_degree(0);
  if (integrand.order(0) < 0) throw InsufficientTruncation(0, integrand.order(0), "kernel_apply integrand");
  int top = -2 - floor;
  if (top < -2) return out;
  const Series1& inv = kd.inverse(top);
  // R_e = sum_j Int_j inv_{e-j}, kept for e <= -2.
  std::unordered_map<Key, Scalar, KeyHash> R;
  for (const auto& [k, s] : integrand.entries()) {
    int j = k.deg(0);
    for (const auto& [dd, c] : inv.terms()) {
      int e = j + dd;
      if (e > -2) break;
      Key rk = k;
      rk.set(0, branch, e);
      auto [it, ins] = R.try_emplace(rk);
      it->second.add_mul(s, c);
    }
  }
  for (const auto& [rk, rv] : R) {
    if (rv.is_zero()) continue;
    int e = rk.deg(0);
    int m = -e - 2;
    if (m % 2 != 0) continue;
    out.add(rk, rv);
    for (const auto& [pk, ps] : spec.phi02.entries()) {
      if (pk.br(0) != branch || pk.deg(0) != m) continue;
      Key ok = rk;
      ok.set(0, pk.br(1), pk.deg(1));
      out.add(ok, rv * ps / Scalar(m + 1));
    }
  }
  int need = -2 - floor;
  if (need > spec.phi02.order(0)) throw InsufficientTruncation(need, spec.phi02.order(0), "kernel_apply phi02");
  return out;
}

}  // namespace btr
