#include "btr/kdv.hpp"

#include <functional>

#include "btr/errors.hpp"
#include "btr/psi.hpp"

namespace btr {

namespace {

bool stable(int g, int n) { return g >= 0 && n >= 0 && 2 * g - 2 + n > 0; }

// Calls fn on every d in N^n with sum d = total.
void for_each_composition(int n, int total, const std::function<void(const std::vector<int>&)>& fn) {
  if (total < 0) return;
  std::vector<int> d(n, 0);
  if (n == 0) {
    if (total == 0) fn(d);
    return;
  }
  std::function<void(int, int)> rec = [&](int u, int left) {
    if (u == n - 1) {
      d[u] = left;
      fn(d);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      d[u] = x;
      rec(u + 1, left - x);
    }
  };
  rec(0, total);
}

// Ordered tuples of integers >= lo with sum of (x - shift) <= budget, one call per tuple.
void for_each_tuple(int budget, int lo, int shift, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> t;
  std::function<void(int)> rec = [&](int left) {
    fn(t);
    for (int x = lo; x - shift <= left; ++x) {
      t.push_back(x);
      rec(left - (x - shift));
      t.pop_back();
    }
  };
  rec(budget);
}

Scalar dfact_weight(const std::vector<int>& d) {
  Rational w = 1;
  for (int x : d) w *= double_factorial_odd(x + 1);
  return Scalar(w);
}

Key kdv_key(int i, const std::vector<int>& d) {
  Key k(static_cast<int>(d.size()));
  for (std::size_t u = 0; u < d.size(); ++u) k.set(static_cast<int>(u), i, -2 * d[u] - 2);
  return k;
}

// phi01[2b] (2b-1)!! for b = 0..bmax (zero below 2).
std::vector<Scalar> tail_weights(const CurveSpec& spec, int i, int bmax) {
  std::vector<Scalar> w(bmax + 1, Scalar(0));
  for (int b = 2; b <= bmax; ++b) w[b] = omega01_coeff(spec, i, 2 * b) * Scalar(double_factorial_odd(b));
  return w;
}

// Renormalized vertex terms: fn(d, coefficient of prod zeta^{-2d-2}).
void box_terms(const CurveSpec& spec, int g, int n, int i, const std::function<void(const std::vector<int>&, const Scalar&)>& fn) {
  int D = 3 * g - 3 + n;
  if (D < 0) return;
  std::vector<Scalar> w = tail_weights(spec, i, D + 1);
  for_each_tuple(D, 2, 1, [&](const std::vector<int>& a) {
    int m = static_cast<int>(a.size());
    Scalar W = minus_alpha_pow(spec, i, 2 - 2 * g - n - m) * Scalar(Rational(1) / factorial(m));
    int used = 0;
    for (int x : a) {
      W *= w[x];
      used += x - 1;
    }
    if (W.is_zero()) return;
    for_each_composition(n, D - used, [&](const std::vector<int>& d) {
      std::vector<int> all = d;
      all.insert(all.end(), a.begin(), a.end());
      Rational v = psi_intersection(g, all);
      if (sgn(v) == 0) return;
      fn(d, W * Scalar(v) * dfact_weight(d));
    });
  });
}

}  // namespace

Scalar minus_alpha_pow(const CurveSpec& spec, int i, int e) { return (-spec.branches[i].alpha).pow(e); }

LocalForm omega_kdv(const CurveSpec& spec, int g, int n, int i) {
  if (!stable(g, n) || n < 1) throw Error(ErrorKind::UnstablePair, "KdV vertex needs 2g-2+n > 0 and n >= 1");
  LocalForm out(n);
  Scalar pre = minus_alpha_pow(spec, i, 2 - 2 * g - n);
  for_each_composition(n, 3 * g - 3 + n, [&](const std::vector<int>& d) {
    Rational v = psi_intersection(g, d);
    if (sgn(v) != 0) out.add(kdv_key(i, d), pre * Scalar(v) * dfact_weight(d));
  });
  return out;
}

LocalForm omega_kdv_box(const CurveSpec& spec, int g, int n, int i) {
  if (!stable(g, n) || n < 1) throw Error(ErrorKind::UnstablePair, "KdV vertex needs 2g-2+n > 0 and n >= 1");
  LocalForm out(n);
  box_terms(spec, g, n, i, [&](const std::vector<int>& d, const Scalar& c) { out.add(kdv_key(i, d), c); });
  return out;
}

std::map<int, Scalar> t_hat_from_phi01(const CurveSpec& spec, int i, int cmax) {
  // X(u) = sum_{b>=2} phi01[2b] (2b-1)!! / (-alpha) u^{b-1}; X has no constant term.
  std::vector<Scalar> w = tail_weights(spec, i, cmax + 1);
  Scalar inv = minus_alpha_pow(spec, i, -1);
  std::vector<Scalar> X(cmax + 1, Scalar(0)), power(cmax + 1, Scalar(0)), s(cmax + 1, Scalar(0));
  for (int c = 1; c <= cmax; ++c) X[c] = w[c + 1] * inv;
  power = X;
  for (int L = 1; L <= cmax; ++L) {
    for (int c = 1; c <= cmax; ++c) s[c] += power[c] * Scalar(Rational(1, L));
    std::vector<Scalar> next(cmax + 1, Scalar(0));
    for (int a = 1; a <= cmax; ++a)
      for (int b = 1; a + b <= cmax; ++b) next[a + b].add_mul(power[a], X[b]);
    power = std::move(next);
  }
  std::map<int, Scalar> out;
  for (int c = 1; c <= cmax; ++c)
    if (!s[c].is_zero()) out.emplace(c, s[c]);
  return out;
}

LocalForm omega_kdv_box_kappa(const CurveSpec& spec, int g, int n, int i) {
  if (!stable(g, n) || n < 1) throw Error(ErrorKind::UnstablePair, "KdV vertex needs 2g-2+n > 0 and n >= 1");
  int D = 3 * g - 3 + n;
  auto that = t_hat_from_phi01(spec, i, D);
  Scalar pre = minus_alpha_pow(spec, i, 2 - 2 * g - n);
  LocalForm out(n);
  for_each_tuple(D, 1, 0, [&](const std::vector<int>& c) {
    Scalar W = pre * Scalar(Rational(1) / factorial(static_cast<int>(c.size())));
    int used = 0;
    for (int x : c) {
      auto it = that.find(x);
      if (it == that.end()) return;
      W *= it->second;
      used += x;
    }
    for_each_composition(n, D - used, [&](const std::vector<int>& d) {
      Rational v = kappa_psi_intersection(g, d, c);
      if (sgn(v) != 0) out.add(kdv_key(i, d), W * Scalar(v) * dfact_weight(d));
    });
  });
  return out;
}

Scalar free_energy_kdv(const CurveSpec& spec, int g, int i) {
  if (g < 2) return Scalar(0);
  Rational b = bernoulli(2 * g);
  if (spec.bernoulli == BernoulliConvention::Negated) b = -b;
  return minus_alpha_pow(spec, i, 2 - 2 * g) * Scalar(b / Rational(2 * g * (2 * g - 2)));
}

Scalar free_energy_kdv_box(const CurveSpec& spec, int g, int i) {
  Scalar total = free_energy_kdv(spec, g, i);
  box_terms(spec, g, 0, i, [&](const std::vector<int>&, const Scalar& c) { total += c; });
  return total;
}

GraphRules calG_rules(Engine& eng, int g, int n, int blob_chi_max) {
  int chi = 2 * g - 2 + n;
  GraphRules rules;
  rules.g = g;
  rules.n = n;
  rules.leaf_kinds.assign(n, 3);
  for (int c = 1; c <= chi; ++c)
    for (int h = 0; 2 * h - 2 < c; ++h) {
      int d = c - 2 * h + 2;
      if (d >= 1) rules.polar_types.push_back({h, d});
    }
  rules.holo_types = eng.kdv_blob_types(blob_chi_max);
  bool with02 = !eng.spec().phi02.empty();
  if (with02) rules.holo_types.push_back({0, 2});
  // At most chi stable vertices of each kind; a (0,2) Phi vertex eats two
  // half-edges of KdV vertices or leaves, whose total is at most 3 chi + n.
  rules.max_vertices = std::max(1, 2 * chi + (with02 ? (3 * chi + n) / 2 : 0));
  return rules;
}

VertexFormFn calG_vertex_fn(Engine& eng) {
  return [&eng](VKind k, int h, int d) -> const LocalForm& {
    if (k == VKind::Polar) return eng.kdv_vertex(h, d);
    if (h == 0 && d == 2) return eng.spec().phi02;
    return eng.kdv_blob(h, d);
  };
}

std::vector<BipGraph> KdvBackend::calG_box(int g, int n) {
  return enumerate_graphs(calG_rules(eng_, g, n, 2 * g - 2 + n));
}

LocalForm KdvBackend::omega_via_calG(int g, int n) {
  if (!stable(g, n) || n < 1) throw Error(ErrorKind::UnstablePair, "graph sum needs 2g-2+n > 0 and n >= 1");
  return graph_sum(calG_box(g, n), n, calG_vertex_fn(eng_));
}

Scalar KdvBackend::free_energy(int g) {
  const CurveSpec& spec = eng_.spec();
  Scalar total(0);
  auto it = spec.F_constants.find(g);
  if (it != spec.F_constants.end()) total += it->second;
  for (int i = 0; i < eng_.num_branches(); ++i) total += free_energy_kdv_box(spec, g, i);
  if (g < 2) return total;
  LocalForm s = graph_sum(calG_box(g, 0), 0, calG_vertex_fn(eng_));
  return total + s.get(Key(0));
}

LocalForm reference_change(Engine& target, Engine& ref, int g, int n) {
  const CurveSpec& a = target.spec();
  const CurveSpec& b = ref.spec();
  bool same = a.num_branches() == b.num_branches() && a.phi02 == b.phi02 && a.omega01_tail == b.omega01_tail;
  for (int i = 0; same && i < a.num_branches(); ++i) same = a.branches[i].alpha == b.branches[i].alpha;
  if (!same) throw Error(ErrorKind::Validation, "reference change needs equal omega_{0,1} and phi_{0,2}");
  int chi = 2 * g - 2 + n;
  std::map<GN, LocalForm> diff;
  GraphRules rules;
  rules.g = g;
  rules.n = n;
  rules.leaf_kinds.assign(n, 3);
  for (int c = 1; c <= chi; ++c)
    for (int h = 0; 2 * h - 2 < c; ++h) {
      int d = c - 2 * h + 2;
      if (d < 1) continue;
      rules.polar_types.push_back({h, d});
      LocalForm x = target.kdv_blob(h, d) - ref.kdv_blob(h, d);
      bool zero = true;
      for (const auto& [k, s] : x.entries()) zero = zero && s.is_zero();
      if (zero) continue;
      rules.holo_types.push_back({h, d});
      diff.emplace(GN{h, d}, std::move(x));
    }
  rules.max_vertices = std::max(1, 2 * chi);
  return graph_sum(enumerate_graphs(rules), n, [&](VKind k, int h, int d) -> const LocalForm& {
    return k == VKind::Polar ? ref.omega(h, d) : diff.at({h, d});
  });
}

}  // namespace btr
