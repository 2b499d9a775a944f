#include "btr/global.hpp"

#include <functional>

#include "btr/errors.hpp"
#include "btr/kdv.hpp"
#include "btr/residue.hpp"

namespace btr {

namespace {

LocalForm omega01_branch(const CurveSpec& spec, int i) {
  LocalForm f(1, spec.input_order);
  Series1 w = omega01(spec, i);
  for (const auto& [d, c] : w.terms()) {
    Key k(1);
    k.set(0, i, d);
    f.add(k, c);
  }
  return f;
}

// omega_{0,2}(z, w) over all branch pairs, w outer. z degrees above cap are
// left out but the z order stays that of the curve: they pair to zero against a
// kappa of degree at most cap.
LocalForm omega02_zw(const CurveSpec& spec, int cap) {
  LocalForm f(2, spec.input_order);
  for (int i = 0; i < spec.num_branches(); ++i)
    for (int j = 0; j < spec.num_branches(); ++j) {
      LocalForm x = omega02_expand(spec, i, j, 1, cap);
      for (const auto& [k, s] : x.entries()) f.add(k, s);
    }
  return f;
}

}  // namespace

int max_degree_all(const LocalForm& f) {
  int m = 0;
  for (const auto& [k, s] : f.entries())
    for (int v = 0; v < k.arity(); ++v) m = std::max(m, k.deg(v));
  return m;
}

LocalForm assemble_E(Engine& eng, int g, int n, int h, int k, int z_degree_cap) {
  if (k < 1) throw Error(ErrorKind::ArityMismatch, "E kernel needs k >= 1");
  LocalForm total(n + k);
  if (2 * h - 2 + k > 2 * g - 2 + n) return total;
  LocalForm zw = omega02_zw(eng.spec(), z_degree_cap);

  std::vector<int> wb(k, 0), zb(n, 0);
  // Set partitions of the w's as restricted growth strings.
  std::function<void(int, int)> parts = [&](int j, int r) {
    if (j < k) {
      for (int b = 0; b <= r; ++b) {
        wb[j] = b;
        parts(j + 1, b == r ? r + 1 : r);
      }
      return;
    }
    int H = g - h - k + r;
    if (H < 0) return;
    // Assign every z to a block.
    std::function<void(int)> zs = [&](int u) {
      if (u < n) {
        for (int b = 0; b < r; ++b) {
          zb[u] = b;
          zs(u + 1);
        }
        return;
      }
      std::vector<std::vector<int>> vars(r);  // global positions
      std::vector<int> nz(r, 0), nw(r, 0);
      for (int u = 0; u < n; ++u) {
        vars[zb[u]].push_back(u);
        ++nz[zb[u]];
      }
      for (int j = 0; j < k; ++j) {
        vars[wb[j]].push_back(n + j);
        ++nw[wb[j]];
      }
      std::vector<int> hb(r, 0);
      std::function<void(int, int)> genus = [&](int b, int left) {
        if (b == r - 1) {
          hb[b] = left;
        } else {
          for (int x = 0; x <= left; ++x) {
            hb[b] = x;
            genus(b + 1, left - x);
          }
          return;
        }
        LocalForm prod(0);
        prod.add(Key(0), Scalar(1));
        std::vector<int> order;
        for (int c = 0; c < r; ++c) {
          int size = nz[c] + nw[c];
          if (hb[c] == 0 && size == 1) return;
          if (hb[c] == 0 && size == 2) {
            if (nw[c] == 2) return;
            prod = tensor(prod, zw);
          } else {
            prod = tensor(prod, eng.omega(hb[c], size));
          }
          order.insert(order.end(), vars[c].begin(), vars[c].end());
        }
        std::vector<int> perm(n + k);
        for (int p = 0; p < n + k; ++p) perm[order[p]] = p;
        total += prod.permuted(perm);
      };
      genus(0, H);
    };
    zs(0);
  };
  parts(0, 0);
  return total.scaled(Scalar(Rational(1) / factorial(k)));
}

LocalForm variation(Engine& eng, int h, int k, const LocalForm& kappa, int g, int n) {
  if (kappa.arity() != k) throw Error(ErrorKind::ArityMismatch, "kappa arity must equal k");
  int cap = max_degree_all(kappa);
  LocalForm E = assemble_E(eng, g, n, h, k, cap);
  std::vector<PairSpec> pairs;
  for (int j = 0; j < k; ++j) pairs.push_back(PairSpec{n + j, j, true});
  return contract(E, kappa, pairs);
}

Scalar variation_F(Engine& eng, int h, int k, const LocalForm& kappa, int g) {
  Scalar r = variation(eng, h, k, kappa, g, 0).get(Key(0));
  if (h != 0 || k != 1 || g < 2) return r;
  // The zeta^2 d zeta direction also moves the explicit KdV constant.
  const CurveSpec& spec = eng.spec();
  for (int i = 0; i < eng.num_branches(); ++i) {
    Scalar c = kappa.get({i}, {2});
    if (c.is_zero()) continue;
    Scalar d = free_energy_kdv(spec, g, i) * Scalar(2 * g - 2) / (-spec.branches[i].alpha);
    r += c * d;
  }
  return r;
}

LocalForm alpha_flow(Engine& eng, int i, int g, int n) {
  LocalForm kappa(1);
  Key key(1);
  key.set(0, i, 2);
  kappa.add(key, Scalar(1));
  return variation(eng, 0, 1, kappa, g, n);
}

Scalar free_energy_popore(Engine& eng, int g) {
  if (g < 2) throw Error(ErrorKind::UnstablePair, "the residue formula for F_g needs g >= 2");
  const CurveSpec& spec = eng.spec();
  Scalar total(0);
  auto it = spec.F_constants.find(g);
  if (it != spec.F_constants.end()) total += it->second;
  for (int i = 0; i < eng.num_branches(); ++i) total += free_energy_kdv(spec, g, i);

  Scalar sum = variation(eng, 0, 1, eng.omega01_form(), g, 0).get(Key(0));
  for (int chi = 1; chi <= 2 * g - 2; ++chi)
    for (int h = 0; 2 * h - 2 < chi && h <= g; ++h) {
      int k = chi - 2 * h + 2;
      if (k < 1) continue;
      const LocalForm& phi = eng.kdv_blob(h, k);
      if (phi.empty()) continue;
      sum += Scalar(2 - 2 * h - k) * variation_F(eng, h, k, phi, g);
    }
  return total + sum * Scalar(Rational(-1, 2 * g - 2));
}

DilatonCheck dilaton_lemma_check(const CurveSpec& spec, int g, int n) {
  DilatonCheck r;
  r.g = g;
  r.n = n;
  for (int i = 0; i < spec.num_branches() && r.ok; ++i) {
    LocalForm lhs = omega_kdv_box(spec, g, n, i).scaled(Scalar(2 - 2 * g - n));
    LocalForm rhs = contract(omega_kdv_box(spec, g, n + 1, i), omega01_branch(spec, i), {PairSpec{n, 0, true}});
    std::string why;
    if (!agree(lhs, rhs, &why)) {
      r.ok = false;
      r.detail = "branch " + std::to_string(spec.branches[i].id) + ": " + why;
    }
  }
  return r;
}

}  // namespace btr
