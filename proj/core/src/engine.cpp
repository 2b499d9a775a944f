#include "btr/engine.hpp"

#include <algorithm>

#include "btr/errors.hpp"
#include "btr/graphs.hpp"
#include "btr/kdv.hpp"

namespace btr {

namespace {

bool stable(int g, int n) { return g >= 0 && n >= 0 && 2 * g - 2 + n > 0; }

int floor0(const LocalForm& f) { return f.empty() ? order_add(f.order(0), 1) : f.min_degree(0); }

int sign_sigma(int d) { return (d + 1) % 2 == 0 ? 1 : -1; }

// Entries of f whose variable v sits on branch i, with v moved to position 0.
// With sigma the variable is evaluated at the involution image.
LocalForm at_branch(const LocalForm& f, int v, int i, bool sigma) {
  int k = f.arity();
  std::vector<int> perm{v};
  for (int u = 0; u < k; ++u)
    if (u != v) perm.push_back(u);
  LocalForm out(k);
  for (int u = 0; u < k; ++u) out.set_order(u, f.order(perm[u]));
  for (const auto& [key, s] : f.entries()) {
    if (key.br(v) != i) continue;
    Key nk(k);
    for (int u = 0; u < k; ++u) nk.set(u, key.br(perm[u]), key.deg(perm[u]));
    out.add(nk, sigma && sign_sigma(key.deg(v)) < 0 ? -s : s);
  }
  return out;
}

// omega_{0,2}(zeta, w) with zeta near p_i expanded to degree E, w outer on any branch.
LocalForm omega02_inner(const CurveSpec& spec, int i, int E, bool sigma) {
  LocalForm f(2);
  f.set_order(0, order_min(E, spec.input_order));
  f.set_order(1, spec.input_order);
  for (int j = 0; j < spec.num_branches(); ++j) f += omega02_expand(spec, i, j, 1, E);
  if (!sigma) return f;
  return at_branch(f, 0, i, true);
}

LocalForm omega01_local(const CurveSpec& spec, int i, bool sigma) {
  LocalForm f(1, spec.input_order);
  Series1 w = omega01(spec, i);
  for (const auto& [d, c] : w.terms()) {
    Key k(1);
    k.set(0, i, d);
    f.add(k, sigma && sign_sigma(d) < 0 ? -c : c);
  }
  return f;
}

// Product in the shared variable zeta (position 0 of a and b). Remaining
// variables of a go to slots pa, of b to slots pb of an arity-n result.
void zeta_product(LocalForm& out, const LocalForm& a, const LocalForm& b, const std::vector<int>& pa,
                  const std::vector<int>& pb, int emax) {
  int o = order_min(order_add(a.order(0), floor0(b)), order_add(b.order(0), floor0(a)));
  if (o < out.order(0)) out.set_order(0, o);
  for (std::size_t u = 0; u < pa.size(); ++u) out.set_order(pa[u], order_min(out.order(pa[u]), a.order(u + 1)));
  for (std::size_t u = 0; u < pb.size(); ++u) out.set_order(pb[u], order_min(out.order(pb[u]), b.order(u + 1)));
  for (const auto& [ka, sa] : a.entries()) {
    for (const auto& [kb, sb] : b.entries()) {
      int d = ka.deg(0) + kb.deg(0);
      if (d > emax) continue;
      Key k(out.arity());
      k.set(0, ka.br(0), d);
      for (std::size_t u = 0; u < pa.size(); ++u) k.set(pa[u], ka.br(u + 1), ka.deg(u + 1));
      for (std::size_t u = 0; u < pb.size(); ++u) k.set(pb[u], kb.br(u + 1), kb.deg(u + 1));
      out.add_mul(k, sa, sb);
    }
  }
}

}  // namespace

std::pair<LocalForm, LocalForm> sigma_parts(const LocalForm& f, int v) {
  LocalForm p = involution_pullback(f, v);
  return {f - p, f + p};
}

Engine::Engine(CurveSpec spec) : spec_(std::move(spec)) {
  validate_or_throw(spec_);
  for (int i = 0; i < spec_.num_branches(); ++i) kernels_.push_back(std::make_unique<KernelData>(spec_, i));
  omega01_ = LocalForm(1, spec_.input_order);
  for (int i = 0; i < spec_.num_branches(); ++i) omega01_ += omega01_local(spec_, i, false);
}

LocalForm Engine::quadratic_integrand(int g, int n, int i, const FamilyFn& family, bool include01, int emax) {
  if (!stable(g, n)) throw Error(ErrorKind::UnstablePair, "quadratic integrand needs a stable pair");
  LocalForm out(n);
  out.set_order(0, emax);
  int others = n - 1;
  std::vector<int> rest(others);
  for (int u = 0; u < others; ++u) rest[u] = u + 1;

  // omega_{g-1,n+1}(z, sigma z, I).
  if (g >= 1) {
    if (g == 1 && n == 1) {
      LocalForm t(1, order_min(emax, spec_.phi02.min_order()));
      Key k(1);
      k.set(0, i, -2);
      t.add(k, Scalar::frac(-1, 4));
      for (const auto& [pk, ps] : spec_.phi02.entries()) {
        if (pk.br(0) != i || pk.br(1) != i) continue;
        k.set(0, i, pk.deg(0) + pk.deg(1));
        t.add(k, sign_sigma(pk.deg(1)) > 0 ? ps : -ps);
      }
      out += t;
    } else {
      const LocalForm& F = family(g - 1, n + 1);
      LocalForm t(n);
      int o = order_min(order_add(F.order(0), F.empty() ? kExact : F.min_degree(1)),
                        order_add(F.order(1), F.empty() ? kExact : F.min_degree(0)));
      t.set_order(0, order_min(o, emax));
      for (int u = 1; u < n; ++u) t.set_order(u, F.order(u + 1));
      for (const auto& [key, s] : F.entries()) {
        if (key.br(0) != i || key.br(1) != i) continue;
        int d = key.deg(0) + key.deg(1);
        if (d > emax) continue;
        Key nk(n);
        nk.set(0, i, d);
        for (int u = 1; u < n; ++u) nk.set(u, key.br(u + 1), key.deg(u + 1));
        t.add(nk, sign_sigma(key.deg(1)) > 0 ? s : -s);
      }
      out += t;
    }
  }

  // Ordered splits (h, J) | (g-h, I \ J).
  for (int h = 0; h <= g; ++h) {
    for (unsigned mask = 0; mask < (1u << others); ++mask) {
      std::vector<int> pa, pb;
      for (int u = 0; u < others; ++u) (mask & (1u << u) ? pa : pb).push_back(rest[u]);
      int na = 1 + static_cast<int>(pa.size()), nb = 1 + static_cast<int>(pb.size());
      int hb = g - h;
      bool a01 = h == 0 && na == 1, b01 = hb == 0 && nb == 1;
      if ((a01 || b01) && !include01) continue;
      bool a02 = h == 0 && na == 2, b02 = hb == 0 && nb == 2;
      LocalForm A, B;
      if (a01 && b01) continue;
      // Stable or (0,1) factors first, so the (0,2) expansions know how deep to go.
      if (!a02) A = a01 ? omega01_local(spec_, i, false) : at_branch(family(h, na), 0, i, false);
      if (!b02) B = b01 ? omega01_local(spec_, i, true) : at_branch(family(hb, nb), 0, i, true);
      if (a02 && b02) {
        A = omega02_inner(spec_, i, emax, false);
        B = omega02_inner(spec_, i, emax, true);
      } else if (a02) {
        if (B.empty() && B.order(0) >= kExact) continue;
        A = omega02_inner(spec_, i, emax - floor0(B), false);
      } else if (b02) {
        if (A.empty() && A.order(0) >= kExact) continue;
        B = omega02_inner(spec_, i, emax - floor0(A), true);
      }
      LocalForm t(n);
      t.set_order(0, emax);
      zeta_product(t, A, B, pa, pb, emax);
      out += t;
    }
  }
  return out;
}

LocalForm Engine::recursion_step(int g, int n, const FamilyFn& lower) {
  if (!stable(g, n)) throw Error(ErrorKind::UnstablePair, "recursion needs 2g-2+n > 0");
  LocalForm total(n);
  total.set_order(0, spec_.phi02.order(1));
  for (int i = 0; i < num_branches(); ++i) {
    LocalForm integrand = quadratic_integrand(g, n, i, lower, false, 0);
    total += kernel_apply(spec_, *kernels_[i], i, integrand);
  }
  return total;
}

const LocalForm& Engine::omega0(int g, int n) {
  if (!stable(g, n)) throw Error(ErrorKind::UnstablePair, "omega0 needs 2g-2+n > 0");
  auto it = omega0_.find({g, n});
  if (it != omega0_.end()) return it->second;
  LocalForm r = recursion_step(g, n, normalized_family());
  return omega0_.emplace(GN{g, n}, std::move(r)).first->second;
}

FamilyFn Engine::normalized_family() {
  return [this](int g, int n) -> const LocalForm& { return omega0(g, n); };
}

FamilyFn Engine::full_family() {
  return [this](int g, int n) -> const LocalForm& { return omega(g, n); };
}

const LocalForm& Engine::kdv_blob(int g, int n) {
  auto it = kdv_blob_.find({g, n});
  if (it != kdv_blob_.end()) return it->second;
  LocalForm r(n);
  if (spec_.blob_kind == BlobKind::Kdv) {
    if (const LocalForm* b = spec_.blob(g, n)) r = *b;
  } else {
    LocalForm phi = spec_.blob(g, n) ? *spec_.blob(g, n) : LocalForm(n);
    r = phi - kdv_leaf_graphs(g, n, 2 * g - 3 + n);
  }
  return kdv_blob_.emplace(GN{g, n}, std::move(r)).first->second;
}

const LocalForm& Engine::standard_blob(int g, int n) {
  if (!stable(g, n) || n < 1) throw Error(ErrorKind::UnstablePair, "blobs need a stable pair with n >= 1");
  auto it = std_blob_.find({g, n});
  if (it != std_blob_.end()) return it->second;
  LocalForm r(n);
  if (spec_.blob_kind == BlobKind::Standard) {
    if (const LocalForm* b = spec_.blob(g, n)) r = *b;
  } else {
    r = kdv_leaf_graphs(g, n, 2 * g - 2 + n);
  }
  return std_blob_.emplace(GN{g, n}, std::move(r)).first->second;
}

const LocalForm& Engine::kdv_vertex(int h, int d) {
  auto it = kdv_vertex_.find({h, d});
  if (it != kdv_vertex_.end()) return it->second;
  LocalForm r(d);
  for (int i = 0; i < num_branches(); ++i) r += omega_kdv_box(spec_, h, d, i);
  return kdv_vertex_.emplace(GN{h, d}, std::move(r)).first->second;
}

LocalForm Engine::kdv_leaf_graphs(int g, int n, int blob_chi_max) {
  GraphRules rules = calG_rules(*this, g, n, blob_chi_max);
  rules.leaf_kinds.assign(n, 2);
  rules.leaves_on_unstable_holo = false;
  return graph_sum(enumerate_graphs(rules), n, calG_vertex_fn(*this));
}

std::vector<GN> Engine::standard_blob_types(int chi_max) {
  std::vector<GN> out;
  for (int chi = 1; chi <= chi_max; ++chi)
    for (int h = 0; 2 * h - 2 < chi; ++h) {
      int k = chi - 2 * h + 2;
      if (k < 1) continue;
      if (!standard_blob(h, k).empty()) out.push_back({h, k});
    }
  return out;
}

std::vector<GN> Engine::kdv_blob_types(int chi_max) {
  std::vector<GN> out;
  for (int chi = 1; chi <= chi_max; ++chi)
    for (int h = 0; 2 * h - 2 < chi; ++h) {
      int k = chi - 2 * h + 2;
      if (k < 1) continue;
      if (!kdv_blob(h, k).empty()) out.push_back({h, k});
    }
  return out;
}

std::vector<BipGraph> Engine::bip0_list(int g, int n, const std::vector<std::uint8_t>& leaf_kinds, bool skip_single_blob) {
  int chi = 2 * g - 2 + n;
  GraphRules rules;
  rules.g = g;
  rules.n = n;
  rules.leaf_kinds = leaf_kinds;
  rules.polar_needs_leaf = true;
  rules.max_vertices = std::max(chi, 1);
  for (int c = 1; c <= chi; ++c)
    for (int h = 0; 2 * h - 2 < c; ++h) {
      int d = c - 2 * h + 2;
      if (d >= 1) rules.polar_types.push_back({h, d});
    }
  rules.holo_types = standard_blob_types(skip_single_blob ? chi - 1 : chi);
  auto graphs = enumerate_graphs(rules);
  if (skip_single_blob)
    graphs.erase(std::remove_if(graphs.begin(), graphs.end(),
                                [](const BipGraph& gr) { return gr.v.size() == 1 && gr.v[0].kind == VKind::Holo; }),
                 graphs.end());
  return graphs;
}

std::vector<BipGraph> Engine::bip0_graph_list(int g, int n, const std::vector<int>& A) {
  if (!stable(g, n)) throw Error(ErrorKind::UnstablePair, "graphs need 2g-2+n > 0");
  std::vector<std::uint8_t> kinds(n, 1);
  for (int a : A) kinds.at(a) = 2;
  return bip0_list(g, n, kinds, false);
}

LocalForm Engine::bip0_graphs(int g, int n, const std::vector<std::uint8_t>& leaf_kinds, bool skip_single_blob) {
  return graph_sum(bip0_list(g, n, leaf_kinds, skip_single_blob), n, [this](VKind k, int h, int d) -> const LocalForm& {
    return k == VKind::Polar ? omega0(h, d) : standard_blob(h, d);
  });
}

LocalForm Engine::bip0_sum(int g, int n, unsigned a_mask, bool skip_single_blob) {
  std::vector<std::uint8_t> kinds(n);
  for (int l = 0; l < n; ++l) kinds[l] = a_mask & (1u << l) ? 2 : 1;
  return bip0_graphs(g, n, kinds, skip_single_blob);
}

const LocalForm& Engine::omega(int g, int n) {
  if (!stable(g, n)) throw Error(ErrorKind::UnstablePair, "omega needs 2g-2+n > 0");
  auto it = omega_.find({g, n});
  if (it != omega_.end()) return it->second;
  LocalForm r = bip0_graphs(g, n, std::vector<std::uint8_t>(n, 3), false);
  return omega_.emplace(GN{g, n}, std::move(r)).first->second;
}

LocalForm Engine::omega_recursive(int g, int n) {
  std::vector<std::uint8_t> kinds(n, 3);
  kinds[0] = 2;
  return recursion_step(g, n, full_family()) + bip0_graphs(g, n, kinds, false);
}

LocalForm Engine::H_A_P_B(int g, int n, const std::vector<int>& A) {
  unsigned mask = 0;
  for (int a : A) mask |= 1u << a;
  return bip0_sum(g, n, mask, false);
}

const LocalForm& Engine::omega_P(int g, int n) {
  auto it = omegaP_.find({g, n});
  if (it != omegaP_.end()) return it->second;
  LocalForm r = bip0_sum(g, n, 0, false);
  return omegaP_.emplace(GN{g, n}, std::move(r)).first->second;
}

LocalForm Engine::bipP_sum(int g, int n, const std::vector<int>& A) {
  int chi = 2 * g - 2 + n;
  GraphRules rules;
  rules.g = g;
  rules.n = n;
  rules.leaf_kinds.assign(n, 1);
  for (int a : A) rules.leaf_kinds[a] = 2;
  rules.polar_needs_leaf = true;
  rules.holo_needs_leaf = true;
  rules.max_vertices = std::max(chi, 1);
  for (int c = 1; c <= chi; ++c)
    for (int h = 0; 2 * h - 2 < c; ++h) {
      int d = c - 2 * h + 2;
      if (d >= 1) rules.polar_types.push_back({h, d});
    }
  rules.holo_types = standard_blob_types(chi);
  auto graphs = enumerate_graphs(rules);
  return graph_sum(graphs, n, [this](VKind k, int h, int d) -> const LocalForm& {
    return k == VKind::Polar ? omega_P(h, d) : standard_blob(h, d);
  });
}

std::vector<LoopEquationResult> Engine::check_loop_equations(int chi_max, const FamilyFn& family) {
  std::vector<LoopEquationResult> out;
  for (int chi = 1; chi <= chi_max; ++chi)
    for (int g = 0; 2 * g - 2 < chi; ++g) {
      int n = chi - 2 * g + 2;
      if (n < 1) continue;
      LoopEquationResult r;
      r.g = g;
      r.n = n;
      const LocalForm& w = family(g, n);
      for (int v = 0; v < n && r.linear_ok; ++v) {
        auto [delta, s] = sigma_parts(w, v);
        for (const auto& [k, c] : s.entries())
          if (k.deg(v) < 0 && !c.is_zero()) {
            r.linear_ok = false;
            r.detail = "linear: variable " + std::to_string(v + 1) + " degree " + std::to_string(k.deg(v)) +
                       " coefficient " + c.str();
            break;
          }
      }
      for (int i = 0; i < num_branches() && r.quadratic_ok; ++i) {
        LocalForm q = quadratic_integrand(g, n, i, family, true, 1);
        if (q.order(0) < 1) throw InsufficientTruncation(1, q.order(0), "quadratic loop equation");
        for (const auto& [k, c] : q.sorted())
          if (!c.is_zero()) {
            r.quadratic_ok = false;
            r.detail += (r.detail.empty() ? "" : "; ") + std::string("quadratic: branch ") +
                        std::to_string(spec_.branches[i].id) + " zeta degree " + std::to_string(k.deg(0)) +
                        " coefficient " + c.str();
            break;
          }
      }
      out.push_back(std::move(r));
    }
  return out;
}

}  // namespace btr
