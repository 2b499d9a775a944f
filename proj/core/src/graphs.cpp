#include "btr/graphs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "btr/errors.hpp"
#include "btr/residue.hpp"

namespace btr {

int BipGraph::num_edges() const {
  int e = 0;
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) e += mult[a][b];
  return e;
}

int BipGraph::genus() const {
  int h = 0;
  for (const auto& x : v) h += x.h;
  return h + num_edges() - static_cast<int>(v.size()) + 1;
}

namespace {

struct TypeRef {
  VKind kind;
  int h;
  int d;
  int chi() const { return 2 * h - 2 + d; }
};

bool same_color(const GVertex& a, const GVertex& b) {
  return a.kind == b.kind && a.h == b.h && a.d == b.d && a.leaves == b.leaves;
}

bool color_less(const GVertex& a, const GVertex& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.h != b.h) return a.h < b.h;
  if (a.d != b.d) return a.d < b.d;
  return a.leaves < b.leaves;
}

std::string color_str(const GVertex& x) {
  std::ostringstream os;
  os << static_cast<int>(x.kind) << ':' << x.h << ':' << x.d << ':';
  for (int l : x.leaves) os << l << '.';
  return os.str();
}

// Sorts vertices by color, then minimizes the multiplicity matrix over
// permutations inside color classes; records |Aut|.
void canonicalize(BipGraph& gr) {
  int V = static_cast<int>(gr.v.size());
  std::vector<int> order(V);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return color_less(gr.v[a], gr.v[b]); });
  std::vector<GVertex> nv(V);
  std::vector<std::vector<int>> nm(V, std::vector<int>(V, 0));
  for (int a = 0; a < V; ++a) {
    nv[a] = gr.v[order[a]];
    for (int b = 0; b < V; ++b) nm[a][b] = gr.mult[order[a]][order[b]];
  }
  std::vector<std::pair<int, int>> classes;  // [start, end)
  for (int a = 0; a < V;) {
    int b = a + 1;
    while (b < V && same_color(nv[a], nv[b])) ++b;
    classes.push_back({a, b});
    a = b;
  }
  std::vector<int> perm(V);
  std::iota(perm.begin(), perm.end(), 0);
  auto mat_str = [&](const std::vector<int>& p) {
    std::string s;
    s.reserve(V * V);
    for (int a = 0; a < V; ++a)
      for (int b = a + 1; b < V; ++b) s.push_back(static_cast<char>('0' + nm[p[a]][p[b]]));
    return s;
  };
  std::string best;
  std::vector<int> best_perm;
  long auts = 0;
  std::string ident = mat_str(perm);
  // Iterate over the product of permutations of each class.
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == classes.size()) {
      std::string s = mat_str(perm);
      if (best_perm.empty() || s < best) {
        best = s;
        best_perm = perm;
      }
      if (s == ident) ++auts;
      return;
    }
    auto [lo, hi] = classes[c];
    std::sort(perm.begin() + lo, perm.begin() + hi);
    do {
      rec(c + 1);
    } while (std::next_permutation(perm.begin() + lo, perm.begin() + hi));
  };
  rec(0);
  BipGraph out;
  out.v.resize(V);
  out.mult.assign(V, std::vector<int>(V, 0));
  for (int a = 0; a < V; ++a) {
    out.v[a] = nv[best_perm[a]];
    for (int b = 0; b < V; ++b) out.mult[a][b] = nm[best_perm[a]][best_perm[b]];
  }
  Rational aut = auts;
  for (int a = 0; a < V; ++a)
    for (int b = a + 1; b < V; ++b) aut *= factorial(out.mult[a][b]);
  out.aut = aut;
  std::string can;
  for (const auto& x : out.v) can += color_str(x) + '|';
  can += best;
  out.canonical = can;
  gr = std::move(out);
}

bool connected(const std::vector<std::vector<int>>& m) {
  int V = static_cast<int>(m.size());
  std::vector<int> seen(V, 0), stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (int b = 0; b < V; ++b)
      if (m[a][b] > 0 && !seen[b]) {
        seen[b] = 1;
        ++count;
        stack.push_back(b);
      }
  }
  return count == V;
}

}  // namespace

std::vector<BipGraph> enumerate_graphs(const GraphRules& rules) {
  int target = 2 * rules.g - 2 + rules.n;
  std::vector<TypeRef> types;
  for (auto [h, d] : rules.polar_types) types.push_back({VKind::Polar, h, d});
  for (auto [h, d] : rules.holo_types) types.push_back({VKind::Holo, h, d});
  for (const auto& t : types)
    if (t.chi() < 0 || t.d < 1) throw Error(ErrorKind::UnstablePair, "vertex type with negative Euler characteristic");
  std::map<std::string, BipGraph> found;

  std::vector<int> chosen;
  auto process = [&]() {
    int V = static_cast<int>(chosen.size());
    if (V == 0) return;
    std::vector<GVertex> verts(V);
    int halfedges = 0;
    for (int a = 0; a < V; ++a) {
      verts[a].kind = types[chosen[a]].kind;
      verts[a].h = types[chosen[a]].h;
      verts[a].d = types[chosen[a]].d;
      halfedges += verts[a].d;
    }
    if ((halfedges - rules.n) % 2 != 0) return;
    int E = (halfedges - rules.n) / 2;
    if (E < V - 1) return;
    int polar_half = 0;
    for (int a = 0; a < V; ++a)
      if (verts[a].kind == VKind::Polar) polar_half += verts[a].d;
    if (polar_half < E || halfedges - polar_half < E) return;
    // Leaf assignment with symmetry breaking among identical vertices.
    std::function<void(int)> assign = [&](int l) {
      if (l == rules.n) {
        std::vector<int> rem(V);
        int sp = 0, sh = 0;
        for (int a = 0; a < V; ++a) {
          rem[a] = verts[a].d - static_cast<int>(verts[a].leaves.size());
          if (verts[a].leaves.empty()) {
            if (verts[a].kind == VKind::Polar && rules.polar_needs_leaf) return;
            if (verts[a].kind == VKind::Holo && rules.holo_needs_leaf) return;
          }
          (verts[a].kind == VKind::Polar ? sp : sh) += rem[a];
        }
        if (sp != sh || sp != E) return;
        std::vector<int> P, H;
        for (int a = 0; a < V; ++a) (verts[a].kind == VKind::Polar ? P : H).push_back(a);
        std::vector<std::vector<int>> m(V, std::vector<int>(V, 0));
        std::vector<int> colleft(V, 0);
        for (int b : H) colleft[b] = rem[b];
        std::function<void(std::size_t, std::size_t, int)> fill = [&](std::size_t pi, std::size_t hi, int rowleft) {
          if (pi == P.size()) {
            if (!connected(m)) return;
            BipGraph gr;
            gr.v = verts;
            gr.mult = m;
            canonicalize(gr);
            found.emplace(gr.canonical, std::move(gr));
            return;
          }
          int a = P[pi];
          if (hi == H.size()) {
            if (rowleft != 0) return;
            fill(pi + 1, 0, pi + 1 < P.size() ? rem[P[pi + 1]] : 0);
            return;
          }
          int b = H[hi];
          int maxk = std::min(rowleft, colleft[b]);
          // Remaining columns must absorb the rest of the row.
          int cap = 0;
          for (std::size_t t = hi + 1; t < H.size(); ++t) cap += colleft[H[t]];
          for (int k = std::max(0, rowleft - cap); k <= maxk; ++k) {
            m[a][b] = m[b][a] = k;
            colleft[b] -= k;
            fill(pi, hi + 1, rowleft - k);
            colleft[b] += k;
          }
          m[a][b] = m[b][a] = 0;
        };
        if (P.empty() || H.empty()) {
          if (V == 1 && E == 0) {
            BipGraph gr;
            gr.v = verts;
            gr.mult = m;
            canonicalize(gr);
            found.emplace(gr.canonical, std::move(gr));
          }
          return;
        }
        fill(0, 0, rem[P[0]]);
        return;
      }
      for (int a = 0; a < V; ++a) {
        std::uint8_t need = verts[a].kind == VKind::Polar ? 1 : 2;
        if (!(rules.leaf_kinds[l] & need)) continue;
        if (static_cast<int>(verts[a].leaves.size()) >= verts[a].d) continue;
        if (!rules.leaves_on_unstable_holo && verts[a].kind == VKind::Holo && 2 * verts[a].h - 2 + verts[a].d == 0)
          continue;
        bool dup = false;
        for (int u = 0; u < a && !dup; ++u)
          dup = chosen[u] == chosen[a] && verts[u].leaves == verts[a].leaves;
        if (dup) continue;
        verts[a].leaves.push_back(l);
        assign(l + 1);
        verts[a].leaves.pop_back();
      }
    };
    assign(0);
  };

  std::function<void(std::size_t, int)> choose = [&](std::size_t start, int chi) {
    if (chi == target) process();
    if (static_cast<int>(chosen.size()) >= rules.max_vertices) return;
    for (std::size_t t = start; t < types.size(); ++t) {
      int c = types[t].chi();
      if (chi + c > target) continue;
      chosen.push_back(static_cast<int>(t));
      choose(t, chi + c);
      chosen.pop_back();
    }
  };
  choose(0, 0);

  std::vector<BipGraph> out;
  out.reserve(found.size());
  for (auto& [k, gr] : found) out.push_back(std::move(gr));
  return out;
}

LocalForm graph_weight(const BipGraph& gr, int n, const VertexFormFn& form) {
  int V = static_cast<int>(gr.v.size());
  // Slot: leaf (a = label, b = -1) or edge end at vertex a toward vertex b.
  struct Slot {
    int a, b;
  };
  auto vertex_slots = [&](int x) {
    std::vector<Slot> s;
    for (int l : gr.v[x].leaves) s.push_back({l, -1});
    for (int y = 0; y < V; ++y)
      for (int k = 0; k < gr.mult[x][y]; ++k) s.push_back({x, y});
    return s;
  };
  std::vector<int> merged_flag(V, 0);
  std::vector<int> order{0};
  merged_flag[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int y = 0; y < V; ++y)
      if (!merged_flag[y] && gr.mult[order[i]][y] > 0) {
        merged_flag[y] = 1;
        order.push_back(y);
      }
  if (static_cast<int>(order.size()) != V) throw Error(ErrorKind::Validation, "graph is not connected");

  std::fill(merged_flag.begin(), merged_flag.end(), 0);
  LocalForm cur = form(gr.v[0].kind, gr.v[0].h, gr.v[0].d);
  std::vector<Slot> slots = vertex_slots(0);
  merged_flag[0] = 1;
  for (int idx = 1; idx < V; ++idx) {
    int x = order[idx];
    std::vector<Slot> xs = vertex_slots(x);
    std::vector<PairSpec> pairs;
    std::vector<int> used_a(slots.size(), 0), used_b(xs.size(), 0);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (xs[j].b < 0 || !merged_flag[xs[j].b]) continue;
      int w = xs[j].b;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (used_a[i] || slots[i].b != x || slots[i].a != w) continue;
        used_a[i] = 1;
        used_b[j] = 1;
        pairs.push_back(PairSpec{static_cast<int>(i), static_cast<int>(j), gr.v[w].kind == VKind::Polar});
        break;
      }
    }
    const LocalForm& fx = form(gr.v[x].kind, gr.v[x].h, gr.v[x].d);
    cur = contract(cur, fx, pairs);
    std::vector<Slot> ns;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (!used_a[i]) ns.push_back(slots[i]);
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (!used_b[j]) ns.push_back(xs[j]);
    slots = std::move(ns);
    merged_flag[x] = 1;
  }
  if (static_cast<int>(slots.size()) != n) throw Error(ErrorKind::ArityMismatch, "graph leaves do not match n");
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[slots[i].a] = i;
  return cur.permuted(perm);
}

LocalForm graph_sum(const std::vector<BipGraph>& graphs, int n, const VertexFormFn& form) {
  LocalForm total(n);
  for (const auto& gr : graphs) {
    LocalForm w = graph_weight(gr, n, form);
    total += w.scaled(Scalar(Rational(1) / gr.aut));
  }
  return total;
}

std::string graph_to_text(const BipGraph& gr, const std::string& polar_name, const std::string& holo_name) {
  std::ostringstream os;
  int V = static_cast<int>(gr.v.size());
  os << "graph genus=" << gr.genus() << " aut=" << rational_str(gr.aut) << "\n";
  for (int a = 0; a < V; ++a)
    os << "v" << a << " " << (gr.v[a].kind == VKind::Polar ? polar_name : holo_name) << " g=" << gr.v[a].h
       << " d=" << gr.v[a].d << "\n";
  for (int a = 0; a < V; ++a)
    for (int b = a + 1; b < V; ++b)
      if (gr.mult[a][b] > 0) os << "e v" << a << " v" << b << " x" << gr.mult[a][b] << "\n";
  for (int a = 0; a < V; ++a)
    for (int l : gr.v[a].leaves) os << "leaf " << l + 1 << " v" << a << "\n";
  return os.str();
}

}  // namespace btr
