#ifndef BTR_TESTS_ORACLES_HPP
#define BTR_TESTS_ORACLES_HPP

#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "btr/local_form.hpp"
#include "btr/psi.hpp"

namespace btr::testing {

// omega_{g,n} of the Airy curve with alpha = 1 from the psi numbers directly.
inline LocalForm airy_oracle(int g, int n, int dmax) {
  LocalForm f(n);
  std::vector<int> d(n, 0);
  Rational sign = (2 - 2 * g - n) % 2 == 0 ? 1 : -1;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      Rational c = psi_intersection(g, d);
      if (c == 0) return;
      Key k(n);
      for (int v = 0; v < n; ++v) {
        c *= double_factorial_odd(d[v] + 1);
        k.set(v, 0, -2 * d[v] - 2);
      }
      f.add(k, Scalar(sign * c));
      return;
    }
    for (int x = 0; x <= dmax; ++x) {
      d[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return f;
}

// Harer-Zagier: eps_g(k) genus-g gluings of a 2k-gon.
inline Rational harer_zagier(int g, int k) {
  std::map<std::pair<int, int>, Rational> memo;
  std::function<Rational(int, int)> eps = [&](int gg, int kk) -> Rational {
    if (gg < 0 || kk < 0) return 0;
    if (kk == 0) return gg == 0 ? 1 : 0;
    auto key = std::make_pair(gg, kk);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Rational r = (Rational(4 * kk - 2) * eps(gg, kk - 1) +
                  Rational((kk - 1) * (2 * kk - 1) * (2 * kk - 3)) * eps(gg - 1, kk - 2)) /
                 Rational(kk + 1);
    return memo[key] = r;
  };
  return eps(g, k);
}

// Brute-force Wick oracle kept apart from the library one. Each block is a
// product of traces with a weight and a power of N; propagator 1/N. Returns
// exponent of N -> coefficient over pairings connecting every block.
struct Block {
  std::vector<int> traces;
  Rational weight;
  int n_power;
};

inline std::map<int, Rational> wick(const std::vector<Block>& blocks) {
  std::vector<int> next, block_of;
  int start = 0;
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
    for (int len : blocks[b].traces) {
      for (int i = 0; i < len; ++i) {
        next.push_back(start + (i + 1) % len);
        block_of.push_back(b);
      }
      start += len;
    }
  int H = start;
  Rational weight = 1;
  int npow = 0;
  for (const auto& b : blocks) {
    weight *= b.weight;
    npow += b.n_power;
  }
  std::map<int, Rational> out;
  std::vector<int> pair(H, -1);
  std::function<void()> rec = [&]() {
    int h = 0;
    while (h < H && pair[h] >= 0) ++h;
    if (h == H) {
      std::vector<int> root(blocks.size());
      std::iota(root.begin(), root.end(), 0);
      std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
      for (int a = 0; a < H; ++a) root[find(block_of[a])] = find(block_of[pair[a]]);
      for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
        if (find(b) != find(0)) return;
      std::vector<bool> seen(H, false);
      int faces = 0;
      for (int a = 0; a < H; ++a) {
        if (seen[a]) continue;
        ++faces;
        for (int x = a; !seen[x]; x = next[pair[x]]) seen[x] = true;
      }
      out[faces - H / 2 + npow] += weight;
      return;
    }
    for (int o = h + 1; o < H; ++o) {
      if (pair[o] >= 0) continue;
      pair[h] = o;
      pair[o] = h;
      rec();
      pair[h] = pair[o] = -1;
    }
  };
  if (H % 2 == 0) rec();
  return out;
}

}  // namespace btr::testing

#endif
