#ifndef BTR_TESTS_FIXTURES_HPP
#define BTR_TESTS_FIXTURES_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "btr/curve.hpp"
#include "btr/local_form.hpp"

namespace btr::testing {

// Two branches, every kind of input populated.
inline const char* kTwoBranchJson = R"({"branches":[{"id":1,"alpha":"1"},{"id":2,"alpha":"-2/3"}],
 "omega01_tail":{"1":{"4":"1/3","3":"1/5"},"2":{"6":"2"}},
 "phi02":{"1,1":{"0,0":"1/5","1,2":"1/2","2,1":"1/2"},"1,2":{"0,1":"1/7"},"2,1":{"1,0":"1/7"}},
 "blobs":[{"g":0,"n":3,"coeffs":{"1,1,1":{"0,0,0":"2"}}},{"g":1,"n":1,"coeffs":{"2":{"2":"1/3","1":"1"}}}],
 "blob_kind":"kdv"})";

inline CurveSpec two_branch_spec() { return parse_curve_spec(kTwoBranchJson); }

// Adds value at every distinct reordering of the variables of key.
inline void add_symmetric(LocalForm& f, const Key& key, const Scalar& value) {
  std::vector<int> perm(key.arity());
  for (int i = 0; i < key.arity(); ++i) perm[i] = i;
  std::vector<Key> seen;
  do {
    Key k(key.arity());
    for (int i = 0; i < key.arity(); ++i) k.set(i, key.br(perm[i]), key.deg(perm[i]));
    if (std::find(seen.begin(), seen.end(), k) != seen.end()) continue;
    seen.push_back(k);
    f.add(k, value);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

// Sparse random spec: s <= 2 branches, small tails and phi_{0,2}, and at most
// three symmetric blob coefficients spread over (0,3), (1,1), (0,4), (1,2).
class RandomSpecs {
 public:
  explicit RandomSpecs(unsigned seed) : rng_(seed) {}

  Scalar rational() {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 6);
    long p = 0;
    while (p == 0) p = num(rng_);
    return Scalar::frac(p, den(rng_));
  }
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  CurveSpec next(BlobKind kind = BlobKind::Kdv, bool even_tail = true) {
    CurveSpec s;
    s.truncation_order = 10;
    s.blob_kind = kind;
    int nb = uniform(1, 2);
    for (int i = 0; i < nb; ++i) s.branches.push_back(BranchPoint{i + 1, rational(), Scalar(0)});
    s.omega01_tail.assign(nb, {});
    for (int i = 0; i < nb; ++i) {
      int d = uniform(3, 6);
      if (!even_tail && d % 2 == 1) ++d;
      if (uniform(0, 1)) s.omega01_tail[i][d] = rational();
    }
    if (uniform(0, 1)) add_symmetric(s.phi02, Key({uniform(0, nb - 1), uniform(0, nb - 1)}, {uniform(0, 2), uniform(0, 2)}), rational());
    const GN types[] = {{0, 3}, {1, 1}, {0, 4}, {1, 2}};
    int count = uniform(1, 3);
    for (int c = 0; c < count; ++c) {
      auto [g, n] = types[uniform(0, 3)];
      Key k(n);
      for (int v = 0; v < n; ++v) k.set(v, uniform(0, nb - 1), uniform(0, 2));
      auto it = s.blobs.try_emplace({g, n}, LocalForm(n)).first;
      add_symmetric(it->second, k, rational());
    }
    return s;
  }

 private:
  std::mt19937 rng_;
};

}  // namespace btr::testing

#endif
