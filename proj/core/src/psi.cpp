#include "btr/psi.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "btr/errors.hpp"

namespace btr {

namespace {

using Memo = std::map<std::pair<int, std::vector<int>>, Rational>;

Rational psi_rec(int g, std::vector<int> d, Memo& memo);

// Sum over subsets S of rest, choosing the genus split, of <tau_a S>_{g1} <tau_b rest\S>_{g2}.
Rational split_sum(int g, int a, int b, const std::vector<int>& rest, Memo& memo) {
  Rational total = 0;
  int n = static_cast<int>(rest.size());
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> left{a}, right{b};
    for (int i = 0; i < n; ++i) (mask & (1u << i) ? left : right).push_back(rest[i]);
    for (int g1 = 0; g1 <= g; ++g1) {
      Rational x = psi_rec(g1, left, memo);
      if (sgn(x) == 0) continue;
      total += x * psi_rec(g - g1, right, memo);
    }
  }
  return total;
}

Rational psi_rec(int g, std::vector<int> d, Memo& memo) {
  int n = static_cast<int>(d.size());
  if (g < 0 || 2 * g - 2 + n <= 0) return 0;
  int sum = 0;
  for (int x : d) {
    if (x < 0) return 0;
    sum += x;
  }
  if (sum != 3 * g - 3 + n) return 0;
  std::sort(d.begin(), d.end());
  if (g == 0 && n == 3) return 1;
  if (g == 1 && n == 1) return Rational(1, 24);
  auto key = std::make_pair(g, d);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  Rational result = 0;
  if (d[0] == 0) {
    // String equation.
    std::vector<int> rest(d.begin() + 1, d.end());
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (rest[j] == 0) continue;
      std::vector<int> e = rest;
      e[j] -= 1;
      result += psi_rec(g, e, memo);
    }
  } else {
    // DVV on the largest entry tau_{k+1}.
    int k = d.back() - 1;
    std::vector<int> rest(d.begin(), d.end() - 1);
    Rational acc = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      std::vector<int> e = rest;
      int dj = e[j];
      e[j] = dj + k;
      acc += double_factorial_odd(k + dj + 1) / double_factorial_odd(dj) * psi_rec(g, e, memo);
    }
    Rational half = 0;
    for (int a = 0; a <= k - 1; ++a) {
      int b = k - 1 - a;
      Rational w = double_factorial_odd(a + 1) * double_factorial_odd(b + 1);
      std::vector<int> e = rest;
      e.push_back(a);
      e.push_back(b);
      Rational t = psi_rec(g - 1, e, memo) + split_sum(g, a, b, rest, memo);
      half += w * t;
    }
    acc += half / 2;
    result = acc / double_factorial_odd(k + 2);
  }
  memo.emplace(key, result);
  return result;
}

Memo& global_memo() {
  static Memo memo;
  return memo;
}

std::mutex& memo_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

Rational psi_intersection(int g, std::vector<int> degrees) {
  if (degrees.size() > 24) throw Error(ErrorKind::SizeLimitExceeded, "too many psi insertions");
  std::lock_guard<std::mutex> lock(memo_mutex());
  return psi_rec(g, std::move(degrees), global_memo());
}

Rational kappa_psi_intersection(int g, const std::vector<int>& degrees, const std::vector<int>& kappas) {
  // The pushforward of prod psi^{c+1} is a sum over permutations of products
  // of kappa over cycles. Its inverse: prod kappa = sum over set partitions of
  // prod_B (-1)^{|B|-1} times the pushforward of prod_B psi^{1 + sum_B c}.
  int r = static_cast<int>(kappas.size());
  if (r == 0) return psi_intersection(g, degrees);
  Rational total = 0;
  std::vector<int> block(r, 0);
  std::function<void(int, int)> rec = [&](int i, int nblocks) {
    if (i == r) {
      std::vector<int> sums(nblocks, 0), sizes(nblocks, 0);
      for (int j = 0; j < r; ++j) {
        sums[block[j]] += kappas[j];
        sizes[block[j]] += 1;
      }
      Rational coef = 1;
      std::vector<int> d = degrees;
      for (int b = 0; b < nblocks; ++b) {
        if ((sizes[b] - 1) % 2) coef = -coef;
        d.push_back(sums[b] + 1);
      }
      total += coef * psi_intersection(g, d);
      return;
    }
    for (int b = 0; b <= nblocks; ++b) {
      block[i] = b;
      rec(i + 1, b == nblocks ? nblocks + 1 : nblocks);
    }
  };
  rec(0, 0);
  return total;
}

}  // namespace btr
