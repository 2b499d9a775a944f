#include "btr/matrix_model.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "btr/errors.hpp"

namespace btr::mm {

namespace {

using Dense2 = std::vector<Dense>;

Dense zeros(int n) { return Dense(n + 1, Scalar(0)); }

Dense mul(const Dense& a, const Dense& b, int N) {
  Dense c = zeros(N);
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= N; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= N; ++j) c[i + j].add_mul(a[i], b[j]);
  }
  return c;
}

Dense inv(const Dense& a, int N) {
  Dense f = zeros(N);
  Scalar a0 = a.at(0).inverse();
  f[0] = a0;
  for (int k = 1; k <= N; ++k) {
    Scalar s(0);
    for (int j = 1; j <= k && j < static_cast<int>(a.size()); ++j) s.add_mul(a[j], f[k - j]);
    f[k] = -s * a0;
  }
  return f;
}

// a^p for a[0] = 1 and rational p.
Dense powr(const Dense& a, const Rational& p, int N) {
  Dense f = zeros(N);
  f[0] = Scalar(1);
  for (int k = 1; k <= N; ++k) {
    Scalar s(0);
    for (int j = 1; j <= k && j < static_cast<int>(a.size()); ++j)
      s.add_mul(a[j] * Scalar(Rational((p + 1) * j - k)), f[k - j]);
    f[k] = s * Scalar(Rational(1, k));
  }
  return f;
}

// a^p for any invertible a[0] and integer p.
Dense powi(const Dense& a, int p, int N) {
  Scalar a0 = a.at(0);
  Dense b = a;
  Scalar ia = a0.inverse();
  for (auto& x : b) x *= ia;
  Dense f = powr(b, Rational(p), N);
  Scalar c = a0.pow(p);
  for (auto& x : f) x *= c;
  return f;
}

// f(g(s)) with g[0] = 0.
Dense compose(const Dense& f, const Dense& g, int N) {
  Dense r = zeros(N);
  for (int k = static_cast<int>(f.size()) - 1; k >= 0; --k) {
    r = mul(r, g, N);
    r[0] += f[k];
  }
  return r;
}

// d/ds as a form: coefficient of s^d ds is (d+1) F[d+1].
Dense deriv(const Dense& F) {
  Dense d(F.empty() ? 0 : F.size() - 1, Scalar(0));
  for (std::size_t k = 1; k < F.size(); ++k) d[k - 1] = F[k] * Scalar(static_cast<long>(k));
  return d;
}

Rational gbinom(const Rational& p, int j) {
  Rational r = 1;
  for (int i = 0; i < j; ++i) r *= (p - i) / Rational(i + 1);
  return r;
}

Dense2 zeros2(int M) { return Dense2(M + 1, zeros(M)); }

Dense2 mul2(const Dense2& a, const Dense2& b, int M) {
  Dense2 c = zeros2(M);
  for (int i = 0; i <= M; ++i)
    for (int j = 0; j <= M; ++j) {
      if (a[i][j].is_zero()) continue;
      for (int p = 0; i + p <= M; ++p)
        for (int q = 0; j + q <= M; ++q) c[i + p][j + q].add_mul(a[i][j], b[p][q]);
    }
  return c;
}

Dense2 inv2(const Dense2& a, int M) {
  Dense2 f = zeros2(M);
  Scalar ia = a[0][0].inverse();
  for (int p = 0; p <= M; ++p)
    for (int q = 0; q <= M; ++q) {
      Scalar s = (p == 0 && q == 0) ? Scalar(1) : Scalar(0);
      for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= q; ++j)
          if (i + j > 0) s -= a[i][j] * f[p - i][q - j];
      f[p][q] = s * ia;
    }
  return f;
}

Dense2 d_first(const Dense2& a, int M) {
  Dense2 r = zeros2(M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j <= M; ++j) r[i][j] = a[i + 1][j] * Scalar(i + 1);
  return r;
}

Dense2 d_second(const Dense2& a, int M) {
  Dense2 r = zeros2(M);
  for (int i = 0; i <= M; ++i)
    for (int j = 0; j < M; ++j) r[i][j] = a[i][j + 1] * Scalar(j + 1);
  return r;
}

// d_a d_b log((f(a) - f(b)) / (a - b)) for f[1] != 0; entries up to degree M in each variable.
// f must be known to degree 2M + 3.
Dense2 dlog_difference(const Dense& f, int M) {
  int K = M + 1;
  if (static_cast<int>(f.size()) < 2 * K + 2) throw InsufficientTruncation(2 * K + 1, static_cast<int>(f.size()) - 1, "dlog_difference");
  Dense2 Q = zeros2(K);
  for (int k = 1; k < static_cast<int>(f.size()); ++k)
    for (int i = 0; i <= k - 1 && i <= K; ++i)
      if (k - 1 - i <= K) Q[i][k - 1 - i] += f[k];
  Dense2 Qa = d_first(Q, K), Qb = d_second(Q, K), Qab = d_second(Qa, K);
  Dense2 P = inv2(Q, K);
  Dense2 r = mul2(Qab, P, K);
  Dense2 s = mul2(mul2(Qa, Qb, K), mul2(P, P, K), K);
  Dense2 out = zeros2(M);
  for (int i = 0; i <= M; ++i)
    for (int j = 0; j <= M; ++j) out[i][j] = r[i][j] - s[i][j];
  return out;
}

Scalar branch_point(int b) { return Scalar(b == 0 ? 1 : -1); }

// q = 1/z as a series in t = 1/x.
Dense q_of_t(const GaussianCurve& c, int N) {
  Dense q = zeros(N);
  Scalar up(1);
  for (int k = 0; 2 * k + 1 <= N; ++k) {
    Rational cat = binomial(2 * k, k) / Rational(k + 1);
    q[2 * k + 1] = c.gamma * up * Scalar(cat);
    up *= c.u;
  }
  return q;
}

}  // namespace

Scalar exact_sqrt(const Scalar& u) {
  const Rational& v = u.value();
  if (sgn(v) <= 0) throw Error(ErrorKind::NonSquareU, "u must be positive");
  mpz_class n = v.get_num(), d = v.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    throw Error(ErrorKind::NonSquareU, "u = " + u.str() + " is not a rational square");
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return Scalar(r, u.deriv() / (2 * r));
}

GaussianCurve::GaussianCurve(const Scalar& u_) : u(u_), gamma(exact_sqrt(u_)) {}

Dense z_of_zeta(int branch, int order) {
  // zeta = 2(w - 1/w) with z = w^2 at branch 0; zeta = 2(1/v - v) with z = -v^2 at branch 1.
  Dense r = zeros(order);
  if (order >= 2) r[2] = Scalar::frac(1, 16);
  r[0] = Scalar(1);
  Dense root = powr(r, Rational(1, 2), order);
  Dense w = root;
  if (order >= 1) w[1] += Scalar::frac(branch == 0 ? 1 : -1, 4);
  Dense z = mul(w, w, order);
  if (branch == 1)
    for (auto& x : z) x = -x;
  return z;
}

CurveSpec build_local_spec(const GaussianCurve& curve, int N) {
  (void)curve;
  CurveSpec spec;
  spec.truncation_order = N;
  spec.input_order = N;
  spec.blob_kind = BlobKind::Standard;
  spec.omega01_tail.assign(2, {});
  std::vector<Dense> z(2);
  for (int b = 0; b < 2; ++b) {
    z[b] = z_of_zeta(b, N + 2);
    // omega_{0,1} = (1/z - 1/z^3) dz.
    Dense iz = inv(z[b], N + 1);
    Dense iz3 = mul(mul(iz, iz, N + 1), iz, N + 1);
    Dense y = zeros(N + 1);
    for (int k = 0; k <= N + 1; ++k) y[k] = iz[k] - iz3[k];
    Dense w = mul(y, deriv(z[b]), N);
    if (!w[0].is_zero()) throw Error(ErrorKind::Validation, "omega_{0,1} has a constant term at a branch point");
    BranchPoint bp;
    bp.id = b + 1;
    bp.alpha = w[2];
    bp.a = Scalar(4);
    spec.branches.push_back(bp);
    for (int d = 1; d <= N; ++d)
      if (d != 2 && !w[d].is_zero()) spec.omega01_tail[b][d] = w[d];
  }
  LocalForm phi(2, N);
  for (int b = 0; b < 2; ++b) {
    Dense2 s = dlog_difference(z_of_zeta(b, 2 * N + 3), N);
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= N; ++j)
        if (!s[i][j].is_zero()) phi.add(Key({b, b}, {i, j}), s[i][j]);
  }
  // Across branches omega_{0,2} = z_1' z_2' dzeta dzeta / (z_1 - z_2)^2 is holomorphic.
  for (int b = 0; b < 2; ++b) {
    int c = 1 - b;
    Dense2 D = zeros2(N);
    for (int i = 0; i <= N; ++i) D[i][0] += z[b][i];
    for (int j = 0; j <= N; ++j) D[0][j] -= z[c][j];
    Dense2 iD = inv2(D, N);
    Dense2 B = mul2(iD, iD, N);
    Dense zb = deriv(z[b]), zc = deriv(z[c]);
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= N; ++j) {
        Scalar v(0);
        for (int p = 0; p <= i; ++p)
          for (int q = 0; q <= j; ++q) v.add_mul(zb[p] * zc[q], B[i - p][j - q]);
        if (!v.is_zero()) phi.add(Key({b, c}, {i, j}), v);
      }
  }
  spec.phi02 = phi;
  return spec;
}

GlobalForm globalize(const LocalForm& omega) {
  GlobalForm g;
  g.n = omega.arity();
  for (int v = 0; v < g.n; ++v)
    if (omega.order(v) < -2) throw InsufficientTruncation(-2, omega.order(v), "globalize");
  std::map<std::pair<int, int>, std::vector<std::pair<int, Scalar>>> cache;
  // Polar part in s = z -+ 1 of zeta^m = 2^m s^m (1 +- s)^{-m/2}.
  auto polar = [&](int b, int m) -> const std::vector<std::pair<int, Scalar>>& {
    auto it = cache.find({b, m});
    if (it != cache.end()) return it->second;
    std::vector<std::pair<int, Scalar>> out;
    Rational two = 1;
    for (int i = 0; i < -m; ++i) two /= 2;
    for (int j = 0; m + j <= -1; ++j) {
      Rational c = two * gbinom(Rational(-m, 2), j);
      if (b == 1 && j % 2 == 1) c = -c;
      if (sgn(c) != 0) out.emplace_back(-(m + j), Scalar(c));
    }
    return cache.emplace(std::make_pair(b, m), std::move(out)).first->second;
  };
  for (const auto& [k, c] : omega.entries()) {
    bool all = true;
    for (int v = 0; v < g.n; ++v) {
      if (k.deg(v) == -1) throw Error(ErrorKind::LogarithmicTerm, "residue term in a stable correlator");
      all = all && k.deg(v) <= -2;
    }
    if (!all || c.is_zero()) continue;
    Scalar pre = c;
    for (int v = 0; v < g.n; ++v) pre *= Scalar::frac(1, k.deg(v) + 1);
    std::vector<std::pair<int, int>> key(g.n);
    std::function<void(int, Scalar)> rec = [&](int v, Scalar w) {
      if (v == g.n) {
        g.terms[key] += w;
        return;
      }
      for (const auto& [m, coef] : polar(k.br(v), k.deg(v) + 1)) {
        key[v] = {k.br(v), m};
        rec(v + 1, w * coef);
      }
    };
    rec(0, pre);
  }
  for (auto it = g.terms.begin(); it != g.terms.end();) it = it->second.is_zero() ? g.terms.erase(it) : std::next(it);
  return g;
}

LocalForm localize(const GlobalForm& f, int order) {
  std::vector<Dense> z(2);
  for (int b = 0; b < 2; ++b) z[b] = z_of_zeta(b, order + 2 * f.n + 40);
  std::map<std::tuple<int, int, int>, std::pair<int, Dense>> cache;
  // d/dzeta of (z - s_b)^{-m} at branch c: lowest degree and dense coefficients from it.
  auto factor = [&](int b, int m, int c) -> const std::pair<int, Dense>& {
    auto key = std::make_tuple(b, m, c);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Dense s = z[c];
    s[0] -= branch_point(b);
    int low = 0;
    if (b == c) {
      s.erase(s.begin());
      low = -m;
    }
    int len = order + 1 - low;
    Dense F = powi(s, -m, len);
    // F is the series from zeta^low; the form has degrees low-1 upward.
    Dense form(len + 1, Scalar(0));
    for (int i = 0; i <= len; ++i) form[i] = F[i] * Scalar(low + i);
    return cache.emplace(key, std::make_pair(low - 1, std::move(form))).first->second;
  };
  LocalForm out(f.n, order);
  for (const auto& [key, coef] : f.terms)
    for (int mask = 0; mask < (1 << f.n); ++mask) {
      std::vector<const std::pair<int, Dense>*> fs(f.n);
      for (int v = 0; v < f.n; ++v) fs[v] = &factor(key[v].first, key[v].second, (mask >> v) & 1);
      Key k(f.n);
      std::function<void(int, Scalar)> rec = [&](int v, Scalar w) {
        if (v == f.n) {
          out.add(k, w);
          return;
        }
        const auto& [low, d] = *fs[v];
        for (std::size_t i = 0; i < d.size(); ++i) {
          int deg = low + static_cast<int>(i);
          if (deg > order) break;
          if (d[i].is_zero()) continue;
          k.set(v, (mask >> v) & 1, deg);
          rec(v + 1, w * d[i]);
        }
      };
      rec(0, coef);
    }
  return out;
}

Moments moments_at_infinity(const GlobalForm& f, const GaussianCurve& curve, int lmax) {
  Dense q = q_of_t(curve, lmax);
  std::map<std::pair<int, int>, Dense> cache;
  // (z - s)^{-m} = q^m (1 - s q)^{-m} as a series in t.
  auto factor = [&](int b, int m) -> const Dense& {
    auto it = cache.find({b, m});
    if (it != cache.end()) return it->second;
    Dense base = zeros(lmax);
    base[0] = Scalar(1);
    if (lmax >= 1) base[1] = -branch_point(b);
    Dense p = powi(base, -m, lmax);
    Dense inq = zeros(lmax);
    for (int i = 0; i + m <= lmax; ++i) inq[i + m] = p[i];
    return cache.emplace(std::make_pair(b, m), compose(inq, q, lmax)).first->second;
  };
  Moments out;
  std::vector<int> l(f.n);
  for (const auto& [key, coef] : f.terms) {
    std::vector<const Dense*> fs(f.n);
    for (int v = 0; v < f.n; ++v) fs[v] = &factor(key[v].first, key[v].second);
    std::function<void(int, Scalar)> rec = [&](int v, Scalar w) {
      if (v == f.n) {
        out[l] += w;
        return;
      }
      for (int i = 1; i <= lmax; ++i) {
        if ((*fs[v])[i].is_zero()) continue;
        l[v] = i;
        rec(v + 1, w * (*fs[v])[i] * Scalar(-i));
      }
    };
    rec(0, coef);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

std::vector<Scalar> omega01_moments(const GaussianCurve& curve, int lmax) {
  // W_{0,1} = q / gamma.
  Dense q = q_of_t(curve, lmax + 1);
  Scalar ig = curve.gamma.inverse();
  std::vector<Scalar> m(lmax + 1);
  for (int l = 0; l <= lmax; ++l) m[l] = q[l + 1] * ig;
  return m;
}

Moments omega02_moments(const GaussianCurve& curve, int lmax) {
  Dense2 s = dlog_difference(q_of_t(curve, 2 * lmax + 3), lmax);
  Moments out;
  for (int a = 1; a <= lmax; ++a)
    for (int b = 1; b <= lmax; ++b)
      if (!s[a - 1][b - 1].is_zero()) out[{a, b}] = s[a - 1][b - 1];
  return out;
}

Scalar contour_pairing(const std::map<int, Scalar>& A, const std::map<int, Scalar>& B) {
  Scalar r(0);
  for (const auto& [l, b] : B) {
    auto it = A.find(l);
    if (it != A.end()) r += it->second * b * Scalar(Rational(1, l));
  }
  return r;
}

void Potential::add(int h, std::vector<int> lengths, const Scalar& value) {
  std::sort(lengths.begin(), lengths.end());
  do {
    t[{h, lengths}] += value;
  } while (std::next_permutation(lengths.begin(), lengths.end()));
}

GaussianModel::GaussianModel(const Scalar& u, int input_order)
    : curve_(u), engine_(std::make_unique<Engine>(build_local_spec(curve_, input_order))) {}

Scalar GaussianModel::moment(int h, const std::vector<int>& l) {
  int n = static_cast<int>(l.size());
  int lmax = *std::max_element(l.begin(), l.end());
  if (h == 0 && n == 1) return omega01_moments(curve_, lmax)[l[0]];
  auto it = cache_.find({h, n});
  if (it == cache_.end() || it->second.first < lmax) {
    Moments m = (h == 0 && n == 2) ? omega02_moments(curve_, lmax)
                                   : moments_at_infinity(globalize(engine_->omega(h, n)), curve_, lmax);
    it = cache_.insert_or_assign({h, n}, std::make_pair(lmax, std::move(m))).first;
  }
  auto jt = it->second.second.find(l);
  return jt == it->second.second.end() ? Scalar(0) : jt->second;
}

Moments T_bullet(const Potential& pot, GaussianModel& model, int h, int k, bool stable_roots) {
  Moments out;
  for (const auto& [hl, t] : pot.t) {
    const auto& [h0, L] = hl;
    int K = static_cast<int>(L.size());
    if (K < k || h0 > h) continue;
    if (stable_roots && 2 * h0 - 2 + K <= 0) continue;
    std::vector<int> head(L.begin(), L.begin() + k);
    int extra = K - k;
    // Ordered groups l_1..l_r of the extra legs, each closed by omega_{h_j, l_j}.
    std::vector<int> sizes, genera;
    std::function<void(int, int)> groups = [&](int pos, int hleft) {
      if (pos == K) {
        if (hleft != 0) return;
        int r = static_cast<int>(sizes.size());
        Scalar w = t * Scalar(Rational(1) / factorial(r));
        int p = k;
        for (int j = 0; j < r; ++j) {
          std::vector<int> legs(L.begin() + p, L.begin() + p + sizes[j]);
          w *= model.moment(genera[j], legs) * Scalar(Rational(1) / factorial(sizes[j]));
          for (int x : legs) w *= Scalar(Rational(1, x));
          p += sizes[j];
          if (w.is_zero()) return;
        }
        out[head] += w;
        return;
      }
      for (int s = 1; pos + s <= K; ++s)
        for (int hj = 0; hj + s - 1 <= hleft; ++hj) {
          sizes.push_back(s);
          genera.push_back(hj);
          groups(pos + s, hleft - hj - (s - 1));
          sizes.pop_back();
          genera.pop_back();
        }
    };
    if (extra == 0) {
      if (h0 == h) out[head] += t;
    } else {
      groups(k, h - h0);
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

LocalForm tau_single(const Moments& B, const GaussianCurve& curve, int k, int order) {
  std::vector<Dense> z(2);
  for (int b = 0; b < 2; ++b) z[b] = z_of_zeta(b, order + 1);
  std::map<std::pair<int, int>, Dense> cache;
  // -d [x(z)^l / l]_{z -> 0 singular part} at branch b, as a form in zeta.
  auto leg = [&](int l, int b) -> const Dense& {
    auto it = cache.find({l, b});
    if (it != cache.end()) return it->second;
    Dense F = zeros(order + 1);
    Scalar gl = curve.gamma.pow(l) * Scalar(Rational(1, l));
    for (int j = 0; j <= l; ++j) {
      int e = l - 2 * j;
      if (e >= 0) continue;
      Dense p = powi(z[b], e, order + 1);
      Scalar c = -gl * Scalar(binomial(l, j));
      for (int i = 0; i <= order + 1; ++i) F[i] += c * p[i];
    }
    return cache.emplace(std::make_pair(l, b), deriv(F)).first->second;
  };
  LocalForm out(k, order);
  for (const auto& [l, c] : B) {
    if (static_cast<int>(l.size()) != k) continue;
    for (int mask = 0; mask < (1 << k); ++mask) {
      Key key(k);
      std::function<void(int, Scalar)> rec = [&](int v, Scalar w) {
        if (v == k) {
          out.add(key, w);
          return;
        }
        int b = (mask >> v) & 1;
        const Dense& d = leg(l[v], b);
        for (int i = 0; i <= order && i < static_cast<int>(d.size()); ++i) {
          if (d[i].is_zero()) continue;
          key.set(v, b, i);
          rec(v + 1, w * d[i]);
        }
      };
      rec(0, c);
    }
  }
  return out;
}

LocalForm blob_first_order(const Potential& pot, GaussianModel& model, int h, int k, int order) {
  if (2 * h - 2 + k <= 0) throw Error(ErrorKind::UnstablePair, "blobs need 2h-2+k > 0");
  return tau_single(T_bullet(pot, model, h, k, true), model.curve(), k, order);
}

LocalForm phi02_first_order(const Potential& pot, GaussianModel& model, int order) {
  return tau_single(T_bullet(pot, model, 0, 2, false), model.curve(), 2, order);
}

Scalar gaussian_u_shift(const Potential& pot, GaussianModel& model) {
  Moments B = T_bullet(pot, model, 0, 1, false);
  Scalar c(0);
  for (const auto& [l, v] : B) {
    if (l[0] != 2) throw Error(ErrorKind::Validation, "the dressed one-leg vertex is not quadratic");
    c = v;
  }
  const Scalar& u = model.curve().u;
  return u * u * c;
}

std::vector<Scalar> omega01_moment_variation(const Potential& pot, GaussianModel& model, int lmax) {
  Moments B = T_bullet(pot, model, 0, 1, false);
  std::map<int, Scalar> Bl;
  int top = 1;
  for (const auto& [l, v] : B) {
    Bl[l[0]] = v;
    top = std::max(top, l[0]);
  }
  Moments W = omega02_moments(model.curve(), std::max(lmax, top));
  std::vector<Scalar> out(lmax + 1, Scalar(0));
  for (int l = 1; l <= lmax; ++l) {
    std::map<int, Scalar> A;
    for (const auto& [m, b] : Bl) {
      auto it = W.find({l, m});
      if (it != W.end()) A[m] = it->second;
    }
    out[l] = contour_pairing(A, Bl);
  }
  return out;
}

std::map<int, Scalar> wick_connected(const std::vector<WickBlock>& blocks, const Scalar& u, int max_half_edges) {
  std::vector<int> next, owner;
  int base_power = 0;
  Scalar weight(1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    base_power += blocks[b].n_power;
    weight *= blocks[b].weight;
    for (int l : blocks[b].traces) {
      int start = static_cast<int>(next.size());
      for (int i = 0; i < l; ++i) {
        next.push_back(start + (i + 1) % l);
        owner.push_back(static_cast<int>(b));
      }
    }
  }
  int H = static_cast<int>(next.size());
  if (H > max_half_edges) throw Error(ErrorKind::SizeLimitExceeded, "Wick oracle limited to " + std::to_string(max_half_edges) + " half-edges");
  std::map<int, Scalar> out;
  if (H % 2) return out;
  int E = H / 2;
  std::vector<int> pair(H, -1);
  std::map<int, long> counts;
  std::function<void()> rec = [&]() {
    int a = static_cast<int>(std::find(pair.begin(), pair.end(), -1) - pair.begin());
    if (a == H) {
      std::vector<int> parent(blocks.size());
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
      for (int h = 0; h < H; ++h) parent[find(owner[h])] = find(owner[pair[h]]);
      for (std::size_t b = 0; b < blocks.size(); ++b)
        if (find(static_cast<int>(b)) != find(0)) return;
      std::vector<char> seen(H, 0);
      int faces = 0;
      for (int h = 0; h < H; ++h) {
        if (seen[h]) continue;
        ++faces;
        for (int x = h; !seen[x]; x = next[pair[x]]) seen[x] = 1;
      }
      ++counts[faces - E + base_power];
      return;
    }
    for (int b = a + 1; b < H; ++b) {
      if (pair[b] != -1) continue;
      pair[a] = b;
      pair[b] = a;
      rec();
      pair[a] = pair[b] = -1;
    }
  };
  rec();
  Scalar w = weight * u.pow(E);
  for (const auto& [p, c] : counts) out[p] = w * Scalar(c);
  return out;
}

Rational wick_polygon_gluings(int g, int k) {
  auto r = wick_connected({WickBlock{{2 * k}, Scalar(1), 0}}, Scalar(1), 2 * k);
  auto it = r.find(1 - 2 * g);
  return it == r.end() ? Rational(0) : it->second.value();
}

}  // namespace btr::mm
