#include <gtest/gtest.h>

#include <functional>
#include <string>
#include <vector>

#include "btr/errors.hpp"
#include "btr/global.hpp"
#include "btr/kdv.hpp"
#include "support/fixtures.hpp"

using namespace btr;

namespace {

LocalForm value_part(const LocalForm& f) {
  LocalForm o(f.arity());
  for (int v = 0; v < f.arity(); ++v) o.set_order(v, f.order(v));
  for (const auto& [k, s] : f.entries()) o.add(k, Scalar(s.value()));
  return o;
}

LocalForm eps_part(const LocalForm& f) {
  LocalForm o(f.arity());
  for (int v = 0; v < f.arity(); ++v) o.set_order(v, f.order(v));
  for (const auto& [k, s] : f.entries()) o.add(k, Scalar(s.deriv()));
  return o;
}

struct Direction {
  std::string name;
  int h, k;
  LocalForm kappa;
  std::function<void(CurveSpec&, const LocalForm&)> perturb;
};

LocalForm kappa_of(int arity, std::initializer_list<std::pair<Key, int>> entries) {
  LocalForm f(arity);
  for (const auto& [k, c] : entries) f.add(k, Scalar(c));
  return f;
}

std::vector<Direction> directions() {
  auto tail = [](int i, int d) {
    return [i, d](CurveSpec& s, const LocalForm&) { s.omega01_tail[i][d] += Scalar::eps(1); };
  };
  auto blob = [](int g, int n) {
    return [g, n](CurveSpec& s, const LocalForm& kap) {
      auto it = s.blobs.try_emplace({g, n}, LocalForm(n)).first;
      for (const auto& [k, c] : kap.entries()) it->second.add(k, Scalar::eps(c.value()));
    };
  };
  return {
      {"tail3", 0, 1, kappa_of(1, {{Key({0}, {3}), 1}}), tail(0, 3)},
      {"tail4", 0, 1, kappa_of(1, {{Key({1}, {4}), 1}}), tail(1, 4)},
      {"tail1", 0, 1, kappa_of(1, {{Key({1}, {1}), 1}}), tail(1, 1)},
      {"phi02", 0, 2, kappa_of(2, {{Key({0, 1}, {1, 0}), 1}, {Key({1, 0}, {0, 1}), 1}, {Key({1, 1}, {1, 1}), 3}}),
       [](CurveSpec& s, const LocalForm& kap) {
         for (const auto& [k, c] : kap.entries()) s.phi02.add(k, Scalar::eps(c.value()));
       }},
      {"blob11", 1, 1, kappa_of(1, {{Key({0}, {2}), 1}, {Key({1}, {0}), 2}}), blob(1, 1)},
      {"blob03", 0, 3,
       kappa_of(3, {{Key({0, 0, 1}, {0, 0, 0}), 1}, {Key({0, 1, 0}, {0, 0, 0}), 1}, {Key({1, 0, 0}, {0, 0, 0}), 1}}),
       blob(0, 3)},
  };
}

}  // namespace

TEST(Variation, JetEqualsResidueFormula) {
  CurveSpec base = btr::testing::two_branch_spec();
  Engine eb(base);
  for (const auto& dir : directions()) {
    CurveSpec s = base;
    dir.perturb(s, dir.kappa);
    Engine ej(s);
    for (auto [g, n] : std::vector<GN>{{0, 3}, {1, 1}, {0, 4}, {1, 2}}) {
      const LocalForm& w = ej.omega(g, n);
      EXPECT_EQ(value_part(w), eb.omega(g, n)) << dir.name;
      std::string why;
      EXPECT_TRUE(agree(eps_part(w), variation(eb, dir.h, dir.k, dir.kappa, g, n), &why))
          << dir.name << " " << g << "," << n << " " << why;
    }
  }
}

TEST(Variation, FreeEnergyJet) {
  CurveSpec base = btr::testing::two_branch_spec();
  Engine eb(base);
  for (const auto& dir : directions()) {
    CurveSpec s = base;
    dir.perturb(s, dir.kappa);
    Engine ej(s);
    Scalar F = KdvBackend(ej).free_energy(2);
    EXPECT_EQ(Scalar(F.deriv()), variation_F(eb, dir.h, dir.k, dir.kappa, 2)) << dir.name;
  }
}

TEST(Variation, AlphaFlow) {
  CurveSpec base = btr::testing::two_branch_spec();
  Engine eb(base);
  CurveSpec s = base;
  s.branches[1].alpha += Scalar::eps(1);
  Engine ej(s);
  LocalForm kap(1);
  kap.add(Key({1}, {2}), Scalar(1));
  for (auto [g, n] : std::vector<GN>{{0, 3}, {1, 1}, {1, 2}}) {
    std::string why;
    EXPECT_TRUE(agree(eps_part(ej.omega(g, n)), alpha_flow(eb, 1, g, n), &why)) << g << "," << n << " " << why;
  }
  EXPECT_EQ(Scalar(KdvBackend(ej).free_energy(2).deriv()), variation_F(eb, 0, 1, kap, 2));
}

TEST(Variation, RejectsArityMismatch) {
  Engine e(airy_spec());
  EXPECT_THROW(variation(e, 0, 2, LocalForm(1), 1, 1), Error);
}

TEST(FreeEnergy, AiryGenusTwo) {
  Engine e(airy_spec());
  EXPECT_EQ(KdvBackend(e).free_energy(2), Scalar::frac(-1, 240));
  EXPECT_EQ(free_energy_popore(e, 2), Scalar::frac(-1, 240));
  CurveSpec p = airy_spec();
  p.bernoulli = BernoulliConvention::Negated;
  Engine ep(p);
  EXPECT_EQ(KdvBackend(ep).free_energy(2), Scalar::frac(1, 240));
}

TEST(FreeEnergy, KdvConstants) {
  CurveSpec s = airy_spec();
  s.branches[0].alpha = Scalar(-2);
  // (-alpha)^{2-2g} B_{2g} / (2g (2g-2))
  EXPECT_EQ(free_energy_kdv(s, 2, 0), Scalar(Rational(-1, 30) / 8 / 4));
  EXPECT_EQ(free_energy_kdv(s, 3, 0), Scalar(Rational(1, 42) / 24 / 16));
  EXPECT_EQ(free_energy_kdv(s, 1, 0), Scalar(0));
}

TEST(FreeEnergy, GraphSumEqualsResidueFormula) {
  Engine e(btr::testing::two_branch_spec());
  Scalar F2 = KdvBackend(e).free_energy(2);
  EXPECT_EQ(F2, Scalar::frac(-209, 640));
  EXPECT_EQ(free_energy_popore(e, 2), F2);
  btr::testing::RandomSpecs rs(77);
  for (int t = 0; t < 3; ++t) {
    Engine er(rs.next());
    EXPECT_EQ(free_energy_popore(er, 2), KdvBackend(er).free_energy(2));
  }
}

TEST(FreeEnergy, GenusThreeSparse) {
  CurveSpec s = airy_spec();
  s.omega01_tail[0][4] = Scalar::frac(1, 3);
  s.blobs[{1, 1}] = LocalForm(1);
  s.blobs[{1, 1}].add(Key({0}, {0}), Scalar(2));
  Engine e(s);
  EXPECT_EQ(free_energy_popore(e, 3), KdvBackend(e).free_energy(3));
}

TEST(FreeEnergy, DilatonLemma) {
  CurveSpec s = btr::testing::two_branch_spec();
  for (auto [g, n] : std::vector<GN>{{0, 3}, {1, 1}, {0, 4}, {1, 2}, {2, 1}}) {
    DilatonCheck r = dilaton_lemma_check(s, g, n);
    EXPECT_TRUE(r.ok) << g << "," << n << " " << r.detail;
  }
}

TEST(Kappa, InsertionEqualsDressedVertex) {
  CurveSpec s = airy_spec();
  s.omega01_tail[0][4] = Scalar::frac(2, 5);
  for (auto [g, n] : std::vector<GN>{{1, 1}, {0, 4}, {0, 3}, {1, 2}})
    EXPECT_EQ(omega_kdv_box(s, g, n, 0), omega_kdv_box_kappa(s, g, n, 0)) << g << "," << n;
  CurveSpec t = btr::testing::two_branch_spec();
  for (int i = 0; i < 2; ++i)
    for (auto [g, n] : std::vector<GN>{{1, 1}, {0, 4}})
      EXPECT_EQ(omega_kdv_box(t, g, n, i), omega_kdv_box_kappa(t, g, n, i)) << g << "," << n;
}

TEST(Kappa, ZeroTailIsPsiOnly) {
  CurveSpec s = airy_spec();
  for (const auto& [c, v] : t_hat_from_phi01(s, 0, 4)) EXPECT_TRUE(v.is_zero()) << c;
  EXPECT_EQ(omega_kdv_box(s, 1, 1, 0), omega_kdv(s, 1, 1, 0));
}

TEST(ReferenceChange, MatchesDirect) {
  CurveSpec s = btr::testing::two_branch_spec();
  CurveSpec r = s;
  r.blobs.clear();
  r.blobs[{1, 1}] = LocalForm(1);
  r.blobs[{1, 1}].add(Key({1}, {0}), Scalar(-1));
  Engine et(s), er(r);
  for (auto [g, n] : std::vector<GN>{{0, 3}, {1, 1}, {0, 4}}) {
    std::string why;
    EXPECT_TRUE(agree(reference_change(et, er, g, n), et.omega(g, n), &why)) << g << "," << n << " " << why;
  }
}
