#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "btr/errors.hpp"
#include "btr/matrix_model.hpp"
#include "support/oracles.hpp"

using namespace btr;
using namespace btr::mm;
using btr::testing::harer_zagier;
using btr::testing::wick;

namespace {

Rational deriv(const Scalar& s) { return s.deriv(); }

}  // namespace

TEST(Oracle, HarerZagierMatchesPolygonGluing) {
  for (int k = 1; k <= 5; ++k)
    for (int g = 0; 2 * g <= k; ++g) EXPECT_EQ(harer_zagier(g, k), wick({{{2 * k}, 1, 0}})[1 - 2 * g]) << g << " " << k;
  EXPECT_EQ(wick_polygon_gluings(1, 3), harer_zagier(1, 3));
}

TEST(Oracle, LibraryWickAgrees) {
  auto a = wick_connected({{{4}, Scalar(1), 0}});
  EXPECT_EQ(a[1], Scalar(2));
  EXPECT_EQ(a[-1], Scalar(1));
  auto b = wick_connected({{{2}, Scalar(1), 0}, {{2}, Scalar(1), 0}});
  auto c = wick({{{2}, 1, 0}, {{2}, 1, 0}});
  EXPECT_EQ(b[0], Scalar(2));
  EXPECT_EQ(c[0], Rational(2));
  EXPECT_THROW(wick_connected({{{8}, Scalar(1), 0}, {{8}, Scalar(1), 0}}, Scalar(1), 14), Error);
}

TEST(Curve, ZetaIsOddUnderInvolution) {
  // z(-zeta) = 1/z(zeta) at both branches.
  for (int b = 0; b < 2; ++b) {
    Dense z = z_of_zeta(b, 10);
    Dense zm = z;
    for (std::size_t k = 1; k < zm.size(); k += 2) zm[k] = -zm[k];
    Dense prod(11, Scalar(0));
    for (int i = 0; i <= 10; ++i)
      for (int j = 0; i + j <= 10; ++j) prod[i + j] += z[i] * zm[j];
    EXPECT_EQ(prod[0], Scalar(1));
    for (int k = 1; k <= 10; ++k) EXPECT_EQ(prod[k], Scalar(0)) << b << " " << k;
  }
}

TEST(Curve, NonSquareU) { EXPECT_THROW(GaussianCurve(Scalar(2)), Error); }

TEST(Gaussian, DiskMomentsAreCatalan) {
  GaussianCurve c(Scalar(1));
  auto w = omega01_moments(c, 9);
  for (int k = 0; 2 * k <= 9; ++k) {
    EXPECT_EQ(w[2 * k], Scalar(harer_zagier(0, k))) << k;
    if (2 * k + 1 <= 9) EXPECT_EQ(w[2 * k + 1], Scalar(0));
  }
}

TEST(Gaussian, ScalingWithU) {
  GaussianCurve c(Scalar(9));
  auto w = omega01_moments(c, 6);
  EXPECT_EQ(w[6], Scalar(5 * 729));
  GaussianModel M(Scalar(4), 16);
  EXPECT_EQ(M.moment(1, {4}), Scalar(16));
}

TEST(Gaussian, OneFaceMaps) {
  GaussianModel M(Scalar(1), 16);
  for (int k = 2; k <= 4; ++k) EXPECT_EQ(M.moment(1, {2 * k}), Scalar(harer_zagier(1, k))) << k;
  EXPECT_EQ(M.moment(1, {4}), Scalar(1));
  EXPECT_EQ(M.moment(1, {6}), Scalar(10));
  EXPECT_EQ(M.moment(1, {8}), Scalar(70));
  EXPECT_EQ(M.moment(2, {8}), Scalar(harer_zagier(2, 4)));
}

TEST(Gaussian, SeveralBoundaries) {
  GaussianModel M(Scalar(1), 16);
  EXPECT_EQ(M.moment(0, {1, 1}), Scalar(wick({{{1}, 1, 0}, {{1}, 1, 0}})[0]));
  EXPECT_EQ(M.moment(0, {2, 2}), Scalar(wick({{{2}, 1, 0}, {{2}, 1, 0}})[0]));
  EXPECT_EQ(M.moment(0, {4, 2}), Scalar(wick({{{4}, 1, 0}, {{2}, 1, 0}})[0]));
  EXPECT_EQ(M.moment(0, {3, 1}), Scalar(wick({{{3}, 1, 0}, {{1}, 1, 0}})[0]));
  EXPECT_EQ(M.moment(0, {2, 2, 2}), Scalar(wick({{{2}, 1, 0}, {{2}, 1, 0}, {{2}, 1, 0}})[-1]));
  EXPECT_EQ(M.moment(1, {2, 2}), Scalar(wick({{{2}, 1, 0}, {{2}, 1, 0}})[-2]));
  EXPECT_EQ(M.moment(0, {1, 1, 2}), Scalar(wick({{{1}, 1, 0}, {{1}, 1, 0}, {{2}, 1, 0}})[-1]));
}

TEST(Gaussian, GlobalizeRoundTrip) {
  GaussianModel M(Scalar(1), 16);
  for (auto [g, n] : std::vector<GN>{{0, 3}, {1, 1}, {0, 4}, {1, 2}}) {
    const LocalForm& w = M.engine().omega(g, n);
    std::string why;
    EXPECT_TRUE(agree(w, localize(globalize(w), 6), &why)) << g << "," << n << " " << why;
  }
  GlobalForm f;
  f.n = 2;
  f.terms[{{0, 2}, {1, 1}}] = Scalar::frac(3, 7);
  f.terms[{{1, 3}, {1, 2}}] = Scalar(-2);
  GlobalForm r = globalize(localize(f, 6));
  EXPECT_EQ(r.terms, f.terms);
}

TEST(Gaussian, ContourPairing) {
  std::map<int, Scalar> A{{2, Scalar(3)}, {4, Scalar(5)}};
  EXPECT_EQ(contour_pairing(A, {{4, Scalar(1)}}), Scalar::frac(5, 4));
  EXPECT_EQ(contour_pairing(A, {{3, Scalar(1)}}), Scalar(0));
}

TEST(Potential, DressedVertexSupport) {
  GaussianModel M(Scalar(1), 16);
  Potential zero;
  EXPECT_TRUE(T_bullet(zero, M, 0, 1, false).empty());
  Potential p;
  p.add(0, {1, 1}, Scalar(1));
  EXPECT_TRUE(T_bullet(p, M, 0, 3, true).empty());
  EXPECT_TRUE(blob_first_order(p, M, 0, 3, 8).empty());
  Potential q;
  q.add(0, {2, 2}, Scalar(1));
  // One leg closed by a disk: t * W_{0,1}[2] / 2.
  auto T = T_bullet(q, M, 0, 1, false);
  EXPECT_EQ(T[{2}], Scalar::frac(1, 2));
  EXPECT_EQ(T_bullet(q, M, 0, 2, false)[std::vector<int>({2, 2})], Scalar(1));
}

TEST(Potential, FirstOrderDiskMoments) {
  GaussianModel M(Scalar(1), 16);
  Potential pot;
  pot.add(0, {2, 2}, Scalar::eps(1));
  auto var = omega01_moment_variation(pot, M, 8);
  GaussianCurve jet(Scalar(1) + gaussian_u_shift(pot, M));
  auto w = omega01_moments(jet, 8);
  for (int k = 1; k <= 4; ++k) {
    // Cell t / (2! 2 2) (tr M^2)^2, boundary N^-1 tr M^{2k}.
    Rational count = wick({{{2 * k}, 1, -1}, {{2, 2}, Rational(1, 8), 0}})[0];
    EXPECT_EQ(deriv(w[2 * k]), count) << k;
    EXPECT_EQ(deriv(var[2 * k]), count) << k;
  }
}

TEST(Potential, FirstOrderOneFaceTorus) {
  GaussianModel M(Scalar(1), 16);
  Potential pot;
  pot.add(0, {2, 2}, Scalar::eps(1));
  CurveSpec s = M.engine().spec();
  s.phi02 += phi02_first_order(pot, M, 16);
  for (auto [h, k] : std::vector<GN>{{0, 3}, {1, 1}, {0, 4}}) EXPECT_TRUE(blob_first_order(pot, M, h, k, 8).empty());
  Engine e(s);
  GaussianCurve jet(Scalar(1) + gaussian_u_shift(pot, M));
  auto mo = moments_at_infinity(globalize(e.omega(1, 1)), jet, 6);
  for (int l : {2, 4, 6}) {
    Rational count = wick({{{l}, 1, -1}, {{2, 2}, Rational(1, 8), 0}})[-2];
    EXPECT_EQ(deriv(mo[{l}]), count) << l;
  }
}
