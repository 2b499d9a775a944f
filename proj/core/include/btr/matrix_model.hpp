#ifndef BTR_MATRIX_MODEL_HPP
#define BTR_MATRIX_MODEL_HPP

#include <map>
#include <memory>
#include <vector>

#include "btr/curve.hpp"
#include "btr/engine.hpp"
#include "btr/local_form.hpp"

namespace btr::mm {

// Dense truncated power series: c[k] is the coefficient of s^k.
using Dense = std::vector<Scalar>;

// Square root of a perfect rational square (value part), extended to jets.
Scalar exact_sqrt(const Scalar& u);

// Gaussian one-cut curve x(z) = gamma (z + 1/z) with gamma^2 = u, cut [-2 gamma, 2 gamma],
// W_{0,1}(x(z)) = 1/(gamma z). Branch 0 is z = 1 with zeta = 2(z-1)/sqrt(z); branch 1
// is z = -1 with zeta = 2(z+1)/sqrt(-z). Both satisfy zeta(1/z) = -zeta(z).
struct GaussianCurve {
  Scalar u{1};
  Scalar gamma{1};
  explicit GaussianCurve(const Scalar& u);
};

// z(zeta) at branch 0 or 1, coefficients up to zeta^order.
Dense z_of_zeta(int branch, int order);

// Local spec in normalized coordinates; omega_{0,1} and phi_{0,2} known to input_order.
// Every branch uses its own rescaling of x, under which the correlators as forms in z
// do not depend on u.
CurveSpec build_local_spec(const GaussianCurve& curve, int input_order);

// omega_{g,n} = d_1..d_n F with F a sum of prod_i (z_i - s_i)^{-m_i}, s_i = +1 (branch 0) or -1.
struct GlobalForm {
  int n = 0;
  // Per variable (branch, m) with m >= 1.
  std::map<std::vector<std::pair<int, int>>, Scalar> terms;
};

// Principal parts at z = +-1 of a local stable correlator. Exact when the global
// form has no other poles: all Gaussian correlators, and omega_{g,1} in general.
// A perturbed phi_{0,2} puts poles at z = 0 on the spectator legs of omega_{g,n>=2}.
GlobalForm globalize(const LocalForm& omega);
// Re-expansion of a global form at the branch points, known to order.
LocalForm localize(const GlobalForm& f, int order);

using Moments = std::map<std::vector<int>, Scalar>;
// Coefficients of prod x_i^{-l_i-1} dx_i at x = infinity for 1 <= l_i <= lmax.
Moments moments_at_infinity(const GlobalForm& f, const GaussianCurve& curve, int lmax);
// omega_{0,1} moments for l = 0..lmax.
std::vector<Scalar> omega01_moments(const GaussianCurve& curve, int lmax);
// W_{0,2} moments: omega_{0,2} minus the pullback of dx dx / (x - x')^2.
Moments omega02_moments(const GaussianCurve& curve, int lmax);

// sum_l A_l B_l / l for A expanded at infinity and B = sum B_l x^l / l.
Scalar contour_pairing(const std::map<int, Scalar>& A, const std::map<int, Scalar>& B);

// Multi-trace potential: t_{h; l_1..l_k}. The action holds
// N^{2-2h-k} t_{h;l} / (k! prod l) prod tr M^{l_j}, summed over ordered tuples.
struct Potential {
  std::map<std::pair<int, std::vector<int>>, Scalar> t;
  // Stores value at every distinct reordering of lengths.
  void add(int h, std::vector<int> lengths, const Scalar& value);
};

// Gaussian correlators on one curve: local engine plus their moments at infinity.
class GaussianModel {
 public:
  GaussianModel(const Scalar& u, int input_order);

  const GaussianCurve& curve() const { return curve_; }
  Engine& engine() { return *engine_; }
  // W_{h,n}[l_1..l_n] for l_i >= 1.
  Scalar moment(int h, const std::vector<int>& l);

 private:
  GaussianCurve curve_;
  std::unique_ptr<Engine> engine_;
  std::map<GN, std::pair<int, Moments>> cache_;
};

// Dressed vertex of type (h,k) at first order in the couplings: every root
// T_{h0,K} with K >= k, its extra legs grouped and closed by Gaussian
// correlators. B over ordered tuples with T_bullet = sum B_l prod x_j^{l_j} / l_j.
// With stable_roots only roots with 2h0-2+K > 0 enter.
Moments T_bullet(const Potential& pot, GaussianModel& model, int h, int k, bool stable_roots);

// tau vertex of a single dressed vertex: each leg closed against omega_{0,2}
// from outside the contour, i.e. -d of the part of x(z)^l / l singular at z = 0.
LocalForm tau_single(const Moments& B, const GaussianCurve& curve, int k, int order);

// First-order standard blob phi_{h,k} for 2h-2+k > 0: the tau vertex of the
// dressed stable roots.
LocalForm blob_first_order(const Potential& pot, GaussianModel& model, int h, int k, int order);
// First-order phi_{0,2} correction: tau vertex of the dressed (0,2) vertex with all roots.
LocalForm phi02_first_order(const Potential& pot, GaussianModel& model, int order);

// First-order change of u when the disk-dressed one-leg vertex is quadratic,
// T_bullet_{0,1} = c x^2 / 2: 1/u' = 1/u - c.
Scalar gaussian_u_shift(const Potential& pot, GaussianModel& model);

// First-order change of the omega_{0,1} moments from the variational formula:
// W_{0,2} paired with T_bullet_{0,1}; entries l = 0..lmax.
std::vector<Scalar> omega01_moment_variation(const Potential& pot, GaussianModel& model, int lmax);

// Exhaustive Wick pairing with formal N. Each block is a set of traces tr M^l
// with a weight and an N power; the result is the expectation over pairings
// that connect all blocks, as exponent of N -> coefficient. Propagator u/N.
struct WickBlock {
  std::vector<int> traces;
  Scalar weight{1};
  int n_power = 0;
};
std::map<int, Scalar> wick_connected(const std::vector<WickBlock>& blocks, const Scalar& u = Scalar(1),
                                     int max_half_edges = 14);

// Number of genus-g gluings of a 2k-gon, by Wick pairing.
Rational wick_polygon_gluings(int g, int k);

}  // namespace btr::mm

#endif
