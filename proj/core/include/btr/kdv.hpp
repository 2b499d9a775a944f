#ifndef BTR_KDV_HPP
#define BTR_KDV_HPP

#include <map>
#include <vector>

#include "btr/curve.hpp"
#include "btr/engine.hpp"
#include "btr/graphs.hpp"
#include "btr/local_form.hpp"

namespace btr {

// (-alpha)^e for the alpha of branch i.
Scalar minus_alpha_pow(const CurveSpec& spec, int i, int e);

// KdV vertex: (-alpha_i)^{2-2g-n} sum <prod tau_d>_g prod (2d+1)!! zeta^{-2d-2} d zeta,
// every variable on branch i.
LocalForm omega_kdv(const CurveSpec& spec, int g, int n, int i);

// KdV vertex dressed by the Phi_{0,1} insertions coming from the even tail
// coefficients of omega_{0,1} on branch i (the m-sum over extra psi classes).
LocalForm omega_kdv_box(const CurveSpec& spec, int g, int n, int i);

// Coefficients that_c, c >= 1, of the Mumford-class exponent on branch i:
// sum_c that_c u^c = -log(1 - sum_{b>=2} phi01[2b] (2b-1)!! / (-alpha) u^{b-1}).
std::map<int, Scalar> t_hat_from_phi01(const CurveSpec& spec, int i, int cmax);

// omega_kdv_box through int exp(sum that_c kappa_c) prod psi^d.
LocalForm omega_kdv_box_kappa(const CurveSpec& spec, int g, int n, int i);

// (-alpha_i)^{2-2g} chi_orb(M_g) for g >= 2 in the curve's Bernoulli convention; 0 for g = 0, 1.
Scalar free_energy_kdv(const CurveSpec& spec, int g, int i);
// free_energy_kdv plus the Phi_{0,1} dressing of the (g,0) vertex.
Scalar free_energy_kdv_box(const CurveSpec& spec, int g, int i);

// Reduced graph rules: renormalized KdV vertices are Polar, Phi vertices
// (KdV blobs with 2h-2+k <= blob_chi_max, plus phi_{0,2}) are Holo. A leaf on
// a Phi vertex stands for the bivalent genus-0 KdV vertex joining them.
GraphRules calG_rules(Engine& eng, int g, int n, int blob_chi_max);
// Polar: Engine::kdv_vertex; Holo: phi_{0,2} or Engine::kdv_blob.
VertexFormFn calG_vertex_fn(Engine& eng);

// Reduced graph sums built on an engine's spec and KdV blobs.
class KdvBackend {
 public:
  explicit KdvBackend(Engine& engine) : eng_(engine) {}

  std::vector<BipGraph> calG_box(int g, int n);
  LocalForm omega_via_calG(int g, int n);
  // Sum over the leafless reduced graphs plus the 0-valent vertices.
  Scalar free_energy(int g);

 private:
  Engine& eng_;
};

// Graph sum with full reference correlators as polar vertices and blob
// differences kdv_blob(target) - kdv_blob(ref) as Phi vertices. Both specs
// must share omega_{0,1} and phi_{0,2}.
LocalForm reference_change(Engine& target, Engine& ref, int g, int n);

}  // namespace btr

#endif
