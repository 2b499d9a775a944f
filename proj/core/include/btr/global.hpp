#ifndef BTR_GLOBAL_HPP
#define BTR_GLOBAL_HPP

#include <string>
#include <vector>

#include "btr/engine.hpp"
#include "btr/local_form.hpp"

namespace btr {

// E_{g,n;h,k}(z_1..z_n; w_1..w_k) as an arity n+k form (z's first), including
// the 1/k! that makes its pairing with a symmetric K_{h,k} count each
// configuration once. Blocks omega_{0,2}(z, w) are expanded with w outer and z
// up to degree z_degree_cap; blocks omega_{0,2}(w, w') are dropped, since their
// pairing with a holomorphic primitive vanishes.
LocalForm assemble_E(Engine& eng, int g, int n, int h, int k, int z_degree_cap);

// Largest degree of any variable in a holomorphic form.
int max_degree_all(const LocalForm& f);

// delta[kappa_{h,k}] omega_{g,n} = sum Res E_{g,n;h,k} K_{h,k}. For n = 0 the
// result is an arity-0 form holding the variation of F_g.
LocalForm variation(Engine& eng, int h, int k, const LocalForm& kappa, int g, int n);
Scalar variation_F(Engine& eng, int h, int k, const LocalForm& kappa, int g);

// d/d alpha_i omega_{g,n} = Res_{z -> p_i} zeta^3/3 omega_{g,n+1}(z, .).
LocalForm alpha_flow(Engine& eng, int i, int g, int n);

// F_g from the residue formula with all (h,k) blob types; g >= 2.
Scalar free_energy_popore(Engine& eng, int g);

struct DilatonCheck {
  int g = 0, n = 0;
  bool ok = true;
  std::string detail;
};
// (2-2g-n) omega_box_{g,n} = sum_i Res (int phi_{0,1}) omega_box_{g,n+1} on every branch.
DilatonCheck dilaton_lemma_check(const CurveSpec& spec, int g, int n);

}  // namespace btr

#endif
