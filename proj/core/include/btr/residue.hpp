#ifndef BTR_RESIDUE_HPP
#define BTR_RESIDUE_HPP

#include <vector>

#include "btr/curve.hpp"
#include "btr/local_form.hpp"

namespace btr {

// Polar projection in variable k against G_i = int B, with B = B_std + phi02
// (full) or B_std only (standard). The residue coefficient is dropped.
LocalForm project_P(const CurveSpec& spec, const LocalForm& f, int k);
LocalForm project_H(const CurveSpec& spec, const LocalForm& f, int k);
LocalForm project_P_std(const LocalForm& f, int k);
LocalForm project_H_std(const LocalForm& f, int k);
// Holomorphic part in all variables with respect to B_std.
LocalForm holomorphic_part_std(const LocalForm& f);

struct PairSpec {
  int a_var;
  int b_var;
  bool a_is_polar;  // otherwise b carries the polar side
};

// Integrates out each listed pair with sum_i Res omega(z) int_{p_i}^z phi.
// Result variables: unpaired variables of a (in order), then of b.
LocalForm contract(const LocalForm& a, const LocalForm& b, const std::vector<PairSpec>& pairs);
LocalForm pair_edge(const LocalForm& omega_side, const LocalForm& phi_side, int omega_var, int phi_var);

// Recursion kernel data for one branch: 1 / (2 sum_{d even} c_d zeta^d).
class KernelData {
 public:
  KernelData(const CurveSpec& spec, int branch);
  // Coefficients of 1/(2 D) from zeta^{-2} up to zeta^{top}.
  const Series1& inverse(int top) const;

 private:
  Series1 denom_;
  mutable Series1 inv_;
  mutable int top_ = -3;
};

// integrand: variable 0 is zeta on `branch` (quadratic differential weight),
// other variables are spectators. Returns sum_i-independent result with
// variable 0 replaced by z_1 on every branch.
LocalForm kernel_apply(const CurveSpec& spec, const KernelData& kd, int branch, const LocalForm& integrand);

}  // namespace btr

#endif
