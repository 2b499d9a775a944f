#ifndef BTR_ENGINE_HPP
#define BTR_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "btr/curve.hpp"
#include "btr/graphs.hpp"
#include "btr/local_form.hpp"
#include "btr/residue.hpp"

namespace btr {

using FamilyFn = std::function<const LocalForm&(int, int)>;

struct LoopEquationResult {
  int g = 0, n = 0;
  bool linear_ok = true;
  bool quadratic_ok = true;
  std::string detail;
};

// Correlator caches for one validated curve spec. Not thread-safe.
class Engine {
 public:
  explicit Engine(CurveSpec spec);

  const CurveSpec& spec() const { return spec_; }
  int num_branches() const { return spec_.num_branches(); }
  const KernelData& kernel(int i) const { return *kernels_[i]; }

  // omega_{0,1} as an arity-1 form (all branches).
  const LocalForm& omega01_form() const { return omega01_; }

  // Normalized correlators (Eynard-Orantin recursion with the full B).
  const LocalForm& omega0(int g, int n);
  // One application of the P_1 recursion over a family of lower correlators.
  LocalForm recursion_step(int g, int n, const FamilyFn& lower);
  // Expansion of the quadratic-loop-equation integrand on branch i in the
  // first variable up to zeta^emax. With include01 the omega_{0,1} factors
  // are included (Q_{g,n}); otherwise the recursion integrand is built.
  LocalForm quadratic_integrand(int g, int n, int i, const FamilyFn& family, bool include01, int emax);

  // Blobs. Standard blobs are the reduced graph sums with every leaf on a
  // stable Phi vertex; KdV blobs invert that relation.
  const LocalForm& standard_blob(int g, int n);
  const LocalForm& kdv_blob(int g, int n);
  // (h,k) with a nonzero standard blob and 2h-2+k <= chi_max.
  std::vector<GN> standard_blob_types(int chi_max);
  std::vector<GN> kdv_blob_types(int chi_max);

  // Full correlators through the Bip^0 graph sum over all H/P leaf splits.
  const LocalForm& omega(int g, int n);
  // P_1 recursion over full lower correlators plus the graphs with leaf 1 of H type.
  LocalForm omega_recursive(int g, int n);
  // H_A P_B omega_{g,n} as a Bip^0(A,B) graph sum. A lists the H-type leaves (0-based).
  LocalForm H_A_P_B(int g, int n, const std::vector<int>& A);
  const LocalForm& omega_P(int g, int n);
  // The Bip^0(A,B) graphs themselves, canonically sorted.
  std::vector<BipGraph> bip0_graph_list(int g, int n, const std::vector<int>& A);
  // Bip^P(A,B) sum with omega^P and blob vertices.
  LocalForm bipP_sum(int g, int n, const std::vector<int>& A);

  // Renormalized KdV vertex summed over branches.
  const LocalForm& kdv_vertex(int h, int d);

  FamilyFn full_family();
  FamilyFn normalized_family();

  std::vector<LoopEquationResult> check_loop_equations(int chi_max, const FamilyFn& family);

 private:
  std::vector<BipGraph> bip0_list(int g, int n, const std::vector<std::uint8_t>& leaf_kinds, bool skip_single_blob);
  LocalForm bip0_sum(int g, int n, unsigned a_mask, bool skip_single_blob);
  // Per leaf: bit 0 allows an omega^0 vertex, bit 1 a blob vertex.
  LocalForm bip0_graphs(int g, int n, const std::vector<std::uint8_t>& leaf_kinds, bool skip_single_blob);
  // Reduced graphs with every leaf on a stable Phi vertex, Phi vertices of
  // Euler characteristic at most blob_chi_max.
  LocalForm kdv_leaf_graphs(int g, int n, int blob_chi_max);

  CurveSpec spec_;
  std::vector<std::unique_ptr<KernelData>> kernels_;
  LocalForm omega01_;
  std::map<GN, LocalForm> omega0_, omega_, std_blob_, kdv_blob_, omegaP_, kdv_vertex_;
};

// Sigma-symmetrized (Delta = f - sigma^* f) and S = f + sigma^* f parts in a variable.
std::pair<LocalForm, LocalForm> sigma_parts(const LocalForm& f, int v);

}  // namespace btr

#endif
