#ifndef BTR_PSI_HPP
#define BTR_PSI_HPP

#include <vector>

#include "btr/scalar.hpp"

namespace btr {

// <tau_{d_1} ... tau_{d_n}>_g over the moduli space of stable curves, by the
// DVV recursion with string-equation reduction. Zero off dimension.
Rational psi_intersection(int g, std::vector<int> degrees);

// Intersection of psi monomials with Mumford classes kappa_{c_1}...kappa_{c_r},
// reduced to psi numbers through the forgetful pushforward.
Rational kappa_psi_intersection(int g, const std::vector<int>& degrees, const std::vector<int>& kappas);

}  // namespace btr

#endif
