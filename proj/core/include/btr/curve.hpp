#ifndef BTR_CURVE_HPP
#define BTR_CURVE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "btr/local_form.hpp"
#include "btr/series.hpp"

namespace btr {

enum class BlobKind { Standard, Kdv };
enum class BernoulliConvention { Standard, Negated };

struct BranchPoint {
  int id = 1;
  Scalar alpha{1};
  Scalar a{0};
};

using GN = std::pair<int, int>;

// Local spectral curve with blobs. Branch indices are 0-based positions in
// `branches`; JSON uses the branch ids.
struct CurveSpec {
  int truncation_order = 10;
  // Known order of every input table; kExact when tables are polynomials.
  int input_order = kExact;
  std::vector<BranchPoint> branches;
  // Per branch: degree -> coefficient of zeta^d d zeta, degrees 1 and >= 3.
  std::vector<std::map<int, Scalar>> omega01_tail;
  LocalForm phi02{2};
  std::map<GN, LocalForm> blobs;
  BlobKind blob_kind = BlobKind::Kdv;
  std::map<int, Scalar> F_constants;
  BernoulliConvention bernoulli = BernoulliConvention::Standard;

  int num_branches() const { return static_cast<int>(branches.size()); }
  const LocalForm* blob(int g, int n) const;
  int branch_index(int id) const;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

ValidationReport validate(const CurveSpec& spec);
// Throws Error(Validation or AlphaZero/NonHolomorphicBlob) on the first error.
void validate_or_throw(const CurveSpec& spec);

CurveSpec parse_curve_spec(const std::string& json_text);
std::string curve_spec_to_json(const CurveSpec& spec);
CurveSpec airy_spec(int truncation_order = 12);

// alpha_i zeta^2 d zeta + tail, known to input_order.
Series1 omega01(const CurveSpec& spec, int i);
// Coefficient of zeta^d d zeta in omega_{0,1} on branch i.
Scalar omega01_coeff(const CurveSpec& spec, int i, int d);

// omega_{0,2} between a variable near p_i and one near p_j. Variable
// `outer` (0 or 1) carries the singular part sum (m+1) z_in^m z_out^{-m-2};
// the inner variable is expanded to degree `inner_order`.
LocalForm omega02_expand(const CurveSpec& spec, int i, int j, int outer, int inner_order);

// JSON for LocalForm: {"arity","entries":[{"branches","degrees","value"}],"floors","orders"}.
std::string local_form_to_json(const LocalForm& f, const CurveSpec* spec = nullptr, int max_order = kExact);
LocalForm local_form_from_json(const std::string& text, const CurveSpec* spec = nullptr);

}  // namespace btr

#endif
