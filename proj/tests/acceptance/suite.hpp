#ifndef BTR_ACCEPTANCE_SUITE_HPP
#define BTR_ACCEPTANCE_SUITE_HPP

#include <string>
#include <vector>

#include "btr/curve.hpp"

namespace btr::acceptance {

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Options {
  BernoulliConvention bernoulli = BernoulliConvention::Standard;
  // Criterion whose oracle is deliberately corrupted; 0 for none.
  int inject_fault = 0;
  // Criteria to run; empty runs 1..9.
  std::vector<int> only;
};

std::vector<Result> run(const Options& opts);

std::string to_json(const std::vector<Result>& results);

}  // namespace btr::acceptance

#endif
