#include <iostream>

#include "acceptance/suite.hpp"

int main(int argc, char** argv) {
  btr::acceptance::Options opts;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--negated-bernoulli") opts.bernoulli = btr::BernoulliConvention::Negated;
    else if (a == "--inject-fault" && i + 1 < argc) opts.inject_fault = std::stoi(argv[++i]);
  }
  bool all = true;
  for (const auto& r : btr::acceptance::run(opts)) {
    std::cout << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  [" << r.detail << "]"
              << std::endl;
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
