#pragma once

#include <string>
#include <vector>

#include "mixconc/process.hpp"

namespace fixture {

inline mixconc::StochasticMatrix symmetric_kernel(double stay) {
  return mixconc::StochasticMatrix::from_rows({{stay, 1.0 - stay}, {1.0 - stay, stay}});
}

/// Two-state chain, uniform start, stay probability 0.75.
inline mixconc::MarkovSpec f1(std::size_t n = 3) {
  return mixconc::MarkovSpec::homogeneous_chain(mixconc::Alphabet({"a", "b"}), n, {0.5, 0.5},
                                                symmetric_kernel(0.75));
}

/// Symmetric chain with contraction coefficient |2 stay - 1|.
inline mixconc::MarkovSpec two_state(std::size_t n, double stay) {
  return mixconc::MarkovSpec::homogeneous_chain(mixconc::Alphabet({"a", "b"}), n, {0.5, 0.5},
                                                symmetric_kernel(stay));
}

/// F1 observed through a binary symmetric channel with flip probability 0.1.
inline mixconc::HmmSpec f4() {
  mixconc::HmmSpec spec;
  spec.hidden = f1();
  spec.hidden.alphabet = mixconc::Alphabet({"A", "B"});
  spec.observed = mixconc::Alphabet({"a", "b"});
  spec.emissions = {symmetric_kernel(0.9)};
  spec.homogeneous_emissions = true;
  spec.validate();
  return spec;
}

inline mixconc::JointDist product(std::size_t n, std::vector<double> marginal) {
  const mixconc::Alphabet alphabet = mixconc::Alphabet::indexed(marginal.size());
  std::vector<double> mass{1.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> next;
    for (double m : mass) {
      for (double p : marginal) next.push_back(m * p);
    }
    mass = next;
  }
  return mixconc::JointDist(alphabet, n, mass);
}

}  // namespace fixture
