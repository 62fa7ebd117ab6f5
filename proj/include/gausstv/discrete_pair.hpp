#pragma once

#include <vector>

namespace gausstv {

/// Two probability vectors over the same finite alphabet.
struct DiscreteDistributionPair {
  std::vector<double> p;
  std::vector<double> q;
};

/// Throws NotADistribution unless p and q are distributions of equal length.
void require_valid(const DiscreteDistributionPair& pair);

}  // namespace gausstv
