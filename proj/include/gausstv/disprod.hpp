#pragma once

#include <cstddef>
#include <vector>

#include "gausstv/discrete_pair.hpp"
#include "gausstv/numeric.hpp"

namespace gausstv {

/// ½·Σ|p − q|.
double coordinate_tv(const DiscreteDistributionPair& pair);

struct DisProdOptions {
  // Discretize each product on the fly instead of materializing it first.
  // Both paths produce the same ratio up to summation order.
  bool fused_products = true;
  Deadline deadline;
};

struct DisProdReport {
  double estimate = 0.0;
  double delta = 0.0;        // max coordinate TV
  double gamma = 0.0;        // εΔ/(2n)
  double small_delta = 0.0;  // ε/(2n)
  int m = 0;
  std::size_t max_product_atoms = 0;      // largest |Ỹᵢ|·|Rᵢ₊₁|
  std::size_t max_discretized_atoms = 0;  // largest |Ỹᵢ|
  std::size_t renormalizations = 0;
};

/// Relative-error approximation of d_TV(⊗Pᵢ, ⊗Qᵢ): iterated product and
/// (γ,δ)-discretization of the coordinate ratios.
double disprod_tv_det(const std::vector<DiscreteDistributionPair>& pairs, double eps,
                      const DisProdOptions& options = {});
DisProdReport disprod_tv_det_report(const std::vector<DiscreteDistributionPair>& pairs,
                                    double eps, const DisProdOptions& options = {});

/// Exact product TV by enumerating every outcome tuple. Throws
/// InstanceTooLarge when the number of tuples exceeds 10⁷.
double exact_product_tv(const std::vector<DiscreteDistributionPair>& pairs);

}  // namespace gausstv
