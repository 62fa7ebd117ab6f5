#pragma once

#include <cstddef>
#include <vector>

#include "gausstv/discrete_pair.hpp"
#include "gausstv/numeric.hpp"
#include "gausstv/ratio.hpp"
#include "gausstv/reduction.hpp"

namespace gausstv {

/// One whitened coordinate: N(mu, sigma2) against N(0, 1).
struct CoordinateParams {
  double mu = 0.0;
  double sigma2 = 1.0;
};

/// p and q indexed by the canonical interval index in [0, 2m].
using DiscretePair = DiscreteDistributionPair;

/// Open interval with extended-real endpoints (lo may be −∞, hi +∞).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// At most two disjoint, nonempty, sorted intervals.
struct LevelSet {
  std::vector<Interval> intervals;
};

/// max_i (1/200)·min{1, max{|σᵢ² − 1|, 40|μᵢ|}}.
double delta_bound(const std::vector<CoordinateParams>& coords);
double delta_bound(const ProductGaussianPair& pair);

/// {z : lo < f(z)/g(z) ≤ hi} for f = N(mu, sigma2), g = N(0, 1), with
/// 0 ≤ lo ≤ hi ≤ +∞.
LevelSet solve_level_set(const CoordinateParams& coord, double lo, double hi);

struct CoordinateReport {
  double raw_p_sum = 0.0;  // before renormalization
  double raw_q_sum = 0.0;
  // Largest estimated endpoint error times the density bound
  // √(2/(π·min(1, σ²))), and how many endpoints exceeded ζ/10.
  double max_endpoint_mass_error = 0.0;
  std::size_t endpoint_violations = 0;
};

/// Per-interval masses of f and g over the level sets D(J), each
/// sub-interval integrated within ζ/2, then renormalized so both vectors
/// sum to exactly one (deficit into I(0), surplus removed proportionally).
DiscretePair discretize_coordinate(const CoordinateParams& coord,
                                   const PartitionSpec& spec, double zeta,
                                   CoordinateReport* report = nullptr,
                                   const Deadline& deadline = {});

struct BuildReport {
  double delta = 0.0;        // Δ
  double gamma = 0.0;        // εΔ/(50n)
  double small_delta = 0.0;  // ε/(50n)
  int m = 0;
  int alphabet_size = 0;  // M = 2m + 1
  double zeta = 0.0;      // εΔ/(500·M·n)
  double max_endpoint_mass_error = 0.0;
  std::size_t endpoint_violations = 0;
  double max_raw_mass_defect = 0.0;  // max |Σ raw − 1| over coordinates
};

struct BuildResult {
  std::vector<DiscretePair> pairs;
  BuildReport report;
};

/// Discretizes every coordinate over one common partition. Throws ZeroDelta
/// when Δ = 0 and BudgetTooTight when ζ falls below the erf kernel floor.
BuildResult build_discrete_products(const ProductGaussianPair& pair, double eps,
                                    const Deadline& deadline = {});

}  // namespace gausstv
