#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "gausstv/gaussian_model.hpp"
#include "gausstv/numeric.hpp"
#include "gausstv/reduction.hpp"

namespace gausstv {

struct PipelineOptions {
  double diag_residual = kDefaultDiagResidual;
  Deadline deadline;

  /// Defaults, with diag_residual taken from GAUSSTV_DIAG_RESIDUAL when set.
  /// A malformed value throws InvalidInput.
  static PipelineOptions from_environment();
};

struct Diagnostics {
  std::string rank_case;
  Eigen::Index dimension = 0;  // effective dimension after projection
  double delta = 0.0;
  double gamma = 0.0;
  double small_delta = 0.0;
  int m = 0;
  int alphabet_size = 0;
  double zeta = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  std::pair<double, double> diag_residuals{0.0, 0.0};  // Σ₂, AΣ₁Aᵀ
  std::pair<double, double> budget_split{0.0, 0.0};    // reduction, product TV
  // Second-stage partition and work counters.
  double disprod_delta = 0.0;
  int disprod_m = 0;
  std::size_t max_product_atoms = 0;
  std::size_t max_discretized_atoms = 0;
  std::size_t renormalizations = 0;
  double max_endpoint_mass_error = 0.0;
  std::size_t endpoint_violations = 0;
};

struct TvResult {
  double estimate = 0.0;
  double eps = 0.0;
  Diagnostics diagnostics;
};

/// z with (1−ε)·d_TV ≤ z ≤ (1+ε)·d_TV for d_TV = d_TV(N(μ₁,Σ₁), N(μ₂,Σ₂)).
/// Errors carry the name of the stage that raised them.
TvResult mult_gaussian_tv(const GaussianParams& p1, const GaussianParams& p2,
                          double eps, const PipelineOptions& options = {});

}  // namespace gausstv
