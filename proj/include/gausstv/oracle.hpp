#pragma once

#include <cstdint>
#include <string>

#include "gausstv/disprod.hpp"
#include "gausstv/gaussian_discretizer.hpp"
#include "gausstv/gaussian_model.hpp"

// Reference computations for tests and the `oracle` subcommand. None of
// them reuse the solver's erf kernel or discretization code.
namespace gausstv::oracle {

/// ½∫|f₁ − f₂| for f_i = N(mu_i, var_i) by adaptive Gauss–Kronrod (7/15)
/// over [min μ − 12σ_max, max μ + 12σ_max], split at the density crossings.
/// Requires tol ≥ 1e-12.
double quadrature_tv_1d(double mu1, double var1, double mu2, double var2,
                        double tol = 1e-10);

/// N(mu, sigma2) against N(0, 1).
double quadrature_tv_1d(const CoordinateParams& coord, double tol = 1e-10);

struct GridTvResult {
  double value = 0.0;           // midpoint rule with cells_per_axis cells
  double coarse = 0.0;          // same box, half the cells per axis
  double extrapolated = 0.0;    // (4·value − coarse)/3
  double error_estimate = 0.0;  // |value − coarse|/3
};

/// Midpoint rule for ½∫|f₁ − f₂| over a box centred between the means and
/// reaching extent_sigmas standard deviations past either mean on every
/// axis. Dimension at most 3 (DimensionTooLarge); cells_per_axis even.
GridTvResult grid_tv_nd(const GaussianParams& p1, const GaussianParams& p2,
                        int cells_per_axis, double extent_sigmas = 8.0);

/// erf(x) for |x| ≤ 30 from the Maclaurin series in MPFR arithmetic,
/// accurate to far more than double precision, rounded to double.
double erf_reference(double x);

/// Same value printed with `digits` significant digits.
std::string erf_reference_digits(double x, int digits = 40);

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// E_{X∼p2}[(1 − f₁(X)/f₂(X))₊] from `samples` draws of a seeded
/// mt19937_64. Additive error only.
McEstimate mc_tv_baseline(const GaussianParams& p1, const GaussianParams& p2,
                          std::int64_t samples, std::uint64_t seed);

using gausstv::exact_product_tv;

}  // namespace gausstv::oracle
