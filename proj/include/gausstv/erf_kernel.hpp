#pragma once

namespace gausstv {

/// Smallest additive error budget the double-precision kernel accepts.
inline constexpr double kErfBudgetFloor = 1e-30;

/// 2/√π, stored to 40 significant digits and rounded to double.
double inv_pi_scaled_constant();

/// erf(x) for x ≥ 0 with |result − erf(x)| ≤ eps, clamped to [0, 1].
/// Budgets above 1e-4 are tightened to 1e-4. Throws OutOfRange for x < 0,
/// NaN or eps ≤ 0, BudgetTooTight for eps < kErfBudgetFloor.
double erf_approx(double x, double eps);

/// ∫_a^b of the N(mu, sigma2) density within additive error eps; a and b
/// may be ±∞. Throws InvalidInterval if a > b, NonpositiveVariance if
/// sigma2 ≤ 0, BudgetTooTight for eps below twice the kernel floor.
double gaussian_interval_mass(double mu, double sigma2, double a, double b,
                              double eps);

}  // namespace gausstv
