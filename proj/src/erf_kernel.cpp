#include "gausstv/erf_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gausstv/error.hpp"

namespace gausstv {

namespace {

constexpr double kTwoOverSqrtPi = 1.128379167095512573896158903121545171688;
constexpr double kInvSqrtPi = 0.5641895835477562869480794515607725858441;
constexpr double kBudgetCap = 1e-4;
// Below this the Maclaurin terms stay under ~2.5 in magnitude, so the
// alternating sum loses at most a few ulps to cancellation.
constexpr double kSeriesLimit = 2.0;

struct ErfPair {
  double erf;
  double erfc;
};

void check_budget(double eps) {
  if (!(eps > 0.0)) {
    throw Error(ErrorKind::OutOfRange, "error budget must be positive");
  }
  if (eps < kErfBudgetFloor) {
    throw Error(ErrorKind::BudgetTooTight,
                "error budget below the 1e-30 floor of the erf kernel");
  }
}

double series_terms_cap(double eps) {
  const double l = std::ceil(std::log(1.0 / eps));
  return 10.0 * l * l;
}

// Maclaurin series with term recurrence
//   t_{k+1} = t_k · (−x²)(2k+1) / ((k+1)(2k+3)).
// Once k ≥ x² the terms decrease in magnitude and alternate, so the
// remainder is bounded by the first omitted term.
double erf_series(double x, double eps) {
  const double x2 = x * x;
  const double target = eps / (4.0 * kTwoOverSqrtPi);
  const double cap = series_terms_cap(eps);
  double term = x;
  double sum = x;
  for (double k = 0.0; k < cap; k += 1.0) {
    term *= -x2 * (2.0 * k + 1.0) / ((k + 1.0) * (2.0 * k + 3.0));
    sum += term;
    if (k + 1.0 >= x2 && std::abs(term) <= target) break;
  }
  return kTwoOverSqrtPi * sum;
}

// erfc(x) = e^{−x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …)))),
// evaluated by modified Lentz. The partial numerators are positive, so
// consecutive convergents bracket the limit and |f_n − f_{n−1}| bounds the
// truncation error.
double erfc_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = f;
  double d = 0.0;
  for (int n = 1; n < 5000; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    d = 1.0 / d;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) <= 2.0 * std::numeric_limits<double>::epsilon()) {
      break;
    }
  }
  return std::exp(-x * x) * kInvSqrtPi / f;
}

// erf and erfc of x ≥ 0 (x may be +∞); erf carries additive error ≤ eps,
// erfc is additionally accurate to a few ulps relative for x > 2.
ErfPair erf_pair(double x, double eps) {
  eps = std::min(eps, kBudgetCap);
  if (x > std::log(1.0 / eps)) return {1.0, 0.0};
  if (x <= kSeriesLimit) {
    const double e = std::clamp(erf_series(x, eps), 0.0, 1.0);
    return {e, 1.0 - e};
  }
  const double c = erfc_continued_fraction(x);
  return {std::clamp(1.0 - c, 0.0, 1.0), c};
}

}  // namespace

double inv_pi_scaled_constant() { return kTwoOverSqrtPi; }

double erf_approx(double x, double eps) {
  if (!(x >= 0.0)) {
    throw Error(ErrorKind::OutOfRange, "erf_approx expects x >= 0");
  }
  check_budget(eps);
  return erf_pair(x, eps).erf;
}

double gaussian_interval_mass(double mu, double sigma2, double a, double b,
                              double eps) {
  if (std::isnan(a) || std::isnan(b) || a > b) {
    throw Error(ErrorKind::InvalidInterval,
                "interval [" + std::to_string(a) + ", " + std::to_string(b) +
                    "] is empty or undefined");
  }
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw Error(ErrorKind::NonpositiveVariance,
                "variance must be positive and finite");
  }
  check_budget(eps);
  const double half_eps = 0.5 * eps;
  check_budget(half_eps);

  const double scale = std::sqrt(2.0 * sigma2);
  const double lo = (a - mu) / scale;
  const double hi = (b - mu) / scale;
  if (lo == hi) return 0.0;

  double mass;
  if (lo <= 0.0 && hi >= 0.0) {
    mass = 0.5 * (erf_pair(-lo, half_eps).erf + erf_pair(hi, half_eps).erf);
  } else if (lo > 0.0) {
    mass = 0.5 * (erf_pair(lo, half_eps).erfc - erf_pair(hi, half_eps).erfc);
  } else {
    mass = 0.5 * (erf_pair(-hi, half_eps).erfc - erf_pair(-lo, half_eps).erfc);
  }
  return std::max(0.0, mass);
}

}  // namespace gausstv
