#include "gausstv/oracle.hpp"

#include <mpfr.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <vector>

#include "gausstv/error.hpp"

namespace gausstv::oracle {

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment kronrod(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWgk[7];
  double g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double s = f(c - h * kXgk[j]) + f(c + h * kXgk[j]);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  return Segment{a, b, k * h, std::abs((k - g) * h)};
}

template <typename F>
double adaptive(const F& f, const std::vector<double>& breaks, double tol) {
  std::priority_queue<Segment> queue;
  double value = 0.0, error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1])) continue;
    const Segment s = kronrod(f, breaks[i], breaks[i + 1]);
    value += s.value;
    error += s.error;
    queue.push(s);
  }
  for (int iter = 0; iter < 100000 && error > tol && !queue.empty(); ++iter) {
    const Segment s = queue.top();
    queue.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (!(s.a < mid && mid < s.b)) continue;
    const Segment l = kronrod(f, s.a, mid), r = kronrod(f, mid, s.b);
    value += l.value + r.value - s.value;
    error += l.error + r.error - s.error;
    queue.push(l);
    queue.push(r);
  }
  return value;
}

double normal_density(double x, double mu, double var) {
  const double d = x - mu;
  return std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

struct LogDensity {
  Eigen::VectorXd mean;
  Eigen::MatrixXd precision;
  double log_norm = 0.0;

  explicit LogDensity(const GaussianParams& g) : mean(g.mean) {
    Eigen::LLT<Eigen::MatrixXd> llt(g.covariance);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorKind::SingularCovariance, "covariance is not positive definite");
    }
    const auto n = g.covariance.rows();
    precision = llt.solve(Eigen::MatrixXd::Identity(n, n));
    const Eigen::MatrixXd l = llt.matrixL();
    log_norm = -0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
    for (Eigen::Index i = 0; i < n; ++i) log_norm -= std::log(l(i, i));
  }

  double operator()(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd d = x - mean;
    return log_norm - 0.5 * d.dot(precision * d);
  }
};

// Midpoint rule on |f1 - f2|. Cells the crossing surface {f1 = f2} may pass
// through are split in half along every axis, up to `depth` times, since the
// kink there spoils the h² error expansion Richardson relies on.
template <int N>
struct GridIntegrand {
  using Vec = Eigen::Matrix<double, N, 1>;
  using Mat = Eigen::Matrix<double, N, N>;

  Vec m1, m2;
  Mat p1, p2;
  double c1, c2;
  double hessian_norm;  // ‖P₂ − P₁‖_F bounds the log-ratio curvature
  int depth;

  GridIntegrand(const LogDensity& a, const LogDensity& b, int refine_depth)
      : m1(a.mean), m2(b.mean), p1(a.precision), p2(b.precision), c1(a.log_norm),
        c2(b.log_norm), hessian_norm((p2 - p1).norm()), depth(refine_depth) {}

  double cell(const Vec& c, const Vec& r, int level) const {
    const Vec d1 = c - m1, d2 = c - m2;
    const Vec g1 = p1 * d1, g2 = p2 * d2;
    const double l1 = c1 - 0.5 * d1.dot(g1), l2 = c2 - 0.5 * d2.dot(g2);
    const double vol = (2.0 * r).prod();
    if (level == 0 || std::max(l1, l2) < -60.0) return std::abs(std::exp(l1) - std::exp(l2)) * vol;
    // Log-ratio is quadratic, so this bounds its variation over the cell.
    const double spread = (g2 - g1).cwiseAbs().dot(r) + 0.5 * hessian_norm * r.squaredNorm();
    if (std::abs(l1 - l2) > spread) return std::abs(std::exp(l1) - std::exp(l2)) * vol;
    const Vec half = 0.5 * r;
    double total = 0.0;
    for (int mask = 0; mask < (1 << N); ++mask) {
      Vec child = c;
      for (int k = 0; k < N; ++k) child(k) += (mask >> k & 1) ? half(k) : -half(k);
      total += cell(child, half, level - 1);
    }
    return total;
  }

  double sum(const Eigen::VectorXd& lo, const Eigen::VectorXd& width, int cells) const {
    const Vec h = width / cells;
    const Vec r = 0.5 * h;
    std::array<int, N> idx{};
    Vec x;
    double total = 0.0;
    while (true) {
      for (int k = 0; k < N; ++k) x(k) = lo(k) + (idx[k] + 0.5) * h(k);
      total += cell(x, r, depth);
      int k = 0;
      for (; k < N; ++k) {
        if (++idx[k] < cells) break;
        idx[k] = 0;
      }
      if (k == N) break;
    }
    return 0.5 * total;
  }
};

template <int N>
void grid_pass(const LogDensity& f1, const LogDensity& f2, const Eigen::VectorXd& lo,
               const Eigen::VectorXd& width, int cells, GridTvResult& out) {
  // Refinement cost grows like 2^{(N-1)·depth} per boundary cell.
  const GridIntegrand<N> g(f1, f2, N == 3 ? 2 : 4);
  out.value = g.sum(lo, width, cells);
  out.coarse = g.sum(lo, width, cells / 2);
}

}  // namespace

double quadrature_tv_1d(double mu1, double var1, double mu2, double var2, double tol) {
  if (!(var1 > 0.0) || !(var2 > 0.0) || !std::isfinite(var1) || !std::isfinite(var2) ||
      !std::isfinite(mu1) || !std::isfinite(mu2)) {
    throw Error(ErrorKind::InvalidInput, "need finite means and positive variances");
  }
  if (!(tol >= 1e-12)) throw Error(ErrorKind::OutOfRange, "tolerance below 1e-12");
  if (mu1 == mu2 && var1 == var2) return 0.0;

  const double s = std::sqrt(std::max(var1, var2));
  const double lo = std::min(mu1, mu2) - 12.0 * s;
  const double hi = std::max(mu1, mu2) + 12.0 * s;
  std::vector<double> breaks = {lo, hi};
  auto add_break = [&](double x) {
    if (x > lo && x < hi) breaks.push_back(x);
  };
  // Crossings of the two densities: a x² + b x + c = 0.
  const double a = 0.5 / var2 - 0.5 / var1;
  const double b = mu1 / var1 - mu2 / var2;
  const double c = 0.5 * mu2 * mu2 / var2 - 0.5 * mu1 * mu1 / var1 + 0.5 * std::log(var2 / var1);
  if (a == 0.0) {
    if (b != 0.0) add_break(-c / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double r = std::sqrt(disc);
      add_break((-b - r) / (2.0 * a));
      add_break((-b + r) / (2.0 * a));
    }
  }
  std::sort(breaks.begin(), breaks.end());
  const auto f = [&](double x) {
    return 0.5 * std::abs(normal_density(x, mu1, var1) - normal_density(x, mu2, var2));
  };
  return std::clamp(adaptive(f, breaks, tol / 4.0), 0.0, 1.0);
}

double quadrature_tv_1d(const CoordinateParams& coord, double tol) {
  return quadrature_tv_1d(coord.mu, coord.sigma2, 0.0, 1.0, tol);
}

GridTvResult grid_tv_nd(const GaussianParams& p1, const GaussianParams& p2,
                        int cells_per_axis, double extent_sigmas) {
  const auto n = p1.dimension();
  if (n != p2.dimension() || p1.covariance.rows() != n || p2.covariance.rows() != n ||
      p1.covariance.cols() != n || p2.covariance.cols() != n || n == 0) {
    throw Error(ErrorKind::InvalidInput, "shape mismatch");
  }
  if (n > 3) throw Error(ErrorKind::DimensionTooLarge, "grid oracle supports n <= 3");
  if (cells_per_axis < 2 || cells_per_axis % 2 != 0) {
    throw Error(ErrorKind::InvalidInput, "cells_per_axis must be even and >= 2");
  }
  if (!(extent_sigmas > 0.0)) throw Error(ErrorKind::InvalidInput, "extent must be positive");

  const LogDensity f1(p1), f2(p2);
  const Eigen::VectorXd center = 0.5 * (p1.mean + p2.mean);
  Eigen::VectorXd half(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    half(i) = std::max(std::abs(p1.mean(i) - center(i)) +
                           extent_sigmas * std::sqrt(p1.covariance(i, i)),
                       std::abs(p2.mean(i) - center(i)) +
                           extent_sigmas * std::sqrt(p2.covariance(i, i)));
  }
  const Eigen::VectorXd lo = center - half;
  const Eigen::VectorXd width = 2.0 * half;

  GridTvResult r;
  switch (n) {
    case 1: grid_pass<1>(f1, f2, lo, width, cells_per_axis, r); break;
    case 2: grid_pass<2>(f1, f2, lo, width, cells_per_axis, r); break;
    default: grid_pass<3>(f1, f2, lo, width, cells_per_axis, r); break;
  }
  r.extrapolated = (4.0 * r.value - r.coarse) / 3.0;
  r.error_estimate = std::abs(r.value - r.coarse) / 3.0;
  return r;
}

namespace {

// erf(|x|) as a high-precision MPFR value; out must be initialised.
void erf_series(mpfr_t out, double x) {
  const double ax = std::abs(x);
  if (!(ax <= 30.0)) throw Error(ErrorKind::OutOfRange, "erf_reference needs |x| <= 30");
  // Target additive error ε = 1e-40; the tail rule cuts in past ln(1/ε).
  const double target = 1e-40;
  const double log_inv = std::log(1.0 / target);
  if (ax > log_inv) {
    mpfr_set_ui(out, 1, MPFR_RNDN);
    return;
  }
  const long terms = 10L * static_cast<long>(std::ceil(log_inv)) *
                     static_cast<long>(std::ceil(log_inv));
  // Partial sums peak near e^{x²}; carry that many extra bits.
  const auto prec = static_cast<mpfr_prec_t>(ax * ax * std::numbers::log2e + 200.0);

  mpfr_t x2, power, term, sum, bound;
  mpfr_inits2(prec, x2, power, term, sum, bound, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(power, ax, MPFR_RNDN);  // x^{2k+1}/k! with sign
  mpfr_sqr(x2, power, MPFR_RNDN);
  mpfr_neg(x2, x2, MPFR_RNDN);
  mpfr_set(sum, power, MPFR_RNDN);
  mpfr_set_d(bound, target / 4.0, MPFR_RNDN);
  for (long k = 1; k < terms; ++k) {
    mpfr_mul(power, power, x2, MPFR_RNDN);
    mpfr_div_si(power, power, k, MPFR_RNDN);
    mpfr_div_si(term, power, 2 * k + 1, MPFR_RNDN);
    mpfr_add(sum, sum, term, MPFR_RNDN);
    // Past k ≥ x² the terms alternate and shrink, so the remainder is
    // bounded by the last term.
    if (static_cast<double>(k) >= ax * ax && mpfr_cmpabs(term, bound) < 0) break;
  }
  mpfr_const_pi(term, MPFR_RNDN);
  mpfr_sqrt(term, term, MPFR_RNDN);
  mpfr_div(sum, sum, term, MPFR_RNDN);
  mpfr_mul_ui(sum, sum, 2, MPFR_RNDN);
  mpfr_set(out, sum, MPFR_RNDN);
  mpfr_clears(x2, power, term, sum, bound, static_cast<mpfr_ptr>(nullptr));
}

}  // namespace

double erf_reference(double x) {
  if (x == 0.0) return 0.0;
  mpfr_t v;
  mpfr_init2(v, 256);
  erf_series(v, x);
  const double out = mpfr_get_d(v, MPFR_RNDN);
  mpfr_clear(v);
  return x < 0.0 ? -out : out;
}

std::string erf_reference_digits(double x, int digits) {
  if (digits < 1 || digits > 60) throw Error(ErrorKind::OutOfRange, "digits must be in [1, 60]");
  mpfr_t v;
  mpfr_init2(v, 256);
  if (x == 0.0) {
    mpfr_set_zero(v, 1);
  } else {
    erf_series(v, x);
    if (x < 0.0) mpfr_neg(v, v, MPFR_RNDN);
  }
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v);
  mpfr_clear(v);
  return std::string(buf.data());
}

McEstimate mc_tv_baseline(const GaussianParams& p1, const GaussianParams& p2,
                          std::int64_t samples, std::uint64_t seed) {
  if (samples < 2) throw Error(ErrorKind::InvalidInput, "need at least two samples");
  if (p1.dimension() != p2.dimension() || p1.dimension() == 0) {
    throw Error(ErrorKind::InvalidInput, "shape mismatch");
  }
  const LogDensity f1(p1), f2(p2);
  Eigen::LLT<Eigen::MatrixXd> llt(p2.covariance);
  const Eigen::MatrixXd l2 = llt.matrixL();
  const auto n = p1.dimension();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(n);
  double mean = 0.0, m2 = 0.0;  // Welford
  for (std::int64_t s = 1; s <= samples; ++s) {
    for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(rng);
    const Eigen::VectorXd x = p2.mean + l2 * z;
    const double v = std::max(0.0, 1.0 - std::exp(f1(x) - f2(x)));
    const double d = v - mean;
    mean += d / static_cast<double>(s);
    m2 += d * (v - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  return McEstimate{mean, std::sqrt(var / static_cast<double>(samples))};
}

}  // namespace gausstv::oracle
