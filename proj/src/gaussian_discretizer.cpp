#include "gausstv/gaussian_discretizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gausstv/erf_kernel.hpp"
#include "gausstv/error.hpp"

namespace gausstv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kUnit = std::numeric_limits<double>::epsilon();

void require_coordinate(const CoordinateParams& c) {
  if (!std::isfinite(c.mu) || !std::isfinite(c.sigma2) || !(c.sigma2 > 0.0)) {
    throw Error(ErrorKind::InvalidInput,
                "coordinate needs finite mu and finite positive sigma2");
  }
}

// ln(f/g)(z) = h(z) − ½ ln σ² with h(z) = Az² + Bz + C.
struct Quadratic {
  double a, b, c, half_log_sigma2;

  explicit Quadratic(const CoordinateParams& k)
      : a((k.sigma2 - 1.0) / (2.0 * k.sigma2)),
        b(k.mu / k.sigma2),
        c(-k.mu * k.mu / (2.0 * k.sigma2)),
        half_log_sigma2(0.5 * std::log(k.sigma2)) {}
};

struct Root {
  double z;
  double error;  // estimated absolute error of z
};

class SuperLevel {
 public:
  SuperLevel(const Quadratic& h, std::vector<Root>* roots) : h_(h), roots_(roots) {}

  // {z : ln(f/g)(z) > log_bound}, log_bound ∈ [−∞, +∞].
  std::vector<Interval> solve(double log_bound) const {
    if (log_bound == -kInf) return {Interval{-kInf, kInf}};
    if (log_bound == kInf) return {};
    const double ell = log_bound + h_.half_log_sigma2;
    const double c = h_.c - ell;
    const double scale = std::abs(h_.c) + std::abs(ell);
    if (h_.a == 0.0) {
      if (h_.b == 0.0) {
        return c > 0.0 ? std::vector<Interval>{Interval{-kInf, kInf}}
                       : std::vector<Interval>{};
      }
      const double z = -c / h_.b;
      record(z, scale);
      return h_.b > 0.0 ? std::vector<Interval>{Interval{z, kInf}}
                        : std::vector<Interval>{Interval{-kInf, z}};
    }
    const double disc = h_.b * h_.b - 4.0 * h_.a * c;
    if (!(disc > 0.0)) {
      if (h_.a > 0.0) return {Interval{-kInf, kInf}};
      return {};
    }
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (h_.b + (h_.b >= 0.0 ? sq : -sq));
    double r1 = q / h_.a;
    double r2 = c / q;
    if (r1 > r2) std::swap(r1, r2);
    record(r1, scale);
    record(r2, scale);
    if (h_.a > 0.0) return {Interval{-kInf, r1}, Interval{r2, kInf}};
    return {Interval{r1, r2}};
  }

 private:
  void record(double z, double scale) const {
    if (!roots_) return;
    const double slope = std::abs(2.0 * h_.a * z + h_.b);
    const double size = std::abs(h_.a) * z * z + std::abs(h_.b * z) + scale;
    const double err = slope > 0.0 ? 4.0 * kUnit * size / slope : kInf;
    roots_->push_back(Root{z, err});
  }

  const Quadratic& h_;
  std::vector<Root>* roots_;
};

std::vector<Interval> complement(const std::vector<Interval>& s) {
  std::vector<Interval> out;
  double cursor = -kInf;
  for (const Interval& i : s) {
    if (i.lo > cursor) out.push_back(Interval{cursor, i.lo});
    cursor = std::max(cursor, i.hi);
  }
  if (cursor < kInf) out.push_back(Interval{cursor, kInf});
  return out;
}

std::vector<Interval> intersect(const std::vector<Interval>& x,
                                const std::vector<Interval>& y) {
  std::vector<Interval> out;
  for (const Interval& a : x) {
    for (const Interval& b : y) {
      const double lo = std::max(a.lo, b.lo);
      const double hi = std::min(a.hi, b.hi);
      if (lo < hi) out.push_back(Interval{lo, hi});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
  return out;
}

// {z : log_lo < ln(f/g)(z) ≤ log_hi}
LevelSet level_set_from_logs(const Quadratic& h, double log_lo, double log_hi,
                             std::vector<Root>* roots) {
  if (!(log_lo < log_hi)) return {};
  const SuperLevel s(h, roots);
  return LevelSet{intersect(s.solve(log_lo), complement(s.solve(log_hi)))};
}

double log_of_bound(double x) {
  if (x == 0.0) return -kInf;
  return std::log(x);
}

void renormalize(std::vector<double>& v) {
  const double sum = compensated_sum(v);
  if (sum < 1.0) {
    v[0] += 1.0 - sum;
  } else if (sum > 1.0) {
    for (double& x : v) x /= sum;
  }
  // Make the compensated sum exactly one by nudging the largest entry.
  for (int pass = 0; pass < 8; ++pass) {
    const double s = compensated_sum(v);
    if (s == 1.0) break;
    auto it = std::max_element(v.begin(), v.end());
    *it = std::max(0.0, *it + (1.0 - s));
  }
}

}  // namespace

double delta_bound(const std::vector<CoordinateParams>& coords) {
  if (coords.empty()) {
    throw Error(ErrorKind::InvalidInput, "delta_bound needs at least one coordinate");
  }
  double best = 0.0;
  for (const CoordinateParams& c : coords) {
    const double gap = std::max(std::abs(c.sigma2 - 1.0), 40.0 * std::abs(c.mu));
    best = std::max(best, std::min(1.0, gap) / 200.0);
  }
  return best;
}

double delta_bound(const ProductGaussianPair& pair) {
  std::vector<CoordinateParams> coords;
  for (Eigen::Index i = 0; i < pair.dimension(); ++i) {
    coords.push_back(CoordinateParams{pair.mu(i), pair.sigma2(i)});
  }
  return delta_bound(coords);
}

LevelSet solve_level_set(const CoordinateParams& coord, double lo, double hi) {
  require_coordinate(coord);
  if (!(lo >= 0.0) || !(hi >= lo)) {
    throw Error(ErrorKind::InvalidInterval, "level bounds need 0 <= lo <= hi");
  }
  return level_set_from_logs(Quadratic(coord), log_of_bound(lo), log_of_bound(hi),
                             nullptr);
}

DiscretePair discretize_coordinate(const CoordinateParams& coord,
                                   const PartitionSpec& spec, double zeta,
                                   CoordinateReport* report,
                                   const Deadline& deadline) {
  require_coordinate(coord);
  if (!(zeta > 0.0) || zeta > 1.0) {
    throw Error(ErrorKind::OutOfRange, "zeta must lie in (0, 1]");
  }
  const int m = spec.m;
  const auto size = static_cast<std::size_t>(spec.alphabet_size());
  DiscretePair out{std::vector<double>(size, 0.0), std::vector<double>(size, 0.0)};
  if (report) *report = CoordinateReport{};

  if (coord.mu == 0.0 && coord.sigma2 == 1.0) {
    out.p[0] = 1.0;
    out.q[0] = 1.0;
    if (report) report->raw_p_sum = report->raw_q_sum = 1.0;
    return out;
  }

  // log a_k; log1p keeps full relative precision for a_k close to one.
  std::vector<double> log_a(static_cast<std::size_t>(m + 1));
  log_a[0] = 0.0;
  for (int k = 1; k < m; ++k) log_a[k] = std::log1p(-spec.complements[k]);
  log_a[m] = -kInf;

  const Quadratic h(coord);
  const double budget = zeta / 2.0;
  const double density_bound =
      std::sqrt(2.0 / (std::numbers::pi * std::min(1.0, coord.sigma2)));
  std::vector<Root> roots;
  std::vector<Root>* root_sink = report ? &roots : nullptr;

  auto fill = [&](std::size_t index, double log_lo, double log_hi) {
    const LevelSet set = level_set_from_logs(h, log_lo, log_hi, root_sink);
    for (const Interval& i : set.intervals) {
      out.p[index] += gaussian_interval_mass(coord.mu, coord.sigma2, i.lo, i.hi, budget);
      out.q[index] += gaussian_interval_mass(0.0, 1.0, i.lo, i.hi, budget);
    }
  };

  for (int k = 1; k <= m; ++k) {
    if ((k & 4095) == 0) deadline.check("discretize");
    fill(static_cast<std::size_t>(k), log_a[k], log_a[k - 1]);       // I_k
    fill(static_cast<std::size_t>(m + k), -log_a[k - 1], -log_a[k]);  // J_k
  }

  if (report) {
    report->raw_p_sum = compensated_sum(out.p);
    report->raw_q_sum = compensated_sum(out.q);
    for (const Root& r : roots) {
      const double mass_error = r.error * density_bound;
      report->max_endpoint_mass_error = std::max(report->max_endpoint_mass_error, mass_error);
      if (mass_error > zeta / 10.0) ++report->endpoint_violations;
    }
  }
  renormalize(out.p);
  renormalize(out.q);
  return out;
}

BuildResult build_discrete_products(const ProductGaussianPair& pair, double eps,
                                    const Deadline& deadline) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::InvalidInput, "eps must lie in (0, 1)");
  }
  const auto n = static_cast<double>(pair.dimension());
  if (pair.dimension() == 0) {
    throw Error(ErrorKind::InvalidInput, "empty product pair");
  }
  BuildResult result;
  BuildReport& rep = result.report;
  rep.delta = delta_bound(pair);
  if (rep.delta == 0.0) {
    throw Error(ErrorKind::ZeroDelta, "every coordinate is already standard");
  }
  rep.gamma = eps * rep.delta / (50.0 * n);
  rep.small_delta = eps / (50.0 * n);
  const PartitionSpec spec = build_partition(rep.gamma, rep.small_delta);
  rep.m = spec.m;
  rep.alphabet_size = spec.alphabet_size();
  rep.zeta = eps * rep.delta / (500.0 * rep.alphabet_size * n);
  if (rep.zeta < 4.0 * kErfBudgetFloor) {
    throw Error(ErrorKind::BudgetTooTight,
                "per-interval budget " + std::to_string(rep.zeta) +
                    " is below the erf kernel floor");
  }

  for (Eigen::Index i = 0; i < pair.dimension(); ++i) {
    deadline.check("discretize");
    CoordinateReport cr;
    result.pairs.push_back(discretize_coordinate(
        CoordinateParams{pair.mu(i), pair.sigma2(i)}, spec, rep.zeta, &cr, deadline));
    rep.max_endpoint_mass_error = std::max(rep.max_endpoint_mass_error, cr.max_endpoint_mass_error);
    rep.endpoint_violations += cr.endpoint_violations;
    rep.max_raw_mass_defect = std::max(
        {rep.max_raw_mass_defect, std::abs(cr.raw_p_sum - 1.0), std::abs(cr.raw_q_sum - 1.0)});
  }
  return result;
}

}  // namespace gausstv
