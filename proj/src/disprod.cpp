#include "gausstv/disprod.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "gausstv/error.hpp"
#include "gausstv/ratio.hpp"

namespace gausstv {

void require_valid(const DiscreteDistributionPair& pair) {
  require_distribution(pair.p, "p");
  require_distribution(pair.q, "q");
  if (pair.p.size() != pair.q.size()) {
    throw Error(ErrorKind::NotADistribution, "p and q have different lengths");
  }
}

double coordinate_tv(const DiscreteDistributionPair& pair) {
  require_valid(pair);
  CompensatedSum s;
  for (std::size_t x = 0; x < pair.p.size(); ++x) s += std::abs(pair.p[x] - pair.q[x]);
  return 0.5 * s.value();
}

DisProdReport disprod_tv_det_report(const std::vector<DiscreteDistributionPair>& pairs,
                                    double eps, const DisProdOptions& options) {
  if (pairs.empty()) throw Error(ErrorKind::InvalidInput, "no coordinate pairs");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::InvalidInput, "eps must lie in (0, 1)");
  }
  DisProdReport rep;
  for (const auto& pair : pairs) rep.delta = std::max(rep.delta, coordinate_tv(pair));
  if (rep.delta == 0.0) return rep;

  const double n = static_cast<double>(pairs.size());
  rep.gamma = eps * rep.delta / (2.0 * n);
  rep.small_delta = eps / (2.0 * n);
  const PartitionSpec spec = build_partition(rep.gamma, rep.small_delta);
  rep.m = spec.m;

  ProductStats stats;
  AtomicRatio y = discretize(ratio_from_discrete_pair(pairs[0].p, pairs[0].q), spec);
  rep.max_discretized_atoms = y.size();
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    options.deadline.check("disprod");
    const AtomicRatio r = ratio_from_discrete_pair(pairs[i].p, pairs[i].q);
    rep.max_product_atoms = std::max(rep.max_product_atoms, y.size() * r.size());
    if (options.fused_products) {
      y = product_discretize(y, r, spec, &stats, options.deadline);
    } else {
      y = discretize(independent_product(y, r, &stats), spec);
    }
    rep.max_discretized_atoms = std::max(rep.max_discretized_atoms, y.size());
  }
  rep.renormalizations = stats.renormalizations;
  rep.estimate = std::clamp(tv_functional(y), 0.0, 1.0);
  return rep;
}

double disprod_tv_det(const std::vector<DiscreteDistributionPair>& pairs, double eps,
                      const DisProdOptions& options) {
  return disprod_tv_det_report(pairs, eps, options).estimate;
}

double exact_product_tv(const std::vector<DiscreteDistributionPair>& pairs) {
  if (pairs.empty()) throw Error(ErrorKind::InvalidInput, "no coordinate pairs");
  double tuples = 1.0;
  for (const auto& pair : pairs) {
    require_valid(pair);
    tuples *= static_cast<double>(pair.p.size());
  }
  if (tuples > 1e7) {
    throw Error(ErrorKind::InstanceTooLarge,
                "exact enumeration needs more than 1e7 outcome tuples");
  }
  CompensatedSum total;
  std::function<void(std::size_t, double, double)> walk =
      [&](std::size_t i, double p, double q) {
        if (i == pairs.size()) {
          total += std::abs(p - q);
          return;
        }
        for (std::size_t x = 0; x < pairs[i].p.size(); ++x) {
          walk(i + 1, p * pairs[i].p[x], q * pairs[i].q[x]);
        }
      };
  walk(0, 1.0, 1.0);
  return 0.5 * total.value();
}

}  // namespace gausstv
