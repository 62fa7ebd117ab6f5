#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <vector>

#include "gausstv/disprod.hpp"
#include "gausstv/gaussian_model.hpp"
#include "gausstv/ratio.hpp"

namespace gausstv::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random probability vector; some entries are zeroed when `sparse`.
inline std::vector<double> random_distribution(Rng& rng, int size, bool sparse = false) {
  std::vector<double> p(static_cast<std::size_t>(size));
  for (double& x : p) x = -std::log(uniform(rng, 1e-12, 1.0));
  if (sparse) {
    for (double& x : p) {
      if (uniform(rng, 0.0, 1.0) < 0.25) x = 0.0;
    }
  }
  if (std::all_of(p.begin(), p.end(), [](double x) { return x == 0.0; })) p[0] = 1.0;
  double s = 0.0;
  for (double x : p) s += x;
  for (double& x : p) x /= s;
  return p;
}

inline DiscreteDistributionPair random_pair(Rng& rng, int size) {
  return DiscreteDistributionPair{random_distribution(rng, size, true),
                                  random_distribution(rng, size, true)};
}

// A valid ratio with up to max_atoms atoms, possibly with singular mass.
inline AtomicRatio random_ratio(Rng& rng, int max_atoms) {
  const int k = uniform_int(rng, 1, max_atoms);
  // One extra outcome where q may vanish carries the singular part.
  std::vector<double> p = random_distribution(rng, k + 1);
  std::vector<double> q = random_distribution(rng, k + 1);
  if (uniform(rng, 0.0, 1.0) < 0.5) {
    q[static_cast<std::size_t>(k)] = 0.0;
    double s = 0.0;
    for (double x : q) s += x;
    if (s == 0.0) {
      q[0] = 1.0;
      s = 1.0;
    }
    for (double& x : q) x /= s;
  }
  return ratio_from_discrete_pair(p, q);
}

inline Eigen::MatrixXd random_spd(Rng& rng, int n, double min_eig = 0.3, double max_eig = 3.0) {
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = std::normal_distribution<double>()(rng);
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd lambda(n);
  for (int i = 0; i < n; ++i) lambda(i) = uniform(rng, min_eig, max_eig);
  Eigen::MatrixXd s = q * lambda.asDiagonal() * q.transpose();
  return 0.5 * (s + s.transpose());
}

inline Eigen::VectorXd random_vector(Rng& rng, int n, double scale) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = uniform(rng, -scale, scale);
  return v;
}

inline GaussianParams gaussian(std::initializer_list<double> mean,
                               std::initializer_list<std::initializer_list<double>> cov) {
  GaussianParams g;
  g.mean.resize(static_cast<Eigen::Index>(mean.size()));
  Eigen::Index i = 0;
  for (double x : mean) g.mean(i++) = x;
  g.covariance.resize(static_cast<Eigen::Index>(cov.size()), static_cast<Eigen::Index>(cov.size()));
  i = 0;
  for (const auto& row : cov) {
    Eigen::Index j = 0;
    for (double x : row) g.covariance(i, j++) = x;
    ++i;
  }
  return g;
}

// Value of the discretized ratio on the bucket holding x.
inline double discretized_value(const AtomicRatio& discretized, const PartitionSpec& spec,
                                double x) {
  const IntervalId id = classify(x, spec);
  for (const Atom& a : discretized.atoms()) {
    if (classify(a.value, spec) == id) return a.value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace gausstv::testing
