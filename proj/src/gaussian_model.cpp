#include "gausstv/gaussian_model.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "gausstv/error.hpp"

namespace gausstv {

namespace {

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

void check_structure(const GaussianParams& params) {
  if (params.covariance.rows() != params.covariance.cols()) {
    throw Error(ErrorKind::InvalidInput,
                "covariance is " + std::to_string(params.covariance.rows()) +
                    "x" + std::to_string(params.covariance.cols()) +
                    ", expected a square matrix");
  }
  if (params.covariance.rows() != params.mean.size()) {
    throw Error(ErrorKind::InvalidInput,
                "mean has length " + std::to_string(params.mean.size()) +
                    " but covariance is " +
                    std::to_string(params.covariance.rows()) + "x" +
                    std::to_string(params.covariance.cols()));
  }
  if (!params.mean.allFinite() || !all_finite(params.covariance)) {
    throw Error(ErrorKind::InvalidInput, "non-finite entry (NaN or Inf)");
  }
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& s) {
  return 0.5 * (s + s.transpose());
}

// Orthonormal basis of the numerical range, one column per retained
// eigenvalue. Columns are sign-normalized so that their largest-magnitude
// entry is positive; this makes the projection deterministic.
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& covariance) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const double cutoff =
      kRankTolerance * std::max(1.0, lambda.size() ? lambda.maxCoeff() : 0.0);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = lambda.size() - 1; i >= 0; --i) {
    if (lambda(i) > cutoff) kept.push_back(i);
  }
  Eigen::MatrixXd basis(covariance.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    Eigen::VectorXd v = solver.eigenvectors().col(kept[c]);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    basis.col(static_cast<Eigen::Index>(c)) = v;
  }
  return basis;
}

double projection_residual(const Eigen::MatrixXd& basis,
                           const Eigen::VectorXd& v) {
  return (v - basis * (basis.transpose() * v)).norm();
}

}  // namespace

ValidationReport validate(const GaussianParams& params) {
  check_structure(params);
  ValidationReport report;
  report.dimension = params.dimension();
  const Eigen::MatrixXd& s = params.covariance;
  report.symmetry_defect =
      s.size() ? (s - s.transpose()).cwiseAbs().maxCoeff() : 0.0;
  report.symmetric = report.symmetry_defect <= kSymmetryTolerance;
  if (s.size()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        symmetrized(s), Eigen::EigenvaluesOnly);
    report.min_eigenvalue = solver.eigenvalues().minCoeff();
    report.max_eigenvalue = solver.eigenvalues().maxCoeff();
  }
  report.positive_semidefinite =
      report.min_eigenvalue >=
      -kPsdTolerance * std::max(1.0, report.max_eigenvalue);
  report.accepted = report.symmetric && report.positive_semidefinite;
  return report;
}

void require_valid(const GaussianParams& params, std::string_view what) {
  const ValidationReport report = validate(params);
  if (!report.symmetric) {
    throw Error(ErrorKind::InvalidInput,
                std::string(what) + ": covariance not symmetric (defect " +
                    std::to_string(report.symmetry_defect) + ")");
  }
  if (!report.positive_semidefinite) {
    throw Error(ErrorKind::InvalidInput,
                std::string(what) +
                    ": covariance not positive semi-definite (min eigenvalue " +
                    std::to_string(report.min_eigenvalue) + ")");
  }
}

std::string_view rank_case_name(const RankCaseResult& result) {
  if (std::holds_alternative<Identical>(result)) return "identical";
  if (std::holds_alternative<DisjointSupport>(result)) return "disjoint_support";
  return "full_rank";
}

Eigen::Index numerical_rank(const Eigen::MatrixXd& covariance) {
  if (covariance.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetrized(covariance),
                                                        Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const double cutoff = kRankTolerance * std::max(1.0, lambda.maxCoeff());
  return (lambda.array() > cutoff).count();
}

RankCaseResult resolve_rank_case(const GaussianParams& p1,
                                 const GaussianParams& p2) {
  require_valid(p1, "first Gaussian");
  require_valid(p2, "second Gaussian");
  if (p1.dimension() != p2.dimension()) {
    throw Error(ErrorKind::InvalidInput,
                "dimension mismatch: " + std::to_string(p1.dimension()) +
                    " vs " + std::to_string(p2.dimension()));
  }
  if (p1.mean == p2.mean && p1.covariance == p2.covariance) return Identical{};

  const Eigen::Index n = p1.dimension();
  const Eigen::MatrixXd s1 = symmetrized(p1.covariance);
  const Eigen::MatrixXd s2 = symmetrized(p2.covariance);
  const Eigen::Index r1 = numerical_rank(s1);
  const Eigen::Index r2 = numerical_rank(s2);
  if (r1 != r2 || r1 == 0) return DisjointSupport{};

  const Eigen::VectorXd shift = p2.mean - p1.mean;
  if (r1 == n) {
    return FullRankPair{GaussianParams{Eigen::VectorXd::Zero(n), s1},
                        GaussianParams{shift, s2}, n,
                        Eigen::MatrixXd::Identity(n, n)};
  }

  const Eigen::MatrixXd basis1 = range_basis(s1);
  const Eigen::MatrixXd basis2 = range_basis(s2);
  for (Eigen::Index c = 0; c < basis2.cols(); ++c) {
    if (projection_residual(basis1, basis2.col(c)) > kSupportTolerance) {
      return DisjointSupport{};
    }
  }
  if (projection_residual(basis1, shift) >
      kSupportTolerance * std::max(1.0, shift.norm())) {
    return DisjointSupport{};
  }

  const Eigen::MatrixXd pi = basis1.transpose();
  GaussianParams first{Eigen::VectorXd::Zero(r1),
                       symmetrized(pi * s1 * pi.transpose())};
  GaussianParams second{pi * shift, symmetrized(pi * s2 * pi.transpose())};
  return FullRankPair{std::move(first), std::move(second), r1, pi};
}

double tv_upper_bound_pinsker(const GaussianParams& p1,
                              const GaussianParams& p2) {
  require_valid(p1, "first Gaussian");
  require_valid(p2, "second Gaussian");
  const Eigen::Index n = p1.dimension();
  if (p2.dimension() != n) {
    throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> chol1(symmetrized(p1.covariance));
  Eigen::LLT<Eigen::MatrixXd> chol2(symmetrized(p2.covariance));
  if (chol1.info() != Eigen::Success || chol2.info() != Eigen::Success) {
    throw Error(ErrorKind::SingularCovariance,
                "Pinsker bound needs positive definite covariances");
  }
  const Eigen::MatrixXd l1 = chol1.matrixL();
  const Eigen::MatrixXd l2 = chol2.matrixL();
  // 2·KL(P₁‖P₂) = tr(Σ₂⁻¹Σ₁) − n + dᵀΣ₂⁻¹d + ln det Σ₂ − ln det Σ₁.
  const Eigen::MatrixXd w = chol2.matrixL().solve(l1);  // L₂⁻¹L₁
  const double trace = w.squaredNorm();
  const Eigen::VectorXd d = p1.mean - p2.mean;
  const double quad = chol2.matrixL().solve(d).squaredNorm();
  const double logdet1 = 2.0 * l1.diagonal().array().log().sum();
  const double logdet2 = 2.0 * l2.diagonal().array().log().sum();
  const double radicand =
      std::max(0.0, trace - static_cast<double>(n) + quad + logdet2 - logdet1);
  return std::min(1.0, 0.5 * std::sqrt(radicand));
}

double one_dim_tv_lower_bound(double mu, double sigma2) {
  return std::min(1.0, std::max(std::abs(sigma2 - 1.0), 40.0 * std::abs(mu))) /
         200.0;
}

double tv_lower_bound_general(const GaussianParams& p1,
                              const GaussianParams& p2) {
  require_valid(p1, "first Gaussian");
  require_valid(p2, "second Gaussian");
  const Eigen::Index n = p1.dimension();
  if (p2.dimension() != n) {
    throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  }
  const auto& s1 = p1.covariance;
  const auto& s2 = p2.covariance;

  // Standardize coordinate i of the first law to N(0, 1).
  auto coordinate_bound = [](double m1, double v1, double m2, double v2) {
    if (!(v1 > 0.0)) {
      throw Error(ErrorKind::SingularCovariance,
                  "lower bound needs positive variances");
    }
    return one_dim_tv_lower_bound((m2 - m1) / std::sqrt(v1), v2 / v1);
  };

  bool found = false;
  double best = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (p1.mean(i) != p2.mean(i) || s1(i, i) != s2(i, i)) {
      found = true;
      best = std::max(best, coordinate_bound(p1.mean(i), s1(i, i), p2.mean(i),
                                             s2(i, i)));
    }
  }
  if (found) return best;

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || s1(i, j) == s2(i, j)) continue;
      const double m1 = p1.mean(i) + p1.mean(j);
      const double m2 = p2.mean(i) + p2.mean(j);
      const double v1 = s1(i, i) + s1(i, j) + s1(j, i) + s1(j, j);
      const double v2 = s2(i, i) + s2(i, j) + s2(j, i) + s2(j, j);
      return coordinate_bound(m1, v1, m2, v2);
    }
  }
  throw Error(ErrorKind::IdenticalInputs, "the two Gaussians coincide");
}

GaussianParams affine_transform(const GaussianParams& params,
                                const Eigen::MatrixXd& a,
                                const Eigen::VectorXd& b) {
  if (a.cols() != params.dimension() || params.covariance.rows() != params.dimension() ||
      params.covariance.cols() != params.dimension() || b.size() != a.rows()) {
    throw Error(ErrorKind::InvalidInput,
                "affine map shapes do not match the Gaussian dimension");
  }
  return GaussianParams{a * params.mean + b,
                        symmetrized(a * params.covariance * a.transpose())};
}

}  // namespace gausstv
