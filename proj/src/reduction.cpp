#include "gausstv/reduction.hpp"

#include <Eigen/Eigenvalues>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gausstv/error.hpp"

namespace gausstv {

namespace {

std::string residual_message(const char* what, double actual, double budget) {
  std::ostringstream os;
  os.precision(3);
  os << what << " residual " << std::scientific << actual << " exceeds budget "
     << budget;
  return os.str();
}

double condition_number(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  const double hi = solver.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) {
    throw Error(ErrorKind::SingularCovariance,
                "covariance has a non-positive eigenvalue");
  }
  return hi / lo;
}

}  // namespace

EigenDecomposition symmetric_eigendecompose(const Eigen::MatrixXd& s,
                                            double delta_diag) {
  if (s.rows() != s.cols() || s.rows() == 0) {
    throw Error(ErrorKind::InvalidInput, "expected a non-empty square matrix");
  }
  const Eigen::Index n = s.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ResidualTooLarge, "eigensolver did not converge");
  }

  // Eigen returns ascending order.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.rbegin(), order.rend(), Eigen::Index{0});
  EigenDecomposition out;
  out.q.resize(n, n);
  out.lambda.resize(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    out.q.col(c) = solver.eigenvectors().col(order[static_cast<std::size_t>(c)]);
    out.lambda(c) = solver.eigenvalues()(order[static_cast<std::size_t>(c)]);
  }
  if (!(out.lambda(n - 1) > 0.0)) {
    throw Error(ErrorKind::SingularCovariance,
                "matrix has a non-positive eigenvalue " +
                    std::to_string(out.lambda(n - 1)));
  }

  out.orthogonality_residual =
      (out.q.transpose() * out.q - Eigen::MatrixXd::Identity(n, n)).norm();
  const double scale = s.norm();
  out.reconstruction_residual =
      (s - out.q * out.lambda.asDiagonal() * out.q.transpose()).norm() / scale;

  const double orth_budget = delta_diag * static_cast<double>(n);
  if (!(out.orthogonality_residual <= orth_budget)) {
    throw Error(ErrorKind::ResidualTooLarge,
                residual_message("orthogonality", out.orthogonality_residual,
                                 orth_budget));
  }
  if (!(out.reconstruction_residual <= delta_diag)) {
    throw Error(ErrorKind::ResidualTooLarge,
                residual_message("reconstruction", out.reconstruction_residual,
                                 delta_diag));
  }
  return out;
}

WhitenResult whiten_pair(const GaussianParams& p1, const GaussianParams& p2,
                         double delta_diag) {
  if (p1.dimension() != p2.dimension() || p1.dimension() == 0) {
    throw Error(ErrorKind::InvalidInput, "whitening needs two non-empty Gaussians of equal dimension");
  }
  const Eigen::MatrixXd s1 = 0.5 * (p1.covariance + p1.covariance.transpose());
  const Eigen::MatrixXd s2 = 0.5 * (p2.covariance + p2.covariance.transpose());

  WhitenResult out;
  out.report.kappa1 = condition_number(s1);
  out.report.kappa2 = condition_number(s2);

  const EigenDecomposition d2 = symmetric_eigendecompose(s2, delta_diag);
  const Eigen::VectorXd inv_sqrt = d2.lambda.array().rsqrt();
  const Eigen::MatrixXd a = d2.q * inv_sqrt.asDiagonal() * d2.q.transpose();

  Eigen::MatrixXd transformed = a * s1 * a.transpose();
  transformed = 0.5 * (transformed + transformed.transpose());
  const EigenDecomposition d1 = symmetric_eigendecompose(transformed, delta_diag);

  out.pair.mu = d1.q.transpose() * (a * (p1.mean - p2.mean));
  out.pair.sigma2 = d1.lambda;
  out.report.second_residual = d2.reconstruction_residual;
  out.report.first_residual = d1.reconstruction_residual;
  return out;
}

}  // namespace gausstv
