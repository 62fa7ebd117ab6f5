#pragma once

#include <Eigen/Dense>

#include "gausstv/gaussian_model.hpp"

namespace gausstv {

/// Default relative residual budget for eigendecompositions.
inline constexpr double kDefaultDiagResidual = 1e-10;

/// S ≈ q · diag(lambda) · qᵀ with eigenvalues in descending order.
struct EigenDecomposition {
  Eigen::MatrixXd q;
  Eigen::VectorXd lambda;
  double orthogonality_residual = 0.0;   // ‖qᵀq − I‖_F
  double reconstruction_residual = 0.0;  // ‖S − qΛqᵀ‖_F / ‖S‖_F
};

/// Decomposes a symmetric positive definite matrix and validates the
/// result: ‖qᵀq − I‖_F ≤ delta_diag·n and the relative reconstruction
/// residual ≤ delta_diag, otherwise ResidualTooLarge. Non-positive
/// eigenvalues raise SingularCovariance.
EigenDecomposition symmetric_eigendecompose(
    const Eigen::MatrixXd& s, double delta_diag = kDefaultDiagResidual);

/// N(mu, diag(sigma2)) against N(0, I).
struct ProductGaussianPair {
  Eigen::VectorXd mu;
  Eigen::VectorXd sigma2;

  Eigen::Index dimension() const { return mu.size(); }
};

struct WhitenReport {
  double second_residual = 0.0;  // decomposition of Σ₂
  double first_residual = 0.0;   // decomposition of AΣ₁Aᵀ
  double kappa1 = 0.0;           // λ_max/λ_min of Σ₁
  double kappa2 = 0.0;           // λ_max/λ_min of Σ₂
};

struct WhitenResult {
  ProductGaussianPair pair;
  WhitenReport report;
};

/// Maps (N(μ₁,Σ₁), N(μ₂,Σ₂)) to (N(μ, diag σ²), N(0, I)) by the invertible
/// affine change of variables v ↦ Q₁ᵀA(v − μ₂), A = Q₂Λ₂^{-1/2}Q₂ᵀ, which
/// leaves the TV distance unchanged.
WhitenResult whiten_pair(const GaussianParams& p1, const GaussianParams& p2,
                         double delta_diag = kDefaultDiagResidual);

}  // namespace gausstv
