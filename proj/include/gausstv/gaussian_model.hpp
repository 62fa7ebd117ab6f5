#pragma once

#include <Eigen/Dense>
#include <string_view>
#include <variant>

namespace gausstv {

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kRankTolerance = 1e-10;
inline constexpr double kSupportTolerance = 1e-10;

/// A Gaussian N(mean, covariance). Construction does not check anything;
/// run `validate` before handing values to the solver.
struct GaussianParams {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;

  Eigen::Index dimension() const { return mean.size(); }
};

struct ValidationReport {
  Eigen::Index dimension = 0;
  double symmetry_defect = 0.0;  // max |S(i,j) - S(j,i)|
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  bool symmetric = false;
  bool positive_semidefinite = false;
  bool accepted = false;
};

/// Checks symmetry and positive semi-definiteness. Structural problems
/// (non-finite entries, non-square covariance, size mismatch) throw
/// InvalidInput; invariant violations are reported, not thrown.
ValidationReport validate(const GaussianParams& params);

/// validate() + throw InvalidInput naming `what` unless accepted.
void require_valid(const GaussianParams& params, std::string_view what);

struct Identical {};
struct DisjointSupport {};

/// Both Gaussians restricted to their common support, expressed in an
/// orthonormal basis of Range(Σ₁): first ~ N(0, ΠΣ₁Πᵀ), second ~
/// N(Π(μ₂−μ₁), ΠΣ₂Πᵀ). `projection` is the r×n matrix Π.
struct FullRankPair {
  GaussianParams first;
  GaussianParams second;
  Eigen::Index rank = 0;
  Eigen::MatrixXd projection;
};

using RankCaseResult = std::variant<Identical, DisjointSupport, FullRankPair>;

std::string_view rank_case_name(const RankCaseResult& result);

/// Number of eigenvalues above kRankTolerance · max(1, λ_max).
Eigen::Index numerical_rank(const Eigen::MatrixXd& covariance);

RankCaseResult resolve_rank_case(const GaussianParams& p1,
                                 const GaussianParams& p2);

/// Pinsker bound ½·sqrt(2·KL(P₁‖P₂)), clamped to [0, 1].
/// Throws SingularCovariance if either covariance is not positive definite.
double tv_upper_bound_pinsker(const GaussianParams& p1,
                              const GaussianParams& p2);

/// One-dimensional lower bound for N(mu, sigma2) against N(0, 1):
/// (1/200)·min{1, max{|σ²−1|, 40|μ|}}.
double one_dim_tv_lower_bound(double mu, double sigma2);

/// Certified lower bound on the TV distance from a single coordinate or,
/// when all diagonal statistics agree, from the projection on eᵢ+eⱼ.
/// Throws IdenticalInputs when the two parameter sets coincide.
double tv_lower_bound_general(const GaussianParams& p1,
                              const GaussianParams& p2);

/// Law of A·X + b for X ~ params; the covariance is re-symmetrized.
GaussianParams affine_transform(const GaussianParams& params,
                                const Eigen::MatrixXd& a,
                                const Eigen::VectorXd& b);

}  // namespace gausstv
