#include "gausstv/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "gausstv/disprod.hpp"
#include "gausstv/error.hpp"
#include "gausstv/gaussian_discretizer.hpp"

namespace gausstv {

namespace {

template <typename F>
auto staged(const char* stage, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.with_stage(stage);
  }
}

}  // namespace

PipelineOptions PipelineOptions::from_environment() {
  PipelineOptions options;
  if (const char* raw = std::getenv("GAUSSTV_DIAG_RESIDUAL")) {
    const std::string text(raw);
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !(value > 0.0) ||
        !std::isfinite(value)) {
      throw Error(ErrorKind::InvalidInput,
                  "GAUSSTV_DIAG_RESIDUAL must be a positive number, got '" + text + "'");
    }
    options.diag_residual = value;
  }
  return options;
}

TvResult mult_gaussian_tv(const GaussianParams& p1, const GaussianParams& p2,
                          double eps, const PipelineOptions& options) {
  TvResult result;
  result.eps = eps;
  Diagnostics& diag = result.diagnostics;
  staged("validate", [&] {
    if (!(eps > 0.0 && eps < 1.0)) {
      throw Error(ErrorKind::InvalidInput, "eps must lie in (0, 1)");
    }
    require_valid(p1, "first Gaussian");
    require_valid(p2, "second Gaussian");
    if (p1.dimension() != p2.dimension()) {
      throw Error(ErrorKind::InvalidInput, "the two Gaussians have different dimensions");
    }
    return 0;
  });

  const RankCaseResult rank_case = staged("rank_case", [&] { return resolve_rank_case(p1, p2); });
  diag.rank_case = std::string(rank_case_name(rank_case));
  if (std::holds_alternative<Identical>(rank_case)) return result;
  if (std::holds_alternative<DisjointSupport>(rank_case)) {
    result.estimate = 1.0;
    return result;
  }
  const auto& reduced = std::get<FullRankPair>(rank_case);
  diag.dimension = reduced.rank;

  const WhitenResult whitened = staged("whiten", [&] {
    return whiten_pair(reduced.first, reduced.second, options.diag_residual);
  });
  diag.kappa1 = whitened.report.kappa1;
  diag.kappa2 = whitened.report.kappa2;
  diag.diag_residuals = {whitened.report.second_residual, whitened.report.first_residual};

  diag.delta = delta_bound(whitened.pair);
  if (diag.delta == 0.0) return result;

  const double eps_reduce = eps;
  const double eps_discrete = eps / 2.0;
  diag.budget_split = {eps_reduce, eps_discrete};

  const BuildResult built = staged("discretize", [&] {
    return build_discrete_products(whitened.pair, eps_reduce, options.deadline);
  });
  diag.gamma = built.report.gamma;
  diag.small_delta = built.report.small_delta;
  diag.m = built.report.m;
  diag.alphabet_size = built.report.alphabet_size;
  diag.zeta = built.report.zeta;
  diag.max_endpoint_mass_error = built.report.max_endpoint_mass_error;
  diag.endpoint_violations = built.report.endpoint_violations;

  const DisProdReport dp = staged("disprod", [&] {
    DisProdOptions dopt;
    dopt.deadline = options.deadline;
    return disprod_tv_det_report(built.pairs, eps_discrete, dopt);
  });
  diag.disprod_delta = dp.delta;
  diag.disprod_m = dp.m;
  diag.max_product_atoms = dp.max_product_atoms;
  diag.max_discretized_atoms = dp.max_discretized_atoms;
  diag.renormalizations = dp.renormalizations;

  result.estimate = std::clamp(dp.estimate, 0.0, 1.0);
  return result;
}

}  // namespace gausstv
