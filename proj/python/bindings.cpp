#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "gausstv/disprod.hpp"
#include "gausstv/erf_kernel.hpp"
#include "gausstv/error.hpp"
#include "gausstv/gaussian_discretizer.hpp"
#include "gausstv/oracle.hpp"
#include "gausstv/pipeline.hpp"
#include "gausstv/reduction.hpp"

namespace py = pybind11;
using namespace gausstv;

namespace {

GaussianParams params(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma) { return {mu, sigma}; }

std::vector<DiscreteDistributionPair> to_pairs(
    const std::vector<std::pair<std::vector<double>, std::vector<double>>>& pairs) {
  std::vector<DiscreteDistributionPair> out;
  for (const auto& [p, q] : pairs) out.push_back(DiscreteDistributionPair{p, q});
  return out;
}

py::dict diagnostics_dict(const Diagnostics& d) {
  py::dict j;
  j["rank_case"] = d.rank_case;
  j["dimension"] = d.dimension;
  j["delta"] = d.delta;
  j["gamma"] = d.gamma;
  j["small_delta"] = d.small_delta;
  j["m"] = d.m;
  j["alphabet_size"] = d.alphabet_size;
  j["zeta"] = d.zeta;
  j["kappa1"] = d.kappa1;
  j["kappa2"] = d.kappa2;
  j["diag_residuals"] = d.diag_residuals;
  j["budget_split"] = d.budget_split;
  j["disprod_delta"] = d.disprod_delta;
  j["disprod_m"] = d.disprod_m;
  j["max_product_atoms"] = d.max_product_atoms;
  j["max_discretized_atoms"] = d.max_discretized_atoms;
  j["renormalizations"] = d.renormalizations;
  j["max_endpoint_mass_error"] = d.max_endpoint_mass_error;
  j["endpoint_violations"] = d.endpoint_violations;
  return j;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Total variation distance between Gaussians";

  // Released so the type outlives module teardown without a late decref.
  static py::handle error = py::exception<Error>(m, "GaussTVError", PyExc_RuntimeError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error)(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      exc.attr("stage") = e.stage();
      exc.attr("numerical") = is_numerical(e.kind());
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def(
      "mult_gaussian_tv",
      [](const Eigen::VectorXd& mu1, const Eigen::MatrixXd& sigma1, const Eigen::VectorXd& mu2,
         const Eigen::MatrixXd& sigma2, double eps, double diag_residual, bool diagnostics) {
        PipelineOptions options;
        options.diag_residual = diag_residual;
        TvResult r;
        {
          py::gil_scoped_release release;
          r = mult_gaussian_tv(params(mu1, sigma1), params(mu2, sigma2), eps, options);
        }
        py::dict out;
        out["tv_estimate"] = r.estimate;
        out["eps"] = r.eps;
        if (diagnostics) out["diagnostics"] = diagnostics_dict(r.diagnostics);
        return out;
      },
      py::arg("mu1"), py::arg("sigma1"), py::arg("mu2"), py::arg("sigma2"), py::arg("eps"),
      py::arg("diag_residual") = kDefaultDiagResidual, py::arg("diagnostics") = false,
      "Estimate d_TV(N(mu1, sigma1), N(mu2, sigma2)) to relative error eps.");

  m.def(
      "disprod_tv",
      [](const std::vector<std::pair<std::vector<double>, std::vector<double>>>& pairs, double eps) {
        return disprod_tv_det(to_pairs(pairs), eps);
      },
      py::arg("pairs"), py::arg("eps"),
      "TV distance between the products of the p's and of the q's, to relative error eps.");

  m.def(
      "exact_product_tv",
      [](const std::vector<std::pair<std::vector<double>, std::vector<double>>>& pairs) {
        return exact_product_tv(to_pairs(pairs));
      },
      py::arg("pairs"));

  m.def("erf_approx", &erf_approx, py::arg("x"), py::arg("eps"));

  m.def(
      "whiten",
      [](const Eigen::VectorXd& mu1, const Eigen::MatrixXd& sigma1, const Eigen::VectorXd& mu2,
         const Eigen::MatrixXd& sigma2) {
        const WhitenResult w = whiten_pair(params(mu1, sigma1), params(mu2, sigma2));
        return py::make_tuple(w.pair.mu, w.pair.sigma2);
      },
      py::arg("mu1"), py::arg("sigma1"), py::arg("mu2"), py::arg("sigma2"),
      "Coordinates (mu, sigma2) of the equivalent pair N(mu, diag sigma2) vs N(0, I).");

  m.def(
      "delta_bound",
      [](const Eigen::VectorXd& mu, const Eigen::VectorXd& sigma2) {
        return delta_bound(ProductGaussianPair{mu, sigma2});
      },
      py::arg("mu"), py::arg("sigma2"));

  py::module_ oracle = m.def_submodule("oracle", "reference computations");
  oracle.def(
      "quadrature_tv_1d",
      [](double mu1, double var1, double mu2, double var2, double tol) {
        return oracle::quadrature_tv_1d(mu1, var1, mu2, var2, tol);
      },
      py::arg("mu1"), py::arg("var1"), py::arg("mu2"), py::arg("var2"), py::arg("tol") = 1e-10);
  oracle.def(
      "grid_tv_nd",
      [](const Eigen::VectorXd& mu1, const Eigen::MatrixXd& sigma1, const Eigen::VectorXd& mu2,
         const Eigen::MatrixXd& sigma2, int cells, double extent) {
        const oracle::GridTvResult g =
            oracle::grid_tv_nd(params(mu1, sigma1), params(mu2, sigma2), cells, extent);
        py::dict out;
        out["value"] = g.value;
        out["extrapolated"] = g.extrapolated;
        out["error_estimate"] = g.error_estimate;
        return out;
      },
      py::arg("mu1"), py::arg("sigma1"), py::arg("mu2"), py::arg("sigma2"), py::arg("cells") = 128,
      py::arg("extent") = 8.0);
  oracle.def("erf_reference", &oracle::erf_reference, py::arg("x"));
  oracle.def(
      "mc_tv_baseline",
      [](const Eigen::VectorXd& mu1, const Eigen::MatrixXd& sigma1, const Eigen::VectorXd& mu2,
         const Eigen::MatrixXd& sigma2, std::int64_t samples, std::uint64_t seed) {
        const oracle::McEstimate e =
            oracle::mc_tv_baseline(params(mu1, sigma1), params(mu2, sigma2), samples, seed);
        return py::make_tuple(e.estimate, e.standard_error);
      },
      py::arg("mu1"), py::arg("sigma1"), py::arg("mu2"), py::arg("sigma2"), py::arg("samples"),
      py::arg("seed") = 0);
}
