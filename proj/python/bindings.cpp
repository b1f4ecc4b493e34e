// Python bindings: matrix gamma/beta/Pochhammer, pFq, the Euler integral and
// the identity suite. Matrices cross the boundary as complex NumPy arrays;
// case files and reports cross as JSON text (decoded on the Python side).

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypermat/errors.hpp"
#include "hypermat/euler.hpp"
#include "hypermat/identities.hpp"
#include "hypermat/json_io.hpp"
#include "hypermat/series.hpp"
#include "hypermat/special.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using hypermat::CMatrix;
using hypermat::io::Json;

hypermat::QuadratureMethod quadrature_method(const std::string& name) {
  if (name == "tanh-sinh") return hypermat::QuadratureMethod::kDoubleExponential;
  if (name == "gauss-jacobi") return hypermat::QuadratureMethod::kGaussJacobi;
  throw hypermat::PreconditionError("method must be \"tanh-sinh\" or \"gauss-jacobi\"");
}

std::vector<hypermat::IdentityId> identity_list(const std::vector<std::string>& names) {
  if (names.empty()) {
    return {std::begin(hypermat::kAllIdentities), std::end(hypermat::kAllIdentities)};
  }
  std::vector<hypermat::IdentityId> ids;
  for (const auto& n : names) ids.push_back(hypermat::identity_from_string(n));
  return ids;
}

py::dict series_result(const hypermat::SeriesResult& r) {
  return py::dict("value"_a = r.value, "terms_used"_a = r.terms_used,
                  "last_term_norm"_a = r.last_term_norm, "converged"_a = r.converged,
                  "accelerated"_a = r.accelerated);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Matrix special functions and Euler integral identities (C++ core)";

  auto error = py::register_exception<hypermat::Error>(m, "HypermatError", PyExc_RuntimeError);
  py::register_exception<hypermat::DomainError>(m, "DomainError", error);
  py::register_exception<hypermat::PreconditionError>(m, "PreconditionError", error);
  py::register_exception<hypermat::NumericalFailure>(m, "NumericalFailure", error);
  py::register_exception<hypermat::ConfluenceError>(m, "ConfluenceError", error);
  py::register_exception<hypermat::AccuracyError>(m, "AccuracyError", error);
  py::register_exception<hypermat::GenerationError>(m, "GenerationError", error);
  py::register_exception<hypermat::ParseError>(m, "ParseError", error);

  m.def("gamma", &hypermat::gamma_matrix, "p"_a, "Matrix gamma function Gamma(P).");
  m.def("reciprocal_gamma", &hypermat::reciprocal_gamma, "p"_a,
        "Gamma(P)^{-1}, entire in P (defined at non-positive integer eigenvalues).");
  m.def("pochhammer", py::overload_cast<const CMatrix&, int>(&hypermat::pochhammer), "p"_a, "m"_a,
        "Rising factorial (P)_m = P (P + I) ... (P + (m - 1) I).");
  m.def(
      "beta",
      [](const CMatrix& p, const CMatrix& q, const std::string& route) {
        if (route == "gamma") return hypermat::beta_matrix(p, q);
        if (route == "integral") return hypermat::beta_matrix_integral(p, q);
        throw hypermat::PreconditionError("route must be \"gamma\" or \"integral\"");
      },
      "p"_a, "q"_a, "route"_a = "gamma",
      "Matrix beta function B(P, Q) for commuting, positive stable P and Q.");

  m.def(
      "pfq",
      [](const std::vector<CMatrix>& num, const std::vector<CMatrix>& den, hypermat::Complex z,
         double tol, int max_terms) {
        hypermat::SeriesConfig cfg;
        cfg.tol = tol;
        cfg.max_terms = max_terms;
        return series_result(hypermat::pfq(hypermat::HyperParams::make(num, den), z, cfg));
      },
      "num"_a, "den"_a, "z"_a, "tol"_a = 1e-14, "max_terms"_a = 5000,
      "Generalized hypergeometric matrix series; returns a dict with value and diagnostics.");

  m.def(
      "euler_integral",
      [](const CMatrix& p, const CMatrix& q, const CMatrix& r, hypermat::Complex z, int q_exp,
         double tol, const std::string& method) {
        const auto spec = hypermat::EulerIntegralSpec::make(p, q, r, z, q_exp);
        const auto res = hypermat::euler_integral(spec, tol, quadrature_method(method));
        return py::dict("value"_a = res.value, "nodes"_a = res.nodes,
                        "last_difference"_a = res.last_difference,
                        "method"_a = hypermat::to_string(res.method));
      },
      "p"_a, "q"_a, "r"_a, "z"_a, "q_exp"_a = 2, "tol"_a = 1e-12, "method"_a = "tanh-sinh",
      "Gamma(R) Gamma^{-1}(Q) Gamma^{-1}(R-Q) int_0^1 u^{Q-I} (1-u)^{R-Q-I} (1 - z u^q)^{-P} du.");

  m.def(
      "generate_cases_json",
      [](std::uint64_t seed, const std::vector<int>& dims, int cases, double tol,
         const std::vector<std::string>& identities) {
        Json list = Json::array();
        for (const auto& c :
             hypermat::generate_suite_cases(seed, dims, cases, tol, identity_list(identities))) {
          list.push_back(hypermat::io::encode_case(c));
        }
        Json doc;
        doc["cases"] = std::move(list);
        return doc.dump();
      },
      "seed"_a = 42, "dims"_a = std::vector<int>{1, 2, 3}, "cases"_a = 5, "tol"_a = 1e-7,
      "identities"_a = std::vector<std::string>{});

  m.def(
      "verify_json",
      [](const std::string& text, int threads) {
        const auto cases = hypermat::io::parse_cases(Json::parse(text));
        hypermat::SuiteResult result;
        {
          py::gil_scoped_release release;
          result = hypermat::run_cases(cases, threads);
        }
        return hypermat::io::encode_suite(result).dump();
      },
      "text"_a, "threads"_a = 0);

  m.def(
      "run_suite_json",
      [](std::uint64_t seed, const std::vector<int>& dims, int cases, double tol, int threads,
         const std::vector<std::string>& identities) {
        const auto ids = identity_list(identities);
        hypermat::SuiteResult result;
        {
          py::gil_scoped_release release;
          result = hypermat::run_suite(seed, dims, cases, tol, threads, ids);
        }
        return hypermat::io::encode_suite(result).dump();
      },
      "seed"_a = 42, "dims"_a = std::vector<int>{1, 2, 3}, "cases"_a = 5, "tol"_a = 1e-7,
      "threads"_a = 0, "identities"_a = std::vector<std::string>{});
}
