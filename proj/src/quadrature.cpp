#include "hypermat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "hypermat/errors.hpp"

namespace hypermat {

QuadratureRule gauss_jacobi_rule(int n, double alpha, double beta) {
  if (n < 1) throw DomainError("Gauss-Jacobi rule needs at least one node");
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw DomainError("Gauss-Jacobi exponents must exceed -1");
  }
  // On [-1, 1] the weight is (1 - x)^a (1 + x)^b with a = alpha, b = beta;
  // x = 2u - 1 turns it into 2^{a+b} (1 - u)^alpha u^beta.
  const double a = alpha;
  const double b = beta;
  const double ab = a + b;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  diag(0) = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    double beta_k;
    if (k == 1) {
      beta_k = 4.0 * (1.0 + a) * (1.0 + b) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
    } else {
      beta_k = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(k - 1) = std::sqrt(beta_k);
  }

  QuadratureRule rule;
  rule.alpha = alpha;
  rule.beta = beta;
  const double mu0 = std::beta(beta + 1.0, alpha + 1.0);
  if (n == 1) {
    rule.nodes = {0.5 * (1.0 + diag(0))};
    rule.weights = {mu0};
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("Golub-Welsch eigenproblem did not converge");
  }
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 + es.eigenvalues()(i));
    rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
  }
  return rule;
}

namespace {

constexpr double kMaxExponentArgument = 690.0;  // keeps 1 - u above ~1e-300

// Half-width of the t-interval for which the tail is below ~1e-20.
double truncation_point(double exponent) {
  const double needed = 46.0 / (std::numbers::pi * exponent);
  const double capped = std::min(needed, kMaxExponentArgument / std::numbers::pi);
  return std::asinh(capped);
}

}  // namespace

QuadratureResult tanh_sinh_integrate(const UnitIntegrand& f, double left_exponent,
                                     double right_exponent, double tol, int max_nodes) {
  if (!(left_exponent > 0.0) || !(right_exponent > 0.0)) {
    throw DomainError("endpoint exponents must have positive real part for convergence");
  }
  if (!(tol > 0.0)) throw PreconditionError("quadrature tolerance must be positive");

  const double t_max = std::max(truncation_point(left_exponent), truncation_point(right_exponent));
  // u(t) = 1 / (1 + exp(-pi sinh t)), du/dt = pi cosh t u (1 - u).
  auto term = [&](double t) -> CMatrix {
    const double s = std::numbers::pi * std::sinh(t);
    const double u = 1.0 / (1.0 + std::exp(-s));
    const double v = 1.0 / (1.0 + std::exp(s));
    const double w = std::numbers::pi * std::cosh(t) * u * v;
    if (u == 0.0 || v == 0.0 || w == 0.0) return CMatrix();
    return w * f(u, v);
  };

  constexpr int kInitialHalfCount = 8;
  double h = t_max / kInitialHalfCount;
  CMatrix sum = term(0.0);
  int nodes = 1;
  for (int k = 1; k <= kInitialHalfCount; ++k) {
    for (double t : {k * h, -k * h}) {
      CMatrix v = term(t);
      if (v.size() != 0) sum += v;
      ++nodes;
    }
  }
  QuadratureResult out;
  out.value = h * sum;
  out.nodes = nodes;
  for (int level = 1;; ++level) {
    const int count = kInitialHalfCount << level;  // points on each side at this step
    if (nodes + count > max_nodes) break;
    h *= 0.5;
    for (int k = 1; k < count; k += 2) {
      for (double t : {k * h, -k * h}) {
        CMatrix v = term(t);
        if (v.size() != 0) sum += v;
        ++nodes;
      }
    }
    CMatrix next = h * sum;
    out.last_difference = norm2(next - out.value) / (1.0 + norm2(next));
    out.value = std::move(next);
    out.nodes = nodes;
    if (level >= 3 && out.last_difference <= tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace hypermat
