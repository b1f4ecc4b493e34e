#pragma once

#include <functional>
#include <vector>

#include "hypermat/matrix.hpp"

namespace hypermat {

/// Gauss-Jacobi rule on [0, 1] for the weight u^beta (1 - u)^alpha.
struct QuadratureRule {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> nodes;    // strictly increasing, inside (0, 1)
  std::vector<double> weights;  // positive, summing to B(beta + 1, alpha + 1)
};

/// n-point rule by Golub-Welsch on the Jacobi recurrence, mapped from [-1, 1].
/// Throws DomainError unless alpha, beta > -1 and n >= 1.
QuadratureRule gauss_jacobi_rule(int n, double alpha, double beta);

/// Integrand callback for unit-interval quadrature. Receives u and 1 - u,
/// both computed without cancellation, so singular factors at either end
/// can be formed accurately.
using UnitIntegrand = std::function<CMatrix(double u, double one_minus_u)>;

struct QuadratureResult {
  CMatrix value;
  int nodes = 0;
  double last_difference = 0.0;
  bool converged = false;
};

/// Double exponential (tanh-sinh) quadrature over [0, 1] for integrands that
/// behave like u^{left - 1} near 0 and (1 - u)^{right - 1} near 1, where
/// `left_exponent` and `right_exponent` are the smallest real parts of those
/// exponents (both > 0). The step halves until successive estimates differ by
/// at most tol * (1 + ||I||) or max_nodes is reached.
QuadratureResult tanh_sinh_integrate(const UnitIntegrand& f, double left_exponent,
                                     double right_exponent, double tol, int max_nodes = 4097);

}  // namespace hypermat
