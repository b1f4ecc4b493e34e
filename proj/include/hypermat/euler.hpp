#pragma once

#include <string>

#include "hypermat/matrix.hpp"

namespace hypermat {

/// Data of the Euler-type integral
///   Gamma(R) Gamma(Q)^{-1} Gamma(R-Q)^{-1}
///     * int_0^1 u^{Q-I} (1-u)^{R-Q-I} (1 - z u^k)^{-P} du
/// with k = q_exp.
struct EulerIntegralSpec {
  CMatrix p;
  CMatrix q_mat;
  CMatrix r_mat;
  Complex z = 0.0;
  int q_exp = 2;
  CMatrix prefactor;  // Gamma(R) Gamma^{-1}(Q) Gamma^{-1}(R - Q)

  /// Validates commutation, positive stability of Q, R, R - Q, the branch
  /// condition (z not real > 1) and, at z = 1, positive stability of R - Q - P.
  /// Computes the prefactor.
  static EulerIntegralSpec make(CMatrix p, CMatrix q_mat, CMatrix r_mat, Complex z, int q_exp);
};

enum class QuadratureMethod {
  /// tanh-sinh over [0, 1], step halving from 17 up to 4097 nodes.
  kDoubleExponential,
  /// Gauss-Jacobi with the scalar parts u^{b(Q)-1}, (1-u)^{b(R-Q)-1} moved into
  /// the weight; node count doubles 16 -> 1024. Fast only when the exponent
  /// spectra differ from their minimum real part by integers.
  kGaussJacobi,
};

struct EulerResult {
  CMatrix value;
  int nodes = 0;
  double last_difference = 0.0;
  QuadratureMethod method = QuadratureMethod::kDoubleExponential;
};

/// Evaluates the integral with prefactor applied on the left. Throws
/// AccuracyError (carrying the last successive difference) when the node
/// ladder is exhausted before successive results agree to `tol`.
EulerResult euler_integral(const EulerIntegralSpec& spec, double tol,
                           QuadratureMethod method = QuadratureMethod::kDoubleExponential);

std::string to_string(QuadratureMethod method);

}  // namespace hypermat
