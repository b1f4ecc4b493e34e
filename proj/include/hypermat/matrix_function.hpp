#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypermat/matrix.hpp"

namespace hypermat {

/// A scalar holomorphic function lifted to matrices by the Schur-Parlett
/// method.
///
/// `value` is mandatory. Eigenvalue clusters need Taylor coefficients about
/// the cluster mean; they come from `taylor` when supplied, otherwise from a
/// trapezoidal Cauchy integral on a circle of radius `contour_radius(center)`
/// (default 1). Functions with poles must shrink that radius so the circle
/// stays inside the domain of holomorphy.
struct ScalarFunction {
  std::function<Complex(Complex)> value;
  /// Fills coeffs[k] = f^(k)(center) / k! for k < coeffs.size().
  std::function<void(Complex center, std::span<Complex> coeffs)> taylor;
  std::function<double(Complex center)> contour_radius;
  bool contour_derivatives = true;
  std::string name = "f";
};

/// x -> exp(c x), with exact Taylor coefficients.
ScalarFunction exp_scaled(Complex c);
/// x -> x.
ScalarFunction identity_function();

/// Reordered complex Schur form of a matrix, prepared for repeated
/// evaluation of matrix functions (one decomposition, many f(A)).
///
/// Eigenvalues within 1e-4 * ||T||_F of each other (transitively) form a
/// cluster; the Schur form is permuted with Givens swaps so every cluster is
/// a contiguous diagonal block.
class SchurForm {
 public:
  explicit SchurForm(const CMatrix& a);

  int dim() const noexcept { return static_cast<int>(t_.rows()); }
  const CMatrix& unitary() const noexcept { return u_; }
  const CMatrix& triangular() const noexcept { return t_; }
  const std::vector<Complex>& eigenvalues() const noexcept { return eigenvalues_; }
  /// (start, size) of each cluster block on the diagonal of triangular().
  const std::vector<std::pair<int, int>>& blocks() const noexcept { return blocks_; }
  double lower_real() const;

  /// f(A) = U f(T) U*.
  CMatrix apply(const ScalarFunction& f) const;

 private:
  CMatrix u_;
  CMatrix t_;
  std::vector<Complex> eigenvalues_;
  std::vector<std::pair<int, int>> blocks_;
};

/// f(p) through the Schur-Parlett recurrence.
CMatrix holomorphic_apply(const ScalarFunction& f, const CMatrix& p);

/// t^p = exp(p ln t) for t > 0; t == 1 returns I exactly.
CMatrix matrix_power_scalar(double t, const CMatrix& p);
/// exp(p * log_base) on a prepared Schur form.
CMatrix matrix_power_scalar(const SchurForm& p, Complex log_base);

}  // namespace hypermat
