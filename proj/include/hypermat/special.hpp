#pragma once

#include <vector>

#include "hypermat/matrix.hpp"
#include "hypermat/matrix_function.hpp"

namespace hypermat {

namespace scalar {

/// Lanczos approximation (g = 7, 9 terms) with reflection for Re(z) < 1/2.
/// Throws DomainError at non-positive integers.
Complex gamma(Complex z);
/// 1/Gamma(z); entire, exactly zero at non-positive integers.
Complex rgamma(Complex z);
/// Rising factorial (a)_m.
Complex pochhammer(Complex a, int m);

}  // namespace scalar

/// Scalar gamma/reciprocal gamma packaged for the matrix functional calculus.
ScalarFunction gamma_function();
ScalarFunction reciprocal_gamma_function();

/// Gamma(P). Domain error if an eigenvalue is a pole of the scalar gamma.
CMatrix gamma_matrix(const CMatrix& p);

/// Gamma(P)^{-1}, defined for every P.
CMatrix reciprocal_gamma(const CMatrix& p);

/// (P)_m = P (P + I) ... (P + (m-1) I), by the multiplicative recurrence.
CMatrix pochhammer(const CMatrix& p, int m);

/// binom(-P, m) = (-1)^m (P)_m / m!.
CMatrix matrix_binomial(const CMatrix& p, int m);

/// Memoised Pochhammer values of one base matrix: values()[m] = (base)_m.
class PochhammerCache {
 public:
  explicit PochhammerCache(CMatrix base);

  const CMatrix& base() const noexcept { return base_; }
  /// (base)_m, extending the table on demand.
  const CMatrix& at(int m);
  /// Ensures (base)_0 .. (base)_m are present.
  void extend_to(int m);
  const std::vector<CMatrix>& values() const noexcept { return values_; }

 private:
  CMatrix base_;
  std::vector<CMatrix> values_;
};

/// B(P, Q) = Gamma(P) Gamma(Q) Gamma(P + Q)^{-1} for commuting P, Q.
CMatrix beta_matrix(const CMatrix& p, const CMatrix& q);

/// B(P, Q) as the integral of t^{P-I} (1-t)^{Q-I} over [0, 1] (double
/// exponential quadrature). P, Q commuting and positive stable.
CMatrix beta_matrix_integral(const CMatrix& p, const CMatrix& q, double tol = 1e-12);

/// (m-1)! (P)_m^{-1} m^P, the m-th term of the limit defining Gamma(P).
CMatrix gamma_limit_form(const CMatrix& p, int m);

/// m^{mn} prod_{j<m} ((P + jI)/m)_n; equals (P)_{mn}.
CMatrix pochhammer_multiplication(const CMatrix& p, int m, int n);

/// Throws PreconditionError if p and q fail the 1e-10 commutation test.
void require_commuting(const CMatrix& p, const CMatrix& q, const char* what);

}  // namespace hypermat
