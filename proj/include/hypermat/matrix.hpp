#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace hypermat {

using Complex = std::complex<double>;

/// Dense square complex matrix. Every public entry point validates that its
/// matrix arguments are square and finite.
using CMatrix = Eigen::MatrixXcd;

CMatrix identity(int dim);
CMatrix scalar_matrix(int dim, Complex value);

/// Throws PreconditionError if `m` is not square or has non-finite entries.
void require_square_finite(const CMatrix& m, std::string_view what);
bool all_finite(const CMatrix& m);

/// Spectral (operator two-) norm.
double norm2(const CMatrix& m);

/// ||x - y||_2 / (1 + max(||x||_2, ||y||_2)); the library-wide residual.
double relative_residual(const CMatrix& x, const CMatrix& y);

/// True when ||ab - ba||_2 <= rel_tol * (1 + ||a|| ||b||).
bool commute(const CMatrix& a, const CMatrix& b, double rel_tol = 1e-10);

/// Complex Schur form A = U T U*.
struct SpectralData {
  std::vector<Complex> eigenvalues;
  CMatrix schur_unitary;
  CMatrix schur_triangular;
};

SpectralData schur_decompose(const CMatrix& m);
std::vector<Complex> eigenvalues(const CMatrix& m);

/// a(P): largest real part over the spectrum.
double spectral_abscissa(const CMatrix& p);
/// b(P) = -a(-P): smallest real part over the spectrum.
double spectral_lower(const CMatrix& p);
double spectral_lower(const std::vector<Complex>& spectrum);

/// mu(P): largest eigenvalue of the Hermitian part (P + P*)/2.
double log_norm(const CMatrix& p);
/// mu~(P) = -mu(-P): smallest eigenvalue of the Hermitian part.
double log_norm_lower(const CMatrix& p);

/// Re(lambda) > margin for every eigenvalue. No Hermitian requirement.
bool is_positive_stable(const CMatrix& p, double margin = 0.0);

}  // namespace hypermat
