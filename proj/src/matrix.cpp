#include "hypermat/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hypermat/errors.hpp"

namespace hypermat {

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

CMatrix scalar_matrix(int dim, Complex value) {
  return value * CMatrix::Identity(dim, dim);
}

bool all_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

void require_square_finite(const CMatrix& m, std::string_view what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw PreconditionError(std::string(what) + " must be a non-empty square matrix");
  }
  if (!all_finite(m)) {
    throw PreconditionError(std::string(what) + " has non-finite entries");
  }
}

double norm2(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double relative_residual(const CMatrix& x, const CMatrix& y) {
  return norm2(x - y) / (1.0 + std::max(norm2(x), norm2(y)));
}

bool commute(const CMatrix& a, const CMatrix& b, double rel_tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return norm2(a * b - b * a) <= rel_tol * (1.0 + norm2(a) * norm2(b));
}

SpectralData schur_decompose(const CMatrix& m) {
  require_square_finite(m, "schur argument");
  SpectralData out;
  if (m.rows() == 1) {
    out.schur_unitary = identity(1);
    out.schur_triangular = m;
    out.eigenvalues = {m(0, 0)};
    return out;
  }
  Eigen::ComplexSchur<CMatrix> cs(m);
  if (cs.info() != Eigen::Success) {
    throw NumericalFailure("complex Schur iteration did not converge");
  }
  out.schur_unitary = cs.matrixU();
  out.schur_triangular = cs.matrixT().triangularView<Eigen::Upper>();
  out.eigenvalues.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out.eigenvalues.push_back(out.schur_triangular(i, i));
  }
  return out;
}

std::vector<Complex> eigenvalues(const CMatrix& m) {
  return schur_decompose(m).eigenvalues;
}

double spectral_lower(const std::vector<Complex>& spectrum) {
  double b = std::numeric_limits<double>::infinity();
  for (const Complex& z : spectrum) b = std::min(b, z.real());
  return b;
}

double spectral_abscissa(const CMatrix& p) {
  double a = -std::numeric_limits<double>::infinity();
  for (const Complex& z : eigenvalues(p)) a = std::max(a, z.real());
  return a;
}

double spectral_lower(const CMatrix& p) { return spectral_lower(eigenvalues(p)); }

namespace {

Eigen::VectorXd hermitian_part_spectrum(const CMatrix& p) {
  require_square_finite(p, "log_norm argument");
  const CMatrix h = 0.5 * (p + p.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("Hermitian eigenvalue iteration did not converge");
  }
  return es.eigenvalues();  // ascending
}

}  // namespace

double log_norm(const CMatrix& p) {
  const Eigen::VectorXd ev = hermitian_part_spectrum(p);
  return ev(ev.size() - 1);
}

double log_norm_lower(const CMatrix& p) { return hermitian_part_spectrum(p)(0); }

bool is_positive_stable(const CMatrix& p, double margin) {
  if (margin < 0.0) throw PreconditionError("positive-stability margin must be >= 0");
  return spectral_lower(p) > margin;
}

}  // namespace hypermat
