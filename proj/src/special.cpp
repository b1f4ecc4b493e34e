#include "hypermat/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "hypermat/errors.hpp"
#include "hypermat/quadrature.hpp"

namespace hypermat {

namespace scalar {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// sin(pi z) with the real part reduced mod 2 first, so values near integers
// keep their relative accuracy.
Complex sin_pi(Complex z) {
  const double shift = 2.0 * std::round(0.5 * z.real());
  return std::sin(std::numbers::pi * Complex(z.real() - shift, z.imag()));
}

Complex lanczos(Complex z) {
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

Complex gamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw DomainError("gamma has a pole at " + std::to_string(z.real()));
  }
  if (z.real() < 0.5) return std::numbers::pi / (sin_pi(z) * lanczos(1.0 - z));
  return lanczos(z);
}

Complex rgamma(Complex z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5) return sin_pi(z) * lanczos(1.0 - z) / std::numbers::pi;
  return 1.0 / lanczos(z);
}

Complex pochhammer(Complex a, int m) {
  Complex out = 1.0;
  for (int k = 0; k < m; ++k) out *= a + static_cast<double>(k);
  return out;
}

}  // namespace scalar

namespace {

// Half the distance to the nearest pole of gamma, at most 1.
double gamma_contour_radius(Complex z) {
  double nearest = std::min(0.0, std::round(z.real()));
  double d = std::abs(z - nearest);
  if (z.real() > 0.0) d = std::min(d, std::abs(z));
  return std::min(1.0, 0.5 * d);
}

}  // namespace

ScalarFunction gamma_function() {
  ScalarFunction f;
  f.name = "gamma";
  f.value = [](Complex z) { return scalar::gamma(z); };
  f.contour_radius = gamma_contour_radius;
  return f;
}

ScalarFunction reciprocal_gamma_function() {
  ScalarFunction f;
  f.name = "rgamma";
  f.value = [](Complex z) { return scalar::rgamma(z); };
  f.contour_radius = [](Complex) { return 1.0; };
  return f;
}

void require_commuting(const CMatrix& p, const CMatrix& q, const char* what) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) {
    throw PreconditionError(std::string(what) + ": dimension mismatch");
  }
  if (!commute(p, q, 1e-10)) {
    throw PreconditionError(std::string(what) + ": arguments do not commute");
  }
}

CMatrix gamma_matrix(const CMatrix& p) {
  require_square_finite(p, "gamma argument");
  return holomorphic_apply(gamma_function(), p);
}

CMatrix reciprocal_gamma(const CMatrix& p) {
  require_square_finite(p, "reciprocal gamma argument");
  return holomorphic_apply(reciprocal_gamma_function(), p);
}

CMatrix pochhammer(const CMatrix& p, int m) {
  require_square_finite(p, "Pochhammer base");
  if (m < 0) throw PreconditionError("Pochhammer index must be non-negative");
  const auto n = p.rows();
  CMatrix out = CMatrix::Identity(n, n);
  CMatrix shifted = p;
  for (int k = 0; k < m; ++k) {
    out = out * shifted;
    shifted.diagonal().array() += 1.0;
  }
  return out;
}

CMatrix matrix_binomial(const CMatrix& p, int m) {
  require_square_finite(p, "binomial argument");
  if (m < 0) throw PreconditionError("binomial index must be non-negative");
  const auto n = p.rows();
  CMatrix out = CMatrix::Identity(n, n);
  CMatrix shifted = p;
  for (int k = 0; k < m; ++k) {
    out = (out * shifted) * (-1.0 / static_cast<double>(k + 1));
    shifted.diagonal().array() += 1.0;
  }
  return out;
}

PochhammerCache::PochhammerCache(CMatrix base) : base_(std::move(base)) {
  require_square_finite(base_, "Pochhammer base");
  values_.push_back(identity(static_cast<int>(base_.rows())));
}

void PochhammerCache::extend_to(int m) {
  while (static_cast<int>(values_.size()) <= m) {
    const int k = static_cast<int>(values_.size()) - 1;
    CMatrix shifted = base_;
    shifted.diagonal().array() += static_cast<double>(k);
    values_.push_back(values_.back() * shifted);
  }
}

const CMatrix& PochhammerCache::at(int m) {
  if (m < 0) throw PreconditionError("Pochhammer index must be non-negative");
  extend_to(m);
  return values_[static_cast<std::size_t>(m)];
}

CMatrix beta_matrix(const CMatrix& p, const CMatrix& q) {
  require_square_finite(p, "beta P");
  require_square_finite(q, "beta Q");
  require_commuting(p, q, "beta_matrix");
  const CMatrix sum = p + q;
  // Gamma(P + Q) must exist for the quotient to be meaningful.
  for (const Complex& z : eigenvalues(sum)) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
      throw DomainError("P + Q has an eigenvalue at a pole of gamma");
    }
  }
  return gamma_matrix(p) * gamma_matrix(q) * reciprocal_gamma(sum);
}

CMatrix beta_matrix_integral(const CMatrix& p, const CMatrix& q, double tol) {
  require_square_finite(p, "beta P");
  require_square_finite(q, "beta Q");
  require_commuting(p, q, "beta_matrix_integral");
  const SchurForm pm(CMatrix(p - identity(static_cast<int>(p.rows()))));
  const SchurForm qm(CMatrix(q - identity(static_cast<int>(q.rows()))));
  const double bp = pm.lower_real() + 1.0;
  const double bq = qm.lower_real() + 1.0;
  if (!(bp > 0.0) || !(bq > 0.0)) {
    throw DomainError("beta integral requires positive stable P and Q");
  }
  auto integrand = [&](double u, double v) -> CMatrix {
    return matrix_power_scalar(pm, std::log(u)) * matrix_power_scalar(qm, std::log(v));
  };
  QuadratureResult r = tanh_sinh_integrate(integrand, bp, bq, tol);
  if (!r.converged) {
    throw AccuracyError("beta integral did not converge", r.last_difference);
  }
  return r.value;
}

CMatrix gamma_limit_form(const CMatrix& p, int m) {
  require_square_finite(p, "gamma limit argument");
  if (m < 1) throw PreconditionError("limit index must be >= 1");
  // (P)_m / (m-1)! = P prod_{k=1}^{m-1} (P + kI)/k, accumulated factor by factor.
  const auto n = p.rows();
  CMatrix scaled = CMatrix::Identity(n, n);
  CMatrix shifted = p;
  for (int k = 0; k < m; ++k) {
    const double scale = k == 0 ? 1.0 : static_cast<double>(k);
    scaled = scaled * (shifted / scale);
    shifted.diagonal().array() += 1.0;
  }
  Eigen::FullPivLU<CMatrix> lu(scaled);
  if (!lu.isInvertible()) throw DomainError("(P)_m is singular");
  return lu.inverse() * matrix_power_scalar(static_cast<double>(m), p);
}

CMatrix pochhammer_multiplication(const CMatrix& p, int m, int n) {
  require_square_finite(p, "Pochhammer base");
  if (m < 1 || n < 0) throw PreconditionError("need m >= 1 and n >= 0");
  const auto d = p.rows();
  CMatrix out = CMatrix::Identity(d, d) * std::pow(static_cast<double>(m), static_cast<double>(m) * n);
  for (int j = 0; j < m; ++j) {
    CMatrix base = p;
    base.diagonal().array() += static_cast<double>(j);
    out = out * pochhammer(CMatrix(base / static_cast<double>(m)), n);
  }
  return out;
}

}  // namespace hypermat
