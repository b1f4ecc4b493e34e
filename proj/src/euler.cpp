#include "hypermat/euler.hpp"

#include <cmath>
#include <limits>

#include "hypermat/errors.hpp"
#include "hypermat/matrix_function.hpp"
#include "hypermat/quadrature.hpp"
#include "hypermat/special.hpp"

namespace hypermat {

namespace {

bool is_one(Complex z) { return z == Complex(1.0); }

// Everything the integrand needs, prepared once per spec.
struct Kernel {
  SchurForm left;   // exponent Q - I
  SchurForm right;  // exponent R - Q - I, or R - Q - P - I at z = 1
  SchurForm p;
  Complex z;
  int q_exp;
  bool at_one;

  // (1 - z u^k)^{-P}, or (1 + u + .. + u^{k-1})^{-P} once (1-u)^{-P} moved right.
  CMatrix kernel(double u) const {
    if (at_one) {
      double s = 0.0;
      double power = 1.0;
      for (int j = 0; j < q_exp; ++j) {
        s += power;
        power *= u;
      }
      return matrix_power_scalar(p, -std::log(s));
    }
    if (z == Complex(0.0)) return identity(p.dim());
    const Complex base = 1.0 - z * std::pow(u, q_exp);
    return matrix_power_scalar(p, -std::log(base));
  }
};

}  // namespace

std::string to_string(QuadratureMethod method) {
  return method == QuadratureMethod::kGaussJacobi ? "gauss-jacobi" : "tanh-sinh";
}

EulerIntegralSpec EulerIntegralSpec::make(CMatrix p, CMatrix q_mat, CMatrix r_mat, Complex z,
                                          int q_exp) {
  require_square_finite(p, "P");
  require_square_finite(q_mat, "Q");
  require_square_finite(r_mat, "R");
  if (p.rows() != q_mat.rows() || p.rows() != r_mat.rows()) {
    throw PreconditionError("P, Q, R must share one dimension");
  }
  if (q_exp < 1) throw PreconditionError("kernel exponent must be a positive integer");
  require_commuting(p, q_mat, "euler integral P, Q");
  require_commuting(p, r_mat, "euler integral P, R");
  require_commuting(q_mat, r_mat, "euler integral Q, R");
  const CMatrix rq = r_mat - q_mat;
  if (!is_positive_stable(q_mat) || !is_positive_stable(r_mat) || !is_positive_stable(rq)) {
    throw PreconditionError("Q, R and R - Q must be positive stable");
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("z must be finite");
  }
  if (z.imag() == 0.0 && z.real() > 1.0) {
    throw DomainError("1 - z u^k crosses the branch cut for real z > 1");
  }
  if (is_one(z) && !is_positive_stable(CMatrix(rq - p))) {
    throw DomainError("at z = 1 the integral needs R - Q - P positive stable");
  }
  EulerIntegralSpec spec;
  spec.prefactor = gamma_matrix(r_mat) * reciprocal_gamma(q_mat) * reciprocal_gamma(rq);
  spec.p = std::move(p);
  spec.q_mat = std::move(q_mat);
  spec.r_mat = std::move(r_mat);
  spec.z = z;
  spec.q_exp = q_exp;
  return spec;
}

EulerResult euler_integral(const EulerIntegralSpec& spec, double tol, QuadratureMethod method) {
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  const int n = static_cast<int>(spec.p.rows());
  const CMatrix id = identity(n);
  const bool at_one = is_one(spec.z);
  CMatrix right_exponent = spec.r_mat - spec.q_mat - id;
  if (at_one) right_exponent -= spec.p;

  const Kernel k{SchurForm(CMatrix(spec.q_mat - id)), SchurForm(right_exponent), SchurForm(spec.p),
                 spec.z, spec.q_exp, at_one};
  const double left_b = k.left.lower_real() + 1.0;
  const double right_b = k.right.lower_real() + 1.0;

  EulerResult out;
  out.method = method;
  if (method == QuadratureMethod::kDoubleExponential) {
    auto integrand = [&](double u, double v) -> CMatrix {
      return matrix_power_scalar(k.left, std::log(u)) * matrix_power_scalar(k.right, std::log(v)) *
             k.kernel(u);
    };
    QuadratureResult r = tanh_sinh_integrate(integrand, left_b, right_b, tol);
    if (!r.converged) {
      throw AccuracyError("Euler integral did not reach tolerance with " + std::to_string(r.nodes) +
                              " nodes",
                          r.last_difference);
    }
    out.value = spec.prefactor * r.value;
    out.nodes = r.nodes;
    out.last_difference = r.last_difference;
    return out;
  }

  // Gauss-Jacobi: scalar singular parts go into the weight, the matrix
  // remainder u^{Q - b(Q) I} (1-u)^{A - b(A) I} K(u) is evaluated at the nodes.
  const double beta = left_b - 1.0;
  const double alpha = right_b - 1.0;
  const SchurForm left_rest(CMatrix(spec.q_mat - left_b * id));
  const SchurForm right_rest(CMatrix(right_exponent + id - right_b * id));
  CMatrix previous;
  double diff = std::numeric_limits<double>::infinity();
  for (int nodes = 16; nodes <= 1024; nodes *= 2) {
    const QuadratureRule rule = gauss_jacobi_rule(nodes, alpha, beta);
    CMatrix sum = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double u = rule.nodes[i];
      sum += rule.weights[i] * matrix_power_scalar(left_rest, std::log(u)) *
             matrix_power_scalar(right_rest, std::log1p(-u)) * k.kernel(u);
    }
    const CMatrix value = spec.prefactor * sum;
    out.nodes = nodes;
    if (previous.size() != 0) {
      diff = norm2(value - previous) / (1.0 + norm2(value));
      out.last_difference = diff;
      if (diff <= tol) {
        out.value = value;
        return out;
      }
    }
    previous = value;
  }
  throw AccuracyError("Gauss-Jacobi Euler integral did not converge at 1024 nodes", diff);
}

}  // namespace hypermat
