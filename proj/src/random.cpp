#include "hypermat/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "hypermat/errors.hpp"

namespace hypermat {

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  spare_ = radius * std::sin(2.0 * std::numbers::pi * u2);
  return radius * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

CMatrix random_unitary(Rng& rng, int dim) {
  CMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) g(i, j) = Complex(rng.normal(), rng.normal());
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  // Fix the phase so the distribution does not depend on QR sign conventions.
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

double require_margin(const std::optional<double>& m) { return m.value_or(-1e300); }

}  // namespace

CMatrix random_similarity(Rng& rng, int dim, double max_condition) {
  if (dim == 1) return identity(1);
  const CMatrix u1 = random_unitary(rng, dim);
  const CMatrix u2 = random_unitary(rng, dim);
  const double kappa = rng.uniform(1.0, std::max(1.0, max_condition));
  Eigen::VectorXd s(dim);
  s(0) = 1.0;
  s(dim - 1) = kappa;
  for (int i = 1; i + 1 < dim; ++i) s(i) = std::exp(rng.uniform(0.0, std::log(kappa)));
  return u1 * s.cast<Complex>().asDiagonal() * u2.adjoint();
}

double commutator_defect(const CommutingTriple& t) {
  auto defect = [](const CMatrix& a, const CMatrix& b) {
    return norm2(a * b - b * a) / (1.0 + norm2(a) * norm2(b));
  };
  return std::max({defect(t.p, t.q), defect(t.p, t.r), defect(t.q, t.r)});
}

CommutingTriple make_triple(CMatrix p, CMatrix q, CMatrix r, std::uint64_t seed,
                            CMatrix similarity) {
  require_square_finite(p, "P");
  require_square_finite(q, "Q");
  require_square_finite(r, "R");
  if (p.rows() != q.rows() || p.rows() != r.rows()) {
    throw PreconditionError("P, Q, R must share one dimension");
  }
  CommutingTriple t;
  t.p = std::move(p);
  t.q = std::move(q);
  t.r = std::move(r);
  t.seed = seed;
  t.similarity = similarity.size() == 0 ? identity(static_cast<int>(t.p.rows())) : std::move(similarity);
  if (commutator_defect(t) > 1e-10) {
    throw PreconditionError("P, Q, R do not commute");
  }
  t.stability_margins["Q"] = spectral_lower(t.q);
  t.stability_margins["R"] = spectral_lower(t.r);
  t.stability_margins["R-Q"] = spectral_lower(CMatrix(t.r - t.q));
  t.stability_margins["R-P"] = spectral_lower(CMatrix(t.r - t.p));
  t.stability_margins["R-Q-P"] = spectral_lower(CMatrix(t.r - t.q - t.p));
  return t;
}

CommutingTriple random_commuting_triple(std::uint64_t seed, int dim,
                                        const StabilityConstraints& c) {
  if (dim < 1) throw PreconditionError("dimension must be >= 1");
  Rng rng(seed);
  const double q_lo = c.q.value_or(0.1);
  const double rq_lo = std::max(c.r_minus_q.value_or(0.1), 0.0);

  for (int attempt = 0; attempt < c.max_retries; ++attempt) {
    Eigen::VectorXcd dp(dim);
    Eigen::VectorXcd dq(dim);
    Eigen::VectorXcd dr(dim);
    bool ok = true;
    for (int i = 0; i < dim && ok; ++i) {
      const Complex qi(rng.uniform(q_lo, q_lo + c.q_real_span),
                       rng.uniform(-c.imag_spread, c.imag_spread));
      const Complex di(rng.uniform(rq_lo, rq_lo + c.r_minus_q_real_span),
                       rng.uniform(-c.imag_spread, c.imag_spread));
      const Complex ri = qi + di;
      if (ri.real() < require_margin(c.r)) {
        ok = false;
        break;
      }
      double p_hi = c.p_real_max;
      p_hi = std::min(p_hi, ri.real() - require_margin(c.r_minus_p));
      p_hi = std::min(p_hi, di.real() - require_margin(c.r_minus_q_minus_p));
      if (p_hi < c.p_real_min) {
        ok = false;
        break;
      }
      const Complex pi(rng.uniform(c.p_real_min, p_hi), rng.uniform(-c.imag_spread, c.imag_spread));
      dp(i) = pi;
      dq(i) = qi;
      dr(i) = ri;
    }
    if (!ok) continue;

    const CMatrix v = random_similarity(rng, dim, c.max_condition);
    const CMatrix v_inv = v.inverse();
    auto conj = [&](const Eigen::VectorXcd& d) -> CMatrix {
      return v * d.asDiagonal() * v_inv;
    };
    CommutingTriple t = make_triple(conj(dp), conj(dq), conj(dr), seed, v);

    auto meets = [&](const char* label, const std::optional<double>& margin) {
      return !margin || t.stability_margins.at(label) >= *margin;
    };
    if (meets("Q", c.q) && meets("R", c.r) && meets("R-Q", c.r_minus_q) &&
        meets("R-P", c.r_minus_p) && meets("R-Q-P", c.r_minus_q_minus_p)) {
      return t;
    }
  }
  throw GenerationError("could not satisfy stability constraints after " +
                        std::to_string(c.max_retries) + " attempts");
}

}  // namespace hypermat
