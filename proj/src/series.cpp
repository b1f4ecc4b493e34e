#include "hypermat/series.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hypermat/errors.hpp"
#include "hypermat/matrix_function.hpp"

namespace hypermat {

namespace {

constexpr double kUnitCircleMargin = 0.15;
constexpr double kAlternatingThreshold = -0.75;
constexpr int kMaxEulerTerms = 1000;
constexpr int kEulerStagnation = 8;
constexpr double kEulerFloorFactor = 100.0;
// Terms kept for the Levin transform at z = 1; the transform is unstable in
// double precision well before this order.
constexpr int kLevinTerms = 40;

struct LevinEstimate {
  CMatrix value;
  double error = 0.0;
};

// Levin u-transform with remainder estimates w_m = (m + 1) T_m. The tail of a
// unit-argument series has an asymptotic expansion T_m (c_0 + c_1/m + ...) with
// coefficients commuting with every parameter, so the scalar transform carries
// over with matrix division:
//   L_k = [sum_j c_j S_j w_j^{-1}] [sum_j c_j w_j^{-1}]^{-1},
//   c_j = (-1)^j C(k, j) ((j + 1)/(k + 1))^{k-1}.
// Returns the order whose value moved least from the previous order; the
// error estimate is that movement.
std::optional<LevinEstimate> levin_unit(const std::vector<CMatrix>& terms) {
  const auto count = static_cast<int>(terms.size());
  if (count < 4) return std::nullopt;
  const auto n = terms.front().rows();
  std::vector<CMatrix> partial;
  std::vector<CMatrix> inv_remainder;
  CMatrix s = CMatrix::Zero(n, n);
  for (int m = 0; m < count; ++m) {
    s += terms[static_cast<std::size_t>(m)];
    partial.push_back(s);
    const CMatrix w = static_cast<double>(m + 1) * terms[static_cast<std::size_t>(m)];
    const Eigen::PartialPivLU<CMatrix> lu(w);
    CMatrix inv = lu.inverse();
    if (!all_finite(inv) || std::abs(lu.determinant()) == 0.0) return std::nullopt;
    inv_remainder.push_back(std::move(inv));
  }
  std::optional<LevinEstimate> best;
  CMatrix previous;
  for (int k = 1; k < count; ++k) {
    CMatrix num = CMatrix::Zero(n, n);
    CMatrix den = CMatrix::Zero(n, n);
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      const double c = ((j % 2 == 0) ? binom : -binom) *
                       std::pow(static_cast<double>(j + 1) / static_cast<double>(k + 1), k - 1);
      num += c * partial[static_cast<std::size_t>(j)] * inv_remainder[static_cast<std::size_t>(j)];
      den += c * inv_remainder[static_cast<std::size_t>(j)];
      binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
    }
    const CMatrix value = num * den.partialPivLu().inverse();
    if (!all_finite(value)) break;
    if (k > 1) {
      const double moved = (value - previous).norm();
      if (!best || moved < best->error) best = LevinEstimate{value, moved};
    }
    previous = value;
  }
  return best;
}

bool is_unit(Complex z) { return std::abs(std::abs(z) - 1.0) <= 1e-14; }

}  // namespace

HyperParams HyperParams::make(std::vector<CMatrix> numerator, std::vector<CMatrix> denominator) {
  HyperParams hp;
  hp.numerator = std::move(numerator);
  hp.denominator = std::move(denominator);
  std::vector<const CMatrix*> all;
  for (const auto& m : hp.numerator) all.push_back(&m);
  for (const auto& m : hp.denominator) all.push_back(&m);
  if (all.empty()) throw PreconditionError("HyperParams needs at least one parameter to fix dim");
  hp.dim = static_cast<int>(all.front()->rows());
  for (std::size_t i = 0; i < all.size(); ++i) {
    require_square_finite(*all[i], "hypergeometric parameter");
    if (all[i]->rows() != hp.dim) throw PreconditionError("hypergeometric parameters differ in dim");
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (!commute(*all[i], *all[j], 1e-10)) {
        throw PreconditionError("hypergeometric parameters " + std::to_string(i) + " and " +
                                std::to_string(j) + " do not commute");
      }
    }
  }
  return hp;
}

SeriesAccumulator::SeriesAccumulator(Mode mode, double tol, int consecutive_small,
                                     std::optional<double> tail_exponent,
                                     std::optional<double> stagnation_tol)
    : mode_(mode),
      tol_(tol),
      consecutive_small_(consecutive_small),
      tail_exponent_(tail_exponent),
      stagnation_tol_(stagnation_tol.value_or(kEulerFloorFactor * tol)) {
  if (!(tol > 0.0)) throw PreconditionError("series tolerance must be positive");
  if (consecutive_small < 1) throw PreconditionError("consecutive_small must be >= 1");
  if (tail_exponent && !(*tail_exponent > 0.0)) {
    throw PreconditionError("tail exponent must be positive");
  }
}

bool SeriesAccumulator::add(const CMatrix& term) {
  if (converged_ || failed_) return converged_;
  if (!all_finite(term)) {
    failed_ = true;
    return false;
  }
  const int index = terms_;
  CMatrix contribution;
  if (mode_ == Mode::kPlain) {
    contribution = term;
  } else {
    if (index >= kMaxEulerTerms) return false;
    // a_m = (-1)^m t_m; extend the diagonal of the forward-difference table.
    CMatrix a = (index % 2 == 0) ? term : CMatrix(-term);
    std::vector<CMatrix> next;
    next.reserve(diagonal_.size() + 1);
    next.push_back(std::move(a));
    for (std::size_t j = 0; j < diagonal_.size(); ++j) next.push_back(next[j] - diagonal_[j]);
    diagonal_ = std::move(next);
    const double sign = (index % 2 == 0) ? 1.0 : -1.0;
    contribution = std::ldexp(sign, -(index + 1)) * diagonal_.back();
  }
  if (sum_.size() == 0) {
    sum_ = contribution;
  } else {
    sum_ += contribution;
  }
  ++terms_;

  double measure = contribution.norm();
  if (tail_exponent_ && index > 0) measure *= static_cast<double>(index) / *tail_exponent_;
  last_norm_ = measure;
  if (measure <= tol_ * (1.0 + sum_.norm())) {
    ++small_run_;
  } else {
    small_run_ = 0;
  }
  if (small_run_ >= consecutive_small_) converged_ = true;
  if (mode_ == Mode::kEuler && !converged_) {
    // Judge stagnation on pairs of transformed terms: some series have every
    // other difference vanish, and a lone zero is not a minimum of the error.
    const double paired = std::max(measure, previous_norm_);
    previous_norm_ = measure;
    if (index == 0) return converged_;
    if (best_index_ < 0 || paired < best_norm_) {
      best_norm_ = paired;
      best_index_ = index;
      best_sum_ = sum_;
    } else if (index - best_index_ >= kEulerStagnation &&
               best_norm_ <= stagnation_tol_ * (1.0 + best_sum_.norm())) {
      stagnated_ = true;
      converged_ = true;
    }
  }
  return converged_;
}

std::optional<int> terminating_index(const CMatrix& m) {
  const auto n = m.rows();
  const Complex mean = m.trace() / static_cast<double>(n);
  const double k = std::round(-mean.real());
  if (k < 0.0 || std::abs(mean + k) > 1e-12 * (1.0 + k)) return std::nullopt;
  CMatrix shifted = m;
  shifted.diagonal().array() += k;
  if (shifted.cwiseAbs().maxCoeff() > 1e-12 * (1.0 + k)) return std::nullopt;
  return static_cast<int>(k);
}

SeriesResult pfq(const HyperParams& params, Complex z, const SeriesConfig& config) {
  if (!(config.tol > 0.0) || config.max_terms < 1 || config.consecutive_small < 1) {
    throw PreconditionError("invalid SeriesConfig");
  }
  const int n = params.dim;
  const auto p = static_cast<int>(params.numerator.size());
  const auto q = static_cast<int>(params.denominator.size());

  std::optional<int> terminates;
  for (const auto& num : params.numerator) {
    if (auto k = terminating_index(num)) {
      terminates = terminates ? std::min(*terminates, *k) : *k;
    }
  }

  std::optional<double> tail_exponent;
  if (!terminates && z != Complex(0.0)) {
    if (p > q + 1) {
      throw DomainError("pFq with p > q + 1 diverges for z != 0");
    }
    if (p == q + 1) {
      if (std::abs(z) > 1.0 + 1e-14) {
        throw DomainError("pFq with p = q + 1 requires |z| <= 1");
      }
      const bool euler_at_minus_one = config.accelerate_alternating && z == Complex(-1.0);
      if (is_unit(z) && !euler_at_minus_one) {
        CMatrix excess = CMatrix::Zero(n, n);
        for (const auto& d : params.denominator) excess += d;
        for (const auto& u : params.numerator) excess -= u;
        const double margin = spectral_lower(excess);
        if (margin < kUnitCircleMargin) {
          throw PreconditionError("|z| = 1 needs b(sum Q_j - sum P_i) >= 0.15, got " +
                                  std::to_string(margin));
        }
        if (z == Complex(1.0)) tail_exponent = margin;
      }
    }
  }

  // Denominator spectra, for the singular-shift check.
  std::vector<std::vector<Complex>> den_spectra;
  for (const auto& d : params.denominator) den_spectra.push_back(eigenvalues(d));

  const bool euler = config.accelerate_alternating && z.imag() == 0.0 &&
                     z.real() <= kAlternatingThreshold && !terminates;
  SeriesAccumulator acc(euler ? SeriesAccumulator::Mode::kEuler : SeriesAccumulator::Mode::kPlain,
                        config.tol, config.consecutive_small, tail_exponent);

  // Unit-argument series converge algebraically; keep the leading terms for
  // the Levin transform in case direct summation stalls.
  const bool keep_terms = tail_exponent && z == Complex(1.0);
  std::vector<CMatrix> leading;

  CMatrix term = identity(n);
  for (int m = 0; m < config.max_terms; ++m) {
    if (keep_terms && m < kLevinTerms) leading.push_back(term);
    if (acc.add(term)) break;
    if (terminates && m >= *terminates) {
      acc.finish_exact();
      break;
    }
    // T_{m+1} = T_m prod (P_i + mI) prod (Q_j + mI)^{-1} z / (m + 1)
    for (const auto& num : params.numerator) {
      CMatrix shifted = num;
      shifted.diagonal().array() += static_cast<double>(m);
      term = term * shifted;
    }
    for (std::size_t j = 0; j < params.denominator.size(); ++j) {
      for (const Complex& lambda : den_spectra[j]) {
        if (std::abs(lambda + static_cast<double>(m)) <= 1e-12 * (1.0 + std::abs(lambda))) {
          throw DomainError("denominator parameter " + std::to_string(j) + " + " +
                            std::to_string(m) + "I is singular");
        }
      }
      CMatrix shifted = params.denominator[j];
      shifted.diagonal().array() += static_cast<double>(m);
      term = term * shifted.partialPivLu().inverse();
    }
    term *= z / static_cast<double>(m + 1);
    if (term.cwiseAbs().maxCoeff() == 0.0) {
      acc.finish_exact();
      break;
    }
  }

  SeriesResult out;
  out.value = acc.value();
  out.terms_used = acc.terms();
  out.last_term_norm = acc.last_term_norm();
  out.converged = acc.converged();
  out.accelerated = euler;
  if (keep_terms && !out.converged) {
    if (auto levin = levin_unit(leading); levin && levin->error < out.last_term_norm) {
      out.value = levin->value;
      out.last_term_norm = levin->error;
      out.converged = levin->error <= config.tol * (1.0 + levin->value.norm());
      out.accelerated = true;
    }
  }
  return out;
}

SeriesResult two_f_one(const CMatrix& a, const CMatrix& b, const CMatrix& c, Complex z,
                       const SeriesConfig& config) {
  return pfq(HyperParams::make({a, b}, {c}), z, config);
}

}  // namespace hypermat
