#pragma once

#include <optional>
#include <vector>

#include "hypermat/matrix.hpp"

namespace hypermat {

/// Numerator (P_1..P_p) and denominator (Q_1..Q_q) parameters of pFq.
struct HyperParams {
  std::vector<CMatrix> numerator;
  std::vector<CMatrix> denominator;
  int dim = 0;

  /// Validates shapes, finiteness and pairwise commutation
  /// (1e-10 * (1 + ||A|| ||B||)); throws PreconditionError otherwise.
  static HyperParams make(std::vector<CMatrix> numerator, std::vector<CMatrix> denominator);
};

struct SeriesConfig {
  double tol = 1e-14;
  int max_terms = 5000;
  int consecutive_small = 3;
  /// Sum real z <= -0.75 through the Euler transform.
  bool accelerate_alternating = true;
};

struct SeriesResult {
  CMatrix value;
  int terms_used = 0;
  /// Frobenius norm of the last term (or of the last transformed term when
  /// the Euler transform was used, of the tail estimate at z = 1, or the
  /// Levin error estimate when that transform produced the value).
  double last_term_norm = 0.0;
  bool converged = false;
  bool accelerated = false;
};

/// Running sum of a matrix series with a small-term stopping rule.
///
/// kPlain stops once ||t_m||_F <= tol (1 + ||S_m||_F) for `consecutive_small`
/// successive terms. With a tail exponent s > 0 (terms ~ m^{-1-s}) the test
/// uses the tail estimate m ||t_m|| / s instead. kEuler treats the input as an
/// alternating series sum (-1)^m a_m and sums its Euler transform
/// sum_k (-1)^k Delta^k a_0 / 2^{k+1}, applying the same test to the
/// transformed terms. Because the difference table loses digits as terms
/// grow, kEuler also stops when the transformed terms (taken in adjacent
/// pairs) have risen for eight steps past a minimum that is within
/// `stagnation_tol` (default 100 tol) of the sum; the value is then the
/// partial sum at that minimum. A non-finite term ends the series
/// unconverged.
class SeriesAccumulator {
 public:
  enum class Mode { kPlain, kEuler };

  SeriesAccumulator(Mode mode, double tol, int consecutive_small,
                    std::optional<double> tail_exponent = std::nullopt,
                    std::optional<double> stagnation_tol = std::nullopt);

  /// Adds the next term; returns true once the stopping rule is met.
  bool add(const CMatrix& term);
  /// Marks the sum as exact (all remaining terms vanish).
  void finish_exact() { converged_ = true; }

  const CMatrix& value() const noexcept { return stagnated_ ? best_sum_ : sum_; }
  int terms() const noexcept { return terms_; }
  double last_term_norm() const noexcept { return last_norm_; }
  bool converged() const noexcept { return converged_; }
  Mode mode() const noexcept { return mode_; }

 private:
  Mode mode_;
  double tol_;
  int consecutive_small_;
  std::optional<double> tail_exponent_;
  double stagnation_tol_;
  CMatrix sum_;
  std::vector<CMatrix> diagonal_;  // Euler difference table, latest diagonal
  int terms_ = 0;
  int small_run_ = 0;
  double last_norm_ = 0.0;
  bool converged_ = false;
  bool failed_ = false;
  bool stagnated_ = false;
  double best_norm_ = 0.0;
  double previous_norm_ = 0.0;
  int best_index_ = -1;
  CMatrix best_sum_;
};

/// Generalized hypergeometric matrix series
///   sum_m (P_1)_m..(P_p)_m (Q_1)_m^{-1}..(Q_q)_m^{-1} z^m / m!
/// by the term recurrence T_{m+1} = T_m prod(P_i + mI) prod(Q_j + mI)^{-1} z/(m+1).
///
/// For p = q + 1 and |z| = 1 the parameters must satisfy
/// b(sum Q_j - sum P_i) >= 0.15, except at z = -1 with the Euler transform
/// enabled: there the transform sums the alternating series to the value of
/// the function (analytic at -1) for any parameters. At z = 1 the stopping
/// test uses the algebraic tail estimate; if direct summation does not
/// converge within max_terms, the leading terms are passed through a Levin
/// u-transform, whose estimated error is then reported as last_term_norm
/// (accelerated = true). |z| > 1 (p = q + 1) or z != 0 (p > q + 1) is a
/// DomainError unless some numerator is a non-positive integer multiple of I.
/// A denominator shift Q_j + mI that is singular raises DomainError naming m.
SeriesResult pfq(const HyperParams& params, Complex z, const SeriesConfig& config = {});

/// 2F1(a, b; c; z).
SeriesResult two_f_one(const CMatrix& a, const CMatrix& b, const CMatrix& c, Complex z,
                       const SeriesConfig& config = {});

/// If m is (numerically) -n I for an integer n >= 0, returns n.
std::optional<int> terminating_index(const CMatrix& m);

}  // namespace hypermat
