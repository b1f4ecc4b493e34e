#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "hypermat/matrix.hpp"

namespace hypermat {

/// Seeded generator passed by value wherever randomness is needed. Uniform and
/// normal draws are computed from raw 64-bit output so streams are identical
/// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Positive-stability requirements for a generated (P, Q, R) triple. A label
/// that is present must have b(label) >= its margin.
struct StabilityConstraints {
  std::optional<double> q;
  std::optional<double> r;
  std::optional<double> r_minus_q;
  std::optional<double> r_minus_p;
  std::optional<double> r_minus_q_minus_p;

  // Sampling ranges for real parts; imaginary parts lie in [-imag_spread, imag_spread].
  double q_real_span = 1.5;
  double r_minus_q_real_span = 1.5;
  double p_real_min = -1.0;
  double p_real_max = 1.5;
  double imag_spread = 0.25;
  double max_condition = 50.0;
  int max_retries = 64;
};

struct CommutingTriple {
  CMatrix p;
  CMatrix q;
  CMatrix r;
  CMatrix similarity;
  std::uint64_t seed = 0;
  /// Keys: "Q", "R", "R-Q", "R-P", "R-Q-P"; values are b() of that matrix.
  std::map<std::string, double> stability_margins;

  int dim() const { return static_cast<int>(p.rows()); }
};

/// Builds a triple from given commuting matrices, recording the margins.
/// Throws PreconditionError if the matrices do not commute.
CommutingTriple make_triple(CMatrix p, CMatrix q, CMatrix r, std::uint64_t seed = 0,
                            CMatrix similarity = CMatrix());

/// Three random diagonal matrices meeting `constraints`, conjugated by one
/// shared random similarity with condition number <= constraints.max_condition.
CommutingTriple random_commuting_triple(std::uint64_t seed, int dim,
                                        const StabilityConstraints& constraints);

/// Random similarity V = U1 diag(s) U2* with s in [1, max_condition].
CMatrix random_similarity(Rng& rng, int dim, double max_condition);

/// Largest commutator residual ||XY - YX|| / (1 + ||X|| ||Y||) over the three pairs.
double commutator_defect(const CommutingTriple& t);

}  // namespace hypermat
