#pragma once

#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypermat/matrix.hpp"
#include "hypermat/random.hpp"

namespace hypermat {

/// The verified identities. T1/T4 are the Euler integral representations
/// (kernel exponent 2 and general q), C_T1 its terminating case
/// (P = -kI). T2/C1 are the unit-argument evaluations, T3/C2 the half
/// argument, T6/C3 the argument 1/(w+1) (C3: w = -2), T5 the unit-argument
/// 4F3, and T7 the binomial expansion in both printed readings.
enum class IdentityId { kT1, kCT1, kT2, kC1, kT3, kC2, kT4, kT5, kT6, kC3, kT7Stmt, kT7Proof };

inline constexpr IdentityId kAllIdentities[] = {
    IdentityId::kT1, IdentityId::kCT1, IdentityId::kT2,     IdentityId::kC1,
    IdentityId::kT3, IdentityId::kC2,  IdentityId::kT4,     IdentityId::kT5,
    IdentityId::kT6, IdentityId::kC3,  IdentityId::kT7Stmt, IdentityId::kT7Proof};

std::string to_string(IdentityId id);
/// Accepts the names produced by to_string ("T1", "C_T1", ..., "T7_proof").
IdentityId identity_from_string(const std::string& name);

struct CaseScalars {
  std::optional<double> z;
  std::optional<double> w;
  std::optional<int> q;
  std::optional<int> n;
  std::optional<int> k;
};

struct IdentityCase {
  IdentityId identity = IdentityId::kT1;
  CommutingTriple triple;
  CaseScalars scalars;
  double tol = 1e-7;
};

struct CrossCheck {
  std::string route;
  double residual = 0.0;
};

struct VerificationReport {
  IdentityCase identity_case;
  CMatrix lhs;
  CMatrix rhs;
  double residual = 0.0;
  bool passed = false;
  bool skipped = false;
  /// Probe reports (the printed (Q+mI)/2 binomial reading) are reported but do not
  /// affect the suite's exit status.
  bool probe = false;
  std::string lhs_route;
  std::string rhs_route;
  std::vector<int> terms_or_nodes;
  std::vector<CrossCheck> cross_checks;
  std::string note;
};

/// Each verifier evaluates both sides through disjoint routes. Numerical
/// failures become passed = false with a note; a violated precondition of the
/// identity itself throws PreconditionError.
VerificationReport verify_t1(const IdentityCase& c);  // T1 and C_T1
VerificationReport verify_t2(const IdentityCase& c);  // T2 and C1
VerificationReport verify_t3(const IdentityCase& c);  // T3 and C2
VerificationReport verify_t4(const IdentityCase& c);
VerificationReport verify_t5(const IdentityCase& c);
VerificationReport verify_t6(const IdentityCase& c);  // T6 and C3
VerificationReport verify_t7(const IdentityCase& c);  // T7_stmt or T7_proof

/// Dispatches on c.identity.
VerificationReport verify(const IdentityCase& c);

/// Tolerance the suite applies to an identity at a given dimension.
double suite_tolerance(IdentityId id, int dim, double base_tol);

/// Deterministic case generation for one identity.
IdentityCase generate_case(IdentityId id, std::uint64_t suite_seed, int dim, int index,
                           double base_tol);

struct IdentityTally {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
};

/// Which binomial-expansion reading fits the integral representation.
struct DiscrepancyReport {
  int cases = 0;
  double stmt_max_residual = 0.0;
  double proof_max_residual = 0.0;
  int stmt_within = 0;   // cases with residual <= threshold
  int proof_within = 0;
  double threshold = 1e-5;
  /// "T7_proof", "T7_stmt", or "undetermined" when neither or both readings
  /// hold uniformly.
  std::string verdict;
  std::string summary_line() const;
};

DiscrepancyReport discrepancy_report(const std::vector<VerificationReport>& reports,
                                     double threshold = 1e-5, std::optional<int> only_q = {});

struct SuiteResult {
  std::vector<VerificationReport> reports;
  std::map<std::string, IdentityTally> tally;
  DiscrepancyReport discrepancy;
  /// True iff every non-skipped, non-probe report passed.
  bool all_passed() const;
};

/// The suite's case list: for each identity, dim and index in that order.
/// Both binomial-expansion readings share one triple per (dim, index). Throws
/// GenerationError if a case cannot be generated.
std::vector<IdentityCase> generate_suite_cases(
    std::uint64_t seed, const std::vector<int>& dims, int cases_per_identity, double tol,
    const std::vector<IdentityId>& ids = {std::begin(kAllIdentities), std::end(kAllIdentities)});

/// Runs every identity in `ids` on cases_per_identity cases for each dim.
/// `threads` caps parallelism (0 = hardware concurrency); the report order
/// depends only on (identity, dim, index). Generation failures are recorded
/// as skipped reports.
SuiteResult run_suite(
    std::uint64_t seed, const std::vector<int>& dims, int cases_per_identity, double tol,
    int threads = 0,
    const std::vector<IdentityId>& ids = {std::begin(kAllIdentities), std::end(kAllIdentities)});

/// Runs a list of prepared cases in order (optionally in parallel).
SuiteResult run_cases(const std::vector<IdentityCase>& cases, int threads = 0);

/// Thread count from HYPERMAT_THREADS (0 or unset = auto).
int threads_from_environment();

}  // namespace hypermat
