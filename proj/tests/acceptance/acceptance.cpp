// Acceptance run: one PASS/FAIL line per criterion, each at its stated
// tolerance. Exit status 0 iff every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hypermat/identities.hpp"
#include "hypermat/json_io.hpp"
#include "hypermat/random.hpp"
#include "hypermat/special.hpp"
#include "../oracles/oracle_values.hpp"

namespace {

using namespace hypermat;

constexpr std::uint64_t kSeed = 20240917;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

CMatrix one_by_one(Complex v) {
  CMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

IdentityCase make_case(IdentityId id, int i, double tol) {
  IdentityCase c = generate_case(id, kSeed, 1 + i % 3, i / 3, tol);
  c.tol = tol;
  return c;
}

IdentityCase scalar_case(IdentityId id, Complex p, Complex q, Complex r, CaseScalars s) {
  IdentityCase c;
  c.identity = id;
  c.triple = make_triple(one_by_one(p), one_by_one(q), one_by_one(r));
  c.scalars = s;
  c.tol = 1e-7;
  return c;
}

// Runs `count` cases and tracks pass count and worst residual.
struct Batch {
  int passed = 0;
  int total = 0;
  double worst = 0.0;
  std::vector<VerificationReport> reports;

  void add(const VerificationReport& r) {
    ++total;
    if (r.passed && !r.skipped) ++passed;
    worst = std::max(worst, std::isfinite(r.residual) ? r.residual : INFINITY);
    reports.push_back(r);
  }
  bool all() const { return total > 0 && passed == total; }
  std::string text(const char* label) const {
    return fmt("%s %d/%d (max residual %.2e)", label, passed, total, worst);
  }
};

Outcome kernel_exponent_two() {
  const auto t0 = std::chrono::steady_clock::now();
  const double zs[] = {0.0, 0.25, 0.5, -0.5};
  Batch b;
  for (int i = 0; i < 25; ++i) {
    IdentityCase c = make_case(IdentityId::kT1, i, 1e-7);
    c.scalars.z = zs[i % 4];
    b.add(verify(c));
  }
  const double secs = seconds_since(t0);
  return {b.all() && secs <= 30.0, b.text("T1") + fmt(" in %.2f s", secs)};
}

Outcome general_exponent() {
  Batch b;
  double q2_gap = 0.0;
  for (int q = 1; q <= 3; ++q) {
    for (int i = 0; i < 10; ++i) {
      IdentityCase c = make_case(IdentityId::kT4, i, 1e-7);
      c.scalars.q = q;
      const VerificationReport r = verify(c);
      b.add(r);
      if (q == 2) {
        IdentityCase t1 = c;
        t1.identity = IdentityId::kT1;
        t1.scalars.q.reset();
        const VerificationReport s = verify(t1);
        q2_gap = std::max({q2_gap, rel(r.lhs, s.lhs), rel(r.rhs, s.rhs)});
      }
    }
  }
  return {b.all() && q2_gap <= 1e-12, b.text("T4 q=1,2,3") + fmt("; q=2 vs T1 %.2e", q2_gap)};
}

Outcome unit_argument_3f2() {
  Batch t2;
  Batch c1;
  double route_gap = 0.0;
  for (int i = 0; i < 15; ++i) {
    t2.add(verify(make_case(IdentityId::kT2, i, 1e-7)));
    const VerificationReport r = verify(make_case(IdentityId::kC1, i, 1e-7));
    c1.add(r);
    bool found = false;
    for (const auto& x : r.cross_checks) {
      if (x.route.rfind("gamma-ratio", 0) == 0) {
        route_gap = std::max(route_gap, x.residual);
        found = true;
      }
    }
    if (!found) route_gap = INFINITY;
  }
  return {t2.all() && c1.all() && route_gap <= 1e-10,
          t2.text("T2") + "; " + c1.text("C1") + fmt("; gamma vs Pochhammer ratio %.2e", route_gap)};
}

Outcome half_and_w_family() {
  Batch batches[4];
  const IdentityId ids[] = {IdentityId::kT3, IdentityId::kT6, IdentityId::kC2, IdentityId::kC3};
  double w1_gap = 0.0;
  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < 15; ++i) batches[k].add(verify(make_case(ids[k], i, 1e-6)));
  }
  for (int i = 0; i < 5; ++i) {
    const IdentityCase half = make_case(IdentityId::kT3, i, 1e-6);
    IdentityCase w1 = half;
    w1.identity = IdentityId::kT6;
    w1.scalars = {};
    w1.scalars.w = 1.0;
    const VerificationReport a = verify(half);
    const VerificationReport b = verify(w1);
    w1_gap = std::max({w1_gap, rel(a.lhs, b.lhs), rel(a.rhs, b.rhs)});
  }
  bool ok = w1_gap <= 1e-12;
  std::string detail;
  const char* names[] = {"T3", "T6", "C2", "C3"};
  for (int k = 0; k < 4; ++k) {
    ok = ok && batches[k].all();
    detail += batches[k].text(names[k]) + "; ";
  }
  return {ok, detail + fmt("w=1 vs z=1/2 %.2e", w1_gap)};
}

Outcome unit_argument_4f3() {
  Batch scalar;
  Batch matrix;
  double oracle_gap = 0.0;
  for (const auto& o : oracle::kUnit4F3) {
    IdentityCase c = scalar_case(IdentityId::kT5, o.p, o.q, o.r, {});
    c.tol = 1e-6;
    const VerificationReport r = verify(c);
    scalar.add(r);
    if (r.lhs.size() == 1 && r.rhs.size() == 1) {
      oracle_gap = std::max({oracle_gap, std::abs(r.lhs(0, 0) - o.value) / std::abs(o.value),
                             std::abs(r.rhs(0, 0) - o.value) / std::abs(o.value)});
    } else {
      oracle_gap = INFINITY;
    }
  }
  for (int i = 0; i < 10; ++i) {
    IdentityCase c = generate_case(IdentityId::kT5, kSeed, 2 + i % 2, i / 2, 1e-6);
    c.tol = 1e-6;
    matrix.add(verify(c));
  }
  return {scalar.total == 10 && scalar.all() && matrix.all() && oracle_gap <= 1e-8,
          scalar.text("scalar") + "; " + matrix.text("matrix") +
              fmt("; scalar vs oracle %.2e", oracle_gap)};
}

Outcome binomial_readings() {
  std::vector<VerificationReport> reports;
  for (int i = 0; i < 24; ++i) {
    IdentityCase proof = make_case(IdentityId::kT7Proof, i, 1e-5);
    proof.scalars.q = 3;
    IdentityCase stmt = proof;
    stmt.identity = IdentityId::kT7Stmt;
    reports.push_back(verify(proof));
    reports.push_back(verify(stmt));
  }
  const DiscrepancyReport d = discrepancy_report(reports, 1e-5, 3);
  const bool proof_only = d.proof_within == d.cases && d.stmt_within < d.cases;
  const bool stmt_only = d.stmt_within == d.cases && d.proof_within < d.cases;
  const bool named = (proof_only && d.verdict == "T7_proof") || (stmt_only && d.verdict == "T7_stmt");
  return {d.cases >= 20 && named, d.summary_line()};
}

Outcome special_functions() {
  const double sqrt_pi = oracle::kSqrtPi;
  const CMatrix half = 0.5 * identity(3);
  const double g_half = (gamma_matrix(half) - sqrt_pi * identity(3)).cwiseAbs().maxCoeff();

  StabilityConstraints sc;
  sc.q = 0.2;
  sc.r_minus_q = 0.2;
  double recurrence = 0.0;
  double beta_gap = 0.0;
  double poch = 0.0;
  for (int i = 0; i < 50; ++i) {
    const CommutingTriple t = random_commuting_triple(kSeed + i, 1 + i % 4, sc);
    const CMatrix& p = t.q;
    const CMatrix lhs = gamma_matrix(p + identity(p.rows()));
    recurrence = std::max(recurrence, rel(lhs, p * gamma_matrix(p)));
    if (i < 10) {
      const CMatrix rq = t.r - t.q;
      beta_gap = std::max(beta_gap, rel(beta_matrix_integral(p, rq), beta_matrix(p, rq)));
    }
    if (i < 8) {
      for (int m = 1; m <= 8; ++m) {
        for (int n = 1; m * n <= 40; ++n) {
          poch = std::max(poch, rel(pochhammer_multiplication(t.r, m, n), pochhammer(t.r, m * n)));
        }
      }
    }
  }
  const bool ok = g_half <= 1e-12 && recurrence <= 1e-11 && beta_gap <= 1e-8 && poch <= 1e-11;
  return {ok, fmt("Gamma(I/2) %.2e; Gamma(P+I)=P Gamma(P) x50 %.2e; beta routes %.2e; "
                  "Pochhammer m*n<=40 %.2e",
                  g_half, recurrence, beta_gap, poch)};
}

Outcome closed_forms() {
  struct Spot {
    const char* name;
    IdentityId id;
    CaseScalars s;
    double expected;
  };
  CaseScalars t1;
  t1.z = 0.25;
  CaseScalars t4;
  t4.z = 0.5;
  t4.q = 1;
  CaseScalars t6;
  t6.w = -2.0;
  CaseScalars t3;
  t3.z = 0.5;
  const Spot spots[] = {{"ln 3", IdentityId::kT1, t1, oracle::kLn3},
                        {"2 ln 2", IdentityId::kT4, t4, oracle::kTwoLn2},
                        {"pi/4", IdentityId::kT6, t6, oracle::kQuarterPi},
                        {"sqrt2 artanh(1/sqrt2)", IdentityId::kT3, t3, oracle::kSqrt2Artanh}};
  bool ok = true;
  std::string detail;
  for (const auto& s : spots) {
    const VerificationReport r = verify(scalar_case(s.id, 1.0, 1.0, 2.0, s.s));
    double err = INFINITY;
    if (r.lhs.size() == 1 && r.rhs.size() == 1) {
      err = std::max(std::abs(r.lhs(0, 0) - s.expected), std::abs(r.rhs(0, 0) - s.expected));
    }
    ok = ok && r.passed && err <= 1e-7;
    detail += fmt("%s (%s) %.2e; ", s.name, to_string(s.id).c_str(), err);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

}  // namespace

int main() {
  const int threads = threads_from_environment();
  int failures = 0;
  auto report = [&](int n, const char* title, const Outcome& o) {
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", n, title, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };

  report(1, "integral representation, kernel exponent 2", kernel_exponent_two());
  report(2, "integral representation, general exponent", general_exponent());
  report(3, "unit argument 3F2 and terminating ratio", unit_argument_3f2());
  report(4, "half argument and 1/(w+1) argument", half_and_w_family());
  report(5, "unit argument 4F3", unit_argument_4f3());
  report(6, "binomial expansion readings (q = 3)", binomial_readings());
  report(7, "gamma, beta and Pochhammer oracles", special_functions());
  report(8, "scalar closed forms", closed_forms());

  const auto t0 = std::chrono::steady_clock::now();
  const SuiteResult first = run_suite(42, {1, 2, 3}, 5, 1e-7, threads);
  const double secs = seconds_since(t0);
  const SuiteResult second = run_suite(42, {1, 2, 3}, 5, 1e-7, threads);
  const std::string a = io::encode_suite(first).dump(2);
  const std::string b = io::encode_suite(second).dump(2);
  report(9, "deterministic reports",
         {a == b, fmt("two default suite runs, %zu bytes each, %s", a.size(),
                      a == b ? "identical" : "different")});
  report(10, "default suite runtime",
         {secs <= 120.0 && first.all_passed(),
          fmt("%zu reports in %.2f s, all non-probe cases %s", first.reports.size(), secs,
              first.all_passed() ? "pass" : "do not pass")});

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures == 0 ? 0 : 1;
}
