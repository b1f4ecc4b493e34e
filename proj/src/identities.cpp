#include "hypermat/identities.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "hypermat/errors.hpp"
#include "hypermat/euler.hpp"
#include "hypermat/matrix_function.hpp"
#include "hypermat/series.hpp"
#include "hypermat/special.hpp"

namespace hypermat {

namespace {

constexpr double kQuadratureTol = 1e-12;
constexpr double kOuterTol = 1e-14;
constexpr double kBinomialTailTol = 1e-10;
constexpr int kMaxOuterTerms = 2000;
constexpr int kMaxBinomialTerms = 20000;
constexpr double kCancellationLimit = 1e-12;
constexpr double kGrowingSeriesFloor = 1e-9;

CMatrix shifted(const CMatrix& m, double s) {
  CMatrix out = m;
  out.diagonal().array() += s;
  return out;
}

// (B + jI)/q for j = 0..q-1.
std::vector<CMatrix> qfold(const CMatrix& base, int q) {
  std::vector<CMatrix> out;
  for (int j = 0; j < q; ++j) out.push_back(shifted(base, j) / static_cast<double>(q));
  return out;
}

HyperParams qfold_params(const CMatrix& p, const CMatrix& q, const CMatrix& r, int fold) {
  std::vector<CMatrix> num{p};
  for (auto& m : qfold(q, fold)) num.push_back(std::move(m));
  return HyperParams::make(std::move(num), qfold(r, fold));
}

SeriesConfig lhs_config() {
  SeriesConfig c;
  c.tol = 1e-15;
  c.max_terms = 5000;
  c.consecutive_small = 3;
  return c;
}

CMatrix inverse(const CMatrix& m) { return m.partialPivLu().inverse(); }

void require_stable(const CMatrix& m, const char* label) {
  if (!is_positive_stable(m)) {
    throw PreconditionError(std::string(label) + " must be positive stable");
  }
}

void require_unit_hypotheses(const CommutingTriple& t) {
  require_stable(t.r, "R");
  require_stable(CMatrix(t.r - t.p), "R - P");
  require_stable(CMatrix(t.r - t.q), "R - Q");
  require_stable(CMatrix(t.r - t.q - t.p), "R - Q - P");
  require_stable(t.q, "Q (quadrature route)");
}

void require_integral_hypotheses(const CommutingTriple& t) {
  require_stable(t.q, "Q");
  require_stable(t.r, "R");
  require_stable(CMatrix(t.r - t.q), "R - Q");
}

VerificationReport start(const IdentityCase& c) {
  if (commutator_defect(c.triple) > 1e-10) throw PreconditionError("P, Q, R do not commute");
  VerificationReport rep;
  rep.identity_case = c;
  rep.probe = c.identity == IdentityId::kT7Stmt;
  return rep;
}

void finish(VerificationReport& rep) {
  rep.residual = relative_residual(rep.lhs, rep.rhs);
  rep.passed = rep.residual <= rep.identity_case.tol && rep.note.empty();
}

template <typename Body>
VerificationReport guarded(const IdentityCase& c, Body&& body) {
  VerificationReport rep = start(c);
  try {
    body(rep);
    finish(rep);
  } catch (const PreconditionError&) {
    throw;
  } catch (const Error& e) {
    rep.passed = false;
    rep.note = e.what();
    if (rep.lhs.size() == 0) rep.lhs = CMatrix::Zero(c.triple.dim(), c.triple.dim());
    if (rep.rhs.size() == 0) rep.rhs = CMatrix::Zero(c.triple.dim(), c.triple.dim());
    rep.residual = std::numeric_limits<double>::infinity();
  }
  return rep;
}

SeriesResult require_converged(SeriesResult r, const char* what) {
  if (!r.converged) {
    throw AccuracyError(std::string(what) + " did not converge in " + std::to_string(r.terms_used) +
                            " terms",
                        r.last_term_norm);
  }
  return r;
}

// Gamma(R) Gamma(R-Q-P) Gamma^{-1}(R-P) Gamma^{-1}(R-Q).
CMatrix unit_gamma_ratio(const CommutingTriple& t) {
  return gamma_matrix(t.r) * gamma_matrix(CMatrix(t.r - t.q - t.p)) *
         reciprocal_gamma(CMatrix(t.r - t.p)) * reciprocal_gamma(CMatrix(t.r - t.q));
}

int require_int(const std::optional<int>& v, const char* name) {
  if (!v) throw PreconditionError(std::string("missing scalar '") + name + "'");
  return *v;
}

double require_real(const std::optional<double>& v, const char* name) {
  if (!v) throw PreconditionError(std::string("missing scalar '") + name + "'");
  return *v;
}

// 3F2(-mI, Q/2, (Q+I)/2; R/2, (R+I)/2; 1) summed term by term. Returns
// nullopt when the alternating terms cancel beyond double precision.
std::optional<CMatrix> terminating_3f2_at_one(const CMatrix& q, const CMatrix& r, int m) {
  const int n = static_cast<int>(q.rows());
  std::vector<CMatrix> num{scalar_matrix(n, -static_cast<double>(m))};
  for (auto& x : qfold(q, 2)) num.push_back(std::move(x));
  const HyperParams hp = HyperParams::make(std::move(num), qfold(r, 2));
  const CMatrix value = pfq(hp, 1.0).value;
  // With the sign of (-m)_k flipped every term is added in magnitude.
  const CMatrix magnitude = pfq(hp, -1.0).value;
  if (std::numeric_limits<double>::epsilon() * norm2(magnitude) >
      kCancellationLimit * norm2(value)) {
    return std::nullopt;
  }
  return value;
}

// Verifies 3F2(P, Q/2, (Q+I)/2; R/2, (R+I)/2; 1/(w+1)) against
// ((w+1)/w)^P sum_m binom(-P, m) w^{-m} X_m, where X_m is the terminating
// unit-argument 3F2 evaluated either through the Pochhammer ratio
// (R-Q)_m (R)_m^{-1} 2F1(-mI, Q; R+mI; -1) or summed directly.
VerificationReport verify_w_family(const IdentityCase& c, double w, bool closed_form_inner) {
  if (w == 0.0 || w == -1.0) throw PreconditionError("w must avoid {0, -1}");
  const auto& t = c.triple;
  require_integral_hypotheses(t);
  const bool finite = terminating_index(t.p).has_value();
  if (!finite && !(w >= 1.0 || w <= -2.0)) {
    throw PreconditionError("outer series needs w >= 1 or w <= -2 unless P = -kI");
  }
  const double z = 1.0 / (w + 1.0);

  return guarded(c, [&](VerificationReport& rep) {
    const int n = t.dim();
    const SeriesResult lhs = require_converged(pfq(qfold_params(t.p, t.q, t.r, 2), z, lhs_config()),
                                               "3F2 left side");
    rep.lhs = lhs.value;
    rep.lhs_route = lhs.accelerated ? "series:3F2(euler-transform)" : "series:3F2";

    const std::optional<int> k = terminating_index(t.p);
    const auto mode = (w > 0.0 && !k) ? SeriesAccumulator::Mode::kEuler
                                      : SeriesAccumulator::Mode::kPlain;
    SeriesAccumulator ratio_sum(mode, kOuterTol, 3);
    SeriesAccumulator closed_form_sum(mode, kOuterTol, 3);
    int direct_inner = 0;
    int fallback_inner = 0;

    CMatrix coeff = identity(n);  // binom(-P, m) w^{-m}
    CMatrix ratio = identity(n);  // (R-Q)_m (R)_m^{-1}
    const CMatrix rq = t.r - t.q;
    for (int m = 0; m < kMaxOuterTerms; ++m) {
      const SeriesResult inner =
          two_f_one(scalar_matrix(n, -static_cast<double>(m)), t.q, shifted(t.r, m), -1.0);
      const CMatrix x_ratio = ratio * inner.value;
      CMatrix x_direct;
      if (closed_form_inner) {
        if (auto d = terminating_3f2_at_one(t.q, t.r, m)) {
          x_direct = *d;
          ++direct_inner;
        } else {
          x_direct = x_ratio;
          ++fallback_inner;
        }
      }
      const bool done_ratio = ratio_sum.converged() || ratio_sum.add(coeff * x_ratio);
      const bool done_closed = !closed_form_inner || closed_form_sum.converged() ||
                            closed_form_sum.add(coeff * x_direct);
      if (k && m >= *k) {
        ratio_sum.finish_exact();
        closed_form_sum.finish_exact();
        break;
      }
      if (done_ratio && done_closed) break;
      coeff = coeff * shifted(t.p, m) * (-1.0 / ((m + 1) * w));
      ratio = ratio * shifted(rq, m) * inverse(shifted(t.r, m));
    }
    if (!ratio_sum.converged() || (closed_form_inner && !closed_form_sum.converged())) {
      throw AccuracyError("outer binomial series did not converge", ratio_sum.last_term_norm());
    }
    const CMatrix prefactor = matrix_power_scalar((w + 1.0) / w, t.p);
    const CMatrix rhs_ratio = prefactor * ratio_sum.value();
    std::string outer = mode == SeriesAccumulator::Mode::kEuler ? "euler-transform" : "direct";
    if (closed_form_inner) {
      rep.rhs = prefactor * closed_form_sum.value();
      rep.rhs_route = "((w+1)/w)^P*sum[binom(-P,m)w^-m*3F2(-m;1)](" + outer + "; inner direct " +
                      std::to_string(direct_inner) + ", pochhammer-ratio " +
                      std::to_string(fallback_inner) + ")";
      rep.cross_checks.push_back({"pochhammer-ratio inner route", relative_residual(rep.rhs, rhs_ratio)});
    } else {
      rep.rhs = rhs_ratio;
      rep.rhs_route = "((w+1)/w)^P*sum[binom(-P,m)w^-m*(R-Q)_m(R)_m^-1*2F1(-m,Q;R+m;-1)](" + outer + ")";
    }
    rep.terms_or_nodes = {lhs.terms_used, ratio_sum.terms()};

    const EulerResult quad = euler_integral(EulerIntegralSpec::make(t.p, t.q, t.r, z, 2), kQuadratureTol);
    rep.cross_checks.push_back({"quadrature:tanh-sinh vs lhs", relative_residual(quad.value, rep.lhs)});
    rep.terms_or_nodes.push_back(quad.nodes);
  });
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string to_string(IdentityId id) {
  switch (id) {
    case IdentityId::kT1: return "T1";
    case IdentityId::kCT1: return "C_T1";
    case IdentityId::kT2: return "T2";
    case IdentityId::kC1: return "C1";
    case IdentityId::kT3: return "T3";
    case IdentityId::kC2: return "C2";
    case IdentityId::kT4: return "T4";
    case IdentityId::kT5: return "T5";
    case IdentityId::kT6: return "T6";
    case IdentityId::kC3: return "C3";
    case IdentityId::kT7Stmt: return "T7_stmt";
    case IdentityId::kT7Proof: return "T7_proof";
  }
  return "?";
}

IdentityId identity_from_string(const std::string& name) {
  for (IdentityId id : kAllIdentities) {
    if (to_string(id) == name) return id;
  }
  throw PreconditionError("unknown identity '" + name + "'");
}

VerificationReport verify_t4(const IdentityCase& c) {
  const auto& t = c.triple;
  const int q = c.scalars.q.value_or(2);
  if (q < 1 || q > 5) throw PreconditionError("q must lie in 1..5");
  const double z = require_real(c.scalars.z, "z");
  if (std::abs(z) > 0.9) throw PreconditionError("|z| must be <= 0.9");
  require_integral_hypotheses(t);
  if (c.identity == IdentityId::kCT1) {
    const int k = require_int(c.scalars.k, "k");
    if (terminating_index(t.p) != std::optional<int>(k)) {
      throw PreconditionError("C_T1 case needs P = -kI");
    }
  }
  return guarded(c, [&](VerificationReport& rep) {
    const SeriesResult lhs =
        require_converged(pfq(qfold_params(t.p, t.q, t.r, q), z, lhs_config()), "left series");
    rep.lhs = lhs.value;
    rep.lhs_route = "series:" + std::to_string(q + 1) + "F" + std::to_string(q);
    const EulerResult rhs = euler_integral(EulerIntegralSpec::make(t.p, t.q, t.r, z, q), kQuadratureTol);
    rep.rhs = rhs.value;
    rep.rhs_route = "quadrature:" + to_string(rhs.method) + "(kernel u^" + std::to_string(q) + ")";
    rep.terms_or_nodes = {lhs.terms_used, rhs.nodes};
  });
}

VerificationReport verify_t1(const IdentityCase& c) {
  if (c.identity != IdentityId::kT1 && c.identity != IdentityId::kCT1) {
    throw PreconditionError("verify_t1 handles T1 and C_T1");
  }
  IdentityCase fixed = c;
  fixed.scalars.q = 2;
  VerificationReport rep = verify_t4(fixed);
  rep.identity_case = c;
  return rep;
}

VerificationReport verify_t2(const IdentityCase& c) {
  const auto& t = c.triple;
  const bool terminating = c.identity == IdentityId::kC1;
  int n = 0;
  if (terminating) {
    n = require_int(c.scalars.n, "n");
    if (terminating_index(t.p) != std::optional<int>(n)) {
      throw PreconditionError("C1 case needs P = -nI");
    }
    require_integral_hypotheses(t);
  } else {
    require_unit_hypotheses(t);
  }
  return guarded(c, [&](VerificationReport& rep) {
    const int dim = t.dim();
    const HyperParams lhs_params = qfold_params(t.p, t.q, t.r, 2);
    const SeriesResult f21 = require_converged(
        two_f_one(t.p, t.q, CMatrix(t.r - t.p), -1.0, lhs_config()), "2F1(P,Q;R-P;-1)");
    const CMatrix rhs_gamma = unit_gamma_ratio(t) * f21.value;

    if (terminating) {
      const SeriesResult lhs = pfq(lhs_params, 1.0, lhs_config());
      rep.lhs = lhs.value;
      rep.lhs_route = "series:3F2(terminating)";
      const CMatrix ratio = pochhammer(CMatrix(t.r - t.q), n) * inverse(pochhammer(t.r, n));
      rep.rhs = ratio * f21.value;
      rep.rhs_route = "(R-Q)_n(R)_n^-1*2F1(-nI,Q;R+nI;-1)";
      rep.terms_or_nodes = {lhs.terms_used, f21.terms_used};
      rep.cross_checks.push_back({"gamma-ratio route vs pochhammer-ratio route",
                                  relative_residual(rhs_gamma, rep.rhs)});
      const EulerResult quad =
          euler_integral(EulerIntegralSpec::make(t.p, t.q, t.r, 1.0, 2), kQuadratureTol);
      rep.cross_checks.push_back({"quadrature:tanh-sinh@z=1 vs rhs", relative_residual(quad.value, rep.rhs)});
      return;
    }

    const EulerResult quad =
        euler_integral(EulerIntegralSpec::make(t.p, t.q, t.r, 1.0, 2), kQuadratureTol);
    rep.lhs = quad.value;
    rep.lhs_route = "quadrature:tanh-sinh@z=1";
    rep.rhs = rhs_gamma;
    rep.rhs_route = std::string("gamma-ratio*2F1(P,Q;R-P;-1)") +
                    (f21.accelerated ? "(euler-transform)" : "");
    rep.terms_or_nodes = {quad.nodes, f21.terms_used};
    // Direct unit-argument series, when its algebraic tail is short enough.
    try {
      const SeriesResult direct = pfq(lhs_params, 1.0, lhs_config());
      if (direct.converged) {
        rep.cross_checks.push_back({"series:3F2@z=1 vs rhs", relative_residual(direct.value, rep.rhs)});
      }
    } catch (const PreconditionError&) {
    }
    (void)dim;
  });
}

VerificationReport verify_t3(const IdentityCase& c) {
  if (c.identity != IdentityId::kT3 && c.identity != IdentityId::kC2) {
    throw PreconditionError("verify_t3 handles T3 and C2");
  }
  return verify_w_family(c, 1.0, c.identity == IdentityId::kC2);
}

VerificationReport verify_t6(const IdentityCase& c) {
  if (c.identity != IdentityId::kT6 && c.identity != IdentityId::kC3) {
    throw PreconditionError("verify_t6 handles T6 and C3");
  }
  const double w = c.identity == IdentityId::kC3 ? -2.0 : require_real(c.scalars.w, "w");
  if (c.identity == IdentityId::kC3 && c.scalars.w && *c.scalars.w != -2.0) {
    throw PreconditionError("C3 fixes w = -2");
  }
  return verify_w_family(c, w, c.identity == IdentityId::kC3);
}

VerificationReport verify_t5(const IdentityCase& c) {
  const auto& t = c.triple;
  require_unit_hypotheses(t);
  return guarded(c, [&](VerificationReport& rep) {
    const int n = t.dim();
    const EulerResult quad =
        euler_integral(EulerIntegralSpec::make(t.p, t.q, t.r, 1.0, 3), kQuadratureTol);
    rep.lhs = quad.value;
    rep.lhs_route = "quadrature:tanh-sinh@z=1(kernel u^3)";

    const std::optional<int> k = terminating_index(t.p);
    const auto mode = k ? SeriesAccumulator::Mode::kPlain : SeriesAccumulator::Mode::kEuler;
    // The terms grow like 2^m; the Euler transform sums the series to its
    // analytic value but the difference table limits the attainable accuracy.
    SeriesAccumulator sum(mode, kOuterTol, 3, std::nullopt, kGrowingSeriesFloor);
    const CMatrix rp = t.r - t.p;
    // (-1)^m (P)_m (Q)_m / (m! (R-P)_m)
    CMatrix coeff = identity(n);
    for (int m = 0; m < kMaxOuterTerms; ++m) {
      const SeriesResult inner = two_f_one(scalar_matrix(n, -static_cast<double>(m)), shifted(t.q, m),
                                           shifted(rp, m), -1.0);
      if (sum.add(coeff * inner.value)) break;
      if (k && m >= *k) {
        sum.finish_exact();
        break;
      }
      coeff = coeff * shifted(t.p, m) * shifted(t.q, m) * inverse(shifted(rp, m)) *
              (-1.0 / (m + 1));
    }
    if (!sum.converged()) throw AccuracyError("outer series did not converge", sum.last_term_norm());
    rep.rhs = unit_gamma_ratio(t) * sum.value();
    rep.rhs_route = std::string("gamma-ratio*sum[(-1)^m(P)_m(Q)_m/(m!(R-P)_m)*2F1(-m,Q+m;R-P+m;-1)](") +
                    (mode == SeriesAccumulator::Mode::kEuler ? "euler-transform" : "direct") + ")";
    rep.terms_or_nodes = {quad.nodes, sum.terms()};
    try {
      const SeriesResult direct = pfq(qfold_params(t.p, t.q, t.r, 3), 1.0, lhs_config());
      if (direct.converged) {
        rep.cross_checks.push_back({"series:4F3@z=1 vs lhs", relative_residual(direct.value, rep.lhs)});
      }
    } catch (const PreconditionError&) {
    }
  });
}

VerificationReport verify_t7(const IdentityCase& c) {
  if (c.identity != IdentityId::kT7Stmt && c.identity != IdentityId::kT7Proof) {
    throw PreconditionError("verify_t7 handles T7_stmt and T7_proof");
  }
  const auto& t = c.triple;
  const int q = require_int(c.scalars.q, "q");
  if (q < 1 || q > 5) throw PreconditionError("q must lie in 1..5");
  const double z = require_real(c.scalars.z, "z");
  if (std::abs(z) > 0.9) throw PreconditionError("|z| must be <= 0.9");
  require_integral_hypotheses(t);
  const CMatrix rq = t.r - t.q;
  const double tail = spectral_lower(rq);
  if (!(tail > 1.0)) throw PreconditionError("binomial expansion needs b(R - Q) > 1");
  const bool printed = c.identity == IdentityId::kT7Stmt;
  const double divisor = printed ? 2.0 : static_cast<double>(q);

  return guarded(c, [&](VerificationReport& rep) {
    const int n = t.dim();
    const SeriesResult lhs =
        require_converged(pfq(qfold_params(t.p, t.q, t.r, q), z, lhs_config()), "left series");
    rep.lhs = lhs.value;
    rep.lhs_route = "series:" + std::to_string(q + 1) + "F" + std::to_string(q);

    const CMatrix a = rq - identity(n);  // binom(R-Q-I, m) (-1)^m = (I-R+Q)_m / m!
    const std::optional<int> stop = terminating_index(CMatrix(-a));
    SeriesAccumulator sum(SeriesAccumulator::Mode::kPlain, kBinomialTailTol, 3, tail);
    CMatrix coeff = identity(n);
    SeriesConfig inner_cfg = lhs_config();
    for (int m = 0; m < kMaxBinomialTerms; ++m) {
      const CMatrix s = shifted(t.q, m) / divisor;
      const SeriesResult inner = require_converged(
          two_f_one(t.p, s, shifted(s, 1.0), z, inner_cfg), "inner 2F1");
      if (sum.add(coeff * inverse(shifted(t.q, m)) * inner.value)) break;
      if (stop && m >= *stop) {
        sum.finish_exact();
        break;
      }
      coeff = coeff * shifted(CMatrix(-a), m) * (1.0 / (m + 1));
    }
    if (!sum.converged()) {
      throw AccuracyError("binomial series in m did not converge", sum.last_term_norm());
    }
    rep.rhs = gamma_matrix(t.r) * reciprocal_gamma(t.q) * reciprocal_gamma(rq) * sum.value();
    rep.rhs_route = std::string("gamma-ratio*sum[binom(R-Q-I,m)(-1)^m(Q+mI)^-1*2F1(P,(Q+mI)/") +
                    (printed ? "2" : "q") + ";..+I;z)]";
    rep.terms_or_nodes = {lhs.terms_used, sum.terms()};
    const EulerResult quad = euler_integral(EulerIntegralSpec::make(t.p, t.q, t.r, z, q), kQuadratureTol);
    rep.cross_checks.push_back({"quadrature:tanh-sinh vs lhs", relative_residual(quad.value, rep.lhs)});
    rep.terms_or_nodes.push_back(quad.nodes);
  });
}

VerificationReport verify(const IdentityCase& c) {
  switch (c.identity) {
    case IdentityId::kT1:
    case IdentityId::kCT1: return verify_t1(c);
    case IdentityId::kT2:
    case IdentityId::kC1: return verify_t2(c);
    case IdentityId::kT3:
    case IdentityId::kC2: return verify_t3(c);
    case IdentityId::kT4: return verify_t4(c);
    case IdentityId::kT5: return verify_t5(c);
    case IdentityId::kT6:
    case IdentityId::kC3: return verify_t6(c);
    case IdentityId::kT7Stmt:
    case IdentityId::kT7Proof: return verify_t7(c);
  }
  throw PreconditionError("unknown identity");
}

double suite_tolerance(IdentityId id, int dim, double base_tol) {
  double tol = dim >= 4 ? 10.0 * base_tol : base_tol;
  if (id == IdentityId::kT7Stmt || id == IdentityId::kT7Proof) tol = std::max(tol, 1e-5);
  return tol;
}

IdentityCase generate_case(IdentityId id, std::uint64_t suite_seed, int dim, int index,
                           double base_tol) {
  const std::uint64_t seed =
      splitmix64(suite_seed ^ splitmix64((static_cast<std::uint64_t>(id) << 40) ^
                                         (static_cast<std::uint64_t>(dim) << 32) ^
                                         static_cast<std::uint64_t>(index)));
  Rng rng(splitmix64(seed));
  static constexpr double kZ[] = {0.0, 0.25, 0.5, -0.5};
  const double z_pick = index % 5 < 4 ? kZ[index % 5] : 0.9 * rng.uniform(-1.0, 1.0);

  StabilityConstraints sc;
  sc.q = 0.1;
  sc.r_minus_q = 0.1;
  IdentityCase c;
  c.identity = id;
  c.tol = suite_tolerance(id, dim, base_tol);
  switch (id) {
    case IdentityId::kT1:
      c.scalars.z = z_pick;
      break;
    case IdentityId::kCT1:
      c.scalars.z = z_pick;
      c.scalars.k = 1 + index % 3;
      break;
    case IdentityId::kT4:
      c.scalars.z = z_pick;
      c.scalars.q = 1 + index % 5;
      break;
    case IdentityId::kT2:
    case IdentityId::kT5:
      sc.r = 0.15;
      sc.r_minus_q = 0.15;
      sc.r_minus_p = 0.15;
      sc.r_minus_q_minus_p = 0.15;
      break;
    case IdentityId::kC1:
      c.scalars.n = 1 + index % 4;
      break;
    case IdentityId::kT3:
    case IdentityId::kC2:
      break;
    case IdentityId::kT6: {
      static constexpr double kW[] = {1.0, 2.0, 3.0, -2.0, -3.0};
      c.scalars.w = kW[index % 5];
      break;
    }
    case IdentityId::kC3:
      c.scalars.w = -2.0;
      break;
    case IdentityId::kT7Stmt:
    case IdentityId::kT7Proof: {
      static constexpr double kZ7[] = {0.25, 0.5, -0.5};
      c.scalars.q = 2 + index % 2;
      c.scalars.z = kZ7[index % 3];
      sc.r_minus_q = 2.5;
      sc.r_minus_q_real_span = 1.0;
      break;
    }
  }
  c.triple = random_commuting_triple(seed, dim, sc);
  const int terminating = c.scalars.k ? *c.scalars.k : c.scalars.n ? *c.scalars.n : -1;
  if (terminating >= 0) {
    c.triple = make_triple(scalar_matrix(dim, -static_cast<double>(terminating)), c.triple.q,
                           c.triple.r, c.triple.seed, c.triple.similarity);
  }
  return c;
}

std::string DiscrepancyReport::summary_line() const {
  std::ostringstream os;
  os.precision(3);
  os << "T7 discrepancy over " << cases << " cases: (Q+mI)/q reading [T7_proof] within "
     << threshold << " in " << proof_within << "/" << cases << " (max residual " << proof_max_residual
     << "); printed (Q+mI)/2 reading [T7_stmt] within " << threshold << " in " << stmt_within << "/"
     << cases << " (max residual " << stmt_max_residual << "); verdict: " << verdict;
  return os.str();
}

DiscrepancyReport discrepancy_report(const std::vector<VerificationReport>& reports,
                                     double threshold, std::optional<int> only_q) {
  DiscrepancyReport d;
  d.threshold = threshold;
  int stmt_cases = 0;
  for (const auto& r : reports) {
    const auto id = r.identity_case.identity;
    if (id != IdentityId::kT7Stmt && id != IdentityId::kT7Proof) continue;
    if (r.skipped) continue;
    if (only_q && r.identity_case.scalars.q != only_q) continue;
    const bool within = r.residual <= threshold;
    if (id == IdentityId::kT7Proof) {
      ++d.cases;
      d.proof_max_residual = std::max(d.proof_max_residual, r.residual);
      d.proof_within += within ? 1 : 0;
    } else {
      ++stmt_cases;
      d.stmt_max_residual = std::max(d.stmt_max_residual, r.residual);
      d.stmt_within += within ? 1 : 0;
    }
  }
  const bool proof_uniform = d.cases > 0 && d.proof_within == d.cases;
  const bool stmt_uniform = stmt_cases > 0 && d.stmt_within == stmt_cases;
  if (proof_uniform && !stmt_uniform) {
    d.verdict = "T7_proof";
  } else if (stmt_uniform && !proof_uniform) {
    d.verdict = "T7_stmt";
  } else {
    d.verdict = "undetermined";
  }
  return d;
}

bool SuiteResult::all_passed() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const VerificationReport& r) { return r.skipped || r.probe || r.passed; });
}

int threads_from_environment() {
  const char* env = std::getenv("HYPERMAT_THREADS");
  if (env == nullptr) return 0;
  try {
    return std::max(0, std::stoi(env));
  } catch (...) {
    return 0;
  }
}

namespace {

VerificationReport run_one(const IdentityCase& c) {
  try {
    return verify(c);
  } catch (const Error& e) {
    VerificationReport rep;
    rep.identity_case = c;
    rep.skipped = true;
    rep.probe = c.identity == IdentityId::kT7Stmt;
    rep.note = e.what();
    rep.residual = std::numeric_limits<double>::infinity();
    return rep;
  }
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

SuiteResult tally(std::vector<VerificationReport> reports) {
  SuiteResult out;
  out.reports = std::move(reports);
  for (const auto& r : out.reports) {
    auto& t = out.tally[to_string(r.identity_case.identity)];
    if (r.skipped) {
      ++t.skipped;
    } else if (r.passed) {
      ++t.passed;
    } else {
      ++t.failed;
    }
  }
  out.discrepancy = discrepancy_report(out.reports);
  return out;
}

}  // namespace

SuiteResult run_cases(const std::vector<IdentityCase>& cases, int threads) {
  std::vector<VerificationReport> reports(cases.size());
  parallel_for(cases.size(), threads, [&](std::size_t i) { reports[i] = run_one(cases[i]); });
  return tally(std::move(reports));
}

namespace {

struct Slot {
  IdentityId id;
  int dim;
  int index;
};

std::vector<Slot> suite_slots(const std::vector<int>& dims, int cases_per_identity, double tol,
                              const std::vector<IdentityId>& ids) {
  if (cases_per_identity < 1) throw PreconditionError("cases_per_identity must be >= 1");
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  if (dims.empty()) throw PreconditionError("dims must not be empty");
  for (int d : dims) {
    if (d < 1 || d > 6) throw PreconditionError("dims must lie in 1..6");
  }
  std::vector<Slot> slots;
  for (IdentityId id : ids) {
    for (int d : dims) {
      for (int i = 0; i < cases_per_identity; ++i) slots.push_back({id, d, i});
    }
  }
  return slots;
}

IdentityCase slot_case(const Slot& s, std::uint64_t seed, double tol) {
  const IdentityId gen_id = s.id == IdentityId::kT7Stmt ? IdentityId::kT7Proof : s.id;
  IdentityCase c = generate_case(gen_id, seed, s.dim, s.index, tol);
  c.identity = s.id;
  return c;
}

}  // namespace

std::vector<IdentityCase> generate_suite_cases(std::uint64_t seed, const std::vector<int>& dims,
                                               int cases_per_identity, double tol,
                                               const std::vector<IdentityId>& ids) {
  std::vector<IdentityCase> out;
  for (const Slot& s : suite_slots(dims, cases_per_identity, tol, ids)) {
    out.push_back(slot_case(s, seed, tol));
  }
  return out;
}

SuiteResult run_suite(std::uint64_t seed, const std::vector<int>& dims, int cases_per_identity,
                      double tol, int threads, const std::vector<IdentityId>& ids) {
  const std::vector<Slot> slots = suite_slots(dims, cases_per_identity, tol, ids);
  std::vector<VerificationReport> reports(slots.size());
  parallel_for(slots.size(), threads, [&](std::size_t i) {
    const Slot& s = slots[i];
    IdentityCase c;
    try {
      c = slot_case(s, seed, tol);
    } catch (const Error& e) {
      VerificationReport rep;
      rep.identity_case.identity = s.id;
      rep.identity_case.tol = suite_tolerance(s.id, s.dim, tol);
      rep.identity_case.triple.p = CMatrix::Zero(s.dim, s.dim);
      rep.identity_case.triple.q = rep.identity_case.triple.p;
      rep.identity_case.triple.r = rep.identity_case.triple.p;
      rep.skipped = true;
      rep.probe = s.id == IdentityId::kT7Stmt;
      rep.note = std::string("case generation failed: ") + e.what();
      rep.residual = std::numeric_limits<double>::infinity();
      reports[i] = std::move(rep);
      return;
    }
    reports[i] = run_one(c);
  });
  return tally(std::move(reports));
}

}  // namespace hypermat
