#include <doctest.h>

#include <cmath>

#include "../oracles/oracle_values.hpp"
#include "hypermat/errors.hpp"
#include "hypermat/special.hpp"
#include "support.hpp"

using namespace hypermat;
using hypermat::testing::diag;
using hypermat::testing::random_stable;
using hypermat::testing::rel;

TEST_CASE("scalar gamma against high-precision values") {
  for (const auto& g : oracle::kGamma) {
    const Complex v = scalar::gamma(g.z);
    CHECK(std::abs(v - g.value) <= 1e-13 * std::abs(g.value));
    CHECK(std::abs(scalar::rgamma(g.z) * g.value - 1.0) <= 1e-13);
  }
  CHECK(scalar::rgamma(0.0) == Complex(0.0));
  CHECK(scalar::rgamma(-3.0) == Complex(0.0));
  CHECK_THROWS_AS(scalar::gamma(-2.0), DomainError);
}

TEST_CASE("gamma_matrix examples") {
  CHECK(rel(gamma_matrix(identity(3)), identity(3)) <= 1e-15);
  CHECK(rel(gamma_matrix(diag({1, 2, 3})), diag({1, 1, 2})) <= 1e-14);
  CHECK(rel(gamma_matrix(scalar_matrix(3, 0.5)), scalar_matrix(3, oracle::kSqrtPi)) <= 1e-12);
}

TEST_CASE("reciprocal gamma examples") {
  CHECK(rel(reciprocal_gamma(identity(2)), identity(2)) <= 1e-15);
  CHECK(reciprocal_gamma(CMatrix::Zero(1, 1))(0, 0) == Complex(0.0));
  CMatrix j(2, 2);
  j << 1, 1, 0, 1;
  CMatrix expected(2, 2);
  expected << 1, oracle::kEulerGamma, 0, 1;
  CHECK(rel(reciprocal_gamma(j), expected) <= 1e-12);
  // Jordan entry against a central difference of the scalar function.
  const double h = 1e-5;
  const Complex fd = (scalar::rgamma(1.0 + h) - scalar::rgamma(1.0 - h)) / (2.0 * h);
  CHECK(std::abs(reciprocal_gamma(j)(0, 1) - fd) <= 1e-9);
}

TEST_CASE("shift identity Gamma(P + I) = P Gamma(P)") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int dim = 1 + static_cast<int>(seed % 5);
    const CMatrix p = random_stable(3000 + seed, dim, 0.1);
    const CMatrix lhs = gamma_matrix(CMatrix(p + identity(dim)));
    CHECK(rel(lhs, CMatrix(p * gamma_matrix(p))) <= 1e-11);
  }
}

TEST_CASE("reciprocal gamma inverts gamma") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int dim = 1 + static_cast<int>(seed % 5);
    const CMatrix p = random_stable(4000 + seed, dim, 0.1);
    CHECK(rel(CMatrix(reciprocal_gamma(p) * gamma_matrix(p)), identity(dim)) <= 1e-10);
  }
}

TEST_CASE("pochhammer examples and splitting") {
  const CMatrix p = random_stable(17, 3, 0.2);
  CHECK(pochhammer(p, 0) == identity(3));
  CHECK(rel(pochhammer(identity(2), 4), scalar_matrix(2, 24.0)) == 0.0);
  CMatrix j(2, 2);
  j << 1, 1, 0, 1;
  CMatrix j2(2, 2);
  j2 << 2, 3, 0, 2;
  CHECK(rel(pochhammer(j, 2), j2) <= 1e-15);
  for (int k = 0; k <= 6; ++k) {
    for (int m = 0; m <= 6; ++m) {
      const CMatrix lhs = pochhammer(p, k + m);
      const CMatrix rhs = pochhammer(p, m) * pochhammer(CMatrix(p + m * identity(3)), k);
      CHECK(rel(lhs, rhs) <= 1e-11);
    }
  }
  // Gamma-quotient form (P)_m = Gamma^{-1}(P) Gamma(P + mI).
  for (int m : {1, 3, 7}) {
    const CMatrix via_gamma = reciprocal_gamma(p) * gamma_matrix(CMatrix(p + m * identity(3)));
    CHECK(rel(pochhammer(p, m), via_gamma) <= 1e-10);
  }
}

TEST_CASE("Pochhammer cache") {
  const CMatrix p = random_stable(23, 2, 0.3);
  PochhammerCache cache(p);
  CHECK(cache.at(0) == identity(2));
  cache.extend_to(12);
  REQUIRE(cache.values().size() >= 13);
  for (int m = 0; m < 12; ++m) {
    const CMatrix next = cache.values()[m] * (p + m * identity(2));
    CHECK(rel(cache.values()[m + 1], next) <= 1e-13);
  }
}

TEST_CASE("matrix binomial examples") {
  CHECK(matrix_binomial(random_stable(3, 2, 0.1), 0) == identity(2));
  CHECK(rel(matrix_binomial(identity(2), 3), CMatrix(-identity(2))) <= 1e-15);
  CHECK(rel(matrix_binomial(scalar_matrix(2, 2.0), 2), scalar_matrix(2, 3.0)) <= 1e-15);
}

TEST_CASE("beta function") {
  CHECK(rel(beta_matrix(identity(2), identity(2)), identity(2)) <= 1e-15);
  CHECK(rel(beta_matrix(identity(2), scalar_matrix(2, 2.0)), scalar_matrix(2, 0.5)) <= 1e-15);
  CHECK(rel(beta_matrix(diag({2, 3}), diag({3, 2})), diag({1.0 / 12, 1.0 / 12})) <= 1e-14);
  StabilityConstraints sc;
  sc.q = 0.1;
  sc.r_minus_q = 0.1;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const CommutingTriple t = random_commuting_triple(seed, 1 + seed % 4, sc);
    const CMatrix rq = t.r - t.q;
    CHECK(rel(beta_matrix(t.q, rq), beta_matrix(rq, t.q)) <= 1e-11);
    CHECK(rel(beta_matrix_integral(t.q, rq), beta_matrix(t.q, rq)) <= 1e-8);
  }
  CHECK_THROWS_AS(beta_matrix(diag({1, 2}), CMatrix(CMatrix::Ones(2, 2))), PreconditionError);
  CHECK_THROWS_AS(beta_matrix(scalar_matrix(1, -1.5), scalar_matrix(1, -0.5)), DomainError);
}

TEST_CASE("gamma limit form") {
  CHECK(rel(gamma_limit_form(identity(2), 10), identity(2)) <= 1e-15);
  CHECK(rel(gamma_limit_form(scalar_matrix(2, 2.0), 1000), identity(2)) <= 2e-3);
  double previous = 1e300;
  for (int m = 2; m <= 64; m *= 2) {
    const double r = rel(gamma_limit_form(scalar_matrix(1, 0.5), m), scalar_matrix(1, oracle::kSqrtPi));
    CHECK(r < previous);
    previous = r;
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CMatrix p = random_stable(7000 + seed, 3, 0.1);
    const CMatrix g = gamma_matrix(p);
    double last = 1e300;
    for (int m : {10, 100, 1000, 2000}) {
      const double r = rel(gamma_limit_form(p, m), g);
      CHECK(r < last);
      last = r;
    }
    CHECK(last <= 1e-2);
  }
}

TEST_CASE("Pochhammer multiplication and duplication") {
  CHECK(rel(pochhammer_multiplication(identity(1), 2, 1), scalar_matrix(1, 2.0)) <= 1e-15);
  CMatrix j(2, 2);
  j << 1, 1, 0, 1;
  CHECK(rel(pochhammer_multiplication(j, 2, 2), pochhammer(j, 4)) <= 1e-13);
  const CMatrix p = random_stable(31, 3, 0.1);
  for (int n = 0; n <= 8; ++n) CHECK(rel(pochhammer_multiplication(p, 1, n), pochhammer(p, n)) <= 1e-15);
  for (int m = 1; m <= 8; ++m) {
    for (int n = 0; m * n <= 40; ++n) {
      CHECK(rel(pochhammer_multiplication(p, m, n), pochhammer(p, m * n)) <= 1e-11);
    }
  }
}
