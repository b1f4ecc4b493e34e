#pragma once

#include <cstdint>

#include "hypermat/matrix.hpp"
#include "hypermat/random.hpp"

namespace hypermat::testing {

inline CMatrix diag(std::initializer_list<Complex> d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (Complex v : d) m(i, i) = v, ++i;
  return m;
}

inline CMatrix one_by_one(Complex v) { return scalar_matrix(1, v); }

inline CMatrix random_matrix(std::uint64_t seed, int dim, double scale = 1.0) {
  Rng rng(seed);
  CMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k < dim; ++k) m(i, k) = Complex(rng.normal(), rng.normal()) * scale;
  }
  return m;
}

/// A positive stable matrix with b(P) >= margin: V diag(d) V^{-1}.
inline CMatrix random_stable(std::uint64_t seed, int dim, double margin, double span = 1.5) {
  Rng rng(seed);
  const CMatrix v = random_similarity(rng, dim, 20.0);
  CMatrix d = CMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) d(i, i) = Complex(margin + span * rng.uniform(), rng.uniform(-0.25, 0.25));
  return v * d * v.inverse();
}

inline double rel(const CMatrix& a, const CMatrix& b) { return relative_residual(a, b); }

}  // namespace hypermat::testing
