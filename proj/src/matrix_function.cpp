#include "hypermat/matrix_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "hypermat/errors.hpp"

namespace hypermat {

namespace {

constexpr double kClusterTolerance = 1e-4;
constexpr int kContourPoints = 64;
constexpr int kMaxTaylorOrder = 48;

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// Swap the adjacent diagonal entries k, k+1 of the upper triangular `t`,
// updating `u` so that u t u* is preserved.
void swap_adjacent(CMatrix& t, CMatrix& u, int k) {
  const Complex t11 = t(k, k);
  const Complex t22 = t(k + 1, k + 1);
  const Complex t12 = t(k, k + 1);
  const Complex d = t22 - t11;
  const double r = std::hypot(std::abs(t12), std::abs(d));
  if (r == 0.0) return;
  const Complex c = t12 / r;
  const Complex s = d / r;
  Eigen::Matrix2cd g;
  g << c, -std::conj(s), s, std::conj(c);
  t.middleRows(k, 2) = g.adjoint() * t.middleRows(k, 2);
  t.middleCols(k, 2) = t.middleCols(k, 2) * g;
  u.middleCols(k, 2) = u.middleCols(k, 2) * g;
  t(k + 1, k) = 0.0;
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
}

// Solves a x - x b = c for upper triangular a (m x m) and b (n x n) with
// disjoint spectra.
CMatrix solve_triangular_sylvester(const CMatrix& a, const CMatrix& b, const CMatrix& c) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = b.rows();
  CMatrix x(m, n);
  for (Eigen::Index l = 0; l < n; ++l) {
    Eigen::VectorXcd rhs = c.col(l);
    for (Eigen::Index k = 0; k < l; ++k) rhs += x.col(k) * b(k, l);
    for (Eigen::Index r = m - 1; r >= 0; --r) {
      Complex acc = rhs(r);
      for (Eigen::Index s = r + 1; s < m; ++s) acc -= a(r, s) * x(s, l);
      x(r, l) = acc / (a(r, r) - b(l, l));
    }
  }
  return x;
}

void contour_taylor(const ScalarFunction& f, Complex center, double radius,
                    std::span<Complex> coeffs) {
  std::vector<Complex> samples(kContourPoints);
  for (int j = 0; j < kContourPoints; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / kContourPoints;
    samples[static_cast<std::size_t>(j)] = f.value(center + std::polar(radius, theta));
  }
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Complex acc = 0.0;
    for (int j = 0; j < kContourPoints; ++j) {
      const double theta = -2.0 * std::numbers::pi * static_cast<double>(k) * j / kContourPoints;
      acc += samples[static_cast<std::size_t>(j)] * std::polar(1.0, theta);
    }
    coeffs[k] = acc / (static_cast<double>(kContourPoints) * std::pow(radius, static_cast<double>(k)));
  }
}

CMatrix apply_on_cluster(const ScalarFunction& f, const CMatrix& block, int full_dim) {
  const Eigen::Index s = block.rows();
  Complex center = block.diagonal().mean();
  const CMatrix shifted = block - center * CMatrix::Identity(s, s);

  const int order = std::min(kMaxTaylorOrder, std::max<int>(2 * full_dim, static_cast<int>(s)) + 8);
  std::vector<Complex> coeffs(static_cast<std::size_t>(order));
  if (f.taylor) {
    f.taylor(center, coeffs);
  } else if (f.contour_derivatives) {
    double radius = f.contour_radius ? f.contour_radius(center) : 1.0;
    double spread = 0.0;
    for (Eigen::Index i = 0; i < s; ++i) spread = std::max(spread, std::abs(block(i, i) - center));
    radius = std::max(radius, 4.0 * spread);
    contour_taylor(f, center, radius, coeffs);
  } else {
    throw ConfluenceError("eigenvalue cluster near " + format_complex(center) + " of size " +
                          std::to_string(s) + " and '" + f.name +
                          "' provides no derivative information");
  }

  CMatrix result = coeffs[0] * CMatrix::Identity(s, s);
  CMatrix power = CMatrix::Identity(s, s);
  for (int k = 1; k < order; ++k) {
    power = power * shifted;
    const double pn = power.cwiseAbs().maxCoeff();
    if (pn == 0.0) break;
    result += coeffs[static_cast<std::size_t>(k)] * power;
  }
  return result;
}

}  // namespace

ScalarFunction exp_scaled(Complex c) {
  ScalarFunction f;
  f.name = "exp_scaled";
  f.value = [c](Complex x) { return std::exp(c * x); };
  f.taylor = [c](Complex center, std::span<Complex> coeffs) {
    Complex term = std::exp(c * center);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      coeffs[k] = term;
      term *= c / static_cast<double>(k + 1);
    }
  };
  return f;
}

ScalarFunction identity_function() {
  ScalarFunction f;
  f.name = "identity";
  f.value = [](Complex x) { return x; };
  f.taylor = [](Complex center, std::span<Complex> coeffs) {
    std::fill(coeffs.begin(), coeffs.end(), Complex(0.0));
    if (!coeffs.empty()) coeffs[0] = center;
    if (coeffs.size() > 1) coeffs[1] = 1.0;
  };
  return f;
}

SchurForm::SchurForm(const CMatrix& a) {
  SpectralData sd = schur_decompose(a);
  u_ = std::move(sd.schur_unitary);
  t_ = std::move(sd.schur_triangular);
  const int n = static_cast<int>(t_.rows());

  // Cluster assignment by transitive closure of |lambda_i - lambda_j| <= delta.
  const double delta = kClusterTolerance * t_.norm();
  std::vector<int> cluster(static_cast<std::size_t>(n));
  std::iota(cluster.begin(), cluster.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (cluster[static_cast<std::size_t>(i)] != i) i = cluster[static_cast<std::size_t>(i)];
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(t_(i, i) - t_(j, j)) <= delta) {
        const int ri = find(i);
        const int rj = find(j);
        if (ri != rj) cluster[static_cast<std::size_t>(std::max(ri, rj))] = std::min(ri, rj);
      }
    }
  }
  // Rank clusters by first appearance, then bubble the diagonal into order.
  std::vector<int> rank(static_cast<std::size_t>(n), -1);
  std::vector<int> pos_rank(static_cast<std::size_t>(n));
  int next = 0;
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    if (rank[static_cast<std::size_t>(root)] < 0) rank[static_cast<std::size_t>(root)] = next++;
    pos_rank[static_cast<std::size_t>(i)] = rank[static_cast<std::size_t>(root)];
  }
  for (int pass = 0; pass < n; ++pass) {
    bool swapped = false;
    for (int k = 0; k + 1 < n; ++k) {
      if (pos_rank[static_cast<std::size_t>(k)] > pos_rank[static_cast<std::size_t>(k + 1)]) {
        swap_adjacent(t_, u_, k);
        std::swap(pos_rank[static_cast<std::size_t>(k)], pos_rank[static_cast<std::size_t>(k + 1)]);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && pos_rank[static_cast<std::size_t>(j)] == pos_rank[static_cast<std::size_t>(i)]) ++j;
    blocks_.emplace_back(i, j - i);
    i = j;
  }
  eigenvalues_.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eigenvalues_.push_back(t_(i, i));
}

double SchurForm::lower_real() const { return spectral_lower(eigenvalues_); }

CMatrix SchurForm::apply(const ScalarFunction& f) const {
  const int n = dim();
  std::vector<Complex> fvals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Complex lambda = eigenvalues_[static_cast<std::size_t>(i)];
    Complex v;
    try {
      v = f.value(lambda);
    } catch (const DomainError& e) {
      throw DomainError("'" + f.name + "' undefined at eigenvalue " + format_complex(lambda) +
                        ": " + e.what());
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("'" + f.name + "' undefined at eigenvalue " + format_complex(lambda));
    }
    fvals[static_cast<std::size_t>(i)] = v;
  }

  CMatrix ft = CMatrix::Zero(n, n);
  const auto nb = static_cast<int>(blocks_.size());
  for (const auto& [start, size] : blocks_) {
    if (size == 1) {
      ft(start, start) = fvals[static_cast<std::size_t>(start)];
    } else {
      ft.block(start, start, size, size) = apply_on_cluster(f, t_.block(start, start, size, size), n);
    }
  }
  for (int d = 1; d < nb; ++d) {
    for (int bi = 0; bi + d < nb; ++bi) {
      const int bj = bi + d;
      const auto [i0, si] = blocks_[static_cast<std::size_t>(bi)];
      const auto [j0, sj] = blocks_[static_cast<std::size_t>(bj)];
      CMatrix rhs = ft.block(i0, i0, si, si) * t_.block(i0, j0, si, sj) -
                    t_.block(i0, j0, si, sj) * ft.block(j0, j0, sj, sj);
      for (int bk = bi + 1; bk < bj; ++bk) {
        const auto [k0, sk] = blocks_[static_cast<std::size_t>(bk)];
        rhs += ft.block(i0, k0, si, sk) * t_.block(k0, j0, sk, sj) -
               t_.block(i0, k0, si, sk) * ft.block(k0, j0, sk, sj);
      }
      ft.block(i0, j0, si, sj) =
          solve_triangular_sylvester(t_.block(i0, i0, si, si), t_.block(j0, j0, sj, sj), rhs);
    }
  }
  if (n == 1) return ft;
  return u_ * ft * u_.adjoint();
}

CMatrix holomorphic_apply(const ScalarFunction& f, const CMatrix& p) {
  return SchurForm(p).apply(f);
}

CMatrix matrix_power_scalar(double t, const CMatrix& p) {
  require_square_finite(p, "matrix exponent");
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("matrix_power_scalar requires a positive finite base");
  }
  if (t == 1.0) return identity(static_cast<int>(p.rows()));
  return SchurForm(p).apply(exp_scaled(std::log(t)));
}

CMatrix matrix_power_scalar(const SchurForm& p, Complex log_base) {
  if (log_base == Complex(0.0)) return identity(p.dim());
  return p.apply(exp_scaled(log_base));
}

}  // namespace hypermat
