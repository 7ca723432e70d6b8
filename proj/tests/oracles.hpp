#pragma once

// Test-only reference computations. Nothing here calls the code paths it is
// used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

inline cplx at(const std::vector<cplx>& g, std::size_t j) { return j < g.size() ? g[j] : cplx{}; }

inline void compositions(std::size_t n, std::vector<std::size_t>& cur,
                         std::vector<std::vector<std::size_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t s = 1; s <= n; ++s) {
    cur.push_back(s);
    compositions(n - s, cur, out);
    cur.pop_back();
  }
}

// Literal nested loops over j_1 >= n - s_1, j_{i+1} >= j_i - s_{i+1}; every
// index runs to the end of the stored sequence.
inline cplx nested(const std::vector<cplx>& g, const std::vector<std::size_t>& s, std::size_t i,
                   long lower) {
  if (i == s.size()) return 1.0;
  cplx acc{};
  for (long j = std::max(lower, 0L); j < static_cast<long>(g.size()); ++j) {
    const cplx t = at(g, j) * std::conj(at(g, j + s[i]));
    if (t == cplx{}) continue;
    const long next_lower = i + 1 < s.size() ? j - static_cast<long>(s[i + 1]) : 0;
    acc += t * nested(g, s, i + 1, next_lower);
  }
  return acc;
}

inline cplx l_scalar(const std::vector<cplx>& g, std::size_t n) {
  if (n == 0) return 1.0;
  std::vector<std::vector<std::size_t>> all;
  std::vector<std::size_t> cur;
  compositions(n, cur, all);
  cplx total{};
  for (const auto& s : all) {
    const double sign = s.size() % 2 ? -1.0 : 1.0;
    total += sign * nested(g, s, 0, static_cast<long>(n) - static_cast<long>(s[0]));
  }
  return total;
}

inline double d(cplx g) { return std::sqrt(1.0 - std::norm(g)); }

// Dense factor built entry by entry from the closed form.
inline Eigen::MatrixXcd m_dense(const std::vector<cplx>& g, std::size_t n, std::size_t shift) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m(k - 1, k - 1) = d(at(g, shift + k));
    for (std::size_t i = 1; i < k; ++i) {
      double p = 1.0;
      for (std::size_t j = i + 1; j < k; ++j) p *= d(at(g, shift + j));
      m(k - 1, i - 1) = -at(g, shift + i) * p * std::conj(at(g, shift + k));
    }
  }
  return m;
}

inline Eigen::MatrixXcd l_dense_product(const std::vector<cplx>& g, std::size_t n) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(n, n);
  for (std::size_t k = 0; k < g.size() + n; ++k) p = p * m_dense(g, n, k);
  return p;
}

inline std::vector<cplx> random_gamma(std::mt19937_64& rng, std::size_t support, double max_mod) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> g(support);
  for (auto& v : g) v = std::polar(max_mod * u(rng), 2.0 * std::numbers::pi * u(rng));
  return g;
}

// max ||A a|| / ||a|| with ||a||^2 = a^* G a, through the eigen-decomposition
// of G (not a Cholesky factor).
inline double generalized_norm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXcd g_inv_half = es.eigenvectors() * inv_sqrt.asDiagonal() *
                                      es.eigenvectors().adjoint();
  const Eigen::MatrixXcd c = g_inv_half * a * g_inv_half;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ec(0.5 * (c + c.adjoint()));
  return std::sqrt(ec.eigenvalues().maxCoeff());
}

// Gram of t^-n..t^n for explicit moments: (j, k) -> m_{k-j}.
inline Eigen::MatrixXcd gram(const std::vector<cplx>& m, std::size_t n) {
  const long size = 2 * static_cast<long>(n) + 1;
  Eigen::MatrixXcd g(size, size);
  for (long j = 0; j < size; ++j)
    for (long k = 0; k < size; ++k) {
      const long idx = k - j;
      const cplx v = at(m, static_cast<std::size_t>(std::abs(idx)));
      g(j, k) = idx >= 0 ? v : std::conj(v);
    }
  return g;
}

// Composite trapezoid on [0, 2 pi) with many nodes.
inline cplx fourier_moment(const std::function<double(double)>& w, long k, std::size_t nodes) {
  cplx acc{}, mass{};
  for (std::size_t l = 0; l < nodes; ++l) {
    const double th = 2.0 * std::numbers::pi * double(l) / double(nodes);
    acc += w(th) * std::polar(1.0, double(k) * th);
    mass += w(th);
  }
  return acc / mass;
}

}  // namespace oracle
