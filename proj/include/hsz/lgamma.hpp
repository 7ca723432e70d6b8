#pragma once

#include <cstddef>
#include <vector>

#include "hsz/linalg.hpp"
#include "hsz/seqcore.hpp"

namespace hsz {

// Finite sections of the triangular operator built from a Schur-parameter
// sequence, and the factor matrices it decomposes into. gamma_0 never enters
// these matrices: row/column k (1-based) is driven by gamma_k.

inline constexpr std::size_t kBruteForceCap = 10;

/// L_n(gamma) as the signed sum over compositions of n. Exponential in n;
/// refuses n > cap.
cplx l_scalar(const SchurParams& gamma, std::size_t n, std::size_t cap = kBruteForceCap);

/// Lower-triangular factor: diagonal D_{gamma_k}, entry (k, i) for i < k equal
/// to -gamma_i (prod_{j=i+1}^{k-1} D_{gamma_j}) conj(gamma_k).
CMatrix m_matrix(const SchurParams& gamma, std::size_t n);

/// Column with entries conj(gamma_k) prod_{j=1}^{k-1} D_{gamma_j}.
CVector eta_vector(const SchurParams& gamma, std::size_t n);

/// In place p <- p * m_matrix(W^shift gamma, n) in O(rows * n).
void multiply_m_right(CMatrix& p, const SchurParams& gamma, std::size_t shift);

/// Number of factors m_matrix(W^k gamma), k = 0, 1, ..., before they all
/// become the identity.
std::size_t factor_count(const SchurParams& gamma);

/// Ordered product M_n(gamma) M_n(W gamma) M_n(W^2 gamma) ...
CMatrix l_matrix_product(const SchurParams& gamma, std::size_t n);

/// Entry (r, c), 1-based, c <= r: Pi_r L_{r-c}(W^c gamma). n <= cap + 1.
CMatrix l_matrix_direct(const SchurParams& gamma, std::size_t n,
                        std::size_t cap = kBruteForceCap);

struct DefectSeries {
  CMatrix a;                  // I - L_n L_n^*
  CMatrix partial;            // sum_{j < terms} xi_j xi_j^*
  std::vector<CVector> xi;
  double residual = 0.0;      // ||a - partial||
};

DefectSeries defect_series(const SchurParams& gamma, std::size_t n, std::size_t terms);

struct IdentityResiduals {
  double factorization = 0.0;  // ||L_n(g) - M_n(g) L_n(W g)||
  double rank_one = 0.0;       // ||I - M M^* - eta eta^*||
  double contractivity = 0.0;  // max(0, ||L_n|| - 1)
  double eta_product = 0.0;    // |1 - ||eta||^2 - prod (1 - |g_j|^2)|
  double sigma_bound = 0.0;    // max(0, prod D - sigma_min(M_n))

  double max() const;
  bool passes(double tol = 1e-10) const { return max() <= tol; }
};

IdentityResiduals identity_suite(const SchurParams& gamma, std::size_t n);

}  // namespace hsz
