#include "hsz/lgamma.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsz/error.hpp"

namespace hsz {

namespace {

void require_regular_through(const SchurParams& gamma, std::size_t last_index) {
  if (gamma.terminal_unimodular() && gamma.size() - 1 <= last_index)
    throw Error(ErrorKind::singular_factor,
                "terminal unimodular gamma_" + std::to_string(gamma.size() - 1) +
                    " inside the factor range");
}

// Signed nested sum for one composition (s_1, ..., s_r) of n:
//   sum_{j_1 >= n - s_1} sum_{j_2 >= j_1 - s_2} ... prod_i g_{j_i} conj(g_{j_i + s_i}).
// Innermost sums are folded into suffix sums, so the cost is O(r * support).
cplx composition_sum(const SchurParams& gamma, std::size_t n, const std::vector<std::size_t>& s) {
  const std::size_t support = gamma.support();
  if (support == 0) return cplx{};
  auto term = [&](std::size_t part, std::size_t j) {
    return gamma[j] * std::conj(gamma[j + s[part]]);
  };
  // suffix[j] = sum_{j' >= j} G_{i}(j'), for the level i processed last
  std::vector<cplx> level(support), suffix(support + 1);
  const std::size_t r = s.size();
  for (std::size_t i = r; i-- > 0;) {
    for (std::size_t j = 0; j < support; ++j) {
      cplx v = term(i, j);
      if (i + 1 < r && v != cplx{}) {
        const std::size_t lo = j > s[i + 1] ? j - s[i + 1] : 0;
        v *= suffix[std::min(lo, support)];
      }
      level[j] = v;
    }
    suffix[support] = cplx{};
    for (std::size_t j = support; j-- > 0;) suffix[j] = suffix[j + 1] + level[j];
  }
  const std::size_t lo = n > s[0] ? n - s[0] : 0;
  return suffix[std::min(lo, support)];
}

}  // namespace

cplx l_scalar(const SchurParams& gamma, std::size_t n, std::size_t cap) {
  if (n == 0) return 1.0;
  if (n > cap)
    throw Error(ErrorKind::refused, "L_" + std::to_string(n) + " exceeds the brute-force cap " +
                                        std::to_string(cap));
  cplx total{};
  // bit b of mask set <=> a part boundary after position b + 1
  const std::size_t compositions = std::size_t{1} << (n - 1);
  std::vector<std::size_t> parts;
  for (std::size_t mask = 0; mask < compositions; ++mask) {
    parts.clear();
    std::size_t run = 1;
    for (std::size_t b = 0; b + 1 < n; ++b) {
      if (mask & (std::size_t{1} << b)) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    const double sign = parts.size() % 2 == 0 ? 1.0 : -1.0;
    total += sign * composition_sum(gamma, n, parts);
  }
  return total;
}

CMatrix m_matrix(const SchurParams& gamma, std::size_t n) {
  require_regular_through(gamma, n);
  CMatrix m = CMatrix::Zero(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m(k - 1, k - 1) = defect(gamma[k]);
    double between = 1.0;  // prod_{j=i+1}^{k-1} D_{gamma_j}
    for (std::size_t i = k - 1; i >= 1; --i) {
      m(k - 1, i - 1) = -gamma[i] * between * std::conj(gamma[k]);
      between *= defect(gamma[i]);
    }
  }
  return m;
}

CVector eta_vector(const SchurParams& gamma, std::size_t n) {
  require_regular_through(gamma, n > 0 ? n - 1 : 0);
  CVector eta(n);
  double prefix = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    eta(k - 1) = std::conj(gamma[k]) * prefix;
    prefix *= defect(gamma[k]);
  }
  return eta;
}

void multiply_m_right(CMatrix& p, const SchurParams& gamma, std::size_t shift) {
  const std::size_t n = static_cast<std::size_t>(p.cols());
  require_regular_through(gamma, shift + n);
  // (P M)(:, i) = D_i P(:, i) - g_i S_i,  S_i = sum_{k > i} P(:, k) conj(g_k) prod_{i<j<k} D_j
  CVector s = CVector::Zero(p.rows());
  for (std::size_t i = n; i >= 1; --i) {
    const cplx g = gamma[shift + i];
    const double d = defect(g);
    CVector old = p.col(static_cast<Eigen::Index>(i - 1));
    p.col(static_cast<Eigen::Index>(i - 1)) = d * old - g * s;
    s = std::conj(g) * old + d * s;
  }
}

std::size_t factor_count(const SchurParams& gamma) {
  const std::size_t support = gamma.support();
  return support > 0 ? support - 1 : 0;
}

CMatrix l_matrix_product(const SchurParams& gamma, std::size_t n) {
  if (gamma.terminal_unimodular())
    throw Error(ErrorKind::singular_factor, "L_n is undefined for a terminated sequence");
  CMatrix p = CMatrix::Identity(n, n);
  const std::size_t factors = factor_count(gamma);
  for (std::size_t k = 0; k < factors; ++k) multiply_m_right(p, gamma, k);
  return p;
}

CMatrix l_matrix_direct(const SchurParams& gamma, std::size_t n, std::size_t cap) {
  if (n > cap + 1)
    throw Error(ErrorKind::refused, "direct construction limited to n <= " + std::to_string(cap + 1));
  if (gamma.terminal_unimodular())
    throw Error(ErrorKind::singular_factor, "L_n is undefined for a terminated sequence");
  const std::vector<double> pi = tail_products(gamma);
  auto tail = [&](std::size_t r) { return r < pi.size() ? pi[r] : 1.0; };
  CMatrix l = CMatrix::Zero(n, n);
  for (std::size_t c = 1; c <= n; ++c) {
    const SchurParams shifted = coshift(gamma, c);
    for (std::size_t r = c; r <= n; ++r)
      l(r - 1, c - 1) = tail(r) * l_scalar(shifted, r - c, cap);
  }
  return l;
}

DefectSeries defect_series(const SchurParams& gamma, std::size_t n, std::size_t terms) {
  if (terms == 0) throw Error(ErrorKind::invalid_parameter, "defect series needs terms >= 1");
  DefectSeries out;
  const CMatrix l = l_matrix_product(gamma, n);
  out.a = CMatrix::Identity(n, n) - l * l.adjoint();
  out.partial = CMatrix::Zero(n, n);
  CMatrix prefix = CMatrix::Identity(n, n);  // M(g) M(W g) ... M(W^{j-1} g)
  for (std::size_t j = 0; j < terms; ++j) {
    CVector xi = prefix * eta_vector(coshift(gamma, j), n);
    out.partial += xi * xi.adjoint();
    out.xi.push_back(std::move(xi));
    multiply_m_right(prefix, gamma, j);
  }
  out.residual = op_norm(out.a - out.partial);
  return out;
}

double IdentityResiduals::max() const {
  return std::max({factorization, rank_one, contractivity, eta_product, sigma_bound});
}

IdentityResiduals identity_suite(const SchurParams& gamma, std::size_t n) {
  IdentityResiduals r;
  const CMatrix m = m_matrix(gamma, n);
  const CVector eta = eta_vector(gamma, n);
  const CMatrix l = l_matrix_product(gamma, n);
  const CMatrix l_shift = l_matrix_product(coshift(gamma, 1), n);
  const CMatrix id = CMatrix::Identity(n, n);

  r.factorization = op_norm(l - m * l_shift);
  r.rank_one = op_norm(id - m * m.adjoint() - eta * eta.adjoint());
  r.contractivity = std::max(0.0, op_norm(l) - 1.0);

  double prod_sq = 1.0, prod_d = 1.0;
  for (std::size_t j = 1; j <= n; ++j) {
    prod_sq *= 1.0 - std::norm(gamma[j]);
    prod_d *= defect(gamma[j]);
  }
  r.eta_product = std::abs(1.0 - eta.squaredNorm() - prod_sq);
  r.sigma_bound = std::max(0.0, prod_d - sigma_min(m));
  return r;
}

}  // namespace hsz
