#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hsz/linalg.hpp"
#include "hsz/power_series.hpp"
#include "hsz/seqcore.hpp"

namespace hsz {

/// Trigonometric moments m_k = integral of t^k against mu, k = 0..N.
/// Negative indices follow from m_{-k} = conj(m_k).
class MomentSequence {
 public:
  MomentSequence() : m_{cplx{1.0, 0.0}} {}
  explicit MomentSequence(std::vector<cplx> moments);

  std::size_t order() const noexcept { return m_.size() - 1; }
  std::span<const cplx> values() const noexcept { return m_; }
  /// m_k for |k| <= order, using the Hermitian extension.
  cplx operator()(long k) const;

  /// Gram matrix of {t^{lo}, ..., t^{lo+size-1}} in L^2(mu): entry (j, k) is
  /// (t^{lo+k}, t^{lo+j}) = m_{k-j}.
  CMatrix gram(std::size_t size) const;
  double toeplitz_min_eigenvalue(std::size_t size) const;
  /// Throws unless the full Toeplitz section has min eigenvalue >= -1e-10.
  void validate_positive() const;

 private:
  std::vector<cplx> m_;
};

struct SchurRun {
  SchurParams gamma;
  /// Parameters backed by input coefficients; gamma_j depends on a_0..a_j only.
  std::size_t trusted = 0;
};

SchurRun schur_algorithm(const PowerSeries& theta, std::size_t max_order,
                         const Tolerances& tol = {});

PowerSeries inverse_schur(const SchurParams& gamma, std::size_t order);

/// Phi_0 = 1, Phi_k = 2 conj(m_k).
PowerSeries herglotz_from_moments(const MomentSequence& m);

/// Theta with z Theta = (Phi - 1) / (Phi + 1), order phi.order() - 1.
PowerSeries schur_from_caratheodory(const PowerSeries& phi);

/// (1 + z Theta) / (1 - z Theta), order theta.order() + 1.
PowerSeries caratheodory_from_schur(const PowerSeries& theta);

/// Schur parameters of mu along Herglotz -> Caratheodory -> Schur algorithm.
SchurRun gamma_from_moments(const MomentSequence& m, const Tolerances& tol = {});

/// m_k = (1/M) sum_l w(t_l) t_l^k on t_l = exp(2 pi i l / M), normalized by m_0.
/// `samples` holds w(t_0..t_{M-1}); requires M >= 8 N.
MomentSequence moments_from_weight(std::span<const double> samples, std::size_t order);
MomentSequence moments_from_weight(const std::function<double(double)>& weight_of_angle,
                                   std::size_t order, std::size_t grid);

struct LevinsonResult {
  SchurParams gamma;
  std::size_t order_reached = 0;  // number of coefficients produced
  bool singular = false;          // Toeplitz section lost definiteness
};

/// Szego/Levinson recurrence on the moment Toeplitz matrix. With monic
/// polynomials Phi_{n+1}(z) = z Phi_n(z) - conj(a_n) Phi_n^*(z) the coefficient
/// is a_n = conj(sum_k phi_{n,k} m_{k+1}) / E_n, which coincides with the
/// Schur-algorithm parameters of the same measure.
LevinsonResult levinson_verblunsky(const MomentSequence& m, const Tolerances& tol = {});

struct SzegoIdentityResult {
  double product = 1.0;        // prod_j (1 - |gamma_j|^2)
  double integral_exp = 1.0;   // exp(mean of ln(1 - |theta|^2)), extrapolated to r = 1
  double raw_integral_exp = 1.0;  // same at radius r only
  double radius = 1.0;
  double residual = 0.0;       // |product - integral_exp|
  double raw_residual = 0.0;
  bool singular = false;       // |theta| >= 1 at some node
};

/// Radius defaults to 1 - 1/(4 Q). The circle mean of ln(1 - |theta(r t)|^2)
/// is smooth in (1 - r); `richardson_levels` radii 1 - 2^i (1 - r) are
/// combined by polynomial extrapolation to r = 1 (1 = no extrapolation).
SzegoIdentityResult szego_identity(const SchurParams& gamma, const PowerSeries& theta,
                                   std::size_t quad_points, double radius = -1.0,
                                   int richardson_levels = 3);

double szego_identity_residual(const SchurParams& gamma, const PowerSeries& theta,
                               std::size_t quad_points, double radius = -1.0);

}  // namespace hsz
