#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsz/linalg.hpp"
#include "hsz/seqcore.hpp"
#include "hsz/transforms.hpp"

namespace hsz {

using Sweep = std::vector<std::pair<std::size_t, double>>;

struct SigmaSweep {
  Sweep points;         // (n, sigma_min(L_n^*))
  double infimum = 1.0; // empirical C
};

SigmaSweep sigma_min_sweep(const SchurParams& gamma, const std::vector<std::size_t>& sizes);

struct CertificateOptions {
  double c_min = 1e-6;
  double tail_fraction = 0.01;  // last-quarter share of sum k |gamma_k|^2
  double tail_floor = 1e-20;    // tails this small count as numerically zero
};

struct StrongSzegoCertificate {
  bool passes = false;
  double c_bound = 0.0;   // prod_{k>=1} prod_{j>=k} D_{gamma_j}
  double sum = 0.0;       // sum_{k>=1} k |gamma_k|^2
  double product = 0.0;   // c_bound^2
  double tail_share = 0.0;
};

StrongSzegoCertificate strong_szego_certificate(const SchurParams& gamma,
                                                const CertificateOptions& opts = {});

/// Norm of the Riesz projection on span{t^-n..t^n} in L^2(mu).
double riesz_finite_section_norm(const MomentSequence& m, std::size_t n);

/// sup ||f~|| / ||f|| over trigonometric polynomials of degree <= n.
double conjugation_ratio(const MomentSequence& m, std::size_t n);

/// Coefficient vectors of phi_0..phi_k in the basis t^0, t^-1, ..., t^-k,
/// with positive leading coefficients. Stops early when the Gram matrix
/// loses definiteness.
std::vector<CVector> orthonormal_polynomials(const MomentSequence& m, std::size_t n);

enum class Verdict {
  certified_hs,
  likely_hs,
  likely_not_hs,
  not_hs_necessary_violation,
  inconclusive,
};

const char* to_string(Verdict v);
int exit_code(Verdict v);

struct VerdictConfig {
  std::vector<std::size_t> sizes{4, 8, 16, 32, 64, 128};
  double eps_min = 1e-3;
  double slope_cutoff = 0.25;
  CertificateOptions certificate;
  Tolerances tol;
  double consistency_tol = 1e-6;
  std::size_t consistency_order = 24;
  std::size_t quad_points = 4096;
  // |gamma_j| decaying no faster than j^{-1/2} on the back half is read as
  // evidence that gamma is not square summable.
  double l2_exponent_cutoff = -0.5;
};

struct VerdictInput {
  std::optional<SchurParams> gamma;
  std::optional<MomentSequence> moments;
  std::optional<PowerSeries> theta;  // Schur function, when already known
  std::string description;
};

struct DiagnosticReport {
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> reasons;
  SchurParams gamma;
  std::size_t truncation_order = 0;
  Sweep sigma_sweep;
  double sigma_infimum = 1.0;
  double sigma_slope = 0.0;
  Sweep riesz_sweep;
  Sweep conjugation_sweep;
  std::optional<double> riesz_slope;
  StrongSzegoCertificate strong_szego;
  ClassStats stats;
  std::optional<double> l2_tail_exponent;
  std::optional<double> szego_identity_residual;
  std::optional<double> levinson_discrepancy;
  // lambda_max of sum_j xi_j xi_j^* at the largest sweep size (= 1 - eps)
  std::optional<double> defect_lambda_max;
  std::string description;
};

/// Least-squares slope of log(value) against log(n); points with value <= 0
/// are skipped.
double loglog_slope(const Sweep& sweep);

/// Fitted exponent p in |gamma_j| ~ j^p over the back half of the support,
/// where entries at or below `noise_floor` do not count toward the support.
std::optional<double> l2_tail_exponent(const SchurParams& gamma, double noise_floor = 1e-13);

/// Largest |difference| over the first `order` parameters of the two.
double gamma_discrepancy(const SchurParams& a, const SchurParams& b, std::size_t order);

DiagnosticReport hsz_verdict(const VerdictInput& input, const VerdictConfig& config = {});

}  // namespace hsz
