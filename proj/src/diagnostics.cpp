#include "hsz/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsz/error.hpp"
#include "hsz/lgamma.hpp"

namespace hsz {

SigmaSweep sigma_min_sweep(const SchurParams& gamma, const std::vector<std::size_t>& sizes) {
  SigmaSweep out;
  if (sizes.empty()) return out;
  if (!std::is_sorted(sizes.begin(), sizes.end()))
    throw Error(ErrorKind::invalid_parameter, "sweep sizes must be ascending");
  // L_n is the leading n x n block of L_N for n <= N (lower-triangular product)
  const CMatrix full = l_matrix_product(gamma, sizes.back());
  for (std::size_t n : sizes) {
    if (n == 0) continue;
    const auto k = static_cast<Eigen::Index>(n);
    const double s = sigma_min(full.topLeftCorner(k, k).adjoint());
    out.points.emplace_back(n, s);
    out.infimum = std::min(out.infimum, s);
  }
  return out;
}

StrongSzegoCertificate strong_szego_certificate(const SchurParams& gamma,
                                                const CertificateOptions& opts) {
  StrongSzegoCertificate cert;
  const ClassStats stats = class_stats(gamma);
  cert.sum = stats.strong_szego_sum;
  if (gamma.terminal_unimodular()) return cert;
  cert.product = stats.szego_product;
  cert.c_bound = std::sqrt(stats.szego_product);

  const std::size_t last = gamma.size() > 0 ? gamma.size() - 1 : 0;
  double tail = 0.0;
  for (std::size_t k = 1; k <= last; ++k)
    if (4 * k > 3 * last) tail += static_cast<double>(k) * std::norm(gamma[k]);
  cert.tail_share = cert.sum > 0.0 ? tail / cert.sum : 0.0;
  const bool tail_ok = tail <= opts.tail_fraction * cert.sum || tail <= opts.tail_floor;
  cert.passes = cert.c_bound >= opts.c_min && tail_ok;
  return cert;
}

namespace {

CMatrix section_gram(const MomentSequence& m, std::size_t n) {
  if (m.order() < 2 * n)
    throw Error(ErrorKind::invalid_parameter,
                "finite section n = " + std::to_string(n) + " needs moments up to order " +
                    std::to_string(2 * n));
  return m.gram(2 * n + 1);  // basis t^-n .. t^n
}

}  // namespace

double riesz_finite_section_norm(const MomentSequence& m, std::size_t n) {
  const CMatrix g = section_gram(m, n);
  const auto size = g.rows();
  const auto nn = static_cast<Eigen::Index>(n);
  CMatrix kept = CMatrix::Zero(size, size);
  kept.bottomRightCorner(nn + 1, nn + 1) = g.bottomRightCorner(nn + 1, nn + 1);
  return std::sqrt(std::max(0.0, generalized_max_eigenvalue(kept, g)));
}

double conjugation_ratio(const MomentSequence& m, std::size_t n) {
  const CMatrix g = section_gram(m, n);
  const auto size = g.rows();
  CVector j(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const long k = static_cast<long>(i) - static_cast<long>(n);
    j(i) = cplx{0.0, k > 0 ? -1.0 : (k < 0 ? 1.0 : 0.0)};
  }
  const CMatrix conjugated = j.conjugate().asDiagonal() * g * j.asDiagonal();
  return std::sqrt(std::max(0.0, generalized_max_eigenvalue(conjugated, g)));
}

std::vector<CVector> orthonormal_polynomials(const MomentSequence& m, std::size_t n) {
  const std::size_t size = std::min(n, m.order()) + 1;
  const CMatrix b = m.gram(size);
  // Cholesky column by column so a singular Gram caps the order
  CMatrix l = CMatrix::Zero(size, size);
  std::size_t reached = 0;
  const double floor = 1e-12 * b(0, 0).real();
  for (std::size_t c = 0; c < size; ++c) {
    const auto ci = static_cast<Eigen::Index>(c);
    cplx pivot = b(ci, ci);
    for (Eigen::Index k = 0; k < ci; ++k) pivot -= l(ci, k) * std::conj(l(ci, k));
    if (pivot.real() <= floor) break;
    const double d = std::sqrt(pivot.real());
    l(ci, ci) = d;
    for (auto r = ci + 1; r < static_cast<Eigen::Index>(size); ++r) {
      cplx v = b(r, ci);
      for (Eigen::Index k = 0; k < ci; ++k) v -= l(r, k) * std::conj(l(ci, k));
      l(r, ci) = v / d;
    }
    reached = c + 1;
  }
  const auto k = static_cast<Eigen::Index>(reached);
  const CMatrix lk = l.topLeftCorner(k, k);
  const CMatrix c = lk.triangularView<Eigen::Lower>().solve(CMatrix::Identity(k, k));
  std::vector<CVector> out;
  for (Eigen::Index a = 0; a < k; ++a) out.emplace_back(c.row(a).head(a + 1).transpose());
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified_hs: return "certified_hs";
    case Verdict::likely_hs: return "likely_hs";
    case Verdict::likely_not_hs: return "likely_not_hs";
    case Verdict::not_hs_necessary_violation: return "not_hs_necessary_violation";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::certified_hs:
    case Verdict::likely_hs: return 0;
    case Verdict::likely_not_hs:
    case Verdict::not_hs_necessary_violation: return 1;
    case Verdict::inconclusive: return 2;
  }
  return 2;
}

double loglog_slope(const Sweep& sweep) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& [n, v] : sweep) {
    if (v <= 0.0 || n == 0) continue;
    const double x = std::log(static_cast<double>(n)), y = std::log(v);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++count;
  }
  if (count < 2) return 0.0;
  const double denom = count * sxx - sx * sx;
  return denom > 0.0 ? (count * sxy - sx * sy) / denom : 0.0;
}

std::optional<double> l2_tail_exponent(const SchurParams& gamma, double noise_floor) {
  std::size_t support = gamma.size();
  while (support > 0 && std::abs(gamma[support - 1]) <= noise_floor) --support;
  if (support < 32) return std::nullopt;
  Sweep back_half;
  for (std::size_t j = support / 2; j < support; ++j)
    back_half.emplace_back(j, std::abs(gamma[j]));
  if (back_half.size() < 16) return std::nullopt;
  return loglog_slope(back_half);
}

double gamma_discrepancy(const SchurParams& a, const SchurParams& b, std::size_t order) {
  double worst = 0.0;
  for (std::size_t j = 0; j < order; ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

DiagnosticReport hsz_verdict(const VerdictInput& input, const VerdictConfig& config) {
  DiagnosticReport rep;
  rep.description = input.description;
  std::optional<PowerSeries> theta = input.theta;

  if (input.moments) {
    const MomentSequence& m = *input.moments;
    const PowerSeries th = schur_from_caratheodory(herglotz_from_moments(m));
    const SchurRun run = schur_algorithm(th, th.order(), config.tol);
    const LevinsonResult lev = levinson_verblunsky(m, config.tol);
    const std::size_t check =
        std::min({config.consistency_order, run.gamma.size(), lev.gamma.size()});
    rep.levinson_discrepancy = gamma_discrepancy(run.gamma, lev.gamma, check);
    if (input.gamma) {
      const std::size_t both = std::min({config.consistency_order, run.gamma.size(),
                                         input.gamma->size()});
      const double d = gamma_discrepancy(run.gamma, *input.gamma, both);
      if (d > config.consistency_tol)
        throw Error(ErrorKind::provenance,
                    "gamma and moments disagree by " + std::to_string(d) + " over the first " +
                        std::to_string(both) + " parameters");
      rep.gamma = *input.gamma;
    } else {
      rep.gamma = run.gamma;
    }
    if (!theta) theta = th;
  } else if (input.gamma) {
    rep.gamma = *input.gamma;
  } else if (theta) {
    rep.gamma = schur_algorithm(*theta, theta->order(), config.tol).gamma;
  } else {
    throw Error(ErrorKind::invalid_parameter, "verdict needs gamma, moments or theta");
  }
  const SchurParams& gamma = rep.gamma;
  rep.truncation_order = gamma.size() > 0 ? gamma.size() - 1 : 0;
  rep.stats = class_stats(gamma);
  rep.strong_szego = strong_szego_certificate(gamma, config.certificate);

  if (!theta) theta = inverse_schur(gamma, rep.truncation_order);
  rep.szego_identity_residual = szego_identity(gamma, *theta, config.quad_points).residual;

  if (gamma.terminal_unimodular()) {
    rep.verdict = Verdict::not_hs_necessary_violation;
    rep.reasons.push_back("terminal unimodular parameter at index " +
                          std::to_string(gamma.size() - 1) +
                          ": the Schur function is a finite Blaschke product");
    return rep;
  }
  rep.l2_tail_exponent = l2_tail_exponent(gamma);
  if (rep.l2_tail_exponent && *rep.l2_tail_exponent > config.l2_exponent_cutoff) {
    rep.verdict = Verdict::not_hs_necessary_violation;
    rep.reasons.push_back("parameters decay like j^" + std::to_string(*rep.l2_tail_exponent) +
                          ": evidence that gamma is not square summable");
    return rep;
  }

  const SigmaSweep sweep = sigma_min_sweep(gamma, config.sizes);
  rep.sigma_sweep = sweep.points;
  rep.sigma_infimum = sweep.infimum;
  rep.sigma_slope = loglog_slope(sweep.points);

  if (input.moments) {
    for (std::size_t n : config.sizes) {
      if (n == 0 || 2 * n > input.moments->order()) continue;
      rep.riesz_sweep.emplace_back(n, riesz_finite_section_norm(*input.moments, n));
      rep.conjugation_sweep.emplace_back(n, conjugation_ratio(*input.moments, n));
    }
    if (rep.riesz_sweep.size() >= 2) rep.riesz_slope = loglog_slope(rep.riesz_sweep);
  }

  if (!config.sizes.empty() && config.sizes.back() > 0) {
    const DefectSeries ds =
        defect_series(gamma, config.sizes.back(), factor_count(gamma) + 1);
    rep.defect_lambda_max = hermitian_eigenvalues(ds.partial).maxCoeff();
  }

  if (rep.strong_szego.passes) {
    if (rep.sigma_infimum >= rep.strong_szego.c_bound - 1e-8) {
      rep.verdict = Verdict::certified_hs;
      rep.reasons.push_back("strong Szego product converges; C = " +
                            std::to_string(rep.strong_szego.c_bound));
      return rep;
    }
    rep.reasons.push_back("certificate bound exceeds the observed sigma_min infimum");
  }

  const bool sigma_decays = rep.sigma_slope < -config.slope_cutoff;
  const bool sigma_flat = rep.sigma_infimum >= config.eps_min && !sigma_decays;
  const bool riesz_grows = rep.riesz_slope && *rep.riesz_slope > config.slope_cutoff;
  if (sigma_decays && (!rep.riesz_slope || riesz_grows)) {
    rep.verdict = Verdict::likely_not_hs;
    rep.reasons.push_back("sigma_min(L_n^*) decays with log-log slope " +
                          std::to_string(rep.sigma_slope));
  } else if (sigma_flat && !riesz_grows) {
    rep.verdict = Verdict::likely_hs;
    rep.reasons.push_back("sigma_min(L_n^*) stays above " + std::to_string(config.eps_min) +
                          " with log-log slope " + std::to_string(rep.sigma_slope));
  } else {
    rep.verdict = Verdict::inconclusive;
    rep.reasons.push_back("sweeps do not separate: sigma slope " +
                          std::to_string(rep.sigma_slope));
  }
  return rep;
}

}  // namespace hsz
