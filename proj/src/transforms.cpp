#include "hsz/transforms.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "hsz/error.hpp"

namespace hsz {

MomentSequence::MomentSequence(std::vector<cplx> moments) : m_(std::move(moments)) {
  if (m_.empty()) throw Error(ErrorKind::invalid_parameter, "empty moment sequence");
  for (const cplx& c : m_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorKind::invalid_parameter, "non-finite moment");
  if (std::abs(m_[0].imag()) > 1e-12)
    throw Error(ErrorKind::invalid_parameter, "m_0 must be real");
}

cplx MomentSequence::operator()(long k) const {
  const std::size_t a = static_cast<std::size_t>(k < 0 ? -k : k);
  if (a >= m_.size())
    throw Error(ErrorKind::invalid_parameter, "moment index " + std::to_string(k) + " out of range");
  return k < 0 ? std::conj(m_[a]) : m_[a];
}

CMatrix MomentSequence::gram(std::size_t size) const {
  CMatrix g(size, size);
  for (std::size_t j = 0; j < size; ++j)
    for (std::size_t k = 0; k < size; ++k)
      g(j, k) = (*this)(static_cast<long>(k) - static_cast<long>(j));
  return g;
}

double MomentSequence::toeplitz_min_eigenvalue(std::size_t size) const {
  return hermitian_eigenvalues(gram(size)).minCoeff();
}

void MomentSequence::validate_positive() const {
  if (toeplitz_min_eigenvalue(m_.size()) < -1e-10)
    throw Error(ErrorKind::invalid_parameter, "moment Toeplitz matrix is not positive semidefinite");
}

namespace {

// Both Schur directions run in extended precision; the forward map amplifies
// coefficient perturbations roughly like prod 1 / (1 - |gamma_j|^2).
using lcplx = std::complex<long double>;
using LSeries = std::vector<lcplx>;

lcplx widen(cplx z) { return {z.real(), z.imag()}; }
cplx narrow(lcplx z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

}  // namespace

SchurRun schur_algorithm(const PowerSeries& theta, std::size_t max_order, const Tolerances& tol) {
  if (theta.order() < max_order)
    throw Error(ErrorKind::invalid_parameter, "series order below requested Schur order");
  std::vector<cplx> gamma;
  bool terminal = false;
  // theta_j = a / b; the pair is updated linearly and rescaled so b(0) = 1
  LSeries a(max_order + 1), b(max_order + 1);
  for (std::size_t k = 0; k <= max_order; ++k) a[k] = widen(theta[k]);
  b[0] = 1.0L;
  for (std::size_t j = 0; j <= max_order; ++j) {
    const lcplx g = a[0];
    const double modulus = static_cast<double>(std::abs(g));
    if (modulus > 1.0 + tol.unimodular)
      throw Error(ErrorKind::not_schur_function,
                  "|gamma_" + std::to_string(j) + "| = " + std::to_string(modulus) + " > 1");
    gamma.push_back(narrow(g));
    if (modulus >= 1.0 - tol.unimodular) {
      terminal = true;
      break;
    }
    if (j == max_order) break;
    const std::size_t len = a.size() - 1;
    LSeries next_a(len), next_b(len);
    for (std::size_t k = 0; k < len; ++k) {
      next_a[k] = a[k + 1] - g * b[k + 1];
      next_b[k] = b[k] - std::conj(g) * a[k];
    }
    const lcplx scale = 1.0L / next_b[0];
    for (std::size_t k = 0; k < len; ++k) {
      next_a[k] *= scale;
      next_b[k] *= scale;
    }
    a = std::move(next_a);
    b = std::move(next_b);
  }
  SchurRun run;
  run.trusted = gamma.size();
  run.gamma = SchurParams(std::move(gamma), terminal, tol);
  return run;
}

PowerSeries inverse_schur(const SchurParams& gamma, std::size_t order) {
  if (gamma.size() == 0) return PowerSeries::constant(0.0, order);
  const std::size_t last = std::min(gamma.size() - 1, order);
  // theta_j = p / q with polynomials p, q and q(0) = 1
  LSeries p(order + 1), q(order + 1);
  p[0] = widen(gamma[last]);
  q[0] = 1.0L;
  for (std::size_t j = last; j-- > 0;) {
    const lcplx g = widen(gamma[j]);
    for (std::size_t k = order + 1; k-- > 0;) {
      const lcplx zp = k > 0 ? p[k - 1] : lcplx{};
      const lcplx qk = q[k];
      q[k] = qk + std::conj(g) * zp;
      p[k] = g * qk + zp;
    }
  }
  std::vector<cplx> theta(order + 1);
  LSeries t(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    lcplx acc = p[k];
    for (std::size_t i = 0; i < k; ++i) acc -= t[i] * q[k - i];
    t[k] = acc;
    theta[k] = narrow(acc);
  }
  return PowerSeries(std::move(theta));
}

PowerSeries herglotz_from_moments(const MomentSequence& m) {
  const auto v = m.values();
  if (std::abs(v[0] - 1.0) > 1e-12)
    throw Error(ErrorKind::not_normalized, "m_0 != 1");
  std::vector<cplx> phi(v.size());
  phi[0] = 1.0;
  for (std::size_t k = 1; k < v.size(); ++k) phi[k] = 2.0 * std::conj(v[k]);
  return PowerSeries(std::move(phi));
}

PowerSeries schur_from_caratheodory(const PowerSeries& phi) {
  if (phi.order() == 0)
    throw Error(ErrorKind::invalid_parameter, "Caratheodory series needs order >= 1");
  const PowerSeries ratio = (phi + (-1.0)) / (phi + 1.0);
  if (std::abs(ratio[0]) > 1e-12)
    throw Error(ErrorKind::inconsistent_input, "(Phi - 1)/(Phi + 1) does not vanish at 0");
  return ratio.shifted_down();
}

PowerSeries caratheodory_from_schur(const PowerSeries& theta) {
  const PowerSeries u = theta.shifted_up();
  return (u + 1.0) / ((-1.0 * u) + 1.0);
}

SchurRun gamma_from_moments(const MomentSequence& m, const Tolerances& tol) {
  if (m.order() == 0) return {};
  const PowerSeries theta = schur_from_caratheodory(herglotz_from_moments(m));
  return schur_algorithm(theta, theta.order(), tol);
}

MomentSequence moments_from_weight(std::span<const double> samples, std::size_t order) {
  const std::size_t grid = samples.size();
  if (grid == 0 || grid < 8 * order)
    throw Error(ErrorKind::invalid_parameter,
                "weight grid of " + std::to_string(grid) + " points is below 8 x order");
  double mass = 0.0;
  for (double w : samples) {
    if (!std::isfinite(w) || w < -1e-12)
      throw Error(ErrorKind::invalid_weight, "weight sample is negative or non-finite");
    mass += w;
  }
  if (mass <= 0.0) throw Error(ErrorKind::degenerate, "weight has zero total mass");

  std::vector<cplx> twiddle(grid);
  for (std::size_t q = 0; q < grid; ++q) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(grid);
    twiddle[q] = {std::cos(angle), std::sin(angle)};
  }
  std::vector<cplx> m(order + 1);
  m[0] = 1.0;
  for (std::size_t k = 1; k <= order; ++k) {
    cplx acc{};
    std::size_t idx = 0;
    for (std::size_t l = 0; l < grid; ++l) {
      acc += samples[l] * twiddle[idx];
      idx += k;
      if (idx >= grid) idx %= grid;
    }
    m[k] = acc / mass;
  }
  return MomentSequence(std::move(m));
}

MomentSequence moments_from_weight(const std::function<double(double)>& weight_of_angle,
                                   std::size_t order, std::size_t grid) {
  std::vector<double> samples(grid);
  for (std::size_t l = 0; l < grid; ++l)
    samples[l] = weight_of_angle(2.0 * std::numbers::pi * static_cast<double>(l) /
                                 static_cast<double>(grid));
  return moments_from_weight(samples, order);
}

LevinsonResult levinson_verblunsky(const MomentSequence& m, const Tolerances& tol) {
  const auto v = m.values();
  LevinsonResult out;
  std::vector<cplx> phi{1.0};
  double err = v[0].real();
  if (err <= 0.0) throw Error(ErrorKind::degenerate, "m_0 <= 0");
  std::vector<cplx> alpha;
  bool terminal = false;
  for (std::size_t n = 0; n + 1 < v.size(); ++n) {
    cplx s{};
    for (std::size_t k = 0; k <= n; ++k) s += phi[k] * v[k + 1];
    const cplx a = std::conj(s) / err;
    const double mod = std::abs(a);
    if (mod > 1.0 + tol.unimodular) {
      out.singular = true;
      break;
    }
    alpha.push_back(a);
    if (mod >= 1.0 - tol.unimodular) {
      terminal = true;
      out.singular = true;
      break;
    }
    std::vector<cplx> next(n + 2, cplx{});
    for (std::size_t k = 0; k <= n; ++k) {
      next[k + 1] += phi[k];
      next[k] -= std::conj(a) * std::conj(phi[n - k]);
    }
    phi = std::move(next);
    err *= (1.0 - mod) * (1.0 + mod);
  }
  out.order_reached = alpha.size();
  out.gamma = SchurParams(std::move(alpha), terminal, tol);
  return out;
}

namespace {

// Circle mean of ln(1 - |theta(r t)|^2) by the trapezoid rule; -inf when singular.
double log_defect_mean(const PowerSeries& theta, std::size_t q, double r, bool& singular) {
  double acc = 0.0;
  for (std::size_t l = 0; l < q; ++l) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(q);
    const double a2 = std::norm(theta.evaluate(std::polar(r, angle)));
    if (a2 >= 1.0) {
      singular = true;
      return -std::numeric_limits<double>::infinity();
    }
    acc += std::log1p(-a2);
  }
  return acc / static_cast<double>(q);
}

}  // namespace

SzegoIdentityResult szego_identity(const SchurParams& gamma, const PowerSeries& theta,
                                   std::size_t quad_points, double radius,
                                   int richardson_levels) {
  if (quad_points == 0) throw Error(ErrorKind::invalid_parameter, "no quadrature nodes");
  if (richardson_levels < 1) richardson_levels = 1;
  SzegoIdentityResult out;
  out.radius = radius > 0.0 ? radius : 1.0 - 1.0 / (4.0 * static_cast<double>(quad_points));
  if (out.radius >= 1.0 || out.radius <= 0.0)
    throw Error(ErrorKind::invalid_parameter, "evaluation radius must lie in (0, 1)");

  if (gamma.terminal_unimodular()) {
    out.product = 0.0;
  } else {
    double log_p = 0.0;
    for (cplx g : gamma.entries()) log_p += std::log1p(-std::norm(g));
    out.product = std::exp(log_p);
  }

  const double h = 1.0 - out.radius;
  std::vector<double> xs, ys;
  for (int i = 0; i < richardson_levels; ++i) {
    const double hi = h * std::ldexp(1.0, i);
    if (hi >= 1.0) break;
    xs.push_back(hi);
    ys.push_back(log_defect_mean(theta, quad_points, 1.0 - hi, out.singular));
    if (out.singular) break;
  }
  if (out.singular) {
    out.integral_exp = out.raw_integral_exp = 0.0;
  } else {
    out.raw_integral_exp = std::exp(ys[0]);
    // Neville evaluation of the interpolant at h = 0
    std::vector<double> p = ys;
    for (std::size_t level = 1; level < p.size(); ++level)
      for (std::size_t i = 0; i + level < p.size(); ++i)
        p[i] = (xs[i + level] * p[i] - xs[i] * p[i + 1]) / (xs[i + level] - xs[i]);
    out.integral_exp = std::exp(p[0]);
  }
  out.residual = std::abs(out.product - out.integral_exp);
  out.raw_residual = std::abs(out.product - out.raw_integral_exp);
  return out;
}

double szego_identity_residual(const SchurParams& gamma, const PowerSeries& theta,
                               std::size_t quad_points, double radius) {
  return szego_identity(gamma, theta, quad_points, radius).residual;
}

}  // namespace hsz
