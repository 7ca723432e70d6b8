#include "hsz/seqcore.hpp"

#include <cmath>
#include <string>

#include "hsz/error.hpp"

namespace hsz {

SchurParams::SchurParams(std::vector<cplx> entries, bool terminal_unimodular,
                         Tolerances tol)
    : entries_(std::move(entries)), terminal_(terminal_unimodular) {
  if (terminal_ && entries_.empty())
    throw Error(ErrorKind::invalid_parameter, "terminal flag on an empty sequence");
  const std::size_t regular_count = terminal_ ? entries_.size() - 1 : entries_.size();
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    const cplx g = entries_[j];
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
      throw Error(ErrorKind::invalid_parameter, "non-finite gamma_" + std::to_string(j));
    if (j < regular_count && std::abs(g) > 1.0 - tol.regular)
      throw Error(ErrorKind::invalid_parameter,
                  "gamma_" + std::to_string(j) + " is not a strict contraction");
  }
  if (terminal_ && std::abs(std::abs(entries_.back()) - 1.0) > tol.unimodular)
    throw Error(ErrorKind::invalid_parameter, "terminal entry is not unimodular");
}

std::size_t SchurParams::support() const noexcept {
  std::size_t s = entries_.size();
  while (s > 0 && entries_[s - 1] == cplx{}) --s;
  return s;
}

double defect(cplx g, const Tolerances& tol) {
  const double a = std::abs(g);
  if (a > 1.0 + tol.unimodular)
    throw Error(ErrorKind::invalid_parameter, "|g| > 1 in defect");
  if (a >= 1.0) return 0.0;
  // 1 - |g|^2 = (1 - |g|)(1 + |g|) keeps relative accuracy near the circle
  return std::sqrt((1.0 - a) * (1.0 + a));
}

double stable_product(std::span<const double> factors) {
  if (factors.size() <= 64) {
    double p = 1.0;
    for (double f : factors) p *= f;
    return p;
  }
  double log_sum = 0.0;
  for (double f : factors) {
    if (f <= 0.0) return 0.0;
    log_sum += std::log(f);
  }
  return std::exp(log_sum);
}

TailProduct tail_product(const SchurParams& gamma, std::size_t k) {
  const auto e = gamma.entries();
  if (gamma.terminal_unimodular() && k < e.size()) return {0.0, true};
  std::vector<double> factors;
  for (std::size_t j = k; j < e.size(); ++j) factors.push_back(defect(e[j]));
  return {stable_product(factors), false};
}

std::vector<double> tail_products(const SchurParams& gamma) {
  const auto e = gamma.entries();
  std::vector<double> out(e.size() + 1, 1.0);
  if (gamma.terminal_unimodular()) {
    for (std::size_t k = 0; k < e.size(); ++k) out[k] = 0.0;
    return out;
  }
  // suffix sums of logs: no underflow for long sequences
  double log_sum = 0.0;
  bool zero = false;
  for (std::size_t k = e.size(); k-- > 0;) {
    const double d = defect(e[k]);
    if (d <= 0.0) zero = true;
    else log_sum += std::log(d);
    out[k] = zero ? 0.0 : std::exp(log_sum);
  }
  return out;
}

SchurParams coshift(const SchurParams& gamma, std::size_t m) {
  const auto e = gamma.entries();
  if (m >= e.size()) return SchurParams{};
  return SchurParams(std::vector<cplx>(e.begin() + static_cast<std::ptrdiff_t>(m), e.end()),
                     gamma.terminal_unimodular(), Tolerances{0.0, 1.0});
}

ClassStats class_stats(const SchurParams& gamma) {
  ClassStats s;
  const auto e = gamma.entries();
  if (gamma.terminal_unimodular()) {
    s.in_l2 = false;
    s.szego_product = 0.0;
  }
  double log_product = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j) {
    const double a2 = std::norm(e[j]);
    s.l2_norm_sq += a2;
    if (j == 0) continue;
    s.strong_szego_sum += static_cast<double>(j) * a2;
    // (1 - |gamma_j|^2) appears once for every k in 1..j
    if (!gamma.terminal_unimodular()) {
      const double d = defect(e[j]);
      log_product += 2.0 * static_cast<double>(j) * std::log(d);
    }
  }
  if (!gamma.terminal_unimodular()) s.szego_product = std::exp(log_product);
  return s;
}

}  // namespace hsz
