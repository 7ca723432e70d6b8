#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hsz {

using cplx = std::complex<double>;

struct Tolerances {
  double regular = 1e-12;     // non-terminal entries satisfy |g| <= 1 - regular
  double unimodular = 1e-9;   // terminal entries satisfy ||g| - 1| <= unimodular
};

/// A truncated Schur-parameter sequence gamma_0..gamma_N.
///
/// Without a terminal entry the sequence is read as extended by zeros past N.
/// With `terminal_unimodular` set, the last stored entry has modulus one and
/// the sequence ends there (the Schur function is a finite Blaschke product).
class SchurParams {
 public:
  SchurParams() = default;
  explicit SchurParams(std::vector<cplx> entries, bool terminal_unimodular = false,
                       Tolerances tol = {});

  /// Zero-extended access; indices past the end read as 0.
  cplx operator[](std::size_t j) const noexcept {
    return j < entries_.size() ? entries_[j] : cplx{};
  }

  std::span<const cplx> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool terminal_unimodular() const noexcept { return terminal_; }

  /// One past the last nonzero index (0 for the zero sequence).
  std::size_t support() const noexcept;

  bool operator==(const SchurParams&) const = default;

 private:
  std::vector<cplx> entries_;
  bool terminal_ = false;
};

/// sqrt(1 - |g|^2), clamped to 0 on the unit circle.
double defect(cplx g, const Tolerances& tol = {});

struct TailProduct {
  double value = 1.0;
  bool degenerate = false;  // a terminal unimodular entry lies in the range
};

/// prod_{j >= k} D_{gamma_j}.
TailProduct tail_product(const SchurParams& gamma, std::size_t k);

/// All tail products Pi_0..Pi_{size}; Pi_k = 1 for k >= support.
std::vector<double> tail_products(const SchurParams& gamma);

/// W^m gamma.
SchurParams coshift(const SchurParams& gamma, std::size_t m);

struct ClassStats {
  bool in_l2 = true;
  double l2_norm_sq = 0.0;
  double strong_szego_sum = 0.0;  // sum_{k >= 1} k |gamma_k|^2
  double szego_product = 1.0;     // prod_{k >= 1} prod_{j >= k} (1 - |gamma_j|^2)
};

ClassStats class_stats(const SchurParams& gamma);

/// Product of positive factors; switches to a log-space sum past 64 factors.
double stable_product(std::span<const double> factors);

}  // namespace hsz
