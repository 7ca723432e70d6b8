#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hsz/seqcore.hpp"

namespace hsz {

// Truncated Taylor series a_0 + a_1 z + ... + a_N z^N. Binary operations
// return a series of the smaller of the two orders.
class PowerSeries {
 public:
  PowerSeries() : coeffs_(1, cplx{}) {}
  explicit PowerSeries(std::vector<cplx> coeffs);
  static PowerSeries constant(cplx c, std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  cplx operator[](std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : cplx{};
  }

  PowerSeries truncated(std::size_t order) const;
  /// z * f, order + 1.
  PowerSeries shifted_up() const;
  /// (f - f(0)) / z, order - 1. Requires order >= 1.
  PowerSeries shifted_down() const;

  cplx evaluate(cplx z) const;

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(cplx s, const PowerSeries& a);
  /// Triangular recurrence; b(0) must be nonzero.
  friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b);
  PowerSeries operator+(cplx c) const;

 private:
  std::vector<cplx> coeffs_;
};

}  // namespace hsz
