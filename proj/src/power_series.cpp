#include "hsz/power_series.hpp"

#include <algorithm>

#include "hsz/error.hpp"

namespace hsz {

PowerSeries::PowerSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(cplx{});
}

PowerSeries PowerSeries::constant(cplx c, std::size_t order) {
  std::vector<cplx> v(order + 1, cplx{});
  v[0] = c;
  return PowerSeries(std::move(v));
}

PowerSeries PowerSeries::truncated(std::size_t order) const {
  std::vector<cplx> v(order + 1, cplx{});
  std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), order + 1), v.begin());
  return PowerSeries(std::move(v));
}

PowerSeries PowerSeries::shifted_up() const {
  std::vector<cplx> v(coeffs_.size() + 1, cplx{});
  std::copy(coeffs_.begin(), coeffs_.end(), v.begin() + 1);
  return PowerSeries(std::move(v));
}

PowerSeries PowerSeries::shifted_down() const {
  if (order() == 0)
    throw Error(ErrorKind::invalid_parameter, "cannot divide an order-0 series by z");
  return PowerSeries(std::vector<cplx>(coeffs_.begin() + 1, coeffs_.end()));
}

cplx PowerSeries::evaluate(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<cplx> v(n + 1);
  for (std::size_t k = 0; k <= n; ++k) v[k] = a[k] + b[k];
  return PowerSeries(std::move(v));
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<cplx> v(n + 1);
  for (std::size_t k = 0; k <= n; ++k) v[k] = a[k] - b[k];
  return PowerSeries(std::move(v));
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<cplx> v(n + 1, cplx{});
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; i + j <= n; ++j) v[i + j] += a[i] * b[j];
  }
  return PowerSeries(std::move(v));
}

PowerSeries operator*(cplx s, const PowerSeries& a) {
  std::vector<cplx> v(a.coeffs().begin(), a.coeffs().end());
  for (auto& c : v) c *= s;
  return PowerSeries(std::move(v));
}

PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) {
  if (b[0] == cplx{})
    throw Error(ErrorKind::invalid_parameter, "series division by a function vanishing at 0");
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<cplx> q(n + 1);
  const cplx inv = 1.0 / b[0];
  for (std::size_t k = 0; k <= n; ++k) {
    cplx s = a[k];
    for (std::size_t i = 1; i <= k; ++i) s -= b[i] * q[k - i];
    q[k] = s * inv;
  }
  return PowerSeries(std::move(q));
}

PowerSeries PowerSeries::operator+(cplx c) const {
  PowerSeries r = *this;
  r.coeffs_[0] += c;
  return r;
}

}  // namespace hsz
