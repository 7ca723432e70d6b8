#include <doctest.h>

#include <cmath>
#include <random>

#include "hsz/diagnostics.hpp"
#include "hsz/error.hpp"
#include "hsz/lgamma.hpp"
#include "oracles.hpp"

using namespace hsz;

namespace {

MomentSequence padded(std::vector<cplx> m, std::size_t order) {
  m.resize(order + 1, cplx{});
  return MomentSequence(std::move(m));
}

SchurParams geometric(double q, std::size_t last) {
  std::vector<cplx> v(last + 1);
  for (std::size_t k = 1; k <= last; ++k) v[k] = std::pow(q, double(k));
  return SchurParams(v);
}

}  // namespace

TEST_CASE("sigma_min sweep") {
  const SigmaSweep zero = sigma_min_sweep(SchurParams{}, {1, 4, 16});
  for (const auto& [n, v] : zero.points) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

  const SigmaSweep one = sigma_min_sweep(SchurParams({0.0, 0.6}), {1, 2, 8, 32});
  for (const auto& [n, v] : one.points) CHECK(v == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(one.infimum == doctest::Approx(0.8).epsilon(1e-14));

  // leading blocks of the largest section are the smaller sections
  std::mt19937_64 rng(1);
  const SchurParams g(oracle::random_gamma(rng, 20, 0.8));
  const SigmaSweep s = sigma_min_sweep(g, {3, 7});
  CHECK(s.points[0].second == doctest::Approx(sigma_min(l_matrix_product(g, 3))).epsilon(1e-13));

  CHECK_THROWS_AS(sigma_min_sweep(g, {8, 4}), Error);
}

TEST_CASE("strong Szego certificate") {
  const auto zero = strong_szego_certificate(SchurParams{});
  CHECK(zero.passes);
  CHECK(zero.c_bound == 1.0);

  const auto one = strong_szego_certificate(SchurParams({0.0, 0.6}));
  CHECK(one.c_bound == doctest::Approx(0.8).epsilon(1e-15));

  const SchurParams g = geometric(0.5, 20);
  const auto cert = strong_szego_certificate(g);
  CHECK(cert.passes);
  double expected = 1.0;
  for (std::size_t k = 1; k <= 20; ++k)
    for (std::size_t j = k; j <= 20; ++j) expected *= std::sqrt(1.0 - std::pow(0.25, double(j)));
  CHECK(cert.c_bound == doctest::Approx(expected).epsilon(1e-13));
  CHECK(sigma_min_sweep(g, {4, 8, 16, 32, 64}).infimum >= cert.c_bound - 1e-8);

  const auto term = strong_szego_certificate(SchurParams({0.1, 1.0}, true));
  CHECK_FALSE(term.passes);
  CHECK(term.c_bound == 0.0);
}

TEST_CASE("certificate tail heuristic rejects slowly decaying parameters") {
  const LevinsonResult lev = levinson_verblunsky(padded({1.0, -0.5}, 256));
  const auto cert = strong_szego_certificate(lev.gamma);
  CHECK_FALSE(cert.passes);
  CHECK(cert.tail_share > 0.01);
  // sum k |gamma_k|^2 keeps growing with the truncation order
  const auto shorter = strong_szego_certificate(levinson_verblunsky(padded({1.0, -0.5}, 64)).gamma);
  CHECK(cert.sum > shorter.sum + 0.5);
}

TEST_CASE("Riesz finite sections") {
  const MomentSequence leb = padded({1.0}, 40);
  for (std::size_t n : {1, 5, 20}) {
    CHECK(riesz_finite_section_norm(leb, n) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(conjugation_ratio(leb, n) == doctest::Approx(1.0).epsilon(1e-12));
  }

  const MomentSequence zero = padded({1.0, -0.5}, 130);
  double previous = 0.0;
  for (std::size_t n : {1, 2, 4, 8, 16, 32, 64}) {
    const double r = riesz_finite_section_norm(zero, n);
    CHECK(r > previous);
    previous = r;
    CHECK(conjugation_ratio(zero, n) <= 2.0 * r + 1.0 + 1e-10);
  }
  CHECK(previous > 3.0);

  const MomentSequence smooth = padded({1.0, 0.3}, 130);
  CHECK(riesz_finite_section_norm(smooth, 64) ==
        doctest::Approx(riesz_finite_section_norm(smooth, 32)).epsilon(1e-6));

  CHECK_THROWS_AS(riesz_finite_section_norm(padded({1.0}, 5), 3), Error);
}

TEST_CASE("Riesz norm against an eigen-decomposition oracle") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<cplx> m{1.0, {u(rng), u(rng)}, {u(rng), u(rng)}};
    m.resize(21, cplx{});
    const MomentSequence ms(m);
    const std::size_t n = 10;
    const CMatrix g = oracle::gram(m, n);
    CMatrix proj = CMatrix::Zero(21, 21);
    proj.bottomRightCorner(11, 11) = CMatrix::Identity(11, 11);
    // ||P f||^2 = a^* P^* G P a
    const double expected = oracle::generalized_norm(proj.adjoint() * g * proj, g);
    CHECK(riesz_finite_section_norm(ms, n) == doctest::Approx(expected).epsilon(1e-10));
    CVector j(21);
    for (int i = 0; i < 21; ++i) j(i) = cplx{0.0, i > 10 ? -1.0 : (i < 10 ? 1.0 : 0.0)};
    const CMatrix jm = j.asDiagonal();
    const double conj_expected = oracle::generalized_norm(jm.adjoint() * g * jm, g);
    CHECK(conjugation_ratio(ms, n) == doctest::Approx(conj_expected).epsilon(1e-10));
  }
}

TEST_CASE("orthonormal polynomials") {
  const auto leb = orthonormal_polynomials(padded({1.0}, 4), 4);
  REQUIRE(leb.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t i = 0; i < k; ++i) CHECK(std::abs(leb[k](i)) <= 1e-15);
    CHECK(leb[k](k) == cplx{1.0});
  }

  const auto p = orthonormal_polynomials(padded({1.0, 0.3}, 3), 3);
  CHECK(p[0](0) == cplx{1.0});
  CHECK(std::abs(p[1](0) - (-0.3 / std::sqrt(0.91))) <= 1e-15);
  CHECK(std::abs(p[1](1) - 1.0 / std::sqrt(0.91)) <= 1e-15);

  // orthonormality in L^2(mu)
  const MomentSequence m = padded({1.0, cplx{0.2, 0.1}, -0.1}, 6);
  const auto q = orthonormal_polynomials(m, 6);
  const CMatrix gram = m.gram(7);
  for (std::size_t a = 0; a < q.size(); ++a) {
    CHECK(q[a](a).real() > 0.0);
    for (std::size_t b = 0; b < q.size(); ++b) {
      cplx ip{};
      for (Eigen::Index i = 0; i < q[a].size(); ++i)
        for (Eigen::Index l = 0; l < q[b].size(); ++l) ip += q[a](i) * std::conj(q[b](l)) * gram(i, l);
      CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) <= 1e-12);
    }
  }

  // two-point measure: the Gram loses rank after two functions
  const auto capped = orthonormal_polynomials(MomentSequence({1.0, 0.0, 1.0, 0.0}), 3);
  CHECK(capped.size() == 2);
}

TEST_CASE("verdict ladder") {
  VerdictInput leb;
  leb.gamma = SchurParams{};
  const DiagnosticReport r0 = hsz_verdict(leb);
  CHECK(r0.verdict == Verdict::certified_hs);
  CHECK(r0.strong_szego.c_bound == 1.0);
  CHECK(exit_code(r0.verdict) == 0);

  VerdictInput term;
  term.gamma = SchurParams({0.2, cplx{0.0, 1.0}}, true);
  const DiagnosticReport rt = hsz_verdict(term);
  CHECK(rt.verdict == Verdict::not_hs_necessary_violation);
  CHECK(exit_code(rt.verdict) == 1);

  VerdictInput zero;
  zero.moments = moments_from_weight([](double t) { return 2.0 - 2.0 * std::cos(t); }, 512, 4096);
  const DiagnosticReport rz = hsz_verdict(zero);
  CHECK(rz.verdict == Verdict::likely_not_hs);
  REQUIRE(rz.riesz_slope);
  CHECK(*rz.riesz_slope > 0.25);
  CHECK(rz.sigma_slope < -0.25);
  REQUIRE(rz.levinson_discrepancy);
  CHECK(*rz.levinson_discrepancy <= 1e-8);

  VerdictInput smooth;
  smooth.moments = moments_from_weight([](double t) { return 1.0 + 0.6 * std::cos(t); }, 512, 4096);
  const DiagnosticReport rs = hsz_verdict(smooth);
  CHECK(rs.verdict == Verdict::certified_hs);

  // lambda_max(A_n) = 1 - sigma_min(L_n^*)^2
  REQUIRE(rz.defect_lambda_max);
  const double s = rz.sigma_sweep.back().second;
  CHECK(*rz.defect_lambda_max == doctest::Approx(1.0 - s * s).epsilon(1e-12));
}

TEST_CASE("verdict flags parameters that are not square summable") {
  std::vector<cplx> v(200);
  v[0] = 0.9;
  for (std::size_t k = 1; k < v.size(); ++k) v[k] = 0.9 / std::pow(double(k), 0.3);
  VerdictInput in;
  in.gamma = SchurParams(v);
  const DiagnosticReport r = hsz_verdict(in);
  CHECK(r.verdict == Verdict::not_hs_necessary_violation);
  REQUIRE(r.l2_tail_exponent);
  CHECK(*r.l2_tail_exponent == doctest::Approx(-0.3).epsilon(1e-6));
}

TEST_CASE("verdict rejects inconsistent gamma and moments") {
  VerdictInput in;
  in.moments = padded({1.0, 0.3}, 16);
  in.gamma = SchurParams({0.31});
  CHECK_THROWS_AS(hsz_verdict(in), Error);
  in.gamma = SchurParams({0.3});
  CHECK_NOTHROW(hsz_verdict(in));
}

TEST_CASE("verdicts are deterministic") {
  VerdictInput in;
  in.gamma = SchurParams({0.1, cplx{0.3, -0.2}, 0.4, cplx{0.0, 0.1}});
  const DiagnosticReport a = hsz_verdict(in), b = hsz_verdict(in);
  CHECK(a.verdict == b.verdict);
  CHECK(a.sigma_sweep == b.sigma_sweep);
}

TEST_CASE("tail exponent ignores roundoff-level parameters") {
  std::vector<cplx> v(100);
  for (std::size_t k = 1; k < v.size(); ++k) v[k] = k < 40 ? std::pow(0.5, double(k)) : 1e-17;
  const auto p = l2_tail_exponent(SchurParams(v));
  REQUIRE(p);
  CHECK(*p < -1.0);
  CHECK_FALSE(l2_tail_exponent(SchurParams(std::vector<cplx>(100, cplx{1e-15}))));
}

TEST_CASE("log-log slope") {
  Sweep s;
  for (std::size_t n : {4, 8, 16, 32}) s.emplace_back(n, 3.0 * std::pow(double(n), -0.5));
  CHECK(loglog_slope(s) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(loglog_slope({}) == 0.0);
}
