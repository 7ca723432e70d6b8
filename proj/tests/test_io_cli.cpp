#include <doctest.h>

#include <iostream>
#include <sstream>

#include "hsz/cli.hpp"
#include "hsz/error.hpp"
#include "hsz/io.hpp"

using namespace hsz;
using nlohmann::json;

namespace {

cli::RunConfig small_config() {
  cli::RunConfig cfg;
  cfg.order = 64;
  cfg.order_given = true;
  cfg.grid = 1024;
  cfg.sweep_sizes = {4, 8, 16, 32};
  return cfg;
}

json run_json(int (*cmd)(const cli::Source&, const cli::RunConfig&, std::ostream&),
              const cli::Source& src, const cli::RunConfig& cfg, int expected_status = 0) {
  std::ostringstream os;
  CHECK(cmd(src, cfg, os) == expected_status);
  return json::parse(os.str());
}

}  // namespace

TEST_CASE("complex values in JSON") {
  CHECK(io::complex_from_json(json::parse("[0.5, -2]")) == cplx{0.5, -2.0});
  CHECK(io::complex_from_json(json::parse("3")) == cplx{3.0});
  CHECK_THROWS_AS(io::complex_from_json(json::parse("[1, 2, 3]")), Error);
  CHECK_THROWS_AS(io::complex_from_json(json::parse("\"x\"")), Error);
  CHECK(io::to_json(cplx{1.0, -0.25}).dump() == "[1.0,-0.25]");
}

TEST_CASE("Schur parameters and moments from JSON") {
  const SchurParams g = io::schur_params_from_json(json::parse(R"({"gamma": [0.1, [0, 0.5]]})"));
  CHECK(g.size() == 2);
  CHECK(g[1] == cplx{0.0, 0.5});
  CHECK_FALSE(g.terminal_unimodular());

  const SchurParams t = io::schur_params_from_json(
      json::parse(R"({"gamma": [0.1, [0, 1]], "terminal_unimodular": true})"));
  CHECK(t.terminal_unimodular());
  CHECK_THROWS_AS(io::schur_params_from_json(json::parse("[0.5, 1.5]")), Error);

  // round trip through the serializer
  CHECK(io::schur_params_from_json(io::to_json(t)) == t);

  const MomentSequence m = io::moments_from_json(json::parse("[1, [0.3, 0.1]]"));
  CHECK(m.order() == 1);
  CHECK(m(-1) == cplx{0.3, -0.1});
  CHECK_THROWS_AS(io::moments_from_json(json::parse("[2, 0.3]")), Error);
}

TEST_CASE("weight CSV") {
  std::istringstream good("angle,value\n0,1\n0.25,2\n0.5,3\n0.75,4\n");
  const auto w = io::read_weight_csv(good);
  REQUIRE(w.size() == 4);
  CHECK(w[2] == 3.0);

  std::istringstream off_grid("0,1\n0.3,2\n0.5,3\n0.75,4\n");
  CHECK_THROWS_AS(io::read_weight_csv(off_grid), Error);
  std::istringstream broken("0,1\n0.5,abc\n");
  CHECK_THROWS_AS(io::read_weight_csv(broken), Error);
}

TEST_CASE("matrix and sweep CSV") {
  CMatrix m(1, 2);
  m << cplx{1.0, 0.5}, cplx{-2.0, 0.0};
  std::ostringstream os;
  io::write_matrix_csv(os, m);
  CHECK(os.str() == "\"1,0.5\",\"-2,0\"\n");

  std::ostringstream ss;
  io::write_sweep_csv(ss, {{4, 0.5}, {8, 0.25}});
  CHECK(ss.str() == "n,value\n4,0.5\n8,0.25\n");
}

TEST_CASE("run configuration invariants") {
  cli::RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.grid = 8 * cfg.order - 1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = cli::RunConfig{};
  cfg.sweep_sizes = {8, 4};
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("gamma command") {
  cli::Source constant;
  constant.weight = "constant";
  const json a = run_json(cli::cmd_gamma, constant, small_config());
  for (const auto& v : a["gamma"]) CHECK(std::abs(io::complex_from_json(v)) <= 1e-15);
  CHECK(a["provenance"]["version"] == cli::kToolVersion);
  CHECK(a["provenance"]["config"]["seed"] == 0);

  cli::Source moments;
  moments.moments = "[1, 0.3]";
  const json b = run_json(cli::cmd_gamma, moments, small_config());
  CHECK(std::abs(io::complex_from_json(b["gamma"][0]) - 0.3) <= 1e-15);
  CHECK(b["levinson_discrepancy"].get<double>() <= 1e-10);

  // explicit order zero-extends the list; gamma_1 from the 2 x 2 Toeplitz step
  cli::RunConfig longer = small_config();
  longer.order = 24;
  const json padded = run_json(cli::cmd_gamma, moments, longer);
  CHECK(padded["gamma"].size() == 24);  // m_0..m_24 fix gamma_0..gamma_23
  CHECK(std::abs(io::complex_from_json(padded["gamma"][1]) - (-0.09 / 0.91)) <= 1e-15);

  cli::Source theta;
  theta.theta = "[0, 1]";
  const json c = run_json(cli::cmd_gamma, theta, small_config());
  CHECK(c["terminal_unimodular"] == true);
  CHECK(c["gamma"].size() == 2);
  CHECK(io::complex_from_json(c["gamma"][1]) == cplx{1.0});

  cli::Source none;
  CHECK_THROWS_AS(cli::cmd_gamma(none, small_config(), std::cout), Error);
  cli::Source two = moments;
  two.weight = "constant";
  CHECK_THROWS_AS(cli::cmd_gamma(two, small_config(), std::cout), Error);
}

TEST_CASE("gamma families") {
  cli::Source src;
  src.family = "geometric";
  src.family_q = 0.5;
  const SchurParams g = cli::gamma_family(src, 5);
  CHECK(g[0] == cplx{});
  CHECK(g[3] == cplx{0.125});
  src.family = "harmonic";
  CHECK(cli::gamma_family(src, 4)[1] == cplx{0.25});
  src.family = "spike";
  src.spike_index = 2;
  src.spike_value = 0.7;
  CHECK(cli::gamma_family(src, 4).support() == 3);
  src.family = "unknown";
  CHECK_THROWS_AS(cli::gamma_family(src, 4), Error);
}

TEST_CASE("theta command inverts gamma") {
  cli::Source src;
  src.gamma = R"({"gamma": [0.5]})";
  cli::RunConfig cfg = small_config();
  cfg.order = 3;
  const json doc = run_json(cli::cmd_theta, src, cfg);
  CHECK(io::complex_from_json(doc["coeffs"][0]) == cplx{0.5});
  for (std::size_t k = 1; k < doc["coeffs"].size(); ++k)
    CHECK(io::complex_from_json(doc["coeffs"][k]) == cplx{});
}

TEST_CASE("lmatrix command") {
  cli::Source src;
  src.gamma = "[0, 0.6, 0.8]";
  std::ostringstream os;
  CHECK(cli::cmd_lmatrix(src, small_config(), 2, cli::LMatrixKind::m, cli::LRoute::product, os) == 0);
  const json doc = json::parse(os.str());
  CHECK(doc["kind"] == "M");
  CHECK(std::abs(io::complex_from_json(doc["matrix"][1][0]) - (-0.48)) <= 1e-15);
}

TEST_CASE("verify campaign") {
  cli::VerifyOptions zero;
  zero.trials = 1;
  zero.zero = true;
  CHECK(cli::run_verify(zero, 0).max() == 0.0);

  cli::VerifyOptions opts;
  opts.trials = 10;
  std::ostringstream os;
  cli::RunConfig cfg;
  cfg.seed = 5;
  CHECK(cli::cmd_verify(opts, cfg, os) == 0);
  CHECK(os.str().find("FAIL") == std::string::npos);
}

TEST_CASE("diagnose exit codes") {
  cli::Source constant;
  constant.weight = "constant";
  const json a = run_json(cli::cmd_diagnose, constant, small_config(), 0);
  CHECK(a["verdict"] == "certified_hs");

  cli::Source term;
  term.gamma = R"({"gamma": [0.2, [0, 1]], "terminal_unimodular": true})";
  const json b = run_json(cli::cmd_diagnose, term, small_config(), 1);
  CHECK(b["verdict"] == "not_hs_necessary_violation");
  CHECK(b["exit_code"] == 1);
}

TEST_CASE("outputs are byte-identical across runs") {
  cli::Source src;
  src.weight = "cosine";
  std::ostringstream a, b;
  cli::cmd_diagnose(src, small_config(), a);
  cli::cmd_diagnose(src, small_config(), b);
  CHECK(a.str() == b.str());
  const json doc = json::parse(a.str());
  CHECK(doc["provenance"]["input_digest"].get<std::string>().size() == 16);
}

TEST_CASE("error exit codes") {
  CHECK(cli::error_exit_code(Error(ErrorKind::provenance, "x")) == 4);
  CHECK(cli::error_exit_code(Error(ErrorKind::io, "x")) == 3);
  CHECK(cli::error_exit_code(Error(ErrorKind::degenerate, "x")) == 5);
  CHECK(cli::error_exit_code(std::runtime_error("x")) == 3);
}
