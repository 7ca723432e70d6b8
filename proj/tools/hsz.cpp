// Command-line front end: gamma, theta, lmatrix, verify, diagnose, riesz.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hsz/cli.hpp"

namespace {

void add_source_options(CLI::App* cmd, hsz::cli::Source& src) {
  cmd->add_option("--weight", src.weight,
                  "builtin weight: constant | cosine | zero | zero-squared");
  cmd->add_option("--cos", src.cosine_coeffs, "cosine weight coefficients c_1 c_2 ...")
      ->delimiter(',');
  cmd->add_option("--p", src.zero_power, "exponent p of the |1 - t|^{2p} weight");
  cmd->add_option("--weight-csv", src.weight_csv, "CSV of (angle in turns, value) rows");
  cmd->add_option("--moments", src.moments, "moment list as inline JSON or a file path");
  cmd->add_option("--theta", src.theta, "Schur function Taylor coefficients (inline JSON or file)");
  cmd->add_option("--gamma,--gamma-file", src.gamma, "Schur parameters (inline JSON or file)");
  cmd->add_option("--family", src.family, "synthetic gamma: geometric | spike | harmonic");
  cmd->add_option("--q", src.family_q, "geometric ratio");
  cmd->add_option("--c", src.family_c, "harmonic numerator");
  cmd->add_option("--spike-index", src.spike_index, "spike position");
  cmd->add_option("--spike-value", src.spike_value, "spike value");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur parameters, the L(gamma) matrices and Helson-Szego diagnostics"};
  app.require_subcommand(1);

  hsz::cli::RunConfig cfg;
  std::string format = "json";
  std::vector<double> tol;
  auto* order_opt = app.add_option("--order", cfg.order, "truncation order")->capture_default_str();
  app.add_option("--grid", cfg.grid, "weight quadrature grid size")->capture_default_str();
  app.add_option("--tol", tol, "tol_regular,tol_unimodular[,quad_tol]")->delimiter(',');
  app.add_option("--sizes", cfg.sweep_sizes, "sweep sizes, ascending")->delimiter(',');
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "output file (directory for diagnose)");
  app.add_option("--seed", cfg.seed, "seed for randomized campaigns")->capture_default_str();

  hsz::cli::Source src;
  auto* gamma_cmd = app.add_subcommand("gamma", "Schur parameters from a weight, moments or theta");
  auto* theta_cmd = app.add_subcommand("theta", "Taylor coefficients of theta from gamma");
  auto* lmatrix_cmd = app.add_subcommand("lmatrix", "dump L_n, M_n, eta_n or I - L_n L_n^*");
  auto* verify_cmd = app.add_subcommand("verify", "randomized identity campaign");
  auto* diagnose_cmd = app.add_subcommand("diagnose", "Helson-Szego verdict and report");
  auto* riesz_cmd = app.add_subcommand("riesz", "finite-section Riesz and conjugation sweeps");
  for (auto* cmd : {gamma_cmd, theta_cmd, lmatrix_cmd, diagnose_cmd, riesz_cmd})
    add_source_options(cmd, src);
  for (auto* cmd : {gamma_cmd, theta_cmd, lmatrix_cmd, verify_cmd, diagnose_cmd, riesz_cmd})
    cmd->fallthrough();

  std::size_t lmatrix_n = 8;
  std::string which = "L", route = "product";
  lmatrix_cmd->add_option("-n,--n", lmatrix_n, "matrix size")->capture_default_str();
  lmatrix_cmd->add_option("--which", which, "L | M | eta | A")
      ->check(CLI::IsMember({"L", "M", "eta", "A"}));
  lmatrix_cmd->add_option("--route", route, "product | direct")
      ->check(CLI::IsMember({"product", "direct"}));

  hsz::cli::VerifyOptions vopts;
  verify_cmd->add_option("--trials", vopts.trials)->capture_default_str();
  verify_cmd->add_option("-n,--n", vopts.n)->capture_default_str();
  verify_cmd->add_option("--max-modulus", vopts.max_modulus)->capture_default_str();
  verify_cmd->add_option("--support", vopts.max_support, "maximum support length")
      ->capture_default_str();
  verify_cmd->add_flag("--zero", vopts.zero, "use gamma = 0 in every trial");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 3;
  }

  try {
    cfg.order_given = order_opt->count() > 0;
    cfg.format = format == "csv" ? hsz::cli::Format::csv : hsz::cli::Format::json;
    if (!tol.empty()) cfg.tol.regular = tol[0];
    if (tol.size() > 1) cfg.tol.unimodular = tol[1];
    if (tol.size() > 2) cfg.quad_tol = tol[2];
    cfg.validate();

    if (*gamma_cmd) return hsz::cli::cmd_gamma(src, cfg, std::cout);
    if (*theta_cmd) return hsz::cli::cmd_theta(src, cfg, std::cout);
    if (*lmatrix_cmd) {
      using hsz::cli::LMatrixKind;
      const LMatrixKind kind = which == "M"     ? LMatrixKind::m
                               : which == "eta" ? LMatrixKind::eta
                               : which == "A"   ? LMatrixKind::a
                                                : LMatrixKind::l;
      const auto r = route == "direct" ? hsz::cli::LRoute::direct : hsz::cli::LRoute::product;
      return hsz::cli::cmd_lmatrix(src, cfg, lmatrix_n, kind, r, std::cout);
    }
    if (*verify_cmd) return hsz::cli::cmd_verify(vopts, cfg, std::cout);
    if (*diagnose_cmd) return hsz::cli::cmd_diagnose(src, cfg, std::cout);
    if (*riesz_cmd) return hsz::cli::cmd_riesz(src, cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "hsz: " << e.what() << '\n';
    return hsz::cli::error_exit_code(e);
  }
  return 3;
}
