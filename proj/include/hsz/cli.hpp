#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsz/diagnostics.hpp"
#include "hsz/seqcore.hpp"
#include "hsz/transforms.hpp"

namespace hsz::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Format { json, csv };

struct RunConfig {
  std::size_t order = 512;
  bool order_given = false;
  std::size_t grid = 4096;
  Tolerances tol;
  double quad_tol = 1e-6;
  std::vector<std::size_t> sweep_sizes{4, 8, 16, 32, 64, 128};
  Format format = Format::json;
  std::string out;
  std::uint64_t seed = 0;

  /// grid >= 8 order, ascending sizes.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Exactly one of the source fields is set.
struct Source {
  std::optional<std::string> weight;         // builtin family name
  std::vector<double> cosine_coeffs{0.6};    // for weight "cosine"
  double zero_power = 1.0;                   // for weight "zero"
  std::optional<std::string> weight_csv;     // path
  std::optional<std::string> moments;        // inline JSON or path
  std::optional<std::string> theta;          // inline JSON or path
  std::optional<std::string> gamma;          // inline JSON or path
  std::optional<std::string> family;         // synthetic gamma family
  double family_q = 0.5;
  double family_c = 0.5;
  std::size_t spike_index = 1;
  double spike_value = 0.5;

  int count() const;
};

struct Resolved {
  std::optional<SchurParams> gamma;
  std::optional<MomentSequence> moments;
  std::optional<PowerSeries> theta;
  std::string description;
  std::string digest;  // FNV-1a over the canonical input JSON
};

/// Builtin weights as functions of the angle: "constant", "cosine"
/// (1 + sum_k c_k cos k theta), "zero" (|1 - t|^{2p}), "zero-squared" (p = 1).
std::function<double(double)> builtin_weight(const Source& src);

/// "geometric" (gamma_0 = 0, gamma_k = q^k), "spike" (one nonzero entry),
/// "harmonic" (gamma_k = c / (k + 1)); indices 0..length-1.
SchurParams gamma_family(const Source& src, std::size_t length);

Resolved resolve(const Source& src, const RunConfig& cfg);

std::string fnv1a_hex(const std::string& bytes);

nlohmann::json provenance(const Resolved& input, const RunConfig& cfg,
                          std::size_t truncation_order);

// Subcommands. Each returns the process exit status.
int cmd_gamma(const Source& src, const RunConfig& cfg, std::ostream& out);
int cmd_theta(const Source& src, const RunConfig& cfg, std::ostream& out);

enum class LMatrixKind { l, m, eta, a };
enum class LRoute { product, direct };
int cmd_lmatrix(const Source& src, const RunConfig& cfg, std::size_t n, LMatrixKind kind,
                LRoute route, std::ostream& out);

struct VerifyOptions {
  std::size_t trials = 100;
  std::size_t n = 12;
  double max_modulus = 0.95;
  std::size_t max_support = 16;
  bool zero = false;  // run the campaign on gamma = 0
};
struct VerifySummary {
  double factorization = 0, rank_one = 0, contractivity = 0, eta_product = 0, sigma_bound = 0;
  double direct_vs_product = 0;
  double schur_round_trip = 0;
  double caratheodory_round_trip = 0;
  double max() const;
};
VerifySummary run_verify(const VerifyOptions& opts, std::uint64_t seed);
int cmd_verify(const VerifyOptions& opts, const RunConfig& cfg, std::ostream& out);

int cmd_diagnose(const Source& src, const RunConfig& cfg, std::ostream& out);
int cmd_riesz(const Source& src, const RunConfig& cfg, std::ostream& out);

/// Exit status for library errors (> 2).
int error_exit_code(const std::exception& e);

}  // namespace hsz::cli
