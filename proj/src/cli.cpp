#include "hsz/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "hsz/error.hpp"
#include "hsz/io.hpp"
#include "hsz/lgamma.hpp"

namespace hsz::cli {

using nlohmann::json;

namespace {

constexpr const char* kConventions =
    "m_k = integral of t^k dmu; Phi_k = 2 conj(m_k); z Theta = (Phi - 1)/(Phi + 1); Levinson "
    "Phi_{n+1} = z Phi_n - conj(a_n) Phi_n^*, a_n = conj(sum_k phi_{n,k} m_{k+1}) / E_n, equal to "
    "the Schur-algorithm parameters";

json inline_or_file(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{'))
    return io::parse_json_text(text);
  return io::read_json_file(text);
}

const char* format_name(Format f) { return f == Format::json ? "json" : "csv"; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::io, "cannot write " + path);
  f << text;
}

// Emits to --out when given, otherwise to the stream.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) out << text;
  else write_text(cfg.out, text);
}

SchurParams gamma_of(const Resolved& r, const RunConfig& cfg) {
  if (r.gamma) return *r.gamma;
  if (r.moments) return gamma_from_moments(*r.moments, cfg.tol).gamma;
  if (r.theta) return schur_algorithm(*r.theta, r.theta->order(), cfg.tol).gamma;
  throw Error(ErrorKind::invalid_parameter, "source does not determine Schur parameters");
}

}  // namespace

void RunConfig::validate() const {
  if (grid < 8 * order)
    throw Error(ErrorKind::invalid_parameter, "--grid must be at least 8 x --order");
  if (!std::is_sorted(sweep_sizes.begin(), sweep_sizes.end()))
    throw Error(ErrorKind::invalid_parameter, "--sizes must be ascending");
}

json RunConfig::to_json() const {
  return {{"order", order},
          {"grid", grid},
          {"tol_regular", tol.regular},
          {"tol_unimodular", tol.unimodular},
          {"quad_tol", quad_tol},
          {"sizes", sweep_sizes},
          {"format", format_name(format)},
          {"seed", seed}};
}

int Source::count() const {
  return int(weight.has_value()) + int(weight_csv.has_value()) + int(moments.has_value()) +
         int(theta.has_value()) + int(gamma.has_value()) + int(family.has_value());
}

std::function<double(double)> builtin_weight(const Source& src) {
  const std::string& name = *src.weight;
  if (name == "constant") return [](double) { return 1.0; };
  if (name == "cosine") {
    const std::vector<double> c = src.cosine_coeffs;
    return [c](double theta) {
      double w = 1.0;
      for (std::size_t k = 0; k < c.size(); ++k) w += c[k] * std::cos(double(k + 1) * theta);
      return w;
    };
  }
  if (name == "zero" || name == "zero-squared") {
    const double p = name == "zero" ? src.zero_power : 1.0;
    return [p](double theta) { return std::pow(2.0 - 2.0 * std::cos(theta), p); };
  }
  throw Error(ErrorKind::invalid_parameter, "unknown weight family '" + name + "'");
}

SchurParams gamma_family(const Source& src, std::size_t length) {
  const std::string& name = *src.family;
  std::vector<cplx> g(length, cplx{});
  if (name == "geometric") {
    for (std::size_t k = 1; k < length; ++k) g[k] = std::pow(src.family_q, double(k));
  } else if (name == "spike") {
    if (src.spike_index >= length)
      throw Error(ErrorKind::invalid_parameter, "spike index beyond the sequence length");
    g[src.spike_index] = src.spike_value;
  } else if (name == "harmonic") {
    for (std::size_t k = 0; k < length; ++k) g[k] = src.family_c / double(k + 1);
  } else {
    throw Error(ErrorKind::invalid_parameter, "unknown gamma family '" + name + "'");
  }
  return SchurParams(std::move(g));
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Resolved resolve(const Source& src, const RunConfig& cfg) {
  if (src.count() != 1)
    throw Error(ErrorKind::invalid_parameter, "exactly one input source is required");
  Resolved r;
  json canonical;
  if (src.weight || src.weight_csv) {
    std::vector<double> samples;
    std::size_t order = cfg.order;
    if (src.weight) {
      const auto w = builtin_weight(src);
      samples.resize(cfg.grid);
      for (std::size_t l = 0; l < cfg.grid; ++l)
        samples[l] = w(2.0 * std::numbers::pi * double(l) / double(cfg.grid));
      r.description = "weight " + *src.weight;
      if (*src.weight == "cosine") r.description += " coeffs " + json(src.cosine_coeffs).dump();
      if (*src.weight == "zero") r.description += " p=" + io::format_double(src.zero_power);
    } else {
      std::ifstream in(*src.weight_csv);
      if (!in) throw Error(ErrorKind::io, "cannot open " + *src.weight_csv);
      samples = io::read_weight_csv(in);
      if (!cfg.order_given) order = std::min(order, samples.size() / 8);
      r.description = "weight csv " + *src.weight_csv;
    }
    r.moments = moments_from_weight(samples, order);
    canonical = io::to_json(*r.moments);
  } else if (src.moments) {
    MomentSequence m = io::moments_from_json(inline_or_file(*src.moments));
    if (cfg.order_given && cfg.order != m.order()) {
      // a short list means the remaining moments are zero
      auto v = m.values();
      std::vector<cplx> resized(v.begin(), v.begin() + long(std::min(cfg.order, m.order())) + 1);
      resized.resize(cfg.order + 1, cplx{});
      m = MomentSequence(std::move(resized));
    }
    r.moments = std::move(m);
    r.description = "moments";
    canonical = io::to_json(*r.moments);
  } else if (src.theta) {
    r.theta = io::power_series_from_json(inline_or_file(*src.theta));
    r.description = "theta series";
    canonical = io::to_json(*r.theta);
  } else if (src.gamma) {
    r.gamma = io::schur_params_from_json(inline_or_file(*src.gamma), cfg.tol);
    r.description = "gamma";
    canonical = io::to_json(*r.gamma);
  } else {
    r.gamma = gamma_family(src, cfg.order + 1);
    r.description = "gamma family " + *src.family;
    canonical = io::to_json(*r.gamma);
  }
  r.digest = fnv1a_hex(canonical.dump());
  return r;
}

json provenance(const Resolved& input, const RunConfig& cfg, std::size_t truncation_order) {
  return {{"tool", "hsz"},
          {"version", kToolVersion},
          {"input", input.description},
          {"input_digest", input.digest},
          {"truncation_order", truncation_order},
          {"config", cfg.to_json()},
          {"conventions", kConventions}};
}

int cmd_gamma(const Source& src, const RunConfig& cfg, std::ostream& out) {
  const Resolved r = resolve(src, cfg);
  json doc;
  SchurParams gamma;
  std::size_t trusted = 0;
  if (r.moments) {
    const SchurRun run = gamma_from_moments(*r.moments, cfg.tol);
    const LevinsonResult lev = levinson_verblunsky(*r.moments, cfg.tol);
    gamma = run.gamma;
    trusted = run.trusted;
    const std::size_t common = std::min(run.gamma.size(), lev.gamma.size());
    const std::size_t gate = std::min<std::size_t>(24, common);
    const double gated = gamma_discrepancy(run.gamma, lev.gamma, gate);
    doc["levinson_discrepancy"] = gamma_discrepancy(run.gamma, lev.gamma, common);
    doc["levinson_order_reached"] = lev.order_reached;
    if (gated > cfg.quad_tol)
      throw Error(ErrorKind::provenance, "Levinson and Schur paths disagree by " +
                                             io::format_double(gated));
  } else if (r.theta) {
    const SchurRun run = schur_algorithm(*r.theta, r.theta->order(), cfg.tol);
    gamma = run.gamma;
    trusted = run.trusted;
  } else {
    gamma = *r.gamma;
    trusted = gamma.size();
  }
  // only parameters inside the trust horizon are reported
  std::vector<cplx> shown(gamma.entries().begin(), gamma.entries().begin() + long(trusted));
  const SchurParams reported(std::move(shown), gamma.terminal_unimodular() && trusted == gamma.size(),
                             cfg.tol);

  if (cfg.format == Format::csv) {
    std::string text = "j,re,im\n";
    for (std::size_t j = 0; j < reported.size(); ++j)
      text += std::to_string(j) + "," + io::format_double(reported[j].real()) + "," +
              io::format_double(reported[j].imag()) + "\n";
    emit(cfg, out, text);
    return 0;
  }
  json g = io::to_json(reported);
  g["trusted"] = trusted;
  for (auto& [k, v] : doc.items()) g[k] = v;
  g["provenance"] = provenance(r, cfg, reported.size() > 0 ? reported.size() - 1 : 0);
  emit(cfg, out, g.dump(2) + "\n");
  return 0;
}

int cmd_theta(const Source& src, const RunConfig& cfg, std::ostream& out) {
  const Resolved r = resolve(src, cfg);
  const SchurParams gamma = gamma_of(r, cfg);
  const std::size_t order =
      cfg.order_given ? cfg.order : (gamma.size() > 0 ? gamma.size() - 1 : 0);
  const PowerSeries theta = inverse_schur(gamma, order);
  if (cfg.format == Format::csv) {
    std::string text = "k,re,im\n";
    for (std::size_t k = 0; k <= theta.order(); ++k)
      text += std::to_string(k) + "," + io::format_double(theta[k].real()) + "," +
              io::format_double(theta[k].imag()) + "\n";
    emit(cfg, out, text);
    return 0;
  }
  json doc = io::to_json(theta);
  doc["provenance"] = provenance(r, cfg, order);
  emit(cfg, out, doc.dump(2) + "\n");
  return 0;
}

int cmd_lmatrix(const Source& src, const RunConfig& cfg, std::size_t n, LMatrixKind kind,
                LRoute route, std::ostream& out) {
  const Resolved r = resolve(src, cfg);
  const SchurParams gamma = gamma_of(r, cfg);
  CMatrix mat;
  const char* name = "L";
  switch (kind) {
    case LMatrixKind::l:
      mat = route == LRoute::direct ? l_matrix_direct(gamma, n) : l_matrix_product(gamma, n);
      break;
    case LMatrixKind::m:
      mat = m_matrix(gamma, n);
      name = "M";
      break;
    case LMatrixKind::eta:
      mat = eta_vector(gamma, n);
      name = "eta";
      break;
    case LMatrixKind::a:
      mat = defect_series(gamma, n, factor_count(gamma) + 1).a;
      name = "A";
      break;
  }
  if (cfg.format == Format::csv) {
    std::ostringstream ss;
    io::write_matrix_csv(ss, mat);
    emit(cfg, out, ss.str());
    return 0;
  }
  json doc{{"kind", name},
           {"n", n},
           {"route", route == LRoute::direct ? "direct" : "product"},
           {"matrix", io::to_json(mat)},
           {"provenance", provenance(r, cfg, gamma.size() > 0 ? gamma.size() - 1 : 0)}};
  emit(cfg, out, doc.dump(2) + "\n");
  return 0;
}

double VerifySummary::max() const {
  return std::max({factorization, rank_one, contractivity, eta_product, sigma_bound,
                   direct_vs_product, schur_round_trip, caratheodory_round_trip});
}

constexpr double kRoundTripModulus = 0.9;

VerifySummary run_verify(const VerifyOptions& opts, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> support_dist(1, std::max<std::size_t>(1, opts.max_support));
  VerifySummary s;
  const std::size_t round_trip_order = 32;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    std::vector<cplx> g;
    if (!opts.zero) {
      g.resize(support_dist(rng));
      for (auto& v : g) v = std::polar(opts.max_modulus * unit(rng), 2.0 * std::numbers::pi * unit(rng));
    }
    const SchurParams gamma(std::move(g));
    const IdentityResiduals res = identity_suite(gamma, opts.n);
    s.factorization = std::max(s.factorization, res.factorization);
    s.rank_one = std::max(s.rank_one, res.rank_one);
    s.contractivity = std::max(s.contractivity, res.contractivity);
    s.eta_product = std::max(s.eta_product, res.eta_product);
    s.sigma_bound = std::max(s.sigma_bound, res.sigma_bound);

    const std::size_t small = std::min<std::size_t>(opts.n, 6);
    s.direct_vs_product = std::max(
        s.direct_vs_product,
        (l_matrix_direct(gamma, small) - l_matrix_product(gamma, small)).cwiseAbs().maxCoeff());

    // the series round trips run on the sample rescaled into |gamma_j| <= 0.9
    std::vector<cplx> scaled(gamma.entries().begin(), gamma.entries().end());
    const double shrink = opts.max_modulus > kRoundTripModulus ? kRoundTripModulus / opts.max_modulus : 1.0;
    for (auto& v : scaled) v *= shrink;
    const SchurParams rt(std::move(scaled));
    const PowerSeries theta = inverse_schur(rt, round_trip_order);
    const SchurParams back = schur_algorithm(theta, round_trip_order).gamma;
    s.schur_round_trip =
        std::max(s.schur_round_trip, gamma_discrepancy(rt, back, round_trip_order + 1));

    const PowerSeries again = schur_from_caratheodory(caratheodory_from_schur(theta));
    for (std::size_t k = 0; k <= theta.order(); ++k)
      s.caratheodory_round_trip = std::max(s.caratheodory_round_trip, std::abs(again[k] - theta[k]));
  }
  return s;
}

int cmd_verify(const VerifyOptions& opts, const RunConfig& cfg, std::ostream& out) {
  const VerifySummary s = run_verify(opts, cfg.seed);
  constexpr double tol = 1e-10;
  auto line = [&](const char* name, double v) {
    out << (v <= tol ? "PASS " : "FAIL ") << name << " max_residual=" << io::format_double(v) << '\n';
  };
  out << "seed=" << cfg.seed << " trials=" << opts.trials << " n=" << opts.n
      << " max_modulus=" << io::format_double(opts.max_modulus) << '\n';
  line("factorization L_n(g) = M_n(g) L_n(Wg)", s.factorization);
  line("rank-one I - M M^* = eta eta^*", s.rank_one);
  line("contractivity ||L_n|| <= 1", s.contractivity);
  line("1 - ||eta||^2 = prod (1 - |g_j|^2)", s.eta_product);
  line("sigma_min(M_n) >= prod D_j", s.sigma_bound);
  line("direct vs product L_n", s.direct_vs_product);
  line("schur_algorithm(inverse_schur(g)) = g, |g| <= 0.9", s.schur_round_trip);
  line("Caratheodory/Schur round trip, |g| <= 0.9", s.caratheodory_round_trip);
  return s.max() <= tol ? 0 : 1;
}

namespace {

VerdictConfig verdict_config(const RunConfig& cfg) {
  VerdictConfig vc;
  vc.sizes = cfg.sweep_sizes;
  vc.tol = cfg.tol;
  vc.consistency_tol = cfg.quad_tol;
  return vc;
}

}  // namespace

int cmd_diagnose(const Source& src, const RunConfig& cfg, std::ostream& out) {
  const Resolved r = resolve(src, cfg);
  VerdictInput in;
  in.gamma = r.gamma;
  in.moments = r.moments;
  in.theta = r.theta;
  in.description = r.description;
  const DiagnosticReport rep = hsz_verdict(in, verdict_config(cfg));
  json doc = io::to_json(rep);
  doc["provenance"] = provenance(r, cfg, rep.truncation_order);
  doc["exit_code"] = exit_code(rep.verdict);

  if (cfg.out.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    std::filesystem::create_directories(cfg.out);
    const std::filesystem::path dir(cfg.out);
    write_text((dir / "report.json").string(), doc.dump(2) + "\n");
    const std::pair<const char*, const Sweep*> sweeps[] = {
        {"sigma_sweep.csv", &rep.sigma_sweep},
        {"riesz_sweep.csv", &rep.riesz_sweep},
        {"conjugation_sweep.csv", &rep.conjugation_sweep}};
    for (const auto& [file, sweep] : sweeps) {
      std::ostringstream ss;
      io::write_sweep_csv(ss, *sweep);
      write_text((dir / file).string(), ss.str());
    }
    out << "verdict: " << to_string(rep.verdict) << '\n';
    for (const auto& reason : rep.reasons) out << "  " << reason << '\n';
  }
  return exit_code(rep.verdict);
}

int cmd_riesz(const Source& src, const RunConfig& cfg, std::ostream& out) {
  const Resolved r = resolve(src, cfg);
  if (!r.moments)
    throw Error(ErrorKind::invalid_parameter, "the riesz sweep needs a weight or moments source");
  Sweep riesz, conj;
  for (std::size_t n : cfg.sweep_sizes) {
    if (n == 0 || 2 * n > r.moments->order()) continue;
    riesz.emplace_back(n, riesz_finite_section_norm(*r.moments, n));
    conj.emplace_back(n, conjugation_ratio(*r.moments, n));
  }
  if (cfg.format == Format::csv) {
    std::string text = "n,riesz,conjugation\n";
    for (std::size_t i = 0; i < riesz.size(); ++i)
      text += std::to_string(riesz[i].first) + "," + io::format_double(riesz[i].second) + "," +
              io::format_double(conj[i].second) + "\n";
    emit(cfg, out, text);
    return 0;
  }
  json rs = json::array(), cs = json::array();
  for (const auto& [n, v] : riesz) rs.push_back({{"n", n}, {"value", v}});
  for (const auto& [n, v] : conj) cs.push_back({{"n", n}, {"value", v}});
  json doc{{"riesz_sweep", rs},
           {"conjugation_sweep", cs},
           {"provenance", provenance(r, cfg, r.moments->order())}};
  emit(cfg, out, doc.dump(2) + "\n");
  return 0;
}

int error_exit_code(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::provenance:
      case ErrorKind::inconsistent_input: return 4;
      case ErrorKind::io:
      case ErrorKind::invalid_parameter:
      case ErrorKind::not_normalized:
      case ErrorKind::invalid_weight: return 3;
      default: return 5;
    }
  }
  return 3;
}

}  // namespace hsz::cli
