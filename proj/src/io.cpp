#include "hsz/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hsz/error.hpp"

namespace hsz::io {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorKind::io, "expected a number or [re, im], got " + j.dump());
}

std::vector<cplx> complex_list_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::io, "expected a JSON array");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

json to_json(const SchurParams& gamma) {
  json list = json::array();
  for (cplx g : gamma.entries()) list.push_back(to_json(g));
  return {{"gamma", list}, {"terminal_unimodular", gamma.terminal_unimodular()}};
}

SchurParams schur_params_from_json(const json& j, const Tolerances& tol) {
  if (j.is_array()) return SchurParams(complex_list_from_json(j), false, tol);
  if (!j.is_object() || !j.contains("gamma"))
    throw Error(ErrorKind::io, "Schur parameters need a \"gamma\" field");
  const bool terminal = j.value("terminal_unimodular", false);
  return SchurParams(complex_list_from_json(j.at("gamma")), terminal, tol);
}

json to_json(const MomentSequence& m) {
  json list = json::array();
  for (cplx v : m.values()) list.push_back(to_json(v));
  return {{"moments", list}};
}

MomentSequence moments_from_json(const json& j) {
  std::vector<cplx> m = complex_list_from_json(j.is_object() && j.contains("moments") ? j.at("moments") : j);
  if (m.empty() || std::abs(m[0] - 1.0) > 1e-12)
    throw Error(ErrorKind::not_normalized, "moments must start with m_0 = 1");
  return MomentSequence(std::move(m));
}

json to_json(const PowerSeries& s) {
  json list = json::array();
  for (cplx c : s.coeffs()) list.push_back(to_json(c));
  return {{"coeffs", list}, {"order", s.order()}};
}

PowerSeries power_series_from_json(const json& j) {
  if (j.is_object() && j.contains("coeffs")) return PowerSeries(complex_list_from_json(j.at("coeffs")));
  return PowerSeries(complex_list_from_json(j));
}

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_matrix_csv(std::ostream& os, const CMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) os << ',';
      os << '"' << format_double(m(r, c).real()) << ',' << format_double(m(r, c).imag()) << '"';
    }
    os << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const Sweep& sweep) {
  os << "n,value\n";
  for (const auto& [n, v] : sweep) os << n << ',' << format_double(v) << '\n';
}

namespace {

json sweep_json(const Sweep& s) {
  json out = json::array();
  for (const auto& [n, v] : s) out.push_back({{"n", n}, {"value", v}});
  return out;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const DiagnosticReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["reasons"] = r.reasons;
  j["evidence_note"] =
      "finite-section sweeps are numerical evidence, not proof; only certified_hs rests on a "
      "sufficient condition";
  j["gamma"] = to_json(r.gamma);
  j["truncation_order"] = r.truncation_order;
  j["sigma_sweep"] = sweep_json(r.sigma_sweep);
  j["sigma_infimum"] = r.sigma_infimum;
  j["sigma_slope"] = r.sigma_slope;
  j["riesz_sweep"] = sweep_json(r.riesz_sweep);
  j["conjugation_sweep"] = sweep_json(r.conjugation_sweep);
  j["riesz_slope"] = optional_json(r.riesz_slope);
  j["strong_szego"] = {{"sum", r.strong_szego.sum},
                       {"product", r.strong_szego.product},
                       {"C_bound", r.strong_szego.c_bound},
                       {"tail_share", r.strong_szego.tail_share},
                       {"passes", r.strong_szego.passes}};
  j["class_stats"] = {{"in_l2", r.stats.in_l2},
                      {"l2_norm_sq", r.stats.l2_norm_sq},
                      {"strong_szego_sum", r.stats.strong_szego_sum},
                      {"szego_product", r.stats.szego_product}};
  j["l2_tail_exponent"] = optional_json(r.l2_tail_exponent);
  j["szego_identity_residual"] = optional_json(r.szego_identity_residual);
  j["levinson_discrepancy"] = optional_json(r.levinson_discrepancy);
  j["defect_series_lambda_max"] = optional_json(r.defect_lambda_max);
  j["description"] = r.description;
  return j;
}

namespace {

bool parse_number(const std::string& s, double& out) {
  std::istringstream ss(s);
  ss >> out;
  if (!ss) return false;
  ss >> std::ws;
  return ss.eof();
}

}  // namespace

std::vector<double> read_weight_csv(std::istream& is) {
  std::vector<double> angles, values;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = line.find(',');
    double a = 0, v = 0;
    const bool ok = comma != std::string::npos && parse_number(line.substr(0, comma), a) &&
                    parse_number(line.substr(comma + 1), v);
    if (!ok) {
      if (first) {
        first = false;
        continue;
      }
      throw Error(ErrorKind::io, "malformed weight CSV row: " + line);
    }
    first = false;
    angles.push_back(a);
    values.push_back(v);
  }
  if (values.empty()) throw Error(ErrorKind::io, "weight CSV has no rows");
  const double m = static_cast<double>(values.size());
  for (std::size_t l = 0; l < angles.size(); ++l)
    if (std::abs(angles[l] - static_cast<double>(l) / m) > 1e-9)
      throw Error(ErrorKind::io, "weight CSV angles are not the uniform grid l/M (turns)");
  return values;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::io, std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

}  // namespace hsz::io
