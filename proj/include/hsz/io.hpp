#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsz/diagnostics.hpp"
#include "hsz/linalg.hpp"
#include "hsz/power_series.hpp"
#include "hsz/seqcore.hpp"
#include "hsz/transforms.hpp"

namespace hsz::io {

using nlohmann::json;

// Complex numbers travel as [re, im]; plain numbers are accepted on input.
json to_json(cplx z);
cplx complex_from_json(const json& j);
std::vector<cplx> complex_list_from_json(const json& j);

json to_json(const SchurParams& gamma);
SchurParams schur_params_from_json(const json& j, const Tolerances& tol = {});

json to_json(const MomentSequence& m);
/// Accepts {"moments": [...]} or a bare list.
MomentSequence moments_from_json(const json& j);

json to_json(const PowerSeries& s);
/// Accepts {"coeffs": [...]} or a bare list.
PowerSeries power_series_from_json(const json& j);

json to_json(const CMatrix& m);
/// One CSV row per matrix row; every cell is a quoted "re,im" pair.
void write_matrix_csv(std::ostream& os, const CMatrix& m);

/// Columns n,value.
void write_sweep_csv(std::ostream& os, const Sweep& sweep);

json to_json(const DiagnosticReport& report);

/// Weight samples from CSV rows "angle,value". Angles are in turns and must
/// sit on the uniform grid l / M implied by the row index. A non-numeric first
/// row is treated as a header.
std::vector<double> read_weight_csv(std::istream& is);

std::string format_double(double x);

json parse_json_text(const std::string& text);
json read_json_file(const std::string& path);

}  // namespace hsz::io
