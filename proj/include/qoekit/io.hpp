#pragma once

// File formats: trace CSV, judgment/profile/model/generator JSON and
// Table-style matrix CSV.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qoekit/ahp.hpp"
#include "qoekit/composite.hpp"
#include "qoekit/emodel.hpp"
#include "qoekit/trace.hpp"

namespace qoekit::io {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const fs::path& path);
// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const fs::path& path, std::string_view content);

// Shortest text that parses back to the same double.
std::string format_number(double v);
std::string format_fixed(double v, int decimals);

// --- traces -----------------------------------------------------------------
// Header `seq,send_ts_ms,recv_ts_ms`; an empty recv field marks a lost packet.
// Lines starting with '#' are comments; `# interval_ms=<v>` sets the nominal
// interval. Errors carry the 1-based line number.
trace::Trace parse_trace_csv(std::istream& in, const std::string& source = "");
trace::Trace load_trace(const fs::path& path);
std::string trace_to_csv(const trace::Trace& trace);

// --- judgments ----------------------------------------------------------------
// Accepts numbers or strings such as "5" and "1/5".
double parse_judgment_value(const json& v);
ahp::JudgmentSet judgment_set_from_json(const json& doc);
json to_json(const ahp::JudgmentSet& set);
// Directories expand to their *.json files in name order.
std::vector<fs::path> expand_inputs(const std::vector<fs::path>& inputs);

// --- matrices ---------------------------------------------------------------
// First row: corner label then criteria; each following row: criterion then cells.
ahp::PairwiseMatrix parse_matrix_csv(std::string_view text);
std::string matrix_csv(const std::string& corner, const std::vector<ahp::Criterion>& criteria,
                       const std::vector<double>& cells, int decimals = -1);
// Normalized table plus a trailing weight column.
std::string weight_table_csv(const std::string& corner, const std::string& weight_label,
                             const std::vector<ahp::Criterion>& criteria, const std::vector<double>& normalized,
                             const std::vector<double>& weights, int decimals = -1);

// --- codec profiles -----------------------------------------------------------
// {name, r0, loss:{a,b,c}, jitter:{c1,c2,c3,c4,h,t_ms,k}}
emodel::CodecProfile profile_from_json(const json& doc);
json to_json(const emodel::CodecProfile& profile);
// Built-in g729 plus every *.json under `dir` (if non-empty and present).
std::vector<emodel::CodecProfile> load_profiles(const fs::path& dir);

// --- models -------------------------------------------------------------------
// {name, criteria:[...], weights:[...], scale?} or an array of those.
std::vector<composite::Registration> register_models(composite::ModelRegistry& registry, const json& doc);

// --- generator spec -------------------------------------------------------------
// {loss_prob, base_delay_ms, jitter:{model, a_ms, shape, scale_ms}, duration_s,
//  packet_interval_ms, seed}. Every bad field is reported in one error.
trace::ImpairmentSpec impairment_spec_from_json(const json& doc);

}  // namespace qoekit::io
