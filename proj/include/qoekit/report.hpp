#pragma once

// Measure-then-score pipeline over a trace and its JSON/CSV renderings.

#include <string>
#include <vector>

#include <json.hpp>

#include "qoekit/composite.hpp"
#include "qoekit/emodel.hpp"
#include "qoekit/trace.hpp"

namespace qoekit::report {

struct WindowRow {
  trace::WindowMetrics metrics;
  composite::ComponentBreakdown components;
  double mos_overall = 1.0;
};

struct RunReport {
  std::string model;
  std::string profile;
  std::string estimator;
  std::string jitter_mapping;
  double window_len_s = 0.0;
  std::string input_name;
  std::string input_sha256;
  std::vector<WindowRow> rows;
  double mos_mean = 1.0;
  double mos_min = 1.0;
};

struct AnalyzeOptions {
  trace::WindowOptions windows;
  composite::JitterOptions jitter;
};

// Windows with no received packet score 1.0 on delay and jitter; a window
// with a single received packet scores jitter as zero variation.
WindowRow score_window(const trace::WindowMetrics& metrics, const composite::CompositeModel& model,
                       const emodel::CodecProfile& profile, const composite::JitterOptions& jitter);

RunReport analyze(const trace::Trace& trace, const composite::CompositeModel& model,
                  const emodel::CodecProfile& profile, const AnalyzeOptions& options = {});
RunReport analyze_serial(const trace::Trace& trace, const composite::CompositeModel& model,
                         const emodel::CodecProfile& profile, const AnalyzeOptions& options = {});

nlohmann::json to_json(const RunReport& report);
std::string to_csv(const RunReport& report);
// Fixed-width text table, 3 decimals.
std::string to_text(const RunReport& report);

}  // namespace qoekit::report
