#include "qoekit/report.hpp"

#include <algorithm>
#include <cstdio>

#include "qoekit/io.hpp"
#include "qoekit/session_store.hpp"

namespace qoekit::report {

using nlohmann::json;

WindowRow score_window(const trace::WindowMetrics& metrics, const composite::CompositeModel& model,
                       const emodel::CodecProfile& profile, const composite::JitterOptions& jitter) {
  WindowRow row;
  row.metrics = metrics;
  composite::QosSample sample = metrics.sample;
  if (!metrics.jitter_available) sample.jitter_ms = 0.0;
  row.components = composite::evaluate_components(sample, profile, jitter);
  if (!metrics.delay_available) {
    row.components.mos_delay = emodel::kMosMin;
    row.components.mos_jitter = emodel::kMosMin;
  }
  row.mos_overall = composite::combine(model, row.components.as_components());
  return row;
}

namespace {

RunReport header(const composite::CompositeModel& model, const emodel::CodecProfile& profile,
                 const AnalyzeOptions& options, const trace::Trace& t) {
  RunReport r;
  r.model = model.name;
  r.profile = profile.name;
  r.estimator = trace::to_string(options.windows.estimator);
  r.jitter_mapping = composite::to_string(options.jitter.mapping);
  r.window_len_s = options.windows.window_len_s;
  r.input_name = t.source;
  return r;
}

void summarize(RunReport& r) {
  double sum = 0.0;
  double min = emodel::kMosMax;
  for (const auto& row : r.rows) {
    sum += row.mos_overall;
    min = std::min(min, row.mos_overall);
  }
  r.mos_mean = r.rows.empty() ? emodel::kMosMin : sum / static_cast<double>(r.rows.size());
  r.mos_min = r.rows.empty() ? emodel::kMosMin : min;
}

}  // namespace

RunReport analyze(const trace::Trace& t, const composite::CompositeModel& model, const emodel::CodecProfile& profile,
                  const AnalyzeOptions& options) {
  composite::require_impairment_criteria(model);
  emodel::validate(profile);
  RunReport r = header(model, profile, options, t);
  const auto metrics = trace::windows(t, options.windows);
  r.rows.resize(metrics.size());
  const auto n = static_cast<std::ptrdiff_t>(metrics.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    r.rows[i] = score_window(metrics[i], model, profile, options.jitter);
  }
  summarize(r);
  return r;
}

RunReport analyze_serial(const trace::Trace& t, const composite::CompositeModel& model,
                         const emodel::CodecProfile& profile, const AnalyzeOptions& options) {
  composite::require_impairment_criteria(model);
  emodel::validate(profile);
  RunReport r = header(model, profile, options, t);
  for (const auto& m : trace::windows_serial(t, options.windows)) {
    r.rows.push_back(score_window(m, model, profile, options.jitter));
  }
  summarize(r);
  return r;
}

json to_json(const RunReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    const auto& m = row.metrics;
    const auto& c = row.components;
    json j = {{"window_id", m.window_id},
              {"start_ms", m.span.start_ms},
              {"end_ms", m.span.end_ms},
              {"partial", m.partial},
              {"packet_count", m.packet_count},
              {"expected", m.expected},
              {"lost_count", m.lost_count},
              {"loss_pct", m.sample.loss_pct},
              {"delay_ms", m.delay_available ? json(m.sample.delay_ms) : json(nullptr)},
              {"jitter_ms", m.jitter_available ? json(m.sample.jitter_ms) : json(nullptr)},
              {"r_loss", c.r_loss},
              {"r_delay", m.delay_available ? json(c.r_delay) : json(nullptr)},
              {"r_jitter", m.delay_available ? json(c.r_jitter) : json(nullptr)},
              {"mos_loss", c.mos_loss},
              {"mos_delay", c.mos_delay},
              {"mos_jitter", c.mos_jitter},
              {"mos_overall", row.mos_overall}};
    rows.push_back(std::move(j));
  }
  json doc = {{"model", r.model},
              {"profile", r.profile},
              {"jitter_estimator", r.estimator},
              {"jitter_mapping", r.jitter_mapping},
              {"window_s", r.window_len_s},
              {"input", {{"name", r.input_name}, {"sha256", r.input_sha256}}},
              {"windows", rows},
              {"summary", {{"window_count", r.rows.size()}, {"mos_mean", r.mos_mean}, {"mos_min", r.mos_min}}}};
  return stamped(doc);
}

std::string to_csv(const RunReport& r) {
  std::string out =
      "window_id,start_ms,end_ms,partial,packets,lost,loss_pct,delay_ms,jitter_ms,"
      "mos_loss,mos_delay,mos_jitter,mos_overall\n";
  for (const auto& row : r.rows) {
    const auto& m = row.metrics;
    out += m.window_id + "," + io::format_number(m.span.start_ms) + "," + io::format_number(m.span.end_ms) + "," +
           (m.partial ? "1" : "0") + "," + std::to_string(m.packet_count) + "," + std::to_string(m.lost_count) + "," +
           io::format_number(m.sample.loss_pct) + "," + (m.delay_available ? io::format_number(m.sample.delay_ms) : "") +
           "," + (m.jitter_available ? io::format_number(m.sample.jitter_ms) : "") + "," +
           io::format_number(row.components.mos_loss) + "," + io::format_number(row.components.mos_delay) + "," +
           io::format_number(row.components.mos_jitter) + "," + io::format_number(row.mos_overall) + "\n";
  }
  return out;
}

std::string to_text(const RunReport& r) {
  char line[256];
  std::string out;
  std::snprintf(line, sizeof line, "%-8s %10s %10s %10s %9s %9s %10s %11s\n", "window", "loss_pct", "delay_ms",
                "jitter_ms", "MOS_Loss", "MOS_Delay", "MOS_Jitter", "MOS_Overall");
  out += line;
  auto opt = [](bool have, double v) { return have ? io::format_fixed(v, 3) : std::string("-"); };
  for (const auto& row : r.rows) {
    const auto& m = row.metrics;
    std::snprintf(line, sizeof line, "%-8s %10s %10s %10s %9s %9s %10s %11s%s\n", m.window_id.c_str(),
                  io::format_fixed(m.sample.loss_pct, 3).c_str(), opt(m.delay_available, m.sample.delay_ms).c_str(),
                  opt(m.jitter_available, m.sample.jitter_ms).c_str(), io::format_fixed(row.components.mos_loss, 3).c_str(),
                  io::format_fixed(row.components.mos_delay, 3).c_str(),
                  io::format_fixed(row.components.mos_jitter, 3).c_str(), io::format_fixed(row.mos_overall, 3).c_str(),
                  m.partial ? " (partial)" : "");
    out += line;
  }
  out += "windows=" + std::to_string(r.rows.size()) + " mos_mean=" + io::format_fixed(r.mos_mean, 3) +
         " mos_min=" + io::format_fixed(r.mos_min, 3) + "\n";
  return out;
}

}  // namespace qoekit::report
