#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "qoekit/ahp.hpp"
#include "qoekit/composite.hpp"
#include "qoekit/emodel.hpp"
#include "qoekit/error.hpp"
#include "qoekit/hash.hpp"
#include "qoekit/io.hpp"
#include "qoekit/report.hpp"
#include "qoekit/session_store.hpp"
#include "qoekit/trace.hpp"

namespace qoekit::cli {

namespace {

using io::json;
namespace fs = std::filesystem;

constexpr const char* kDefaultModel = "paper-5g-ahp";
constexpr const char* kDefaultProfile = "g729";
constexpr double kDefaultWindowS = 10.0;

json parse_json_file(const fs::path& path) {
  const std::string text = io::read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

// Settings shared by `mos` and `trace analyze`. Flags beat the config file,
// which beats the built-in defaults.
struct ScoringFlags {
  std::string config;
  std::string model;
  std::string profile;
  std::vector<std::string> model_files;
  std::string jitter_mapping;
  std::optional<double> jitter_saturation_ms;
};

struct Scoring {
  composite::ModelRegistry registry = composite::ModelRegistry::with_builtins();
  std::string model = kDefaultModel;
  emodel::CodecProfile profile = emodel::g729();
  composite::JitterOptions jitter;
  json config = json::object();
};

void add_scoring_flags(CLI::App* cmd, ScoringFlags& f) {
  cmd->add_option("--config", f.config, "JSON config file (model, profile, window_s, jitter_estimator, ...)");
  cmd->add_option("--model", f.model, "Composite model name");
  cmd->add_option("--model-file", f.model_files, "JSON model definitions to register");
  cmd->add_option("--profile", f.profile, "Codec profile name or JSON file");
  cmd->add_option("--jitter-mapping", f.jitter_mapping, "buffer-headroom | pareto-scale");
  cmd->add_option("--jitter-saturation", f.jitter_saturation_ms, "Jitter (ms) at which pareto-scale reaches H=0.9");
}

emodel::CodecProfile resolve_profile(const std::string& ref) {
  if (ref.size() > 5 && ref.substr(ref.size() - 5) == ".json") return io::profile_from_json(parse_json_file(ref));
  const char* dir = std::getenv("QOEKIT_PROFILE_DIR");
  for (auto& p : io::load_profiles(dir ? fs::path(dir) : fs::path())) {
    if (p.name == ref) return p;
  }
  throw ValidationError("unknown codec profile '" + ref + "'");
}

std::string config_string(const json& config, const char* key) {
  if (!config.contains(key)) return {};
  if (!config.at(key).is_string()) throw ValidationError(std::string("config: '") + key + "' must be a string");
  return config.at(key).get<std::string>();
}

Scoring resolve_scoring(const ScoringFlags& f, std::ostream& err) {
  Scoring s;
  if (!f.config.empty()) {
    s.config = parse_json_file(f.config);
    if (!s.config.is_object()) throw ValidationError(f.config + ": config must be a JSON object");
  }
  auto pick = [&](const std::string& flag, const char* key, const std::string& fallback) {
    if (!flag.empty()) return flag;
    const std::string from_config = config_string(s.config, key);
    return from_config.empty() ? fallback : from_config;
  };

  auto warn = [&](const std::vector<composite::Registration>& regs) {
    for (const auto& r : regs) {
      if (r.renormalized) err << "warning: " << r.warning << "\n";
    }
  };
  if (s.config.contains("models")) warn(io::register_models(s.registry, s.config.at("models")));
  for (const auto& path : f.model_files) {
    json doc = parse_json_file(path);
    // `ahp weights --out` documents carry their model under "model".
    if (doc.is_object() && doc.contains("model") && doc.at("model").is_object()) doc = doc.at("model");
    warn(io::register_models(s.registry, doc));
  }

  s.model = pick(f.model, "model", kDefaultModel);
  s.registry.get(s.model);
  s.profile = resolve_profile(pick(f.profile, "profile", kDefaultProfile));
  s.jitter.mapping = composite::jitter_mapping_from_string(pick(f.jitter_mapping, "jitter_mapping", "buffer-headroom"));
  if (f.jitter_saturation_ms) {
    s.jitter.saturation_ms = *f.jitter_saturation_ms;
  } else if (s.config.contains("jitter_saturation_ms")) {
    s.jitter.saturation_ms = s.config.at("jitter_saturation_ms").get<double>();
  }
  return s;
}

// --- ahp elicit -------------------------------------------------------------------

struct ElicitFlags {
  std::string criteria;
  std::string evaluator;
  std::string out;
  std::string answers;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    out.push_back(item);
  }
  return out;
}

std::optional<double> parse_scale_entry(const std::string& text) {
  try {
    const double v = io::parse_judgment_value(json(text));
    if (ahp::on_saaty_scale(v)) return v;
  } catch (const ValidationError&) {
  }
  return std::nullopt;
}

std::string trimmed(std::string s) {
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t\r") + 1);
  return s;
}

void print_matrix(std::ostream& out, const std::string& corner, const std::vector<std::string>& criteria,
                  const std::vector<double>& cells, int decimals, const std::vector<double>* weights = nullptr,
                  const std::string& weight_label = "") {
  const std::size_t n = criteria.size();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-12s", corner.c_str());
  out << buf;
  for (const auto& c : criteria) {
    std::snprintf(buf, sizeof buf, " %8s", c.c_str());
    out << buf;
  }
  if (weights) {
    std::snprintf(buf, sizeof buf, " %8s", weight_label.c_str());
    out << buf;
  }
  out << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%-12s", criteria[i].c_str());
    out << buf;
    for (std::size_t j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, " %8s", io::format_fixed(cells[i * n + j], decimals).c_str());
      out << buf;
    }
    if (weights) {
      std::snprintf(buf, sizeof buf, " %8s", io::format_fixed((*weights)[i], decimals).c_str());
      out << buf;
    }
    out << "\n";
  }
}

std::string describe(const ahp::ConsistencyReport& c) {
  return "lambda_max=" + io::format_fixed(c.lambda_max, 3) + " CI=" + io::format_fixed(c.consistency_index, 3) +
         " CR=" + io::format_fixed(c.consistency_ratio, 3) + (c.acceptable ? " (acceptable)" : " (inconsistent, CR > 0.1)");
}

int cmd_ahp_elicit(const ElicitFlags& f, Streams s) {
  const auto criteria = split_list(f.criteria);
  if (criteria.size() < 2) throw ValidationError("--criteria needs at least 2 comma-separated labels");
  if (f.evaluator.empty()) throw ValidationError("--evaluator is required");

  std::unique_ptr<std::ifstream> answers;
  std::istream* in = &s.in;
  if (!f.answers.empty()) {
    answers = std::make_unique<std::ifstream>(f.answers);
    if (!*answers) throw IoError("cannot open answers file '" + f.answers + "'");
    in = answers.get();
  } else if (!s.interactive) {
    throw ValidationError("stdin is not a terminal; pass --answers <file> to replay a session");
  }

  ahp::JudgmentSet set;
  set.evaluator_id = f.evaluator;
  set.criteria = criteria;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    for (std::size_t j = i + 1; j < criteria.size(); ++j) set.judgments.push_back({criteria[i], criteria[j], 1.0});
  }
  const std::size_t pairs = set.judgments.size();

  auto ask = [&](std::size_t k) {
    auto& jd = set.judgments[k];
    while (true) {
      s.out << "[" << k + 1 << "/" << pairs << "] " << jd.a << " vs " << jd.b << ": how much more important is '"
            << jd.a << "'? (1-9, or 1/k if '" << jd.b << "' matters more): " << std::flush;
      std::string line;
      if (!std::getline(*in, line)) throw IoError("input ended before every pair was answered");
      line = trimmed(line);
      if (auto v = parse_scale_entry(line)) {
        jd.value = *v;
        return;
      }
      s.out << "\n  invalid entry '" << line << "'; use 1..9 or 1/2..1/9\n";
    }
  };
  for (std::size_t k = 0; k < pairs; ++k) ask(k);

  while (true) {
    const auto m = ahp::expand(set);
    const auto cr = ahp::consistency(m);
    const auto cw = ahp::derive_weights_column_average(m);
    s.out << "\n";
    print_matrix(s.out, "Importance", criteria, m.cells(), 3);
    s.out << "weights:";
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      s.out << " " << criteria[i] << "=" << io::format_fixed(cw.weights[i], 3);
    }
    s.out << "\nconsistency: " << describe(cr) << "\n";
    if (cr.acceptable) break;
    s.out << "Revise a pair? (1-" << pairs << ", or n to keep): " << std::flush;
    std::string line;
    if (!std::getline(*in, line)) break;
    line = trimmed(line);
    if (line.empty() || line == "n" || line == "N") break;
    std::size_t pick = 0;
    try {
      pick = std::stoul(line);
    } catch (const std::exception&) {
      pick = 0;
    }
    if (pick < 1 || pick > pairs) {
      s.out << "\n  invalid pair '" << line << "'\n";
      continue;
    }
    ask(pick - 1);
  }

  const json doc = io::to_json(set);
  if (!f.out.empty()) {
    io::write_file_atomic(f.out, dump_json(doc));
    s.out << "saved " << f.out << "\n";
  } else {
    s.out << dump_json(doc);
  }
  return 0;
}

// --- ahp weights ------------------------------------------------------------------

struct WeightsFlags {
  std::vector<std::string> inputs;
  std::string matrix;
  std::string aggregate = "arithmetic";
  std::string method = "column-average";
  std::string out;
  std::string csv_dir;
  std::string store;
  std::string name = "ahp-derived";
  int decimals = 2;
};

int cmd_ahp_weights(const WeightsFlags& f, Streams s) {
  if (f.inputs.empty() == f.matrix.empty()) {
    throw ValidationError("give judgment files/directories or --matrix, not both");
  }
  ahp::Aggregation aggregation;
  if (f.aggregate == "arithmetic") {
    aggregation = ahp::Aggregation::arithmetic_mean;
  } else if (f.aggregate == "geometric") {
    aggregation = ahp::Aggregation::geometric_mean;
  } else {
    throw ValidationError("--aggregate must be arithmetic or geometric");
  }
  ahp::WeightMethod method;
  if (f.method == "column-average") {
    method = ahp::WeightMethod::column_average;
  } else if (f.method == "eigenvector") {
    method = ahp::WeightMethod::eigenvector;
  } else {
    throw ValidationError("--method must be column-average or eigenvector");
  }

  json inputs = json::array();
  std::optional<ahp::PairwiseMatrix> matrix;
  std::string source;
  if (!f.matrix.empty()) {
    const std::string text = io::read_file(f.matrix);
    inputs.push_back({{"path", f.matrix}, {"sha256", sha256_hex(text)}});
    matrix = io::parse_matrix_csv(text);
    source = "matrix " + f.matrix;
  } else {
    std::vector<fs::path> paths;
    for (const auto& in : f.inputs) paths.emplace_back(in);
    paths = io::expand_inputs(paths);
    if (paths.empty()) throw ValidationError("no judgment files found");
    std::vector<ahp::JudgmentSet> sets;
    for (const auto& p : paths) {
      const std::string text = io::read_file(p);
      inputs.push_back({{"path", p.generic_string()}, {"sha256", sha256_hex(text)}});
      json doc;
      try {
        doc = json::parse(text);
      } catch (const json::parse_error& e) {
        throw ValidationError(p.string() + ": " + e.what());
      }
      try {
        sets.push_back(io::judgment_set_from_json(doc));
      } catch (const ValidationError& e) {
        throw ValidationError(p.string() + ": " + e.what());
      }
    }
    matrix = ahp::aggregate_judgments(sets, aggregation);
    source = std::to_string(sets.size()) + " evaluator(s), " + f.aggregate + " mean";
  }

  const auto& m = *matrix;
  const auto col = ahp::derive_weights_column_average(m);
  const ahp::WeightVector weights = method == ahp::WeightMethod::column_average ? col.weights
                                                                                : ahp::derive_weights_eigenvector(m);
  std::optional<ahp::ConsistencyReport> cr;
  if (m.size() >= 2) cr = ahp::consistency(m);
  const std::string weight_label = method == ahp::WeightMethod::column_average ? "Average" : "Priority";

  s.out << "Aggregated matrix (" << source << ")\n";
  print_matrix(s.out, "Importance", m.criteria(), m.cells(), f.decimals);
  s.out << "\nNormalized matrix and weights (" << f.method << ")\n";
  print_matrix(s.out, "Weight", m.criteria(), col.normalized, f.decimals, &weights.values(), weight_label);
  s.out << "\nweights:";
  for (std::size_t i = 0; i < weights.size(); ++i) {
    s.out << " " << m.criteria()[i] << "=" << io::format_fixed(weights[i], f.decimals);
  }
  s.out << "\n";
  if (cr) s.out << "consistency: " << describe(*cr) << "\n";

  json weight_map = json::object();
  for (std::size_t i = 0; i < weights.size(); ++i) weight_map[m.criteria()[i]] = weights[i];
  json doc = {{"inputs", inputs},
              {"aggregate", f.matrix.empty() ? json(f.aggregate) : json(nullptr)},
              {"method", f.method},
              {"criteria", m.criteria()},
              {"aggregated_matrix", m.cells()},
              {"normalized_matrix", col.normalized},
              {"weights", weight_map},
              {"model", {{"name", f.name}, {"criteria", m.criteria()}, {"weights", weights.values()}}}};
  if (cr) {
    doc["consistency"] = {{"lambda_max", cr->lambda_max},
                          {"consistency_index", cr->consistency_index},
                          {"consistency_ratio", cr->consistency_ratio},
                          {"acceptable", cr->acceptable}};
  }
  if (!f.out.empty()) io::write_file_atomic(f.out, dump_json(stamped(doc)));
  if (!f.csv_dir.empty()) {
    std::error_code ec;
    fs::create_directories(f.csv_dir, ec);
    if (ec) throw IoError("cannot create '" + f.csv_dir + "'");
    io::write_file_atomic(fs::path(f.csv_dir) / "table1_matrix.csv", io::matrix_csv("Importance", m.criteria(), m.cells()));
    io::write_file_atomic(fs::path(f.csv_dir) / "table2_weights.csv",
                          io::weight_table_csv("Weight", weight_label, m.criteria(), col.normalized, weights.values()));
  }
  if (!f.store.empty()) SessionStore(f.store).save("weights", f.name, doc);
  return 0;
}

// --- mos --------------------------------------------------------------------------

struct MosFlags {
  double loss = 0.0;
  double delay = 0.0;
  double jitter = 0.0;
  std::optional<double> jitter_h;
  std::optional<double> jitter_t;
  bool as_json = false;
  ScoringFlags scoring;
};

int cmd_mos(const MosFlags& f, Streams s) {
  Scoring sc = resolve_scoring(f.scoring, s.err);
  if (f.jitter_h) sc.profile.pareto_h = *f.jitter_h;
  if (f.jitter_t) sc.profile.jitter_t_ms = *f.jitter_t;
  emodel::validate(sc.profile);
  const auto& model = sc.registry.get(sc.model);
  composite::require_impairment_criteria(model);

  const composite::QosSample sample{f.loss, f.delay, f.jitter, std::nullopt};
  const auto c = composite::evaluate_components(sample, sc.profile, sc.jitter);
  const double overall = composite::combine(model, c.as_components());

  if (f.as_json) {
    json doc = {{"model", model.name},
                {"profile", sc.profile.name},
                {"jitter_mapping", composite::to_string(sc.jitter.mapping)},
                {"sample", {{"loss_pct", f.loss}, {"delay_ms", f.delay}, {"jitter_ms", f.jitter}}},
                {"r", {{"loss", c.r_loss}, {"delay", c.r_delay}, {"jitter", c.r_jitter}}},
                {"mos", {{"loss", c.mos_loss}, {"delay", c.mos_delay}, {"jitter", c.mos_jitter}, {"overall", overall}}}};
    s.out << dump_json(stamped(doc));
    return 0;
  }
  auto f3 = [](double v) { return io::format_fixed(v, 3); };
  s.out << "MOS_Loss=" << f3(c.mos_loss) << " MOS_Delay=" << f3(c.mos_delay) << " MOS_Jitter=" << f3(c.mos_jitter)
        << " MOS_Overall=" << f3(overall) << " R_Loss=" << f3(c.r_loss) << " R_Delay=" << f3(c.r_delay)
        << " R_Jitter=" << f3(c.r_jitter) << " model=" << model.name << " profile=" << sc.profile.name << "\n";
  return 0;
}

// --- trace gen / analyze -----------------------------------------------------------

struct GenFlags {
  std::string spec;
  std::string out;
};

int cmd_trace_gen(const GenFlags& f, Streams s) {
  const auto spec = io::impairment_spec_from_json(parse_json_file(f.spec));
  const auto t = trace::generate(spec);
  const std::string csv = io::trace_to_csv(t);
  if (f.out.empty()) {
    s.out << csv;
    return 0;
  }
  io::write_file_atomic(f.out, csv);
  std::size_t received = 0;
  for (const auto& p : t.packets) received += p.received() ? 1 : 0;
  s.out << "wrote " << f.out << ": packets=" << t.packets.size() << " lost=" << t.packets.size() - received
        << " loss_pct=" << io::format_fixed(trace::loss_rate(t.packets), 3);
  if (received >= 1) s.out << " mean_delay_ms=" << io::format_fixed(trace::mean_delay(t.packets), 3);
  if (received >= 2) s.out << " jitter_ms=" << io::format_fixed(trace::jitter_rfc3550(t.packets), 3);
  s.out << "\n";
  return 0;
}

struct AnalyzeFlags {
  std::string trace;
  std::optional<double> window_s;
  std::string estimator;
  std::string out;
  std::string csv;
  ScoringFlags scoring;
};

int cmd_trace_analyze(const AnalyzeFlags& f, Streams s) {
  Scoring sc = resolve_scoring(f.scoring, s.err);
  report::AnalyzeOptions options;
  options.jitter = sc.jitter;
  if (f.window_s) {
    options.windows.window_len_s = *f.window_s;
  } else if (sc.config.contains("window_s")) {
    options.windows.window_len_s = sc.config.at("window_s").get<double>();
  } else {
    options.windows.window_len_s = kDefaultWindowS;
  }
  std::string estimator = f.estimator.empty() ? config_string(sc.config, "jitter_estimator") : f.estimator;
  options.windows.estimator = trace::jitter_estimator_from_string(estimator.empty() ? "rfc3550" : estimator);

  const std::string text = io::read_file(f.trace);
  std::istringstream in(text);
  const auto t = io::parse_trace_csv(in, fs::path(f.trace).filename().string());
  auto r = report::analyze(t, sc.registry.get(sc.model), sc.profile, options);
  r.input_sha256 = sha256_hex(text);

  s.out << report::to_text(r);
  if (!f.out.empty()) io::write_file_atomic(f.out, dump_json(report::to_json(r)));
  if (!f.csv.empty()) io::write_file_atomic(f.csv, report::to_csv(r));
  return 0;
}

// --- models list --------------------------------------------------------------------

int cmd_models_list(const ScoringFlags& f, Streams s) {
  Scoring sc = resolve_scoring(f, s.err);
  s.out << "models:\n";
  for (const auto& name : sc.registry.names()) {
    const auto& m = sc.registry.get(name);
    s.out << "  " << name << " [" << composite::to_string(m.scale) << "]";
    for (std::size_t i = 0; i < m.weights.size(); ++i) {
      s.out << " " << m.weights.criteria()[i] << "=" << io::format_fixed(m.weights[i], 2);
    }
    s.out << "\n";
  }
  s.out << "profiles:\n";
  const char* dir = std::getenv("QOEKIT_PROFILE_DIR");
  for (const auto& p : io::load_profiles(dir ? fs::path(dir) : fs::path())) {
    s.out << "  " << p.name << " r0=" << io::format_number(p.r0) << " A=" << io::format_number(p.loss_a)
          << " B=" << io::format_number(p.loss_b) << " C=" << io::format_number(p.loss_c)
          << " H=" << io::format_number(p.pareto_h) << " T=" << io::format_number(p.jitter_t_ms)
          << " K=" << io::format_number(p.jitter_k) << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, Streams streams) {
  CLI::App app{"QoE scoring from QoS impairments: AHP weights, Simplified E-model MOS, trace analysis", "qoekit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  auto* ahp_cmd = app.add_subcommand("ahp", "Pairwise-comparison weighting");
  ahp_cmd->require_subcommand(1);

  ElicitFlags elicit;
  auto* elicit_cmd = ahp_cmd->add_subcommand("elicit", "Interview one evaluator pair by pair");
  elicit_cmd->add_option("--criteria", elicit.criteria, "Comma-separated criteria")->default_str("loss,delay,jitter");
  elicit.criteria = "loss,delay,jitter";
  elicit_cmd->add_option("--evaluator", elicit.evaluator, "Evaluator id")->required();
  elicit_cmd->add_option("--out", elicit.out, "Judgment set JSON to write");
  elicit_cmd->add_option("--answers", elicit.answers, "Replay answers from a file, one per line");

  WeightsFlags weights;
  auto* weights_cmd = ahp_cmd->add_subcommand("weights", "Aggregate judgments and derive weights");
  weights_cmd->add_option("inputs", weights.inputs, "Judgment set files or directories");
  weights_cmd->add_option("--matrix", weights.matrix, "Pre-aggregated matrix CSV");
  weights_cmd->add_option("--aggregate", weights.aggregate, "arithmetic | geometric")->capture_default_str();
  weights_cmd->add_option("--method", weights.method, "column-average | eigenvector")->capture_default_str();
  weights_cmd->add_option("--out", weights.out, "Weights JSON to write");
  weights_cmd->add_option("--csv-dir", weights.csv_dir, "Directory for matrix/weight CSV exports");
  weights_cmd->add_option("--store", weights.store, "Session store directory");
  weights_cmd->add_option("--name", weights.name, "Model name for the derived weights")->capture_default_str();
  weights_cmd->add_option("--decimals", weights.decimals, "Printed decimals")->capture_default_str()->check(
      CLI::Range(0, 12));

  MosFlags mos;
  auto* mos_cmd = app.add_subcommand("mos", "Score one (loss, delay, jitter) point");
  mos_cmd->add_option("--loss", mos.loss, "Packet loss, percent")->capture_default_str();
  mos_cmd->add_option("--delay", mos.delay, "One-way delay, ms")->capture_default_str();
  mos_cmd->add_option("--jitter", mos.jitter, "Measured jitter, ms")->capture_default_str();
  mos_cmd->add_option("--jitter-h", mos.jitter_h, "Override the profile's Pareto factor H");
  mos_cmd->add_option("--jitter-t", mos.jitter_t, "Override the profile's T (ms)");
  mos_cmd->add_flag("--json", mos.as_json, "Machine-readable output");
  add_scoring_flags(mos_cmd, mos.scoring);

  auto* trace_cmd = app.add_subcommand("trace", "Packet traces");
  trace_cmd->require_subcommand(1);

  GenFlags gen;
  auto* gen_cmd = trace_cmd->add_subcommand("gen", "Generate a trace from an impairment spec");
  gen_cmd->add_option("spec", gen.spec, "Impairment spec JSON")->required();
  gen_cmd->add_option("--out", gen.out, "Trace CSV to write (stdout if omitted)");

  AnalyzeFlags analyze;
  auto* analyze_cmd = trace_cmd->add_subcommand("analyze", "Per-window metrics and MOS");
  analyze_cmd->add_option("trace", analyze.trace, "Trace CSV")->required();
  analyze_cmd->add_option("--window", analyze.window_s, "Window length, seconds");
  analyze_cmd->add_option("--jitter-estimator", analyze.estimator, "rfc3550 | mean-abs");
  analyze_cmd->add_option("--out", analyze.out, "RunReport JSON to write");
  analyze_cmd->add_option("--csv", analyze.csv, "Per-window CSV to write");
  add_scoring_flags(analyze_cmd, analyze.scoring);

  ScoringFlags list_flags;
  auto* models_cmd = app.add_subcommand("models", "Model registry");
  models_cmd->require_subcommand(1);
  auto* list_cmd = models_cmd->add_subcommand("list", "List models and codec profiles");
  add_scoring_flags(list_cmd, list_flags);

  std::vector<std::string> argv_store{"qoekit"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, streams.out, streams.err);
    return code == 0 ? 0 : exit_code(ErrorKind::validation);
  }

  try {
    if (elicit_cmd->parsed()) return cmd_ahp_elicit(elicit, streams);
    if (weights_cmd->parsed()) return cmd_ahp_weights(weights, streams);
    if (mos_cmd->parsed()) return cmd_mos(mos, streams);
    if (gen_cmd->parsed()) return cmd_trace_gen(gen, streams);
    if (analyze_cmd->parsed()) return cmd_trace_analyze(analyze, streams);
    if (list_cmd->parsed()) return cmd_models_list(list_flags, streams);
  } catch (const Error& e) {
    const char* label = e.kind() == ErrorKind::validation ? "invalid input"
                        : e.kind() == ErrorKind::io       ? "i/o error"
                                                          : "convergence failure";
    streams.err << "qoekit: " << label << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const json::exception& e) {
    streams.err << "qoekit: invalid input: " << e.what() << "\n";
    return exit_code(ErrorKind::validation);
  } catch (const std::exception& e) {
    streams.err << "qoekit: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace qoekit::cli
