#include <algorithm>
#include <charconv>
#include <cmath>

#include "qoekit/error.hpp"
#include "qoekit/io.hpp"

namespace qoekit::io {

namespace {

const json& require(const json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) throw ValidationError(where + ": missing field '" + key + "'");
  return doc.at(key);
}

double require_number(const json& doc, const char* key, const std::string& where) {
  const json& v = require(doc, key, where);
  if (!v.is_number()) throw ValidationError(where + ": field '" + key + "' must be a number");
  return v.get<double>();
}

std::string require_string(const json& doc, const char* key, const std::string& where) {
  const json& v = require(doc, key, where);
  if (!v.is_string()) throw ValidationError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> require_strings(const json& doc, const char* key, const std::string& where) {
  const json& v = require(doc, key, where);
  if (!v.is_array()) throw ValidationError(where + ": field '" + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw ValidationError(where + ": '" + key + "' entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string cell_text(double v, int decimals) { return decimals < 0 ? format_number(v) : format_fixed(v, decimals); }

}  // namespace

double parse_judgment_value(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    double num = 0.0;
    double den = 1.0;
    const bool ok = slash == std::string::npos
                        ? parse_double(s, num)
                        : parse_double(std::string_view(s).substr(0, slash), num) &&
                              parse_double(std::string_view(s).substr(slash + 1), den);
    if (ok && den != 0.0) return num / den;
  }
  throw ValidationError("judgment value " + v.dump() + " is not a number or 'k' / '1/k'");
}

ahp::JudgmentSet judgment_set_from_json(const json& doc) {
  const std::string where = "judgment set";
  ahp::JudgmentSet set;
  set.evaluator_id = require_string(doc, "evaluator_id", where);
  set.criteria = require_strings(doc, "criteria", where);
  const json& list = require(doc, "judgments", where);
  if (!list.is_array()) throw ValidationError(where + ": 'judgments' must be an array");
  for (const auto& j : list) {
    set.judgments.push_back({require_string(j, "a", where), require_string(j, "b", where),
                             parse_judgment_value(require(j, "value", where))});
  }
  ahp::validate(set);
  return set;
}

json to_json(const ahp::JudgmentSet& set) {
  json judgments = json::array();
  for (const auto& j : set.judgments) {
    json value;
    if (j.value < 1.0) {
      value = "1/" + std::to_string(static_cast<int>(std::lround(1.0 / j.value)));
    } else {
      value = std::lround(j.value);
    }
    judgments.push_back({{"a", j.a}, {"b", j.b}, {"value", value}});
  }
  return {{"evaluator_id", set.evaluator_id}, {"criteria", set.criteria}, {"judgments", judgments}};
}

std::vector<fs::path> expand_inputs(const std::vector<fs::path>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(in)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::exists(in, ec)) {
      out.push_back(in);
    } else {
      throw IoError("no such file or directory '" + in.string() + "'");
    }
  }
  return out;
}

ahp::PairwiseMatrix parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t p = 0;
    while (true) {
      auto q = line.find(',', p);
      std::string f = line.substr(p, q == std::string::npos ? std::string::npos : q - p);
      f.erase(0, f.find_first_not_of(' '));
      f.erase(f.find_last_not_of(' ') + 1);
      fields.push_back(f);
      if (q == std::string::npos) break;
      p = q + 1;
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw ValidationError("matrix CSV is empty");
  std::vector<ahp::Criterion> criteria(rows[0].begin() + 1, rows[0].end());
  const std::size_t n = criteria.size();
  if (rows.size() != n + 1) throw ValidationError("matrix CSV must have one row per criterion");
  std::vector<double> cells(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i + 1];
    if (row.size() != n + 1) throw ValidationError("matrix CSV row " + std::to_string(i + 2) + " has wrong width");
    if (row[0] != criteria[i]) {
      throw ValidationError("matrix CSV row label '" + row[0] + "' does not match column '" + criteria[i] + "'");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!parse_double(row[j + 1], cells[i * n + j])) {
        throw ValidationError("matrix CSV cell '" + row[j + 1] + "' is not a number");
      }
    }
  }
  return ahp::PairwiseMatrix(std::move(criteria), std::move(cells));
}

std::string matrix_csv(const std::string& corner, const std::vector<ahp::Criterion>& criteria,
                       const std::vector<double>& cells, int decimals) {
  const std::size_t n = criteria.size();
  std::string out = corner;
  for (const auto& c : criteria) out += "," + c;
  out += "\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += criteria[i];
    for (std::size_t j = 0; j < n; ++j) out += "," + cell_text(cells[i * n + j], decimals);
    out += "\n";
  }
  return out;
}

std::string weight_table_csv(const std::string& corner, const std::string& weight_label,
                             const std::vector<ahp::Criterion>& criteria, const std::vector<double>& normalized,
                             const std::vector<double>& weights, int decimals) {
  const std::size_t n = criteria.size();
  std::string out = corner;
  for (const auto& c : criteria) out += "," + c;
  out += "," + weight_label + "\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += criteria[i];
    for (std::size_t j = 0; j < n; ++j) out += "," + cell_text(normalized[i * n + j], decimals);
    out += "," + cell_text(weights[i], decimals) + "\n";
  }
  return out;
}

emodel::CodecProfile profile_from_json(const json& doc) {
  const std::string where = "codec profile";
  emodel::CodecProfile p;
  p.name = require_string(doc, "name", where);
  const std::string named = where + " '" + p.name + "'";
  p.r0 = require_number(doc, "r0", named);
  const json& loss = require(doc, "loss", named);
  p.loss_a = require_number(loss, "a", named + " loss");
  p.loss_b = require_number(loss, "b", named + " loss");
  p.loss_c = require_number(loss, "c", named + " loss");
  const json& jit = require(doc, "jitter", named);
  p.jitter_c1 = require_number(jit, "c1", named + " jitter");
  p.jitter_c2 = require_number(jit, "c2", named + " jitter");
  p.jitter_c3 = require_number(jit, "c3", named + " jitter");
  p.jitter_c4 = require_number(jit, "c4", named + " jitter");
  p.pareto_h = require_number(jit, "h", named + " jitter");
  p.jitter_t_ms = require_number(jit, "t_ms", named + " jitter");
  p.jitter_k = require_number(jit, "k", named + " jitter");
  emodel::validate(p);
  return p;
}

json to_json(const emodel::CodecProfile& p) {
  return {{"name", p.name},
          {"r0", p.r0},
          {"loss", {{"a", p.loss_a}, {"b", p.loss_b}, {"c", p.loss_c}}},
          {"jitter",
           {{"c1", p.jitter_c1},
            {"c2", p.jitter_c2},
            {"c3", p.jitter_c3},
            {"c4", p.jitter_c4},
            {"h", p.pareto_h},
            {"t_ms", p.jitter_t_ms},
            {"k", p.jitter_k}}}};
}

std::vector<emodel::CodecProfile> load_profiles(const fs::path& dir) {
  std::vector<emodel::CodecProfile> out{emodel::g729()};
  std::error_code ec;
  if (dir.empty() || !fs::is_directory(dir, ec)) return out;
  for (const auto& path : expand_inputs({dir})) {
    json doc;
    try {
      doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
      throw ValidationError(path.string() + ": " + e.what());
    }
    auto p = profile_from_json(doc);
    auto same = [&](const emodel::CodecProfile& q) { return q.name == p.name; };
    if (auto it = std::find_if(out.begin(), out.end(), same); it != out.end()) {
      *it = std::move(p);
    } else {
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<composite::Registration> register_models(composite::ModelRegistry& registry, const json& doc) {
  std::vector<composite::Registration> out;
  if (doc.is_array()) {
    for (const auto& d : doc) {
      auto r = register_models(registry, d);
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }
  const std::string where = "model definition";
  const std::string name = require_string(doc, "name", where);
  const auto criteria = require_strings(doc, "criteria", where + " '" + name + "'");
  const json& w = require(doc, "weights", where + " '" + name + "'");
  if (!w.is_array()) throw ValidationError(where + " '" + name + "': 'weights' must be an array");
  std::vector<double> weights;
  for (const auto& v : w) {
    if (!v.is_number()) throw ValidationError(where + " '" + name + "': weights must be numbers");
    weights.push_back(v.get<double>());
  }
  const auto scale =
      doc.contains("scale") ? composite::scale_from_string(require_string(doc, "scale", where)) : composite::Scale::mos_5pt;
  out.push_back(registry.register_model(name, criteria, weights, scale));
  return out;
}

trace::ImpairmentSpec impairment_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("impairment spec must be a JSON object");
  trace::ImpairmentSpec spec;
  std::vector<std::string> errors;
  auto number = [&](const json& obj, const char* key, const std::string& label, double& out, bool required) {
    if (!obj.contains(key)) {
      if (required) errors.push_back(label + " is required");
      return;
    }
    if (!obj.at(key).is_number()) {
      errors.push_back(label + " must be a number");
      return;
    }
    out = obj.at(key).get<double>();
  };
  number(doc, "loss_prob", "loss_prob", spec.loss_prob, true);
  number(doc, "base_delay_ms", "base_delay_ms", spec.base_delay_ms, true);
  number(doc, "duration_s", "duration_s", spec.duration_s, true);
  number(doc, "packet_interval_ms", "packet_interval_ms", spec.packet_interval_ms, false);

  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (s.is_number_unsigned() || (s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      spec.rng_seed = s.get<std::uint64_t>();
    } else {
      errors.emplace_back("seed must be a nonnegative integer");
    }
  }

  if (doc.contains("jitter")) {
    const json& j = doc.at("jitter");
    if (!j.is_object()) {
      errors.emplace_back("jitter must be an object");
    } else {
      const std::string model = j.value("model", std::string("none"));
      if (model == "none") {
        spec.jitter.kind = trace::JitterModel::Kind::none;
      } else if (model == "uniform") {
        spec.jitter.kind = trace::JitterModel::Kind::uniform;
        number(j, "a_ms", "jitter.a_ms", spec.jitter.amplitude_ms, true);
      } else if (model == "pareto") {
        spec.jitter.kind = trace::JitterModel::Kind::pareto;
        number(j, "shape", "jitter.shape", spec.jitter.shape, true);
        number(j, "scale_ms", "jitter.scale_ms", spec.jitter.scale_ms, true);
      } else {
        errors.push_back("jitter.model '" + model + "' is not one of none, uniform, pareto");
      }
    }
  }

  for (auto& e : trace::spec_errors(spec)) {
    const bool dup = std::any_of(errors.begin(), errors.end(), [&](const std::string& have) {
      return have.substr(0, have.find(' ')) == e.substr(0, e.find(' '));
    });
    if (!dup) errors.push_back(std::move(e));
  }
  if (!errors.empty()) {
    std::string msg = "invalid impairment spec:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ValidationError(msg);
  }
  return spec;
}

}  // namespace qoekit::io
