#include "qoekit/composite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "qoekit/error.hpp"

namespace qoekit::composite {

void validate(const QosSample& s) {
  if (!(s.loss_pct >= 0.0 && s.loss_pct <= 100.0)) throw ValidationError("loss_pct must lie in [0, 100]");
  if (!(s.delay_ms >= 0.0) || !std::isfinite(s.delay_ms)) throw ValidationError("delay_ms must be >= 0");
  if (!(s.jitter_ms >= 0.0) || !std::isfinite(s.jitter_ms)) throw ValidationError("jitter_ms must be >= 0");
}

double combine(const CompositeModel& model, const ComponentMos& components) {
  const auto& criteria = model.weights.criteria();
  if (components.size() != criteria.size()) {
    throw ValidationError("model '" + model.name + "' expects " + std::to_string(criteria.size()) +
                          " components, got " + std::to_string(components.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto it = components.find(criteria[i]);
    if (it == components.end()) {
      throw ValidationError("missing component '" + criteria[i] + "' for model '" + model.name + "'");
    }
    const double v = it->second;
    const bool in_range = model.scale == Scale::mos_5pt ? (v >= emodel::kMosMin && v <= emodel::kMosMax)
                                                        : (v >= 0.0 && v <= 1.0);
    if (!in_range) {
      throw ValidationError("component '" + criteria[i] + "' = " + std::to_string(v) + " is off the " +
                            to_string(model.scale) + " scale");
    }
    total += model.weights[i] * v;
  }
  return total;
}

emodel::CodecProfile jitter_adjusted(const emodel::CodecProfile& profile, double jitter_ms,
                                     const JitterOptions& options) {
  if (!(jitter_ms >= 0.0) || !std::isfinite(jitter_ms)) throw ValidationError("jitter_ms must be >= 0");
  emodel::CodecProfile adjusted = profile;
  switch (options.mapping) {
    case JitterMapping::buffer_headroom:
      adjusted.jitter_t_ms = std::max(0.0, profile.jitter_t_ms - jitter_ms);
      break;
    case JitterMapping::pareto_scale: {
      if (!(options.saturation_ms > 0.0)) throw ValidationError("jitter saturation must be > 0");
      const double frac = std::min(jitter_ms / options.saturation_ms, 1.0);
      adjusted.pareto_h = profile.pareto_h + (emodel::kParetoMax - profile.pareto_h) * frac;
      break;
    }
  }
  return adjusted;
}

ComponentMos ComponentBreakdown::as_components() const {
  return {{"loss", mos_loss}, {"delay", mos_delay}, {"jitter", mos_jitter}};
}

ComponentBreakdown evaluate_components(const QosSample& sample, const emodel::CodecProfile& profile,
                                       const JitterOptions& options) {
  validate(sample);
  ComponentBreakdown out;
  out.r_loss = profile.r0 - emodel::i_codec_loss(sample.loss_pct, profile);
  out.r_delay = profile.r0 - emodel::i_delay(sample.delay_ms);
  out.r_jitter = profile.r0 - emodel::i_jitter(jitter_adjusted(profile, sample.jitter_ms, options));
  out.mos_loss = emodel::mos_from_r({out.r_loss}).value;
  out.mos_delay = emodel::mos_from_r({out.r_delay}).value;
  out.mos_jitter = emodel::mos_from_r({out.r_jitter}).value;
  return out;
}

ComponentMos component_mos(const QosSample& sample, const emodel::CodecProfile& profile,
                           const JitterOptions& options) {
  return evaluate_components(sample, profile, options).as_components();
}

void require_impairment_criteria(const CompositeModel& model) {
  const auto& c = model.weights.criteria();
  const std::set<ahp::Criterion> have(c.begin(), c.end());
  if (have != std::set<ahp::Criterion>{"loss", "delay", "jitter"}) {
    throw ValidationError("model '" + model.name + "' is not over {loss, delay, jitter}; criteria mismatch");
  }
}

double score(const QosSample& sample, const CompositeModel& model, const emodel::CodecProfile& profile,
             const JitterOptions& options) {
  require_impairment_criteria(model);
  return combine(model, component_mos(sample, profile, options));
}

ModelRegistry ModelRegistry::with_builtins() {
  ModelRegistry r;
  r.register_model("paper-5g-ahp", {"loss", "delay", "jitter"}, {0.55, 0.25, 0.20});
  r.register_model("video-network", {"loss", "jitter", "throughput", "ars"}, {0.26, 0.55, 0.07, 0.12},
                   Scale::normalized_score);
  r.register_model("video-application", {"bit_rate", "frame_rate", "resolution"}, {0.26, 0.63, 0.11},
                   Scale::normalized_score);
  return r;
}

Registration ModelRegistry::register_model(const std::string& name, const std::vector<ahp::Criterion>& criteria,
                                           const std::vector<double>& weights, Scale scale) {
  if (name.empty()) throw ValidationError("model name must be non-empty");
  if (contains(name)) throw ValidationError("model '" + name + "' is already registered");
  if (weights.size() != criteria.size()) throw ValidationError("model '" + name + "': weight count mismatch");
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  Registration result;
  std::vector<double> w = weights;
  const double off = std::abs(sum - 1.0);
  if (off > kRenormalizeTol || !std::isfinite(sum)) {
    throw ValidationError("model '" + name + "': weights sum to " + std::to_string(sum) + ", off by more than 0.02");
  }
  if (off > kExactSumTol) {
    for (double& v : w) v /= sum;
    result.renormalized = true;
    result.warning = "model '" + name + "': weights summed to " + std::to_string(sum) + "; rescaled to 1";
  }
  models_.emplace(name, CompositeModel{name, ahp::WeightVector(criteria, std::move(w), kExactSumTol), scale});
  return result;
}

const CompositeModel& ModelRegistry::get(const std::string& name) const {
  auto it = models_.find(name);
  if (it == models_.end()) throw ValidationError("unknown model '" + name + "'");
  return it->second;
}

std::vector<std::string> ModelRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : models_) out.push_back(name);
  return out;
}

std::string to_string(Scale scale) { return scale == Scale::mos_5pt ? "mos-5pt" : "normalized-score"; }

Scale scale_from_string(const std::string& s) {
  if (s == "mos-5pt") return Scale::mos_5pt;
  if (s == "normalized-score") return Scale::normalized_score;
  throw ValidationError("unknown scale '" + s + "'");
}

std::string to_string(JitterMapping mapping) {
  return mapping == JitterMapping::buffer_headroom ? "buffer-headroom" : "pareto-scale";
}

JitterMapping jitter_mapping_from_string(const std::string& s) {
  if (s == "buffer-headroom") return JitterMapping::buffer_headroom;
  if (s == "pareto-scale") return JitterMapping::pareto_scale;
  throw ValidationError("unknown jitter mapping '" + s + "'");
}

}  // namespace qoekit::composite
