#pragma once

// Weighted composition of per-impairment MOS components into an overall
// score, plus the registry of named models.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qoekit/ahp.hpp"
#include "qoekit/emodel.hpp"

namespace qoekit::composite {

enum class Scale { mos_5pt, normalized_score };

struct CompositeModel {
  std::string name;
  ahp::WeightVector weights;
  Scale scale = Scale::mos_5pt;
};

// criterion -> component score
using ComponentMos = std::map<ahp::Criterion, double>;

struct QosSample {
  double loss_pct = 0.0;
  double delay_ms = 0.0;
  double jitter_ms = 0.0;
  std::optional<std::string> window_id;
};

void validate(const QosSample& sample);

// Weighted sum of components. Components must cover exactly the model's
// criteria and lie on the model's scale.
double combine(const CompositeModel& model, const ComponentMos& components);

// How a measured jitter amount enters the (jitter-free) I_jitter expression.
enum class JitterMapping {
  // T_eff = max(0, T - jitter): jitter eats into the buffer allowance.
  buffer_headroom,
  // H_eff moves from the profile H toward 0.9 as jitter approaches the
  // saturation level.
  pareto_scale,
};

struct JitterOptions {
  JitterMapping mapping = JitterMapping::buffer_headroom;
  double saturation_ms = 100.0;
};

emodel::CodecProfile jitter_adjusted(const emodel::CodecProfile& profile, double jitter_ms,
                                     const JitterOptions& options = {});

// R-factor and MOS per impairment, each computed with only its own
// impairment active against the profile baseline r0.
struct ComponentBreakdown {
  double r_loss = 0.0;
  double r_delay = 0.0;
  double r_jitter = 0.0;
  double mos_loss = 1.0;
  double mos_delay = 1.0;
  double mos_jitter = 1.0;

  ComponentMos as_components() const;
};

ComponentBreakdown evaluate_components(const QosSample& sample, const emodel::CodecProfile& profile,
                                       const JitterOptions& options = {});

ComponentMos component_mos(const QosSample& sample, const emodel::CodecProfile& profile,
                           const JitterOptions& options = {});

// combine(model, component_mos(sample, profile)). The model must be over
// exactly {loss, delay, jitter}.
double score(const QosSample& sample, const CompositeModel& model, const emodel::CodecProfile& profile,
             const JitterOptions& options = {});

void require_impairment_criteria(const CompositeModel& model);

inline constexpr double kExactSumTol = 1e-6;
inline constexpr double kRenormalizeTol = 0.02;

struct Registration {
  bool renormalized = false;
  std::string warning;
};

class ModelRegistry {
 public:
  // Registry preloaded with paper-5g-ahp, video-network and video-application.
  static ModelRegistry with_builtins();

  // Weights summing within 1e-6 of 1 are kept as given; within 0.02 they are
  // rescaled and a warning is returned; anything else is rejected.
  Registration register_model(const std::string& name, const std::vector<ahp::Criterion>& criteria,
                              const std::vector<double>& weights, Scale scale = Scale::mos_5pt);

  const CompositeModel& get(const std::string& name) const;
  bool contains(const std::string& name) const { return models_.count(name) != 0; }
  std::vector<std::string> names() const;

 private:
  std::map<std::string, CompositeModel> models_;
};

std::string to_string(Scale scale);
Scale scale_from_string(const std::string& s);
std::string to_string(JitterMapping mapping);
JitterMapping jitter_mapping_from_string(const std::string& s);

}  // namespace qoekit::composite
