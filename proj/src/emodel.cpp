#include "qoekit/emodel.hpp"

#include <algorithm>
#include <cmath>

#include "qoekit/error.hpp"

namespace qoekit::emodel {

CodecProfile g729() {
  CodecProfile p;
  p.name = "g729";
  return p;
}

void validate(const CodecProfile& p) {
  auto finite = [&](double v, const char* field) {
    if (!std::isfinite(v)) throw ValidationError(std::string("profile '") + p.name + "': " + field + " must be finite");
  };
  finite(p.r0, "r0");
  finite(p.loss_a, "loss.a");
  finite(p.loss_b, "loss.b");
  finite(p.loss_c, "loss.c");
  finite(p.jitter_c1, "jitter.c1");
  finite(p.jitter_c2, "jitter.c2");
  finite(p.jitter_c3, "jitter.c3");
  finite(p.jitter_c4, "jitter.c4");
  if (p.name.empty()) throw ValidationError("profile name must be non-empty");
  if (!(p.r0 > 0.0 && p.r0 <= 100.0)) throw ValidationError("profile '" + p.name + "': r0 must lie in (0, 100]");
  if (!(p.pareto_h >= kParetoMin && p.pareto_h <= kParetoMax)) {
    throw ValidationError("profile '" + p.name + "': jitter.h must lie in [0.55, 0.9]");
  }
  if (!(p.jitter_t_ms >= 0.0)) throw ValidationError("profile '" + p.name + "': jitter.t_ms must be >= 0");
  if (!(p.jitter_k > 0.0) || !std::isfinite(p.jitter_k)) {
    throw ValidationError("profile '" + p.name + "': jitter.k must be > 0");
  }
  // ln(1 + C P / 100) must stay defined over P in [0, 100].
  if (!(p.loss_c > -1.0)) throw ValidationError("profile '" + p.name + "': loss.c must be > -1");
}

double heaviside(double x) noexcept { return x > 0.0 ? 1.0 : 0.0; }

double i_delay(double delay_ms) {
  if (!(delay_ms >= 0.0) || !std::isfinite(delay_ms)) {
    throw ValidationError("delay_ms must be a finite value >= 0");
  }
  const double excess = delay_ms - kDelayKneeMs;
  return 0.024 * delay_ms + 0.11 * excess * heaviside(excess);
}

double i_codec_loss(double loss_pct, const CodecProfile& profile) {
  if (!(loss_pct >= 0.0 && loss_pct <= 100.0)) throw ValidationError("loss_pct must lie in [0, 100]");
  return profile.loss_a + profile.loss_b * std::log(1.0 + profile.loss_c * loss_pct / 100.0);
}

double i_jitter(const CodecProfile& p) {
  const double h = p.pareto_h;
  return p.jitter_c1 * h * h + p.jitter_c2 * h + p.jitter_c3 + p.jitter_c4 * std::exp(-p.jitter_t_ms / p.jitter_k);
}

RFactor r_simplified(double delay_ms, double loss_pct, const CodecProfile& profile) {
  return {profile.r0 - i_delay(delay_ms) - i_codec_loss(loss_pct, profile) - i_jitter(profile)};
}

MosScore mos_from_r(RFactor r) noexcept {
  const double R = r.value;
  if (std::isnan(R)) return {kMosMin};
  if (R >= 100.0) return {kMosMax};
  if (R <= 0.0) return {kMosMin};
  const double raw = 1.0 + 0.035 * R + R * (R - 60.0) * (100.0 - R) * 7e-6;
  return {std::clamp(raw, kMosMin, kMosMax)};
}

}  // namespace qoekit::emodel
