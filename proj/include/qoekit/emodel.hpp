#pragma once

// Simplified E-model: impairment factors for delay, codec+loss and jitter,
// and the R-factor to MOS conversion.

#include <string>

namespace qoekit::emodel {

struct CodecProfile {
  std::string name;
  double r0 = 93.2;
  // I_codec&loss = A + B ln(1 + C P / 100)
  double loss_a = 11.0;
  double loss_b = 40.0;
  double loss_c = 10.0;
  // I_jitter = C1 H^2 + C2 H + C3 + C4 exp(-T / K)
  double jitter_c1 = -15.5;
  double jitter_c2 = 33.5;
  double jitter_c3 = 4.4;
  double jitter_c4 = 13.6;
  double pareto_h = 0.6;
  double jitter_t_ms = 40.0;
  double jitter_k = 30.0;
};

inline constexpr double kParetoMin = 0.55;
inline constexpr double kParetoMax = 0.9;

// Built-in default profile.
CodecProfile g729();

// Throws ValidationError naming the first violated field.
void validate(const CodecProfile& profile);

struct RFactor {
  double value = 0.0;
};

struct MosScore {
  double value = 1.0;
};

inline constexpr double kMosMin = 1.0;
inline constexpr double kMosMax = 4.5;

// Unit step with heaviside(0) == 0.
double heaviside(double x) noexcept;

inline constexpr double kDelayKneeMs = 177.3;

double i_delay(double delay_ms);
// loss_pct is a percentage in [0, 100].
double i_codec_loss(double loss_pct, const CodecProfile& profile);
double i_jitter(const CodecProfile& profile);

RFactor r_simplified(double delay_ms, double loss_pct, const CodecProfile& profile);

// Cubic R -> MOS mapping, 4.5 at R >= 100, 1 at R <= 0, clamped to [1, 4.5]
// in between (the raw cubic dips below 1 for small positive R).
MosScore mos_from_r(RFactor r) noexcept;

}  // namespace qoekit::emodel
