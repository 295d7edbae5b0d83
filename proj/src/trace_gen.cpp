#include <cmath>
#include <random>

#include "qoekit/emodel.hpp"
#include "qoekit/error.hpp"
#include "qoekit/trace.hpp"

namespace qoekit::trace {

namespace {

// mt19937_64 output is fixed by the standard; the distributions are not, so
// uniform draws are built by hand to keep traces identical across toolchains.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  // [0, 1)
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

std::vector<std::string> spec_errors(const ImpairmentSpec& s) {
  std::vector<std::string> errors;
  if (!(s.loss_prob >= 0.0 && s.loss_prob <= 1.0)) errors.emplace_back("loss_prob must lie in [0, 1]");
  if (!(s.base_delay_ms >= 0.0) || !std::isfinite(s.base_delay_ms)) errors.emplace_back("base_delay_ms must be >= 0");
  switch (s.jitter.kind) {
    case JitterModel::Kind::none:
      break;
    case JitterModel::Kind::uniform:
      if (!(s.jitter.amplitude_ms >= 0.0) || !std::isfinite(s.jitter.amplitude_ms)) {
        errors.emplace_back("jitter.a_ms must be >= 0");
      }
      break;
    case JitterModel::Kind::pareto:
      if (!(s.jitter.shape >= emodel::kParetoMin && s.jitter.shape <= emodel::kParetoMax)) {
        errors.emplace_back("jitter.shape must lie in [0.55, 0.9]");
      }
      if (!(s.jitter.scale_ms >= 0.0) || !std::isfinite(s.jitter.scale_ms)) {
        errors.emplace_back("jitter.scale_ms must be >= 0");
      }
      break;
  }
  if (!(s.duration_s > 0.0) || !std::isfinite(s.duration_s)) errors.emplace_back("duration_s must be > 0");
  if (!(s.packet_interval_ms > 0.0) || !std::isfinite(s.packet_interval_ms)) {
    errors.emplace_back("packet_interval_ms must be > 0");
  } else if (s.duration_s > 0.0 && s.duration_s * 1000.0 / s.packet_interval_ms > 1e9) {
    errors.emplace_back("duration_s / packet_interval_ms yields more than 1e9 packets");
  }
  if (!s.rng_seed) errors.emplace_back("seed is required");
  return errors;
}

void validate(const ImpairmentSpec& spec) {
  const auto errors = spec_errors(spec);
  if (errors.empty()) return;
  std::string msg = "invalid impairment spec:";
  for (const auto& e : errors) msg += "\n  " + e;
  throw ValidationError(msg);
}

Trace generate(const ImpairmentSpec& spec) {
  validate(spec);
  UniformSource rng(*spec.rng_seed);
  const auto count =
      std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(spec.duration_s * 1000.0 / spec.packet_interval_ms)));

  Trace trace;
  trace.interval_ms = spec.packet_interval_ms;
  trace.source = "generated seed=" + std::to_string(*spec.rng_seed);
  trace.packets.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    PacketRecord p;
    p.seq = k;
    p.send_ts_ms = static_cast<double>(k) * spec.packet_interval_ms;
    // Both draws happen for every packet so loss and delay streams stay aligned.
    const bool lost = rng.next() < spec.loss_prob;
    const double u = rng.next();
    double delay = spec.base_delay_ms;
    switch (spec.jitter.kind) {
      case JitterModel::Kind::none:
        break;
      case JitterModel::Kind::uniform:
        delay += spec.jitter.amplitude_ms * (2.0 * u - 1.0);
        break;
      case JitterModel::Kind::pareto:
        delay += spec.jitter.scale_ms * (std::pow(1.0 - u, -1.0 / spec.jitter.shape) - 1.0);
        break;
    }
    if (!lost) p.recv_ts_ms = p.send_ts_ms + std::max(0.0, delay);
    trace.packets.push_back(p);
  }
  return trace;
}

}  // namespace qoekit::trace
