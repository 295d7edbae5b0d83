#pragma once

// Packet traces: loss/delay/jitter extraction per time window and a seeded
// impairment generator.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qoekit/composite.hpp"

namespace qoekit::trace {

struct PacketRecord {
  std::uint64_t seq = 0;
  double send_ts_ms = 0.0;
  std::optional<double> recv_ts_ms;  // absent => lost

  bool received() const noexcept { return recv_ts_ms.has_value(); }
  double delay_ms() const { return *recv_ts_ms - send_ts_ms; }
};

struct Trace {
  std::vector<PacketRecord> packets;
  std::string source;
  // 0 when unknown; inferred from send timestamps where needed.
  double interval_ms = 0.0;
};

// Nonempty, seq strictly increasing, send_ts nondecreasing, recv >= send.
void validate(const Trace& trace);

double nominal_interval_ms(const Trace& trace);

// Kernels over a run of consecutive records.
//
// 100 * (expected - received) / expected, expected = max_seq - min_seq + 1.
double loss_rate(std::span<const PacketRecord> window);
double mean_delay(std::span<const PacketRecord> window);
// RFC 3550 interarrival jitter over consecutive received packets, J0 = 0.
double jitter_rfc3550(std::span<const PacketRecord> window);
// Mean |delay_j - delay_i| over consecutive received packets.
double jitter_mean_abs(std::span<const PacketRecord> window);

struct TimeWindow {
  double start_ms = 0.0;
  double end_ms = 0.0;  // exclusive
};

// Records whose send_ts falls in [start, end).
std::span<const PacketRecord> slice(const Trace& trace, TimeWindow window);

enum class JitterEstimator { rfc3550, mean_abs };

std::string to_string(JitterEstimator e);
JitterEstimator jitter_estimator_from_string(const std::string& s);

struct WindowMetrics {
  std::size_t index = 0;
  std::string window_id;
  TimeWindow span;
  bool partial = false;
  composite::QosSample sample;
  std::size_t packet_count = 0;  // records present in the window
  std::size_t expected = 0;
  std::size_t lost_count = 0;
  bool delay_available = false;
  bool jitter_available = false;
};

struct WindowOptions {
  double window_len_s = 10.0;
  JitterEstimator estimator = JitterEstimator::rfc3550;
};

// Half-open windows of window_len_s anchored at the first send timestamp.
// The jitter recursion restarts in every window.
std::vector<TimeWindow> window_layout(const Trace& trace, double window_len_s);

WindowMetrics measure_window(const Trace& trace, std::size_t index, TimeWindow span, bool partial,
                             JitterEstimator estimator);

// OpenMP over windows; output order is the window order.
std::vector<WindowMetrics> windows(const Trace& trace, const WindowOptions& options = {});
// Single-threaded reference kept for testing and benchmarking.
std::vector<WindowMetrics> windows_serial(const Trace& trace, const WindowOptions& options = {});

struct JitterModel {
  enum class Kind { none, uniform, pareto };
  Kind kind = Kind::none;
  double amplitude_ms = 0.0;  // uniform(+-a)
  double shape = 0.6;         // pareto
  double scale_ms = 0.0;      // pareto
};

struct ImpairmentSpec {
  double loss_prob = 0.0;
  double base_delay_ms = 0.0;
  JitterModel jitter;
  double duration_s = 0.0;
  double packet_interval_ms = 20.0;
  std::optional<std::uint64_t> rng_seed;
};

// Every violated field, in declaration order.
std::vector<std::string> spec_errors(const ImpairmentSpec& spec);
void validate(const ImpairmentSpec& spec);

// Fixed cadence from send_ts 0, independent loss per packet, delay drawn from
// the jitter model and truncated at 0. Deterministic given the seed.
Trace generate(const ImpairmentSpec& spec);

}  // namespace qoekit::trace
