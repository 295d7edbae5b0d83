#include <algorithm>
#include <cmath>

#include "qoekit/error.hpp"
#include "qoekit/trace.hpp"

namespace qoekit::trace {

void validate(const Trace& trace) {
  if (trace.packets.empty()) throw ValidationError("trace is empty");
  const PacketRecord* prev = nullptr;
  for (const auto& p : trace.packets) {
    if (!std::isfinite(p.send_ts_ms)) throw ValidationError("seq " + std::to_string(p.seq) + ": bad send_ts");
    if (p.recv_ts_ms && !(std::isfinite(*p.recv_ts_ms) && *p.recv_ts_ms >= p.send_ts_ms)) {
      throw ValidationError("seq " + std::to_string(p.seq) + ": recv_ts precedes send_ts");
    }
    if (prev) {
      if (p.seq <= prev->seq) throw ValidationError("seq " + std::to_string(p.seq) + " is not strictly increasing");
      if (p.send_ts_ms < prev->send_ts_ms) {
        throw ValidationError("seq " + std::to_string(p.seq) + ": send_ts goes backwards");
      }
    }
    prev = &p;
  }
  if (trace.interval_ms < 0.0) throw ValidationError("trace interval must be >= 0");
}

double nominal_interval_ms(const Trace& trace) {
  if (trace.interval_ms > 0.0) return trace.interval_ms;
  if (trace.packets.size() < 2) return 0.0;
  const auto& first = trace.packets.front();
  const auto& last = trace.packets.back();
  return (last.send_ts_ms - first.send_ts_ms) / static_cast<double>(last.seq - first.seq);
}

double loss_rate(std::span<const PacketRecord> window) {
  if (window.empty()) throw ValidationError("loss_rate: empty window");
  const std::uint64_t expected = window.back().seq - window.front().seq + 1;
  const auto received = static_cast<std::uint64_t>(
      std::count_if(window.begin(), window.end(), [](const PacketRecord& p) { return p.received(); }));
  return 100.0 * static_cast<double>(expected - received) / static_cast<double>(expected);
}

double mean_delay(std::span<const PacketRecord> window) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : window) {
    if (!p.received()) continue;
    sum += p.delay_ms();
    ++n;
  }
  if (n == 0) throw ValidationError("mean_delay: no received packets");
  return sum / static_cast<double>(n);
}

double jitter_rfc3550(std::span<const PacketRecord> window) {
  const PacketRecord* prev = nullptr;
  double j = 0.0;
  std::size_t pairs = 0;
  for (const auto& p : window) {
    if (!p.received()) continue;
    if (prev) {
      const double d = (*p.recv_ts_ms - *prev->recv_ts_ms) - (p.send_ts_ms - prev->send_ts_ms);
      j += (std::abs(d) - j) / 16.0;
      ++pairs;
    }
    prev = &p;
  }
  if (pairs == 0) throw ValidationError("jitter: fewer than 2 received packets");
  return j;
}

double jitter_mean_abs(std::span<const PacketRecord> window) {
  const PacketRecord* prev = nullptr;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (const auto& p : window) {
    if (!p.received()) continue;
    if (prev) {
      sum += std::abs(p.delay_ms() - prev->delay_ms());
      ++pairs;
    }
    prev = &p;
  }
  if (pairs == 0) throw ValidationError("jitter: fewer than 2 received packets");
  return sum / static_cast<double>(pairs);
}

std::span<const PacketRecord> slice(const Trace& trace, TimeWindow window) {
  const auto& pk = trace.packets;
  auto lo = std::lower_bound(pk.begin(), pk.end(), window.start_ms,
                             [](const PacketRecord& p, double t) { return p.send_ts_ms < t; });
  auto hi = std::lower_bound(lo, pk.end(), window.end_ms,
                             [](const PacketRecord& p, double t) { return p.send_ts_ms < t; });
  return {lo, hi};
}

std::string to_string(JitterEstimator e) { return e == JitterEstimator::rfc3550 ? "rfc3550" : "mean-abs"; }

JitterEstimator jitter_estimator_from_string(const std::string& s) {
  if (s == "rfc3550") return JitterEstimator::rfc3550;
  if (s == "mean-abs") return JitterEstimator::mean_abs;
  throw ValidationError("unknown jitter estimator '" + s + "'");
}

std::vector<TimeWindow> window_layout(const Trace& trace, double window_len_s) {
  if (!(window_len_s > 0.0) || !std::isfinite(window_len_s)) throw ValidationError("window length must be > 0");
  validate(trace);
  const double len_ms = window_len_s * 1000.0;
  const double origin = trace.packets.front().send_ts_ms;
  const double span_ms = trace.packets.back().send_ts_ms - origin + nominal_interval_ms(trace);
  const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span_ms / len_ms - 1e-9)));
  std::vector<TimeWindow> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = {origin + static_cast<double>(k) * len_ms, origin + static_cast<double>(k + 1) * len_ms};
  }
  // Anything sent at or past the last boundary lands in the last window.
  out.back().end_ms = std::max(out.back().end_ms, std::nextafter(trace.packets.back().send_ts_ms, INFINITY));
  return out;
}

WindowMetrics measure_window(const Trace& trace, std::size_t index, TimeWindow span, bool partial,
                             JitterEstimator estimator) {
  WindowMetrics m;
  m.index = index;
  m.window_id = "w" + std::to_string(index);
  m.span = span;
  m.partial = partial;
  m.sample.window_id = m.window_id;

  const auto records = slice(trace, span);
  m.packet_count = records.size();
  std::size_t received = 0;
  for (const auto& p : records) received += p.received() ? 1 : 0;

  if (records.empty()) {
    m.sample.loss_pct = 100.0;
    return m;
  }
  m.expected = static_cast<std::size_t>(records.back().seq - records.front().seq + 1);
  m.lost_count = m.expected - received;
  m.sample.loss_pct = loss_rate(records);
  if (received >= 1) {
    m.sample.delay_ms = mean_delay(records);
    m.delay_available = true;
  }
  if (received >= 2) {
    m.sample.jitter_ms =
        estimator == JitterEstimator::rfc3550 ? jitter_rfc3550(records) : jitter_mean_abs(records);
    m.jitter_available = true;
  }
  return m;
}

namespace {

bool is_partial(const Trace& trace, const std::vector<TimeWindow>& layout, std::size_t k) {
  const double span_end = trace.packets.back().send_ts_ms + nominal_interval_ms(trace);
  return k + 1 == layout.size() && span_end < layout[k].end_ms - 1e-9;
}

}  // namespace

std::vector<WindowMetrics> windows_serial(const Trace& trace, const WindowOptions& options) {
  const auto layout = window_layout(trace, options.window_len_s);
  std::vector<WindowMetrics> out;
  out.reserve(layout.size());
  for (std::size_t k = 0; k < layout.size(); ++k) {
    out.push_back(measure_window(trace, k, layout[k], is_partial(trace, layout, k), options.estimator));
  }
  return out;
}

std::vector<WindowMetrics> windows(const Trace& trace, const WindowOptions& options) {
  const auto layout = window_layout(trace, options.window_len_s);
  const auto n = static_cast<std::ptrdiff_t>(layout.size());
  std::vector<WindowMetrics> out(layout.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    out[idx] = measure_window(trace, idx, layout[idx], is_partial(trace, layout, idx), options.estimator);
  }
  return out;
}

}  // namespace qoekit::trace
