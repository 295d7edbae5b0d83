#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qoekit/error.hpp"
#include "qoekit/io.hpp"

namespace qoekit::io {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
  return buf.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename onto '" + path.string() + "'");
  }
}

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw IoError("number formatting failed");
  return {buf, end};
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s.size() > 1 && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
bool parse_value(std::string_view field, T& out) {
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

[[noreturn]] void fail_line(std::size_t line, const std::string& source, const std::string& why) {
  throw ValidationError((source.empty() ? std::string("trace") : source) + ":" + std::to_string(line) + ": " + why);
}

}  // namespace

trace::Trace parse_trace_csv(std::istream& in, const std::string& source) {
  trace::Trace t;
  t.source = source;
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      constexpr std::string_view key = "interval_ms=";
      if (body.substr(0, key.size()) == key) {
        double v = 0.0;
        if (!parse_value(trim(body.substr(key.size())), v) || !(v >= 0.0)) fail_line(line_no, source, "bad interval_ms");
        t.interval_ms = v;
      }
      continue;
    }
    const auto fields = split(line, ',');
    if (!have_header) {
      if (fields.size() != 3 || fields[0] != "seq" || fields[1] != "send_ts_ms" || fields[2] != "recv_ts_ms") {
        fail_line(line_no, source, "expected header 'seq,send_ts_ms,recv_ts_ms'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != 3) fail_line(line_no, source, "expected 3 fields, got " + std::to_string(fields.size()));
    trace::PacketRecord p;
    if (!parse_value(fields[0], p.seq)) fail_line(line_no, source, "bad seq '" + std::string(fields[0]) + "'");
    if (!parse_value(fields[1], p.send_ts_ms) || !std::isfinite(p.send_ts_ms)) {
      fail_line(line_no, source, "bad send_ts_ms '" + std::string(fields[1]) + "'");
    }
    if (!fields[2].empty()) {
      double recv = 0.0;
      if (!parse_value(fields[2], recv) || !std::isfinite(recv)) {
        fail_line(line_no, source, "bad recv_ts_ms '" + std::string(fields[2]) + "'");
      }
      if (recv < p.send_ts_ms) fail_line(line_no, source, "recv_ts_ms precedes send_ts_ms");
      p.recv_ts_ms = recv;
    }
    if (!t.packets.empty()) {
      if (p.seq <= t.packets.back().seq) fail_line(line_no, source, "seq not strictly increasing");
      if (p.send_ts_ms < t.packets.back().send_ts_ms) fail_line(line_no, source, "send_ts_ms goes backwards");
    }
    t.packets.push_back(p);
  }
  if (!have_header) throw ValidationError((source.empty() ? std::string("trace") : source) + ": missing header");
  if (t.packets.empty()) throw ValidationError((source.empty() ? std::string("trace") : source) + ": trace is empty");
  return t;
}

trace::Trace load_trace(const fs::path& path) {
  std::istringstream in(read_file(path));
  return parse_trace_csv(in, path.filename().string());
}

std::string trace_to_csv(const trace::Trace& t) {
  std::string out;
  out.reserve(t.packets.size() * 24 + 64);
  if (t.interval_ms > 0.0) out += "# interval_ms=" + format_number(t.interval_ms) + "\n";
  out += "seq,send_ts_ms,recv_ts_ms\n";
  for (const auto& p : t.packets) {
    out += std::to_string(p.seq);
    out += ',';
    out += format_number(p.send_ts_ms);
    out += ',';
    if (p.recv_ts_ms) out += format_number(*p.recv_ts_ms);
    out += '\n';
  }
  return out;
}

}  // namespace qoekit::io
