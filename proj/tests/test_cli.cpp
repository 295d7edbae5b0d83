#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "cli.hpp"
#include "qoekit/io.hpp"

namespace fs = std::filesystem;
using qoekit::io::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args, const std::string& input = "", bool interactive = false) {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = qoekit::cli::run(args, {in, out, err, interactive});
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("qoekit_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string fixture(const std::string& name) { return (fs::path(QOEKIT_FIXTURES) / name).string(); }

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("ahp elicit") {
  const auto dir = scratch("elicit");
  SUBCASE("three criteria, all ones") {
    write(dir / "answers.txt", "1\n1\n1\n");
    const auto out = (dir / "e1.json").string();
    const auto r = run({"ahp", "elicit", "--criteria", "loss,delay,jitter", "--evaluator", "E1", "--out", out,
                        "--answers", (dir / "answers.txt").string()});
    REQUIRE(r.code == 0);
    CHECK(count(r.out, " vs ") == 3);
    CHECK(r.out.find("loss=0.333 delay=0.333 jitter=0.333") != std::string::npos);
    CHECK(r.out.find("CR=0.000") != std::string::npos);
    const auto doc = json::parse(qoekit::io::read_file(out));
    CHECK(doc.at("evaluator_id") == "E1");
    CHECK(doc.at("judgments").size() == 3);
  }
  SUBCASE("invalid entries re-prompt; stdin used when interactive") {
    const auto r = run({"ahp", "elicit", "--evaluator", "E2"}, "10\nabc\n5\n1/3\n3\n", true);
    REQUIRE(r.code == 0);
    CHECK(count(r.out, "invalid entry") == 2);
    CHECK(r.out.find("\"1/3\"") != std::string::npos);
  }
  SUBCASE("inconsistent answers offer a revision") {
    // delay vs jitter at 1/9 clashes with loss=3 on both; revising it to 1 is consistent.
    const auto r = run({"ahp", "elicit", "--evaluator", "E3"}, "3\n3\n1/9\n3\n1\n", true);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("Revise a pair?") != std::string::npos);
    CHECK(r.out.find("(acceptable)") != std::string::npos);
  }
  SUBCASE("declining a revision keeps the answers") {
    const auto r = run({"ahp", "elicit", "--evaluator", "E3"}, "9\n1/9\n9\nn\n", true);
    CHECK(r.code == 0);
    CHECK(r.out.find("inconsistent") != std::string::npos);
  }
  SUBCASE("non-interactive without answers aborts") {
    const auto r = run({"ahp", "elicit", "--evaluator", "E4"}, "1\n1\n1\n", false);
    CHECK(r.code == 2);
    CHECK(r.err.find("--answers") != std::string::npos);
  }
  SUBCASE("answers ending early is an I/O failure") {
    write(dir / "short.txt", "1\n");
    const auto r = run({"ahp", "elicit", "--evaluator", "E5", "--answers", (dir / "short.txt").string()});
    CHECK(r.code == 3);
  }
}

TEST_CASE("ahp weights") {
  const auto dir = scratch("weights");
  SUBCASE("seven-evaluator fixture reproduces the published weights") {
    const auto r = run({"ahp", "weights", fixture("table1_judgments"), "--out", (dir / "w.json").string(),
                        "--csv-dir", (dir / "csv").string(), "--store", (dir / "store").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("weights: loss=0.55 delay=0.25 jitter=0.20") != std::string::npos);
    CHECK(r.out.find("loss             1.00     5.74     5.48") != std::string::npos);
    CHECK(r.out.find("delay            0.95     1.00     2.48") != std::string::npos);
    CHECK(r.out.find("jitter           0.67     1.95     1.00") != std::string::npos);
    const auto doc = json::parse(qoekit::io::read_file(dir / "w.json"));
    CHECK(doc.at("inputs").size() == 7);
    CHECK(doc.at("inputs")[0].at("sha256").get<std::string>().size() == 64);
    CHECK(doc.at("model").at("criteria") == json({"loss", "delay", "jitter"}));
    CHECK(fs::exists(dir / "csv" / "table1_matrix.csv"));
    CHECK(fs::exists(dir / "csv" / "table2_weights.csv"));
    CHECK(fs::exists(dir / "store" / "weights" / "ahp-derived.json"));

    // The derived model is usable by `mos`.
    const auto m = run({"mos", "--model-file", (dir / "w.json").string(), "--model", "ahp-derived"});
    CHECK(m.code == 0);
    CHECK(m.out.find("model=ahp-derived") != std::string::npos);
  }
  SUBCASE("pre-aggregated matrix gives the same weights") {
    const auto r = run({"ahp", "weights", "--matrix", fixture("table1_matrix.csv")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("weights: loss=0.55 delay=0.25 jitter=0.20") != std::string::npos);
    CHECK(r.out.find("loss             0.38     0.66     0.61     0.55") != std::string::npos);
    CHECK(r.out.find("jitter           0.26     0.22     0.11     0.20") != std::string::npos);
  }
  SUBCASE("eigenvector and column-average agree on a consistent judgment") {
    const auto a = (dir / "a.json").string();
    const auto b = (dir / "b.json").string();
    REQUIRE(run({"ahp", "weights", fixture("consistent_judgments.json"), "--out", a}).code == 0);
    REQUIRE(run({"ahp", "weights", fixture("consistent_judgments.json"), "--method", "eigenvector", "--out", b}).code == 0);
    const auto wa = json::parse(qoekit::io::read_file(a)).at("weights");
    const auto wb = json::parse(qoekit::io::read_file(b)).at("weights");
    for (const char* c : {"loss", "delay", "jitter"}) {
      CHECK(std::abs(wa.at(c).get<double>() - wb.at(c).get<double>()) < 1e-6);
    }
  }
  SUBCASE("mismatched criteria") {
    write(dir / "other.json",
          R"({"evaluator_id":"X","criteria":["loss","delay","bw"],"judgments":[{"a":"loss","b":"delay","value":1},)"
          R"({"a":"loss","b":"bw","value":1},{"a":"delay","b":"bw","value":1}]})");
    const auto r = run({"ahp", "weights", fixture("consistent_judgments.json"), (dir / "other.json").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("different criteria") != std::string::npos);
  }
  SUBCASE("missing input is an I/O failure") {
    CHECK(run({"ahp", "weights", (dir / "nope.json").string()}).code == 3);
  }
}

TEST_CASE("mos") {
  SUBCASE("zero impairments with jitter constants zeroed") {
    const auto r = run({"mos", "--loss", "0", "--delay", "0", "--profile", fixture("g729_no_jitter.json")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("MOS_Loss=4.104 MOS_Delay=4.409 MOS_Jitter=4.409 MOS_Overall=4.242") != std::string::npos);
    CHECK(r.out.find("R_Loss=82.200") != std::string::npos);
  }
  SUBCASE("full loss floors") {
    const auto r = run({"mos", "--loss", "100"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("MOS_Loss=1.000") != std::string::npos);
  }
  SUBCASE("json output keeps full precision") {
    const auto r = run({"mos", "--delay", "100", "--json"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc.at("r").at("delay").get<double>() == doctest::Approx(90.8).epsilon(1e-12));
    CHECK(doc.at("mos").at("overall").get<double>() > 1.0);
  }
  SUBCASE("range violations and wrong model") {
    auto r = run({"mos", "--loss", "120"});
    CHECK(r.code == 2);
    CHECK(r.err.find("loss_pct") != std::string::npos);
    CHECK(run({"mos", "--delay", "-3"}).code == 2);
    CHECK(run({"mos", "--jitter-h", "0.95"}).code == 2);
    r = run({"mos", "--model", "video-network"});
    CHECK(r.code == 2);
    CHECK(r.err.find("criteria mismatch") != std::string::npos);
    CHECK(run({"mos", "--profile", "nope"}).code == 2);
    CHECK(run({"mos", "--bogus"}).code == 2);
  }
  SUBCASE("flag overrides for H and T") {
    const auto base = json::parse(run({"mos", "--json"}).out);
    const auto t_long = json::parse(run({"mos", "--json", "--jitter-t", "400"}).out);
    CHECK(t_long.at("r").at("jitter").get<double>() > base.at("r").at("jitter").get<double>());
    const auto h_high = json::parse(run({"mos", "--json", "--jitter-h", "0.9"}).out);
    CHECK(h_high.at("r").at("jitter").get<double>() < base.at("r").at("jitter").get<double>());
  }
  SUBCASE("config precedence: flags > config > defaults") {
    const auto dir = scratch("config");
    write(dir / "cfg.json", R"({"profile":")" + fixture("g729_no_jitter.json") +
                                R"(","models":[{"name":"loss-only","criteria":["loss","delay","jitter"],"weights":[1,0,0]}],"model":"loss-only"})");
    auto r = run({"mos", "--config", (dir / "cfg.json").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("model=loss-only profile=g729-no-jitter") != std::string::npos);
    CHECK(r.out.find("MOS_Overall=4.104") != std::string::npos);
    r = run({"mos", "--config", (dir / "cfg.json").string(), "--model", "paper-5g-ahp", "--profile", "g729"});
    CHECK(r.out.find("model=paper-5g-ahp profile=g729\n") != std::string::npos);
  }
  SUBCASE("profile directory from the environment") {
    const auto dir = scratch("profdir");
    auto doc = json::parse(qoekit::io::read_file(fixture("g729_no_jitter.json")));
    doc["name"] = "envprof";
    write(dir / "envprof.json", doc.dump());
    setenv("QOEKIT_PROFILE_DIR", dir.c_str(), 1);
    const auto r = run({"mos", "--profile", "envprof"});
    const auto listed = run({"models", "list"});
    unsetenv("QOEKIT_PROFILE_DIR");
    CHECK(r.code == 0);
    CHECK(r.out.find("profile=envprof") != std::string::npos);
    CHECK(listed.out.find("envprof") != std::string::npos);
  }
}

TEST_CASE("models list") {
  const auto r = run({"models", "list"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("paper-5g-ahp [mos-5pt] loss=0.55 delay=0.25 jitter=0.20") != std::string::npos);
  CHECK(r.out.find("video-network [normalized-score] loss=0.26 jitter=0.55 throughput=0.07 ars=0.12") !=
        std::string::npos);
  CHECK(r.out.find("video-application [normalized-score] bit_rate=0.26 frame_rate=0.63 resolution=0.11") !=
        std::string::npos);
  CHECK(r.out.find("g729 r0=93.2 A=11 B=40 C=10 H=0.6 T=40 K=30") != std::string::npos);
}

TEST_CASE("trace gen") {
  const auto dir = scratch("gen");
  SUBCASE("fixed seed twice gives identical files") {
    write(dir / "spec.json",
          R"({"loss_prob":0.1,"base_delay_ms":80,"jitter":{"model":"uniform","a_ms":5},"duration_s":20,"seed":42})");
    REQUIRE(run({"trace", "gen", (dir / "spec.json").string(), "--out", (dir / "a.csv").string()}).code == 0);
    REQUIRE(run({"trace", "gen", (dir / "spec.json").string(), "--out", (dir / "b.csv").string()}).code == 0);
    CHECK(qoekit::io::read_file(dir / "a.csv") == qoekit::io::read_file(dir / "b.csv"));
  }
  SUBCASE("loss_prob 1 leaves every recv field empty") {
    write(dir / "spec.json", R"({"loss_prob":1.0,"base_delay_ms":80,"duration_s":2,"seed":1})");
    const auto r = run({"trace", "gen", (dir / "spec.json").string(), "--out", (dir / "l.csv").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("loss_pct=100.000") != std::string::npos);
    std::istringstream in(qoekit::io::read_file(dir / "l.csv"));
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("seq", 0) == 0) continue;
      CHECK(line.back() == ',');
      ++rows;
    }
    CHECK(rows == 100);
  }
  SUBCASE("pareto shape outside [0.55, 0.9] is rejected by name") {
    write(dir / "spec.json",
          R"({"loss_prob":0,"base_delay_ms":80,"jitter":{"model":"pareto","shape":0.95,"scale_ms":2},"duration_s":2,"seed":1})");
    const auto r = run({"trace", "gen", (dir / "spec.json").string(), "--out", (dir / "p.csv").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("jitter.shape") != std::string::npos);
  }
}

TEST_CASE("trace analyze") {
  const auto dir = scratch("analyze");
  SUBCASE("clean trace matches the point scorer") {
    REQUIRE(run({"trace", "gen", fixture("clean_trace_spec.json"), "--out", (dir / "t.csv").string()}).code == 0);
    const auto r = run({"trace", "analyze", (dir / "t.csv").string(), "--window", "10", "--out",
                        (dir / "r.json").string(), "--csv", (dir / "r.csv").string()});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(qoekit::io::read_file(dir / "r.json"));
    REQUIRE(doc.at("windows").size() == 3);
    const auto point = json::parse(run({"mos", "--loss", "0", "--delay", "100", "--jitter", "0", "--json"}).out);
    for (const auto& w : doc.at("windows")) {
      CHECK(w.at("mos_overall").get<double>() == point.at("mos").at("overall").get<double>());
      CHECK(w.at("mos_jitter").get<double>() == point.at("mos").at("jitter").get<double>());
    }
    CHECK(doc.at("input").at("sha256").get<std::string>().size() == 64);
    CHECK(qoekit::io::read_file(dir / "r.csv").rfind("window_id,", 0) == 0);
  }
  SUBCASE("fully lost window scores 1.0") {
    std::string csv = "seq,send_ts_ms,recv_ts_ms\n";
    for (int i = 0; i < 1500; ++i) {
      const int send = 20 * i;
      csv += std::to_string(i) + "," + std::to_string(send) + ",";
      if (send < 10000 || send >= 20000) csv += std::to_string(send + 100);
      csv += "\n";
    }
    write(dir / "hole.csv", csv);
    const auto r = run({"trace", "analyze", (dir / "hole.csv").string(), "--out", (dir / "hole.json").string()});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(qoekit::io::read_file(dir / "hole.json"));
    REQUIRE(doc.at("windows").size() == 3);
    CHECK(doc.at("windows")[1].at("mos_overall").get<double>() == 1.0);
    CHECK(doc.at("windows")[1].at("delay_ms").is_null());
    std::regex row(R"(w1\s+100\.000\s+-\s+-\s+1\.000\s+1\.000\s+1\.000\s+1\.000)");
    CHECK(std::regex_search(r.out, row));
  }
  SUBCASE("errors") {
    write(dir / "bad.csv", "seq,send_ts_ms,recv_ts_ms\n0,0,100\n1,20,oops\n");
    auto r = run({"trace", "analyze", (dir / "bad.csv").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("bad.csv:3:") != std::string::npos);
    write(dir / "empty.csv", "seq,send_ts_ms,recv_ts_ms\n");
    r = run({"trace", "analyze", (dir / "empty.csv").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("empty") != std::string::npos);
    CHECK(run({"trace", "analyze", (dir / "missing.csv").string()}).code == 3);
    CHECK(run({"trace", "analyze", (dir / "bad.csv").string(), "--model", "video-application"}).code == 2);
  }
  SUBCASE("estimator and window from config; flags win") {
    REQUIRE(run({"trace", "gen", fixture("clean_trace_spec.json"), "--out", (dir / "t.csv").string()}).code == 0);
    write(dir / "cfg.json", R"({"window_s": 5, "jitter_estimator": "mean-abs"})");
    auto r = run({"trace", "analyze", (dir / "t.csv").string(), "--config", (dir / "cfg.json").string(), "--out",
                  (dir / "c.json").string()});
    REQUIRE(r.code == 0);
    auto doc = json::parse(qoekit::io::read_file(dir / "c.json"));
    CHECK(doc.at("windows").size() == 6);
    CHECK(doc.at("jitter_estimator") == "mean-abs");
    r = run({"trace", "analyze", (dir / "t.csv").string(), "--config", (dir / "cfg.json").string(), "--window", "15",
             "--out", (dir / "c.json").string()});
    doc = json::parse(qoekit::io::read_file(dir / "c.json"));
    CHECK(doc.at("windows").size() == 2);
  }
}
