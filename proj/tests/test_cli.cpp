#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

namespace {

using nlohmann::json;

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run(const std::string& args) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path();
  const auto out_path = dir / ("upm_cli_out_" + std::to_string(++counter));
  const auto err_path = dir / ("upm_cli_err_" + std::to_string(counter));
  const std::string cmd = std::string("\"") + UPM_CLI_PATH + "\" " + args +
                          " > \"" + out_path.string() + "\" 2> \"" +
                          err_path.string() + "\"";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return r;
}

std::string data(const std::string& name) {
  return std::string("\"") + UPM_DATA_DIR + "/" + name + "\"";
}

const std::string kLog = data("running_example.xes");
const std::string kModel = data("running_example_model.pnml");

}  // namespace

TEST_CASE("cli: stats") {
  const RunResult r = run("stats " + kLog);
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["traces"] == 1);
  CHECK(j["events"] == 4);
  CHECK(j["mean_trace_length"] == 4.0);
  CHECK(j["uncertain_events"] == 3);
  CHECK(j["uncertain_traces"] == 1);
  CHECK(j["variants"] == 1);
  CHECK(j["activities"]["Adm"]["min"] == 1);
  CHECK(j["activities"]["NightSweats"]["min"] == 0);
  CHECK(j["end_activities"]["Adm"]["max"] == 1);
}

TEST_CASE("cli: realizations") {
  const RunResult r = run("realizations " + kLog + " --case ID192");
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["count"] == 10);
  REQUIRE(j["realizations"].size() == 10);
  CHECK(j["realizations"][0] == json::array({"PrTP", "Splenomeg", "Adm"}));

  const RunResult text = run("realizations " + kLog + " --index 0 --format text");
  REQUIRE(text.status == 0);
  std::istringstream lines(text.out);
  std::string line;
  int n = 0;
  std::string first;
  while (std::getline(lines, line)) {
    if (n == 0) first = line;
    ++n;
  }
  CHECK(n == 10);
  CHECK(first == "PrTP Splenomeg Adm");
}

TEST_CASE("cli: graph") {
  const RunResult dot = run("graph " + kLog + " --index 0 --format dot");
  REQUIRE(dot.status == 0);
  CHECK(dot.out.find("style=dashed") != std::string::npos);
  CHECK(dot.out.find("{PrTP, SecTP}") != std::string::npos);

  const RunResult j = run("graph " + kLog + " --case ID192");
  REQUIRE(j.status == 0);
  const json g = json::parse(j.out);
  CHECK(g["nodes"].size() == 4);
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& e : g["edges"]) {
    edges.insert({e[0].get<std::string>(), e[1].get<std::string>()});
  }
  const std::set<std::pair<std::string, std::string>> expected{
      {"e1", "e2"}, {"e2", "e4"}, {"e3", "e4"}};
  CHECK(edges == expected);
}

TEST_CASE("cli: behavior net as pnml") {
  const RunResult r = run("net " + kLog + " --index 0");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("<pnml") != std::string::npos);
  CHECK(r.out.find("skip:e1") != std::string::npos);
  CHECK(r.out.find("finalmarkings") != std::string::npos);
  const RunResult dot = run("net " + kLog + " --index 0 --format dot");
  REQUIRE(dot.status == 0);
  CHECK(dot.out.find("digraph") != std::string::npos);
}

TEST_CASE("cli: align one trace and the whole log") {
  const RunResult one = run("align " + kLog + " " + kModel + " --case ID192");
  REQUIRE(one.status == 0);
  const json b = json::parse(one.out);
  CHECK(b["lower"] == 0);
  CHECK(b["upper"] == 4);
  CHECK(b["best_alignment"]["cost"] == 0);

  const RunResult opt =
      run("align " + kLog + " " + kModel + " --index 0 --mode optimized");
  REQUIRE(opt.status == 0);
  const json ob = json::parse(opt.out);
  CHECK(ob["lower"] == 0);
  CHECK_FALSE(ob.contains("upper"));

  const RunResult whole = run("align " + kLog + " " + kModel + " --jobs 2");
  REQUIRE(whole.status == 0);
  const json report = json::parse(whole.out);
  REQUIRE(report.size() == 1);
  CHECK(report[0]["case"] == "ID192");
  CHECK(report[0]["status"] == "ok");
  CHECK(report[0]["lower"] == 0);
  CHECK(report[0]["upper"] == 4);
}

TEST_CASE("cli: udfg") {
  const RunResult r = run("udfg " + kLog);
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["activities"]["Splenomeg"]["min"] == 1);
  CHECK(j["edges"].size() == 11);
  CHECK(j["skipped_cases"].empty());
  CHECK(j["end_activities"]["Adm"]["min"] == 1);

  const RunResult filtered = run("udfg " + kLog + " --act-threshold 1 --semantics min");
  REQUIRE(filtered.status == 0);
  const json f = json::parse(filtered.out);
  CHECK(f["activities"].size() == 2);  // only Splenomeg and Adm are certain

  const RunResult dot = run("udfg " + kLog + " --format dot");
  REQUIRE(dot.status == 0);
  CHECK(dot.out.find("0/1") != std::string::npos);
}

TEST_CASE("cli: gantt") {
  const RunResult r = run("gantt " + kLog + " --case ID192");
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["case"] == "ID192");
  REQUIRE(j["rows"].size() == 4);
  CHECK(j["rows"][0]["event"] == "e3");
  CHECK(j["rows"][0]["from"] == "2021-07-04T00:00:00.000+00:00");
  CHECK(j["rows"][0]["to"] == "2021-07-10T00:00:00.000+00:00");
  CHECK(j["rows"][1]["indeterminate"] == true);
}

TEST_CASE("cli: simulate is reproducible") {
  const std::string flags = " --p-activity 1 --extra-labels 1 --dictionary X,Y"
                            " --p-timestamp 1 --half-width-ms 1000"
                            " --p-indeterminate 1";
  const RunResult a = run("simulate " + kLog + " --seed 5" + flags);
  const RunResult b = run("simulate " + kLog + " --seed 5" + flags);
  const RunResult c = run("simulate " + kLog + " --seed 6" + flags);
  REQUIRE(a.status == 0);
  REQUIRE(b.status == 0);
  REQUIRE(c.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(a.out.find("uncertainty:indeterminacy") != std::string::npos);
}

TEST_CASE("cli: output file") {
  const auto path = std::filesystem::temp_directory_path() / "upm_cli_o.json";
  const RunResult r = run("stats " + kLog + " -o \"" + path.string() + "\"");
  REQUIRE(r.status == 0);
  CHECK(r.out.empty());
  const json j = json::parse(slurp(path));
  CHECK(j["traces"] == 1);
  std::filesystem::remove(path);
}

TEST_CASE("cli: usage errors exit with 2") {
  CHECK(run("").status == 2);
  CHECK(run("stats").status == 2);
  CHECK(run("align " + kLog).status == 2);
  CHECK(run("stats --no-such-flag " + kLog).status == 2);
  CHECK(run("graph " + kLog + " --case ID192 --index 0").status == 2);
  CHECK(run("align " + kLog + " " + kModel + " --mode sideways").status == 2);
}

TEST_CASE("cli: domain errors exit with 1 and a json report") {
  const RunResult missing = run("stats \"/no/such/file.xes\"");
  CHECK(missing.status == 1);
  CHECK(json::parse(missing.err)["error"] == "io_error");

  const RunResult not_found = run("graph " + kLog + " --case nope");
  CHECK(not_found.status == 1);
  CHECK(json::parse(not_found.err)["error"] == "trace_not_found");

  const RunResult unselected = run("realizations " + kLog);
  CHECK(unselected.status == 1);
  CHECK(json::parse(unselected.err)["error"] == "trace_not_found");
}

TEST_CASE("cli: the environment cap") {
  REQUIRE(setenv("UNCERTAIN_PROC_CAP", "1", 1) == 0);
  const RunResult capped = run("realizations " + kLog + " --case ID192");
  CHECK(capped.status == 1);
  CHECK(json::parse(capped.err)["error"] == "cap_exceeded");

  const RunResult flag_wins = run("realizations " + kLog + " --case ID192 --cap 100");
  CHECK(flag_wins.status == 0);

  REQUIRE(setenv("UNCERTAIN_PROC_CAP", "badger", 1) == 0);
  const RunResult invalid = run("stats " + kLog);
  CHECK(invalid.status == 2);
  const RunResult override_still_ok =
      run("realizations " + kLog + " --case ID192 --cap 100");
  CHECK(override_still_ok.status == 0);
  REQUIRE(unsetenv("UNCERTAIN_PROC_CAP") == 0);
}
