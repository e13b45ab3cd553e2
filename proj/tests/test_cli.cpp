#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "galois/api.hpp"
#include "galois/context_io.hpp"

using namespace galois;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(GALOIS_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("galois_cli_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("command line round trip") {
  TempDir tmp;
  const auto dir = tmp.path.string();
  REQUIRE(run("synth --teams 8 --seasons 2 --seed 5 --out " + dir).status == 0);
  const std::string data = " --data " + dir + "/matches.csv --budgets " + dir + "/budgets.csv";

  const auto summary = run("ingest" + data);
  REQUIRE(summary.status == 0);
  CHECK(json::parse(summary.out)["matches"] == 112);

  // Same bytes as the API for the same match.
  app::RunConfig config;
  config.data_path = dir + "/matches.csv";
  config.budgets_path = dir + "/budgets.csv";
  const api::Service service(app::Workspace::load(config), config);
  const auto id = service.workspace().data().matches()[60].id();

  REQUIRE(run("lattice" + data + " --match " + id + " --out " + dir + "/lat").status == 0);
  CHECK(slurp(tmp.path / "lat.json") == service.handle({"GET", "/api/lattice", {{"match", id}}, ""}).body);
  CHECK(slurp(tmp.path / "lat.dot").starts_with("digraph lattice {"));

  const auto rules = run("mine" + data + " --match " + id + " --gamma 0.8");
  REQUIRE(rules.status == 0);
  CHECK(rules.out == service.handle({"GET", "/api/rules", {{"match", id}, {"gamma", "0.8"}}, ""}).body);

  const auto forecast = run("forecast" + data + " --match " + id);
  REQUIRE(forecast.status == 0);
  CHECK(forecast.out == service.handle({"POST", "/api/forecast", {}, json{{"match", id}}.dump()}).body);

  const auto week = run("forecast" + data + " --week 2007-08/3");
  REQUIRE(week.status == 0);
  CHECK(json::parse(week.out)["forecasts"].size() == 4);

  // Oracle predictor always beats the baselines: exit 0 and all three report files.
  const auto eval = run("evaluate" + data + " --predictor oracle --trials 50 --out " + dir + "/rep");
  CHECK(eval.status == 0);
  CHECK(json::parse(slurp(tmp.path / "rep.json"))["schema_version"] == kSchemaVersion);
  CHECK(fs::exists(tmp.path / "rep.csv"));

  REQUIRE(run("export-context" + data + " --out " + dir + "/monster.cxt").status == 0);
  const auto monster = load_context(dir + "/monster.cxt");
  CHECK(monster.object_count() == 112);
  CHECK(monster == service.workspace().monster().context);
}

TEST_CASE("command line errors") {
  TempDir tmp;
  const auto dir = tmp.path.string();
  CHECK(run("ingest --data " + dir + "/absent.csv").status == 2);
  {
    std::ofstream bad(tmp.path / "bad.csv");
    bad << "season,week,home,away,home_goals,away_goals,division\n2009-10,1,A,A,1,0,1\n";
  }
  CHECK(run("ingest --data " + dir + "/bad.csv").status == 2);
  REQUIRE(run("synth --teams 4 --seasons 1 --out " + dir).status == 0);
  const std::string data = " --data " + dir + "/matches.csv --budgets " + dir + "/budgets.csv";
  CHECK(run("mine" + data + " --match 2006-07/1/Team01/Team02 --gamma 3").status == 2);
  CHECK(run("mine" + data + " --match 2006-07/1/Nobody/Team02").status == 2);
  CHECK(run("forecast" + data + " --week 2099-00/1").status == 2);
  CHECK(run("lattice" + data).status == 2);
  CHECK(run("nonsense").status != 0);
  CHECK(run("mine" + data + " --match 2006-07/1/Team01/Team02 --subset NOT_A_LABEL").status == 2);
}

TEST_CASE("malformed row reports its line") {
  TempDir tmp;
  {
    std::ofstream bad(tmp.path / "m.csv");
    bad << "season,week,home,away,home_goals,away_goals,division\n2009-10,1,A,B,1,0,1\n2009-10,1,C,D,x,0,1\n";
  }
  const std::string cmd = std::string(GALOIS_CLI) + " ingest --data " + (tmp.path / "m.csv").string() + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[1024];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  CHECK(WEXITSTATUS(pclose(pipe)) == 2);
  CHECK(out.find("line 3") != std::string::npos);
}

TEST_CASE("lattice exports") {
  TempDir tmp;
  const auto dir = tmp.path.string();
  {
    std::ofstream cxt(tmp.path / "diag.cxt");
    cxt << "B\n\n2\n2\n\no1\no2\na1\na2\nX.\n.X\n";
  }
  REQUIRE(run("lattice --context " + dir + "/diag.cxt --out " + dir + "/diag").status == 0);
  const auto dot = slurp(tmp.path / "diag.dot");
  const auto doc = json::parse(slurp(tmp.path / "diag.json"));
  CHECK(doc["concepts"].size() == 4);
  CHECK(doc["edges"].size() == 4);
  std::size_t arrows = 0;
  for (std::size_t at = 0; (at = dot.find(" -> ", at)) != std::string::npos; ++at) ++arrows;
  CHECK(arrows == 4);

  REQUIRE(run("synth --teams 4 --seasons 1 --out " + dir).status == 0);
  std::ifstream csv(tmp.path / "matches.csv");
  std::string line, last;
  while (std::getline(csv, line))
    if (!line.empty()) last = line;
  std::vector<std::string> f;
  std::stringstream fields(last);
  for (std::string cell; std::getline(fields, cell, ',');) f.push_back(cell);
  REQUIRE(f.size() == 7);
  const auto id = f[0] + "/" + f[1] + "/" + f[2] + "/" + f[3];
  const auto bare = run("lattice --data " + dir + "/matches.csv --budgets " + dir + "/budgets.csv --match " + id +
                        " --subset none --exclude-outcomes --format dot");
  REQUIRE(bare.status == 0);
  CHECK(bare.out.find("c0 [") != std::string::npos);
  CHECK(bare.out.find("c1 [") == std::string::npos);
}
