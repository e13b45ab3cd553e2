#include <doctest.h>
#include <httplib.h>

#include <json.hpp>

#include "galois/api.hpp"
#include "galois/context_io.hpp"
#include "galois/implications.hpp"
#include "http_server.hpp"

using namespace galois;
using nlohmann::json;

namespace {

app::Workspace small_workspace() {
  SyntheticLeagueOptions s;
  s.teams = 8;
  s.seasons = 2;
  s.seed = 5;
  return app::Workspace(synthesize_league(s).data, baseline_attributes());
}

const api::Service& service() {
  static const api::Service svc(small_workspace(), app::RunConfig{});
  return svc;
}

std::string some_match() { return service().workspace().data().matches()[60].id(); }

api::Response get(const std::string& path, std::map<std::string, std::string> query = {}) {
  return service().handle({"GET", path, std::move(query), ""});
}

api::Response post(const std::string& path, const json& body) {
  return service().handle({"POST", path, {}, body.dump()});
}

}  // namespace

TEST_CASE("read endpoints") {
  const auto summary = get("/api/summary");
  CHECK(summary.status == 200);
  const auto doc = json::parse(summary.body);
  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["matches"] == 112);

  const auto attrs = json::parse(get("/api/attributes").body);
  CHECK(attrs["labels"].size() == baseline_attributes().size());

  const auto strict = get("/api/strictness");
  CHECK(strict.status == 200);
  CHECK(json::parse(strict.body).contains("schema_version"));
}

TEST_CASE("lattice and rules match the shared export") {
  const auto id = some_match();
  const auto& ws = service().workspace();
  SelectionPolicy policy;

  const auto lattice = get("/api/lattice", {{"match", id}});
  REQUIRE(lattice.status == 200);
  CHECK(lattice.body == app::export_lattice(app::match_context(ws, id, policy)).json);

  const auto bare = get("/api/lattice", {{"match", id}, {"exclude_outcomes", "1"}});
  const auto attrs = json::parse(bare.body)["attributes"];
  for (const auto& a : attrs) CHECK(a != "1");

  const auto rules = get("/api/rules", {{"match", id}, {"gamma", "0.8"}});
  REQUIRE(rules.status == 200);
  CHECK(rules.body == app::rules_json(app::match_context(ws, id, policy), Rational(4, 5)));
}

TEST_CASE("errors map to status codes") {
  const auto id = some_match();
  CHECK(get("/api/nothing").status == 404);
  CHECK(get("/api/lattice", {{"match", "2006-07/1/Nobody/Else"}}).status == 404);
  CHECK(get("/api/rules", {{"match", id}, {"gamma", "1.5"}}).status == 422);
  CHECK(get("/api/rules", {{"match", id}, {"gamma", "abc"}}).status == 422);
  CHECK(get("/api/rules", {{"match", id}, {"gamma", "0"}}).status == 422);
  CHECK(get("/api/rules").status == 422);
  CHECK(get("/api/lattice", {{"match", id}, {"lookback", "x"}}).status == 422);
  CHECK(get("/api/lattice", {{"match", id}, {"subset", "NOT_A_LABEL"}}).status == 422);
  CHECK(service().handle({"POST", "/api/forecast", {}, "{not json"}).status == 400);
  CHECK(service().handle({"DELETE", "/api/summary", {}, ""}).status == 405);
  CHECK(post("/api/attributes/evaluate", json::object()).status == 422);
  CHECK(post("/api/attributes/evaluate", {{"attributes", json::array({{{"kind", 99}}})}}).status == 422);

  const auto err = json::parse(get("/api/nothing").body);
  CHECK(err["status"] == 404);
  CHECK(err.contains("error"));
}

TEST_CASE("editing attributes re-mines the selection") {
  const auto id = some_match();
  const auto edited = strict_attributes();
  const json body = {{"attributes", attributes_to_json(edited)}, {"match", id}, {"gamma", "7/10"}};
  const auto r = post("/api/attributes/evaluate", body);
  REQUIRE(r.status == 200);
  const auto doc = json::parse(r.body);

  const app::Workspace ws(service().workspace().data(), edited);
  const auto ctx = app::match_context(ws, id, SelectionPolicy{});
  CHECK(doc["rule_count"] == mine_association_rules(ctx, Rational(7, 10), Rational(0)).size());
  CHECK(doc["ranking"].size() == edited.size());
}

TEST_CASE("forecast endpoint agrees with the shared path") {
  const auto id = some_match();
  const auto r = post("/api/forecast", {{"match", id}, {"home_reduction", 1.0}});
  REQUIRE(r.status == 200);
  auto options = pipeline_forecast_options();
  options.home_reduction = 1.0;
  CHECK(r.body == app::forecast_match_json(service().workspace(), id, SelectionPolicy{}, options));
  CHECK(post("/api/forecast", {{"match", id}, {"home_reduction", "2"}}).status == 422);
  CHECK(post("/api/forecast", {{"match", id}, {"mode", "sideways"}}).status == 422);
}

TEST_CASE("live server over loopback") {
  http::BackgroundServer server(service());
  REQUIRE(server.port() > 0);
  httplib::Client client("127.0.0.1", server.port());
  const auto id = some_match();

  auto summary = client.Get("/api/summary");
  REQUIRE(summary);
  CHECK(summary->status == 200);
  CHECK(summary->body == get("/api/summary").body);

  httplib::Params params{{"match", id}};
  auto lattice = client.Get("/api/lattice", params, httplib::Headers{});
  REQUIRE(lattice);
  CHECK(lattice->status == 200);
  CHECK(lattice->body == get("/api/lattice", {{"match", id}}).body);

  auto bad = client.Get("/api/rules", httplib::Params{{"match", id}, {"gamma", "7"}}, httplib::Headers{});
  REQUIRE(bad);
  CHECK(bad->status == 422);

  auto missing = client.Get("/api/lattice", httplib::Params{{"match", "1999-00/1/A/B"}}, httplib::Headers{});
  REQUIRE(missing);
  CHECK(missing->status == 404);

  auto forecast = client.Post("/api/forecast", json{{"match", id}}.dump(), "application/json");
  REQUIRE(forecast);
  CHECK(forecast->status == 200);
  CHECK(json::parse(forecast->body)["forecasts"][0]["match"] == id);

  server.stop();
}
