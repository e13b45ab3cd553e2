#include "galois/app.hpp"

#include <cstdlib>
#include <filesystem>

#include "galois/context_io.hpp"
#include "galois/errors.hpp"

namespace galois::app {

using nlohmann::json;

std::string data_root() {
  const char* env = std::getenv("GALOIS_DATA_DIR");
  return env && *env ? env : ".";
}

RunConfig RunConfig::defaults() {
  RunConfig c;
  const std::filesystem::path root = data_root();
  c.data_path = (root / "matches.csv").string();
  if (std::filesystem::exists(root / "budgets.csv")) c.budgets_path = (root / "budgets.csv").string();
  return c;
}

Timestamp parse_week(const std::string& text) {
  const auto sep = text.find_last_of("/:");
  if (sep == std::string::npos) throw ConfigError("expected SEASON/WEEK, got '" + text + "'");
  Timestamp t;
  t.season = parse_season(text.substr(0, sep));
  try {
    std::size_t used = 0;
    t.week = std::stoi(text.substr(sep + 1), &used);
    if (used != text.size() - sep - 1 || t.week < 1) throw std::invalid_argument("week");
  } catch (const std::exception&) {
    throw ConfigError("invalid week in '" + text + "'");
  }
  return t;
}

std::vector<std::string> parse_subset(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty() || text == "none") return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(',', start);
    const auto item = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!item.empty()) out.push_back(item);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

Workspace::Workspace(Dataset data, AttributeSetConfig specs)
    : data_(std::move(data)), specs_(std::move(specs)), monster_(build_monster(data_, specs_)) {}

Workspace Workspace::load(const RunConfig& config) {
  auto data = ingest(config.data_path, config.budgets_path);
  auto specs = config.attributes_path.empty() ? baseline_attributes() : load_attributes(config.attributes_path);
  return Workspace(std::move(data), std::move(specs));
}

FormalContext match_context(const Workspace& ws, const std::string& match_id, const SelectionPolicy& policy,
                            bool exclude_outcomes) {
  const auto selection = select_context(ws.data(), ws.monster(), ws.match(match_id), policy);
  if (!exclude_outcomes) return selection.context;
  std::vector<std::size_t> rows(selection.context.object_count());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  std::vector<std::size_t> cols(selection.context.attribute_count() - 3);
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  return selection.context.subcontext(rows, cols);
}

LatticeExport export_lattice(const FormalContext& ctx) {
  const auto lattice = enumerate_concepts(ctx);
  return {dump_json(lattice_to_json(ctx, lattice)), lattice_to_dot(ctx, lattice), lattice.size(), lattice.edge_count()};
}

std::string rules_json(const FormalContext& ctx, const Rational& gamma, const Rational& min_support) {
  const auto rules = mine_association_rules(ctx, gamma, min_support);
  return dump_json(json{{"schema_version", kSchemaVersion},
                        {"context", ctx.fingerprint()},
                        {"min_confidence", to_string(gamma)},
                        {"min_support", to_string(min_support)},
                        {"rules", rules_to_json(ctx, rules)}});
}

std::string rules_text(const FormalContext& ctx, const Rational& gamma, const Rational& min_support) {
  return rules_to_text(ctx, mine_association_rules(ctx, gamma, min_support));
}

json summary_json(const Dataset& data) {
  const auto s = summarize(data);
  return json{{"schema_version", kSchemaVersion},
              {"matches", s.matches},
              {"teams", s.teams},
              {"budgets", s.budgets},
              {"seasons", s.seasons},
              {"outcomes", s.outcomes}};
}

json strictness_json(const MonsterContext& monster) {
  json list = json::array();
  for (const auto& e : strictness_ranking(monster))
    list.push_back({{"label", e.label}, {"support", to_string(e.support)}, {"support_value", to_double(e.support)}});
  return json{{"schema_version", kSchemaVersion}, {"objects", monster.context.object_count()}, {"ranking", list}};
}

std::string forecast_match_json(const Workspace& ws, const std::string& match_id, const SelectionPolicy& policy,
                                const ForecastOptions& options) {
  return dump_json(forecasts_to_json({forecast_one(ws.data(), ws.monster(), ws.match(match_id), policy, options)}));
}

std::string forecast_weeks_json(const Workspace& ws, const std::vector<Timestamp>& weeks, const SelectionPolicy& policy,
                                const ForecastOptions& options) {
  return dump_json(forecasts_to_json(forecast_weeks(ws.data(), ws.monster(), weeks, policy, options)));
}

}  // namespace galois::app
