// galois: command-line front end.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "galois/api.hpp"
#include "galois/app.hpp"
#include "galois/context_io.hpp"
#include "galois/errors.hpp"
#include "http_server.hpp"

using namespace galois;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBaselinesNotBeaten = 1;
constexpr int kExitError = 2;

struct Options {
  std::string data;
  std::string budgets;
  std::string attributes;
  int lookback = 38;
  std::string gamma = "7/10";
  std::string mode = "min-product";
  double home_reduction = 0.85;
  std::uint64_t seed = 20091031;
  std::string out;

  std::string match;
  std::string context;
  std::string subset;
  bool subset_given = false;
  bool exclude_outcomes = false;
  std::string format;
  std::string min_support = "0";
  std::string week;
  std::string season;
  std::string from_season;
  std::size_t trials = 1000;
  std::string predictor = "pipeline";
  std::string votes;
  std::size_t pool_size = 15;
  std::string host = "127.0.0.1";
  int port = 8080;
  int teams = 20;
  int seasons = 4;
  int first_season = 2006;
};

void add_data_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--data", o.data, "Matches CSV (default $GALOIS_DATA_DIR/matches.csv)");
  cmd->add_option("--budgets", o.budgets, "Budgets CSV (default $GALOIS_DATA_DIR/budgets.csv if present)");
  cmd->add_option("--attributes", o.attributes, "Attribute-set JSON (default: built-in baseline)");
}

void add_policy_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--lookback", o.lookback, "Weeks of history per selection")->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "Minimum rule confidence, e.g. 0.7 or 7/10")->capture_default_str();
  cmd->add_option("--subset", o.subset, "Comma-separated attribute labels, or 'none'")->each([&o](const std::string&) {
    o.subset_given = true;
  });
}

void add_inference_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode", o.mode, "min-product | product-product")->capture_default_str();
  cmd->add_option("--home-reduction", o.home_reduction, "Factor applied to the home-win confidence")
      ->capture_default_str();
}

app::RunConfig run_config(const Options& o) {
  auto c = app::RunConfig::defaults();
  if (!o.data.empty()) c.data_path = o.data;
  if (!o.budgets.empty()) c.budgets_path = o.budgets;
  c.attributes_path = o.attributes;
  c.policy.lookback_weeks = o.lookback;
  c.policy.min_confidence = parse_rational(o.gamma);
  if (!(c.policy.min_confidence > 0 && c.policy.min_confidence <= 1))
    throw ConfigError("--gamma must be in (0, 1], got " + o.gamma);
  if (o.lookback < 1) throw ConfigError("--lookback must be at least 1");
  if (o.subset_given) c.policy.attribute_subset = app::parse_subset(o.subset);
  c.forecast.mode = parse_propagation_mode(o.mode);
  c.forecast.home_reduction = o.home_reduction;
  if (!(o.home_reduction > 0 && o.home_reduction <= 1)) throw ConfigError("--home-reduction must be in (0, 1]");
  c.seed = o.seed;
  return c;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty())
    std::cout << text;
  else
    write_file(o.out, text);
}

// The context a lattice or mine command works on.
FormalContext chosen_context(const Options& o, const app::RunConfig& c, bool exclude_outcomes) {
  if (o.match.empty() == o.context.empty()) throw ConfigError("give exactly one of --match or --context");
  if (!o.context.empty()) return load_context(o.context);
  const auto ws = app::Workspace::load(c);
  return app::match_context(ws, o.match, c.policy, exclude_outcomes);
}

int cmd_ingest(const Options& o) {
  const auto c = run_config(o);
  const auto data = ingest(c.data_path, c.budgets_path);
  emit(o, dump_json(app::summary_json(data)));
  return kExitOk;
}

int cmd_lattice(const Options& o) {
  const auto c = run_config(o);
  const auto ctx = chosen_context(o, c, o.exclude_outcomes);
  const auto lattice = app::export_lattice(ctx);
  if (!o.out.empty()) {
    write_file(o.out + ".json", lattice.json);
    write_file(o.out + ".dot", lattice.dot);
    std::cerr << lattice.concepts << " concepts, " << lattice.edges << " edges\n";
  } else {
    std::cout << (o.format == "dot" ? lattice.dot : lattice.json);
  }
  return kExitOk;
}

int cmd_mine(const Options& o) {
  const auto c = run_config(o);
  const auto ctx = chosen_context(o, c, false);
  const auto support = parse_rational(o.min_support);
  emit(o, o.format == "text" ? app::rules_text(ctx, c.policy.min_confidence, support)
                             : app::rules_json(ctx, c.policy.min_confidence, support));
  return kExitOk;
}

int cmd_forecast(const Options& o) {
  const auto c = run_config(o);
  const int given = !o.match.empty() + !o.week.empty() + !o.season.empty();
  if (given != 1) throw ConfigError("give exactly one of --match, --week or --season");
  const auto ws = app::Workspace::load(c);
  if (!o.match.empty()) {
    emit(o, app::forecast_match_json(ws, o.match, c.policy, c.forecast));
  } else {
    std::vector<Timestamp> weeks;
    if (!o.week.empty()) {
      weeks.push_back(app::parse_week(o.week));
    } else {
      const int season = parse_season(o.season);
      for (const auto& t : ws.data().timeline())
        if (t.season == season) weeks.push_back(t);
      if (weeks.empty()) throw DomainError("no matches in season " + o.season);
    }
    emit(o, app::forecast_weeks_json(ws, weeks, c.policy, c.forecast));
  }
  return kExitOk;
}

int cmd_evaluate(const Options& o) {
  const auto c = run_config(o);
  const auto ws = app::Workspace::load(c);
  EvaluationConfig config;
  const auto seasons = ws.data().seasons();
  if (seasons.empty()) throw DomainError("dataset is empty");
  const int first =
      o.from_season.empty() ? (seasons.size() > 1 ? seasons[1] : seasons[0]) : parse_season(o.from_season);
  config.weeks = weeks_from(ws.data(), first);
  if (config.weeks.empty()) throw DomainError("no weeks from season " + season_label(first));
  config.predictor = parse_predictor(o.predictor);
  config.trials = o.trials;
  config.seed = c.seed;
  config.pool_size = o.pool_size;
  if (!o.votes.empty()) {
    std::ifstream in(o.votes);
    if (!in) throw ConfigError("cannot open '" + o.votes + "'");
    config.user_votes = parse_user_votes_csv(in);
  }
  const auto report = evaluate(ws.data(), ws.monster(), c.policy, config, c.forecast);
  const auto text = dump_json(report_to_json(report));
  if (!o.out.empty()) {
    write_file(o.out + ".json", text);
    std::ofstream csv(o.out + ".csv", std::ios::binary);
    write_report_csv(csv, report);
    write_file(o.out + ".forecasts.json", dump_json(forecasts_to_json(report.forecasts)));
  }
  std::cout << text;
  return report.beats_all_baselines() ? kExitOk : kExitBaselinesNotBeaten;
}

int cmd_export_context(const Options& o) {
  const auto c = run_config(o);
  const auto ws = app::Workspace::load(c);
  const auto& ctx = ws.monster().context;
  if (!o.out.empty()) {
    save_context(o.out, ctx);
  } else if (o.format == "cxt") {
    write_cxt(std::cout, ctx);
  } else {
    std::cout << dump_json(context_to_json(ctx));
  }
  return kExitOk;
}

int cmd_synth(const Options& o) {
  SyntheticLeagueOptions s;
  s.teams = o.teams;
  s.seasons = o.seasons;
  s.first_season = o.first_season;
  s.seed = o.seed;
  const auto league = synthesize_league(s);
  const fs::path dir = o.out.empty() ? fs::path(app::data_root()) : fs::path(o.out);
  fs::create_directories(dir);
  std::ofstream matches(dir / "matches.csv", std::ios::binary);
  write_matches_csv(matches, league.data.matches());
  std::ofstream budgets(dir / "budgets.csv", std::ios::binary);
  write_budgets_csv(budgets, league.data.budgets());
  std::cerr << "wrote " << league.data.matches().size() << " matches to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_serve(const Options& o) {
  const auto c = run_config(o);
  const api::Service service(app::Workspace::load(c), c);
  const bool ok = http::serve(service, o.host, o.port, [&](int port) {
    std::cerr << "serving on http://" << o.host << ":" << port << "/api/summary\n";
  });
  if (!ok) throw ConfigError("cannot listen on " + o.host + ":" + std::to_string(o.port));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Concept lattices, rule mining and match forecasting over league results"};
  cli.require_subcommand(1);
  Options o;

  auto* ingest_cmd = cli.add_subcommand("ingest", "Validate the input files and print a summary");
  add_data_flags(ingest_cmd, o);
  ingest_cmd->add_option("--out", o.out, "Write the summary here instead of stdout");

  auto* lattice_cmd = cli.add_subcommand("lattice", "Concept lattice of a match selection or a context file");
  add_data_flags(lattice_cmd, o);
  add_policy_flags(lattice_cmd, o);
  lattice_cmd->add_option("--match", o.match, "Match id, e.g. 2009-10/31/Malaga/Sevilla");
  lattice_cmd->add_option("--context", o.context, "Context file (.json or .cxt)");
  lattice_cmd->add_flag("--exclude-outcomes", o.exclude_outcomes, "Drop the 1/X/2 columns");
  lattice_cmd->add_option("--format", o.format, "json | dot (stdout only)")->check(CLI::IsMember({"json", "dot"}));
  lattice_cmd->add_option("--out", o.out, "Write <out>.json and <out>.dot");

  auto* mine_cmd = cli.add_subcommand("mine", "Association rules of a match selection or a context file");
  add_data_flags(mine_cmd, o);
  add_policy_flags(mine_cmd, o);
  mine_cmd->add_option("--match", o.match, "Match id");
  mine_cmd->add_option("--context", o.context, "Context file (.json or .cxt)");
  mine_cmd->add_option("--min-support", o.min_support, "Minimum support")->capture_default_str();
  mine_cmd->add_option("--format", o.format, "json | text")->check(CLI::IsMember({"json", "text"}));
  mine_cmd->add_option("--out", o.out, "Output file");

  auto* forecast_cmd = cli.add_subcommand("forecast", "Forecast a match, a week or a season");
  add_data_flags(forecast_cmd, o);
  add_policy_flags(forecast_cmd, o);
  add_inference_flags(forecast_cmd, o);
  forecast_cmd->add_option("--match", o.match, "Match id");
  forecast_cmd->add_option("--week", o.week, "SEASON/WEEK, e.g. 2009-10/31");
  forecast_cmd->add_option("--season", o.season, "Every week of a season");
  forecast_cmd->add_option("--out", o.out, "Output file");

  auto* evaluate_cmd = cli.add_subcommand("evaluate", "Score forecasts against results and baselines");
  add_data_flags(evaluate_cmd, o);
  add_policy_flags(evaluate_cmd, o);
  add_inference_flags(evaluate_cmd, o);
  evaluate_cmd->add_option("--from-season", o.from_season, "First evaluated season (default: the second one)");
  evaluate_cmd->add_option("--trials", o.trials, "Trials per weighted-random baseline")->capture_default_str();
  evaluate_cmd->add_option("--seed", o.seed, "Baseline seed")->capture_default_str();
  evaluate_cmd->add_option("--predictor", o.predictor, "pipeline | oracle")->capture_default_str();
  evaluate_cmd->add_option("--votes", o.votes, "Most-voted picks CSV (season,week,home,away,pick)");
  evaluate_cmd->add_option("--pool-size", o.pool_size, "Matches per week in the pool tally")->capture_default_str();
  evaluate_cmd->add_option("--out", o.out, "Write <out>.json, <out>.csv and <out>.forecasts.json");

  auto* export_cmd = cli.add_subcommand("export-context", "Write the monster context");
  add_data_flags(export_cmd, o);
  export_cmd->add_option("--format", o.format, "json | cxt (stdout only)")->check(CLI::IsMember({"json", "cxt"}));
  export_cmd->add_option("--out", o.out, "Output file; .cxt or .json by extension");

  auto* synth_cmd = cli.add_subcommand("synth", "Generate a synthetic league");
  synth_cmd->add_option("--teams", o.teams)->capture_default_str();
  synth_cmd->add_option("--seasons", o.seasons)->capture_default_str();
  synth_cmd->add_option("--first-season", o.first_season)->capture_default_str();
  synth_cmd->add_option("--seed", o.seed)->capture_default_str();
  synth_cmd->add_option("--out", o.out, "Directory for matches.csv and budgets.csv (default $GALOIS_DATA_DIR)");

  auto* serve_cmd = cli.add_subcommand("serve", "HTTP API for the explorer");
  add_data_flags(serve_cmd, o);
  add_policy_flags(serve_cmd, o);
  add_inference_flags(serve_cmd, o);
  serve_cmd->add_option("--host", o.host)->capture_default_str();
  serve_cmd->add_option("--port", o.port, "0 picks a free port")->capture_default_str();

  CLI11_PARSE(cli, argc, argv);

  try {
    if (*ingest_cmd) return cmd_ingest(o);
    if (*lattice_cmd) return cmd_lattice(o);
    if (*mine_cmd) return cmd_mine(o);
    if (*forecast_cmd) return cmd_forecast(o);
    if (*evaluate_cmd) return cmd_evaluate(o);
    if (*export_cmd) return cmd_export_context(o);
    if (*synth_cmd) return cmd_synth(o);
    if (*serve_cmd) return cmd_serve(o);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
