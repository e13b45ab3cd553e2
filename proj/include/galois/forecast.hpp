#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "galois/attributes.hpp"
#include "galois/inference.hpp"
#include "galois/league.hpp"

namespace galois {

struct SelectionPolicy {
  int lookback_weeks = 38;
  /// Spec labels to keep; nullopt keeps every spec column.
  std::optional<std::vector<std::string>> attribute_subset;
  Rational min_confidence{7, 10};

  /// Throws ConfigError for lookback < 1, gamma outside (0, 1] or unknown labels.
  void validate(const MonsterContext& monster) const;
};

/// A subcontext of the monster context.
struct Selection {
  std::vector<std::size_t> rows;     // monster objects, ascending
  std::vector<std::size_t> columns;  // monster attributes: selected specs in monster order, then 1, X, 2
  FormalContext context{{}, {}, std::vector<std::vector<bool>>{}};

  bool degenerate() const noexcept { return rows.empty(); }
};

/// Rows of the `lookback_weeks` timeline weeks before the match's week,
/// crossing seasons. The match's own week is never included.
Selection select_context(const Dataset& data, const MonsterContext& monster, std::size_t match,
                         const SelectionPolicy& policy);

/// Mined rules at confidence >= gamma with priors from the subcontext; an
/// empty subcontext gives a KB without rules.
KnowledgeBase contextual_kb(const FormalContext& subcontext, const Rational& gamma, const MiningOptions& mining = {});

/// Facts for a match: the selected spec attributes that hold on its monster row.
std::vector<Fact> match_facts(const MonsterContext& monster, std::size_t match, const Selection& selection);

/// Forecast defaults for the pipeline: vacuous rules are skipped.
ForecastOptions pipeline_forecast_options();

struct MatchForecast {
  std::size_t match = 0;  // dataset index
  std::string id;
  Outcome actual = Outcome::Home;
  std::optional<Forecast> forecast;  // empty when the match failed
  std::string error;
  std::vector<std::size_t> selection_rows;
  std::shared_ptr<const KnowledgeBase> kb;

  bool hit() const { return forecast && forecast->pick == actual; }
};

/// Forecasts every match of the given weeks, in fixture order. Matches of one
/// week share a selection and its KB. Weeks run in parallel; a failing match
/// records its error and the rest continue.
std::vector<MatchForecast> forecast_weeks(const Dataset& data, const MonsterContext& monster,
                                          const std::vector<Timestamp>& weeks, const SelectionPolicy& policy,
                                          const ForecastOptions& options = pipeline_forecast_options(),
                                          const MiningOptions& mining = {});

std::vector<MatchForecast> forecast_week(const Dataset& data, const MonsterContext& monster, int season, int week,
                                         const SelectionPolicy& policy,
                                         const ForecastOptions& options = pipeline_forecast_options(),
                                         const MiningOptions& mining = {});

/// One match, with its own selection.
MatchForecast forecast_one(const Dataset& data, const MonsterContext& monster, std::size_t match,
                           const SelectionPolicy& policy, const ForecastOptions& options = pipeline_forecast_options(),
                           const MiningOptions& mining = {});

nlohmann::json forecasts_to_json(const std::vector<MatchForecast>& forecasts);

namespace reference {
/// Single-threaded, one selection and KB per match.
std::vector<MatchForecast> forecast_weeks(const Dataset& data, const MonsterContext& monster,
                                          const std::vector<Timestamp>& weeks, const SelectionPolicy& policy,
                                          const ForecastOptions& options = pipeline_forecast_options(),
                                          const MiningOptions& mining = {});
}  // namespace reference

/// Draws outcomes with fixed weights from a seeded mt19937_64. The draw is
/// written out by hand so sequences agree across standard libraries.
class WeightedPicker {
 public:
  /// Weights for 1, X, 2; non-negative with a positive sum. Throws ConfigError.
  WeightedPicker(std::array<double, 3> weights, std::uint64_t seed);
  Outcome next();

 private:
  std::array<double, 3> cumulative_;
  std::mt19937_64 engine_;
};

enum class Predictor { Pipeline, Oracle };
/// "pipeline" | "oracle". Throws ConfigError.
Predictor parse_predictor(const std::string& text);

struct EvaluationConfig {
  std::vector<Timestamp> weeks;
  Predictor predictor = Predictor::Pipeline;
  std::size_t trials = 1000;
  std::uint64_t seed = 20091031;
  bool always_home = true;
  std::vector<std::array<double, 3>> weighted = {{0.55, 0.23, 0.22}, {0.65, 0.18, 0.17}};
  /// Most-voted pick per match id, if available.
  std::map<std::string, Outcome> user_votes;
  std::size_t pool_size = 15;
};

struct WeekScore {
  Timestamp week;
  std::size_t matches = 0;
  std::size_t hits = 0;
  std::size_t pool_matches = 0;
  std::size_t pool_hits = 0;
  std::size_t errors = 0;
  std::size_t prior_only = 0;
  /// Baseline name -> mean hits this week (mean over trials for random baselines).
  std::map<std::string, double> baseline_hits;
};

struct BaselineScore {
  std::string name;
  double hit_rate = 0;  // mean over trials
  double stddev = 0;    // across trials; 0 for deterministic baselines
  double pool_hit_rate = 0;
  std::optional<double> expected;  // closed form for weighted random
  std::size_t trials = 1;
};

struct EvaluationReport {
  std::vector<WeekScore> weeks;
  std::size_t matches = 0;
  std::size_t hits = 0;
  std::size_t pool_matches = 0;
  std::size_t pool_hits = 0;
  std::size_t errors = 0;
  std::vector<BaselineScore> baselines;
  std::vector<MatchForecast> forecasts;

  double hit_rate() const { return matches ? static_cast<double>(hits) / static_cast<double>(matches) : 0.0; }
  double pool_hit_rate() const {
    return pool_matches ? static_cast<double>(pool_hits) / static_cast<double>(pool_matches) : 0.0;
  }
  /// Hit rate strictly above every baseline's mean.
  bool beats_all_baselines() const;
};

/// Scores the predictor and the baselines over the same matches. Baseline
/// names: "always-home", "weighted<a,b,c>", "user-votes".
EvaluationReport evaluate(const Dataset& data, const MonsterContext& monster, const SelectionPolicy& policy,
                          const EvaluationConfig& config, const ForecastOptions& options = pipeline_forecast_options(),
                          const MiningOptions& mining = {});

nlohmann::json report_to_json(const EvaluationReport& report);
/// One row per week: season,week,matches,hits,hit_rate,pool_matches,pool_hits, then one column per baseline.
void write_report_csv(std::ostream& out, const EvaluationReport& report);

/// CSV with columns season, week, home, away, pick. Throws ParseError.
std::map<std::string, Outcome> parse_user_votes_csv(std::istream& in);

/// Every week from the given season on.
std::vector<Timestamp> weeks_from(const Dataset& data, int first_season);

struct SyntheticLeagueOptions {
  int teams = 20;
  int seasons = 4;
  int first_season = 2006;
  std::uint64_t seed = 1;
  /// Strength gaps above this always go to the stronger side.
  double deterministic_gap = 0.35;
  std::string division = "1";
};

struct SyntheticLeague {
  Dataset data;
  std::map<std::string, double> strength;  // stationary, in [0, 1)
};

/// Double round robin per season with fixed team strengths and budgets that
/// grow with strength. Only integer and basic floating arithmetic is used, so
/// output is identical across platforms.
SyntheticLeague synthesize_league(const SyntheticLeagueOptions& options);

}  // namespace galois
