#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "galois/outcome.hpp"

namespace galois {

/// Season "2009-10" is stored as its start year.
std::string season_label(int start_year);
/// Accepts "2009-10", "2009/10", "2009-2010" or "2009". Throws DomainError.
int parse_season(const std::string& text);

/// Which of a team's matches count: those it played at home, away, or all.
enum class MatchKind { AsHome, AsAway, All };

std::string to_string(MatchKind kind);
/// "AS_HOME" | "AS_AWAY" | "ALL". Throws ConfigError.
MatchKind parse_match_kind(const std::string& text);

/// Position on the continuous timeline of (season, week).
struct Timestamp {
  int season = 0;
  int week = 0;
  auto operator<=>(const Timestamp&) const = default;
};

struct MatchRecord {
  int season = 0;
  int week = 0;
  std::string home_team;
  std::string away_team;
  int home_goals = 0;
  int away_goals = 0;
  std::string division;

  Timestamp when() const { return {season, week}; }
  Outcome outcome() const {
    return home_goals > away_goals ? Outcome::Home : home_goals == away_goals ? Outcome::Draw : Outcome::Away;
  }
  /// "2009-10/31/Malaga/Sevilla"
  std::string id() const;
  bool involves(const std::string& team) const { return home_team == team || away_team == team; }
};

struct TeamMeta {
  std::string team;
  int season = 0;
  double budget = 0;
  std::string division;
};

/// Validated, immutable league data.
///
/// Matches keep file order within a week and are sorted by (season, week);
/// row i of a monster context built from this dataset is match i.
class Dataset {
 public:
  Dataset() = default;
  /// Throws ValidationError listing every offending record.
  Dataset(std::vector<MatchRecord> matches, std::vector<TeamMeta> budgets,
          std::vector<std::string> division_order = {});

  const std::vector<MatchRecord>& matches() const noexcept { return matches_; }
  const std::vector<TeamMeta>& budgets() const noexcept { return budgets_; }
  const MatchRecord& match(std::size_t i) const { return matches_.at(i); }

  std::optional<std::size_t> find_match(const std::string& id) const;
  /// Throws ResolutionError.
  std::size_t match_index(const std::string& id) const;

  std::vector<int> seasons() const;
  bool has_season(int season) const;
  /// Distinct (season, week) pairs, ascending.
  const std::vector<Timestamp>& timeline() const noexcept { return timeline_; }
  /// Indices of the matches played in that week, in fixture order.
  std::vector<std::size_t> matches_in_week(int season, int week) const;
  int last_week(int season) const;

  std::vector<std::string> teams() const;
  /// Teams with a match in (season, division), sorted.
  std::vector<std::string> teams(int season, const std::string& division) const;
  std::vector<std::string> divisions(int season) const;
  /// From the team's matches in that season, falling back to budget metadata.
  std::optional<std::string> division_of(const std::string& team, int season) const;
  std::optional<double> budget(const std::string& team, int season) const;

  /// Chronological match indices of a team.
  const std::vector<std::size_t>& matches_of(const std::string& team) const;

  /// Smaller is higher. Uses the explicit order when given, else the leading
  /// number of the identifier ("1ª" -> 1), else lexicographic order.
  int compare_divisions(const std::string& a, const std::string& b) const;

 private:
  std::vector<MatchRecord> matches_;
  std::vector<TeamMeta> budgets_;
  std::vector<std::string> division_order_;
  std::vector<Timestamp> timeline_;
  std::map<std::string, std::vector<std::size_t>> by_team_;
  std::map<std::string, std::size_t> by_id_;
  std::map<std::pair<int, std::string>, std::vector<std::string>> rosters_;
};

/// CSV columns: season, week, home, away, home_goals, away_goals, division.
/// Header required; an empty input is an empty list. Throws ParseError.
std::vector<MatchRecord> parse_matches_csv(std::istream& in);
/// CSV columns: season, team, budget, division. Throws ParseError.
std::vector<TeamMeta> parse_budgets_csv(std::istream& in);

void write_matches_csv(std::ostream& out, const std::vector<MatchRecord>& matches);
void write_budgets_csv(std::ostream& out, const std::vector<TeamMeta>& budgets);

/// Reads and validates both files; the budgets path may be empty.
Dataset ingest(const std::string& matches_path, const std::string& budgets_path = {});

struct StandingsRow {
  std::string team;
  int points = 0;
  int goal_difference = 0;
  int goals_for = 0;
  int played = 0;
  int position = 0;
};

struct StandingsTable {
  int season = 0;
  int through_week = 0;
  std::string division;
  std::vector<StandingsRow> rows;  // by position

  std::optional<int> position_of(const std::string& team) const;
};

/// Which matches a standings table counts.
struct StandingsWindow {
  /// Each team's last `matches` matches on the continuous timeline; nullopt
  /// means only the current season.
  std::optional<int> matches;
  MatchKind kind = MatchKind::All;
};

/// League table of the teams in (season, division) counting matches up to and
/// including through_week. 3 points a win, 1 a draw; ties broken by goal
/// difference, then team name.
///
/// `division` may be omitted when the season has a single division.
/// Throws DomainError for an unknown season, a through_week below 1, or an ambiguous division.
StandingsTable standings(const Dataset& data, int season, int through_week, const StandingsWindow& window = {},
                         const std::optional<std::string>& division = std::nullopt);

/// Same, counting only matches strictly before `before`. Week 1 tables are all zero.
StandingsTable standings_before(const Dataset& data, Timestamp before, const std::string& division,
                                const StandingsWindow& window);

struct WeekZeroPosition {
  enum class Basis { SameDivision, FromHigherDivision, FromLowerDivision, NoHistory };
  int position = 0;
  Basis basis = Basis::NoHistory;
  bool flagged() const { return basis == Basis::NoHistory; }
};

/// Standing used before any match of `season` is played: last season's final
/// position when the division is unchanged, first when coming down from a higher
/// division, last when coming up from a lower one or with no history.
WeekZeroPosition week_zero_position(const Dataset& data, const std::string& team, int season);

/// gamma * available / needed, unchanged when available >= needed.
/// Throws DomainError when needed is 0.
double rescale_threshold(double gamma, std::size_t available, std::size_t needed);

struct History {
  std::vector<std::size_t> matches;  // chronological
  /// Some match was played in a division other than the team's division at `before`.
  bool cross_division = false;
};

/// The last n matches of `team` of the given kind strictly before `before`,
/// crossing season boundaries; only matches against `opponent` when given.
History history(const Dataset& data, const std::string& team, Timestamp before, std::size_t n, MatchKind kind,
                const std::optional<std::string>& opponent = std::nullopt);

/// All matches of that kind before `before`, most recent last.
History full_history(const Dataset& data, const std::string& team, Timestamp before, MatchKind kind,
                     const std::optional<std::string>& opponent = std::nullopt);

/// Result of a match from one team's point of view.
enum class TeamResult { Win, Draw, Loss };
TeamResult result_for(const MatchRecord& match, const std::string& team);

struct IngestSummary {
  std::size_t matches = 0;
  std::size_t teams = 0;
  std::size_t budgets = 0;
  std::vector<std::string> seasons;
  std::map<std::string, std::size_t> outcomes;  // "1"/"X"/"2" -> count
};
IngestSummary summarize(const Dataset& data);

}  // namespace galois
