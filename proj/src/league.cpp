#include "galois/league.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "csv.hpp"
#include "galois/errors.hpp"

namespace galois {

std::string season_label(int start_year) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%d-%02d", start_year, (start_year + 1) % 100);
  return buf;
}

int parse_season(const std::string& text) {
  auto digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  const auto sep = text.find_first_of("-/");
  const std::string head = text.substr(0, sep);
  if (!digits(head) || head.size() != 4) throw DomainError("invalid season '" + text + "'");
  const int year = std::stoi(head);
  if (sep != std::string::npos) {
    const std::string tail = text.substr(sep + 1);
    if (!digits(tail)) throw DomainError("invalid season '" + text + "'");
    const int next = std::stoi(tail);
    const bool ok = tail.size() == 2 ? next == (year + 1) % 100 : tail.size() == 4 && next == year + 1;
    if (!ok) throw DomainError("season '" + text + "' does not span consecutive years");
  }
  return year;
}

std::string to_string(MatchKind kind) {
  switch (kind) {
    case MatchKind::AsHome:
      return "AS_HOME";
    case MatchKind::AsAway:
      return "AS_AWAY";
    case MatchKind::All:
      return "ALL";
  }
  return "?";
}

MatchKind parse_match_kind(const std::string& text) {
  if (text == "AS_HOME") return MatchKind::AsHome;
  if (text == "AS_AWAY") return MatchKind::AsAway;
  if (text == "ALL") return MatchKind::All;
  throw ConfigError("unknown match kind '" + text + "' (expected AS_HOME, AS_AWAY or ALL)");
}

std::string MatchRecord::id() const {
  return season_label(season) + "/" + std::to_string(week) + "/" + home_team + "/" + away_team;
}

namespace {

bool kind_matches(const MatchRecord& m, const std::string& team, MatchKind kind) {
  switch (kind) {
    case MatchKind::AsHome:
      return m.home_team == team;
    case MatchKind::AsAway:
      return m.away_team == team;
    case MatchKind::All:
      return m.involves(team);
  }
  return false;
}

std::optional<int> leading_number(const std::string& s) {
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == 0 || i > 6) return std::nullopt;
  return std::stoi(s.substr(0, i));
}

}  // namespace

Dataset::Dataset(std::vector<MatchRecord> matches, std::vector<TeamMeta> budgets,
                 std::vector<std::string> division_order)
    : matches_(std::move(matches)), budgets_(std::move(budgets)), division_order_(std::move(division_order)) {
  std::vector<std::string> problems;
  std::set<std::tuple<int, int, std::string, std::string>> seen;
  std::map<std::pair<int, std::string>, std::set<int>> weeks;
  for (const auto& m : matches_) {
    const std::string where = "match " + m.id();
    if (m.week < 1) problems.push_back(where + ": week must be positive");
    if (m.home_team.empty() || m.away_team.empty()) problems.push_back(where + ": empty team name");
    if (m.home_team == m.away_team) problems.push_back(where + ": home and away team are the same");
    if (m.home_goals < 0 || m.away_goals < 0) problems.push_back(where + ": negative goals");
    if (m.division.empty()) problems.push_back(where + ": empty division");
    if (!seen.emplace(m.season, m.week, m.home_team, m.away_team).second)
      problems.push_back(where + ": duplicate fixture");
    weeks[{m.season, m.division}].insert(m.week);
  }
  for (const auto& [key, ws] : weeks) {
    int expect = 1;
    for (int w : ws) {
      if (w != expect) {
        problems.push_back("season " + season_label(key.first) + " division " + key.second +
                           ": weeks not contiguous from 1 (missing week " + std::to_string(expect) + ")");
        break;
      }
      ++expect;
    }
  }
  std::set<std::pair<int, std::string>> budget_seen;
  for (const auto& b : budgets_) {
    const std::string where = "budget " + season_label(b.season) + "/" + b.team;
    if (!(b.budget > 0)) problems.push_back(where + ": budget must be positive");
    if (!budget_seen.emplace(b.season, b.team).second) problems.push_back(where + ": duplicate entry");
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));

  std::stable_sort(matches_.begin(), matches_.end(),
                   [](const MatchRecord& a, const MatchRecord& b) { return a.when() < b.when(); });
  for (std::size_t i = 0; i < matches_.size(); ++i) {
    const auto& m = matches_[i];
    by_team_[m.home_team].push_back(i);
    by_team_[m.away_team].push_back(i);
    by_id_[m.id()] = i;
    if (timeline_.empty() || timeline_.back() != m.when()) timeline_.push_back(m.when());
    auto& roster = rosters_[{m.season, m.division}];
    for (const auto* team : {&m.home_team, &m.away_team}) {
      auto pos = std::lower_bound(roster.begin(), roster.end(), *team);
      if (pos == roster.end() || *pos != *team) roster.insert(pos, *team);
    }
  }
}

std::optional<std::size_t> Dataset::find_match(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::size_t Dataset::match_index(const std::string& id) const {
  if (auto i = find_match(id)) return *i;
  throw ResolutionError("unknown match '" + id + "'");
}

std::vector<int> Dataset::seasons() const {
  std::vector<int> out;
  for (const auto& t : timeline_)
    if (out.empty() || out.back() != t.season) out.push_back(t.season);
  return out;
}

bool Dataset::has_season(int season) const {
  const auto s = seasons();
  return std::binary_search(s.begin(), s.end(), season);
}

std::vector<std::size_t> Dataset::matches_in_week(int season, int week) const {
  std::vector<std::size_t> out;
  const Timestamp t{season, week};
  auto lo = std::lower_bound(matches_.begin(), matches_.end(), t,
                             [](const MatchRecord& m, const Timestamp& ts) { return m.when() < ts; });
  for (auto it = lo; it != matches_.end() && it->when() == t; ++it)
    out.push_back(static_cast<std::size_t>(it - matches_.begin()));
  return out;
}

int Dataset::last_week(int season) const {
  int last = 0;
  for (const auto& t : timeline_)
    if (t.season == season) last = std::max(last, t.week);
  return last;
}

std::vector<std::string> Dataset::teams() const {
  std::vector<std::string> out;
  for (const auto& [team, _] : by_team_) out.push_back(team);
  return out;
}

std::vector<std::string> Dataset::teams(int season, const std::string& division) const {
  auto it = rosters_.find({season, division});
  return it == rosters_.end() ? std::vector<std::string>{} : it->second;
}

std::vector<std::string> Dataset::divisions(int season) const {
  std::set<std::string> out;
  for (const auto& m : matches_)
    if (m.season == season) out.insert(m.division);
  std::vector<std::string> v(out.begin(), out.end());
  std::sort(v.begin(), v.end(), [this](const auto& a, const auto& b) { return compare_divisions(a, b) < 0; });
  return v;
}

std::optional<std::string> Dataset::division_of(const std::string& team, int season) const {
  auto it = by_team_.find(team);
  if (it != by_team_.end())
    for (std::size_t i : it->second)
      if (matches_[i].season == season) return matches_[i].division;
  for (const auto& b : budgets_)
    if (b.team == team && b.season == season && !b.division.empty()) return b.division;
  return std::nullopt;
}

std::optional<double> Dataset::budget(const std::string& team, int season) const {
  for (const auto& b : budgets_)
    if (b.team == team && b.season == season) return b.budget;
  return std::nullopt;
}

const std::vector<std::size_t>& Dataset::matches_of(const std::string& team) const {
  static const std::vector<std::size_t> none;
  auto it = by_team_.find(team);
  return it == by_team_.end() ? none : it->second;
}

int Dataset::compare_divisions(const std::string& a, const std::string& b) const {
  if (a == b) return 0;
  auto pa = std::find(division_order_.begin(), division_order_.end(), a);
  auto pb = std::find(division_order_.begin(), division_order_.end(), b);
  if (pa != division_order_.end() && pb != division_order_.end()) return pa < pb ? -1 : 1;
  const auto na = leading_number(a);
  const auto nb = leading_number(b);
  if (na && nb && *na != *nb) return *na < *nb ? -1 : 1;
  return a < b ? -1 : 1;
}

std::vector<MatchRecord> parse_matches_csv(std::istream& in) {
  const csv::Table table(in, {"season", "week", "home", "away", "home_goals", "away_goals", "division"});
  std::vector<MatchRecord> out;
  for (const auto& row : table.rows()) {
    MatchRecord m;
    try {
      m.season = parse_season(table.get(row, "season"));
    } catch (const DomainError& e) {
      throw ParseError(row.line, e.what());
    }
    m.week = static_cast<int>(csv::parse_int(table.get(row, "week"), row.line, "week"));
    m.home_team = table.get(row, "home");
    m.away_team = table.get(row, "away");
    m.home_goals = static_cast<int>(csv::parse_int(table.get(row, "home_goals"), row.line, "home_goals"));
    m.away_goals = static_cast<int>(csv::parse_int(table.get(row, "away_goals"), row.line, "away_goals"));
    m.division = table.get(row, "division");
    if (m.week < 1) throw ParseError(row.line, "week must be positive");
    if (m.home_goals < 0 || m.away_goals < 0) throw ParseError(row.line, "goals must be non-negative");
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<TeamMeta> parse_budgets_csv(std::istream& in) {
  const csv::Table table(in, {"season", "team", "budget", "division"});
  std::vector<TeamMeta> out;
  for (const auto& row : table.rows()) {
    TeamMeta t;
    try {
      t.season = parse_season(table.get(row, "season"));
    } catch (const DomainError& e) {
      throw ParseError(row.line, e.what());
    }
    t.team = table.get(row, "team");
    t.budget = csv::parse_double(table.get(row, "budget"), row.line, "budget");
    t.division = table.get(row, "division");
    out.push_back(std::move(t));
  }
  return out;
}

void write_matches_csv(std::ostream& out, const std::vector<MatchRecord>& matches) {
  out << "season,week,home,away,home_goals,away_goals,division\n";
  for (const auto& m : matches)
    out << season_label(m.season) << ',' << m.week << ',' << csv::quote(m.home_team) << ',' << csv::quote(m.away_team)
        << ',' << m.home_goals << ',' << m.away_goals << ',' << csv::quote(m.division) << '\n';
}

void write_budgets_csv(std::ostream& out, const std::vector<TeamMeta>& budgets) {
  out << "season,team,budget,division\n";
  char buf[64];
  for (const auto& b : budgets) {
    std::snprintf(buf, sizeof buf, "%.17g", b.budget);
    out << season_label(b.season) << ',' << csv::quote(b.team) << ',' << buf << ',' << csv::quote(b.division) << '\n';
  }
}

Dataset ingest(const std::string& matches_path, const std::string& budgets_path) {
  std::ifstream in(matches_path);
  if (!in) throw ConfigError("cannot open '" + matches_path + "'");
  auto matches = parse_matches_csv(in);
  std::vector<TeamMeta> budgets;
  if (!budgets_path.empty()) {
    std::ifstream bin(budgets_path);
    if (!bin) throw ConfigError("cannot open '" + budgets_path + "'");
    budgets = parse_budgets_csv(bin);
  }
  return Dataset(std::move(matches), std::move(budgets));
}

std::optional<int> StandingsTable::position_of(const std::string& team) const {
  for (const auto& r : rows)
    if (r.team == team) return r.position;
  return std::nullopt;
}

TeamResult result_for(const MatchRecord& match, const std::string& team) {
  const int own = match.home_team == team ? match.home_goals : match.away_goals;
  const int other = match.home_team == team ? match.away_goals : match.home_goals;
  return own > other ? TeamResult::Win : own == other ? TeamResult::Draw : TeamResult::Loss;
}

namespace {

void tally(StandingsRow& row, const MatchRecord& m) {
  const bool home = m.home_team == row.team;
  const int own = home ? m.home_goals : m.away_goals;
  const int other = home ? m.away_goals : m.home_goals;
  row.points += own > other ? 3 : own == other ? 1 : 0;
  row.goal_difference += own - other;
  row.goals_for += own;
  ++row.played;
}

void rank(StandingsTable& table) {
  std::sort(table.rows.begin(), table.rows.end(), [](const StandingsRow& a, const StandingsRow& b) {
    if (a.points != b.points) return a.points > b.points;
    if (a.goal_difference != b.goal_difference) return a.goal_difference > b.goal_difference;
    return a.team < b.team;
  });
  for (std::size_t i = 0; i < table.rows.size(); ++i) table.rows[i].position = static_cast<int>(i) + 1;
}

}  // namespace

StandingsTable standings_before(const Dataset& data, Timestamp before, const std::string& division,
                                const StandingsWindow& window) {
  StandingsTable table;
  table.season = before.season;
  table.through_week = before.week - 1;
  table.division = division;
  for (const auto& team : data.teams(before.season, division)) {
    StandingsRow row;
    row.team = team;
    if (window.matches) {
      for (std::size_t i : history(data, team, before, static_cast<std::size_t>(*window.matches), window.kind).matches)
        tally(row, data.match(i));
    } else {
      for (std::size_t i : data.matches_of(team)) {
        const auto& m = data.match(i);
        if (m.season != before.season || !(m.when() < before)) continue;
        if (m.division == division && kind_matches(m, team, window.kind)) tally(row, m);
      }
    }
    table.rows.push_back(std::move(row));
  }
  rank(table);
  return table;
}

StandingsTable standings(const Dataset& data, int season, int through_week, const StandingsWindow& window,
                         const std::optional<std::string>& division) {
  if (!data.has_season(season)) throw DomainError("unknown season " + season_label(season));
  if (through_week < 1) throw DomainError("through_week must be at least 1");
  std::string div;
  if (division) {
    div = *division;
  } else {
    const auto divs = data.divisions(season);
    if (divs.size() != 1)
      throw DomainError("season " + season_label(season) + " has " + std::to_string(divs.size()) +
                        " divisions; pick one");
    div = divs.front();
  }
  auto table = standings_before(data, {season, through_week + 1}, div, window);
  table.through_week = through_week;
  return table;
}

WeekZeroPosition week_zero_position(const Dataset& data, const std::string& team, int season) {
  WeekZeroPosition out;
  const auto current = data.division_of(team, season);
  const int n = current ? static_cast<int>(data.teams(season, *current).size()) : 0;
  out.position = std::max(n, 1);
  out.basis = WeekZeroPosition::Basis::NoHistory;
  if (!current || !data.has_season(season - 1)) return out;
  const auto previous = data.division_of(team, season - 1);
  if (!previous) return out;
  const int cmp = data.compare_divisions(*previous, *current);
  if (cmp < 0) {
    out.position = 1;
    out.basis = WeekZeroPosition::Basis::FromHigherDivision;
  } else if (cmp > 0) {
    out.basis = WeekZeroPosition::Basis::FromLowerDivision;
  } else {
    const auto table = standings(data, season - 1, data.last_week(season - 1), {}, *previous);
    out.position = std::min(table.position_of(team).value_or(out.position), out.position);
    out.basis = WeekZeroPosition::Basis::SameDivision;
  }
  return out;
}

double rescale_threshold(double gamma, std::size_t available, std::size_t needed) {
  if (needed == 0) throw DomainError("rescale_threshold: needed match count must be positive");
  if (available >= needed) return gamma;
  return gamma * static_cast<double>(available) / static_cast<double>(needed);
}

History full_history(const Dataset& data, const std::string& team, Timestamp before, MatchKind kind,
                     const std::optional<std::string>& opponent) {
  History out;
  const auto division = data.division_of(team, before.season);
  for (std::size_t i : data.matches_of(team)) {
    const auto& m = data.match(i);
    if (!(m.when() < before)) break;
    if (!kind_matches(m, team, kind)) continue;
    if (opponent && !m.involves(*opponent)) continue;
    out.matches.push_back(i);
    if (division && m.division != *division) out.cross_division = true;
  }
  return out;
}

History history(const Dataset& data, const std::string& team, Timestamp before, std::size_t n, MatchKind kind,
                const std::optional<std::string>& opponent) {
  History out;
  if (n == 0) return out;
  const auto division = data.division_of(team, before.season);
  const auto& all = data.matches_of(team);
  auto end = std::lower_bound(all.begin(), all.end(), before,
                              [&](std::size_t i, const Timestamp& t) { return data.match(i).when() < t; });
  for (auto it = end; it != all.begin() && out.matches.size() < n;) {
    --it;
    const auto& m = data.match(*it);
    if (!kind_matches(m, team, kind)) continue;
    if (opponent && !m.involves(*opponent)) continue;
    out.matches.push_back(*it);
    if (division && m.division != *division) out.cross_division = true;
  }
  std::reverse(out.matches.begin(), out.matches.end());
  return out;
}

IngestSummary summarize(const Dataset& data) {
  IngestSummary s;
  s.matches = data.matches().size();
  s.teams = data.teams().size();
  s.budgets = data.budgets().size();
  for (int season : data.seasons()) s.seasons.push_back(season_label(season));
  s.outcomes = {{"1", 0}, {"X", 0}, {"2", 0}};
  for (const auto& m : data.matches()) ++s.outcomes[outcome_symbol(m.outcome())];
  return s;
}

}  // namespace galois
