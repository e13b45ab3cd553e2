#include "galois/forecast.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <ostream>

#include "csv.hpp"
#include "galois/context_io.hpp"
#include "galois/errors.hpp"

namespace galois {

using nlohmann::json;

void SelectionPolicy::validate(const MonsterContext& monster) const {
  if (lookback_weeks < 1) throw ConfigError("lookback must be at least 1 week");
  if (!(min_confidence > 0 && min_confidence <= 1))
    throw ConfigError("gamma must be in (0, 1], got " + to_string(min_confidence));
  if (attribute_subset) {
    const auto labels = monster.spec_labels();
    for (const auto& l : *attribute_subset)
      if (std::find(labels.begin(), labels.end(), l) == labels.end())
        throw ConfigError("attribute '" + l + "' is not in the monster context");
  }
}

namespace {

std::vector<std::size_t> selected_columns(const MonsterContext& monster, const SelectionPolicy& policy) {
  std::vector<std::size_t> cols;
  const auto& attrs = monster.context.attributes();
  for (std::size_t c = 0; c < monster.spec_columns; ++c) {
    if (policy.attribute_subset && std::find(policy.attribute_subset->begin(), policy.attribute_subset->end(),
                                             attrs[c]) == policy.attribute_subset->end())
      continue;
    cols.push_back(c);
  }
  for (Outcome o : kOutcomes) cols.push_back(monster.outcome_column(o));
  return cols;
}

}  // namespace

Selection select_context(const Dataset& data, const MonsterContext& monster, std::size_t match,
                         const SelectionPolicy& policy) {
  policy.validate(monster);
  if (monster.context.object_count() != data.matches().size())
    throw ConfigError("monster context does not belong to this dataset");
  const Timestamp when = data.match(match).when();
  const auto& timeline = data.timeline();
  const auto pos =
      static_cast<std::size_t>(std::lower_bound(timeline.begin(), timeline.end(), when) - timeline.begin());
  const std::size_t first = pos > static_cast<std::size_t>(policy.lookback_weeks) ? pos - policy.lookback_weeks : 0;

  Selection s;
  if (first < pos) {
    const auto& ms = data.matches();
    auto lo = std::lower_bound(ms.begin(), ms.end(), timeline[first],
                               [](const MatchRecord& m, const Timestamp& t) { return m.when() < t; });
    auto hi = std::lower_bound(ms.begin(), ms.end(), when,
                               [](const MatchRecord& m, const Timestamp& t) { return m.when() < t; });
    for (auto it = lo; it != hi; ++it) s.rows.push_back(static_cast<std::size_t>(it - ms.begin()));
  }
  s.columns = selected_columns(monster, policy);
  s.context = monster.context.subcontext(s.rows, s.columns);
  return s;
}

KnowledgeBase contextual_kb(const FormalContext& subcontext, const Rational& gamma, const MiningOptions& mining) {
  std::vector<AssociationRule> rules;
  if (subcontext.object_count() > 0) rules = mine_association_rules(subcontext, gamma, Rational(0), mining);
  return KnowledgeBase::from_context(subcontext, std::move(rules));
}

std::vector<Fact> match_facts(const MonsterContext& monster, std::size_t match, const Selection& selection) {
  std::vector<Fact> facts;
  for (std::size_t c : selection.columns)
    if (c < monster.spec_columns && monster.context.incident(match, c))
      facts.push_back({monster.context.attributes()[c], 1.0});
  return facts;
}

ForecastOptions pipeline_forecast_options() {
  ForecastOptions o;
  o.inference.skip_unsupported_rules = true;
  return o;
}

namespace {

MatchForecast blank(const Dataset& data, std::size_t match) {
  MatchForecast f;
  f.match = match;
  f.id = data.match(match).id();
  f.actual = data.match(match).outcome();
  return f;
}

void run_match(const MonsterContext& monster, const Selection& selection,
               const std::shared_ptr<const KnowledgeBase>& kb, const ForecastOptions& options, MatchForecast& out) {
  out.selection_rows = selection.rows;
  out.kb = kb;
  try {
    out.forecast = forecast_match(*kb, match_facts(monster, out.match, selection), options);
  } catch (const Error& e) {
    out.error = e.what();
  }
}

// All matches of one week share the selection, so one KB serves them all.
void run_week(const Dataset& data, const MonsterContext& monster, Timestamp week, const SelectionPolicy& policy,
              const ForecastOptions& options, const MiningOptions& mining, std::vector<MatchForecast>& out) {
  const auto indices = data.matches_in_week(week.season, week.week);
  for (std::size_t i : indices) out.push_back(blank(data, i));
  if (indices.empty()) return;
  try {
    const auto selection = select_context(data, monster, indices.front(), policy);
    const auto kb =
        std::make_shared<const KnowledgeBase>(contextual_kb(selection.context, policy.min_confidence, mining));
    for (auto& f : out) run_match(monster, selection, kb, options, f);
  } catch (const Error& e) {
    for (auto& f : out) f.error = e.what();
  }
}

void check_weeks(const Dataset& data, const std::vector<Timestamp>& weeks) {
  for (const auto& w : weeks)
    if (!std::binary_search(data.timeline().begin(), data.timeline().end(), w))
      throw DomainError("no matches in " + season_label(w.season) + " week " + std::to_string(w.week));
}

}  // namespace

std::vector<MatchForecast> forecast_weeks(const Dataset& data, const MonsterContext& monster,
                                          const std::vector<Timestamp>& weeks, const SelectionPolicy& policy,
                                          const ForecastOptions& options, const MiningOptions& mining) {
  policy.validate(monster);
  check_weeks(data, weeks);
  std::vector<std::vector<MatchForecast>> per_week(weeks.size());
  std::vector<std::exception_ptr> errors(weeks.size());
  const auto n = static_cast<std::ptrdiff_t>(weeks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t w = 0; w < n; ++w) {
    try {
      run_week(data, monster, weeks[w], policy, options, mining, per_week[w]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<MatchForecast> out;
  for (auto& wk : per_week)
    for (auto& f : wk) out.push_back(std::move(f));
  return out;
}

std::vector<MatchForecast> forecast_week(const Dataset& data, const MonsterContext& monster, int season, int week,
                                         const SelectionPolicy& policy, const ForecastOptions& options,
                                         const MiningOptions& mining) {
  return forecast_weeks(data, monster, {{season, week}}, policy, options, mining);
}

MatchForecast forecast_one(const Dataset& data, const MonsterContext& monster, std::size_t match,
                           const SelectionPolicy& policy, const ForecastOptions& options, const MiningOptions& mining) {
  auto f = blank(data, match);
  const auto selection = select_context(data, monster, match, policy);
  const auto kb =
      std::make_shared<const KnowledgeBase>(contextual_kb(selection.context, policy.min_confidence, mining));
  run_match(monster, selection, kb, options, f);
  return f;
}

namespace reference {

std::vector<MatchForecast> forecast_weeks(const Dataset& data, const MonsterContext& monster,
                                          const std::vector<Timestamp>& weeks, const SelectionPolicy& policy,
                                          const ForecastOptions& options, const MiningOptions& mining) {
  policy.validate(monster);
  check_weeks(data, weeks);
  std::vector<MatchForecast> out;
  for (const auto& w : weeks)
    for (std::size_t i : data.matches_in_week(w.season, w.week)) {
      auto f = blank(data, i);
      try {
        f = forecast_one(data, monster, i, policy, options, mining);
      } catch (const Error& e) {
        f.error = e.what();
      }
      out.push_back(std::move(f));
    }
  return out;
}

}  // namespace reference

json forecasts_to_json(const std::vector<MatchForecast>& forecasts) {
  json list = json::array();
  for (const auto& f : forecasts) {
    json j;
    if (f.forecast) {
      j = forecast_to_json(*f.kb, *f.forecast, f.id);
    } else {
      j = json{{"match", f.id}, {"error", f.error}};
    }
    j["actual"] = outcome_symbol(f.actual);
    j["selection_size"] = f.selection_rows.size();
    j["rules"] = f.kb ? f.kb->rules().size() : 0;
    list.push_back(std::move(j));
  }
  return json{{"schema_version", kSchemaVersion}, {"forecasts", std::move(list)}};
}

namespace {

// 53 random bits as a double in [0, 1).
double unit(std::mt19937_64& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

}  // namespace

WeightedPicker::WeightedPicker(std::array<double, 3> weights, std::uint64_t seed) : engine_(seed) {
  double total = 0;
  for (double w : weights) {
    if (!(w >= 0) || !std::isfinite(w)) throw ConfigError("baseline weights must be finite and non-negative");
    total += w;
  }
  if (!(total > 0)) throw ConfigError("baseline weights must not all be zero");
  cumulative_ = {weights[0] / total, (weights[0] + weights[1]) / total, 1.0};
}

Outcome WeightedPicker::next() {
  const double u = unit(engine_);
  if (u < cumulative_[0]) return Outcome::Home;
  if (u < cumulative_[1]) return Outcome::Draw;
  return Outcome::Away;
}

Predictor parse_predictor(const std::string& text) {
  if (text == "pipeline") return Predictor::Pipeline;
  if (text == "oracle") return Predictor::Oracle;
  throw ConfigError("unknown predictor '" + text + "' (expected pipeline or oracle)");
}

bool EvaluationReport::beats_all_baselines() const {
  return std::all_of(baselines.begin(), baselines.end(),
                     [&](const BaselineScore& b) { return hit_rate() > b.hit_rate; });
}

namespace {

std::string short_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, end};
}

std::string weighted_name(const std::array<double, 3>& w) {
  return "weighted-" + short_double(w[0]) + "-" + short_double(w[1]) + "-" + short_double(w[2]);
}

struct Slot {
  std::size_t week;  // index into report.weeks
  bool pool;
  Outcome actual;
  std::string id;
};

}  // namespace

EvaluationReport evaluate(const Dataset& data, const MonsterContext& monster, const SelectionPolicy& policy,
                          const EvaluationConfig& config, const ForecastOptions& options, const MiningOptions& mining) {
  if (config.trials == 0) throw ConfigError("trials must be positive");
  EvaluationReport report;
  if (config.predictor == Predictor::Pipeline) {
    report.forecasts = forecast_weeks(data, monster, config.weeks, policy, options, mining);
  } else {
    check_weeks(data, config.weeks);
    for (const auto& w : config.weeks)
      for (std::size_t i : data.matches_in_week(w.season, w.week)) {
        MatchForecast f = blank(data, i);
        Forecast fc;
        fc.pick = f.actual;
        (f.actual == Outcome::Home ? fc.home_win : f.actual == Outcome::Draw ? fc.draw : fc.away_win) = 1.0;
        f.forecast = fc;
        report.forecasts.push_back(std::move(f));
      }
  }

  std::vector<Slot> slots;
  for (const auto& f : report.forecasts) {
    const auto when = data.match(f.match).when();
    if (report.weeks.empty() || report.weeks.back().week != when) {
      WeekScore w;
      w.week = when;
      report.weeks.push_back(std::move(w));
    }
    auto& w = report.weeks.back();
    const bool pool = w.matches < config.pool_size;
    ++w.matches;
    w.hits += f.hit();
    if (pool) {
      ++w.pool_matches;
      w.pool_hits += f.hit();
    }
    w.errors += !f.error.empty();
    w.prior_only += f.forecast && !f.forecast->prior_only.empty();
    slots.push_back({report.weeks.size() - 1, pool, f.actual, f.id});
  }
  for (const auto& w : report.weeks) {
    report.matches += w.matches;
    report.hits += w.hits;
    report.pool_matches += w.pool_matches;
    report.pool_hits += w.pool_hits;
    report.errors += w.errors;
  }
  const double n = static_cast<double>(slots.size());
  const double pool_n = static_cast<double>(report.pool_matches);
  auto rate = [](double hits, double total) { return total > 0 ? hits / total : 0.0; };

  auto deterministic = [&](const std::string& name, auto pick) {
    BaselineScore b;
    b.name = name;
    double hits = 0, pool_hits = 0;
    for (const auto& s : slots) {
      const bool hit = pick(s) == std::optional<Outcome>(s.actual);
      hits += hit;
      pool_hits += hit && s.pool;
      report.weeks[s.week].baseline_hits[name] += hit;
    }
    b.hit_rate = rate(hits, n);
    b.pool_hit_rate = rate(pool_hits, pool_n);
    report.baselines.push_back(b);
  };
  if (config.always_home) deterministic("always-home", [](const Slot&) { return std::optional(Outcome::Home); });

  for (std::size_t k = 0; k < config.weighted.size(); ++k) {
    const auto& weights = config.weighted[k];
    BaselineScore b;
    b.name = weighted_name(weights);
    b.trials = config.trials;
    WeightedPicker picker(weights, config.seed + 7919 * k);
    std::vector<double> week_hits(report.weeks.size(), 0.0);
    double sum = 0, sum_sq = 0, pool_sum = 0;
    for (std::size_t t = 0; t < config.trials; ++t) {
      double hits = 0, pool_hits = 0;
      for (const auto& s : slots) {
        const bool hit = picker.next() == s.actual;
        hits += hit;
        pool_hits += hit && s.pool;
        week_hits[s.week] += hit;
      }
      const double r = rate(hits, n);
      sum += r;
      sum_sq += r * r;
      pool_sum += rate(pool_hits, pool_n);
    }
    const double trials = static_cast<double>(config.trials);
    b.hit_rate = sum / trials;
    b.stddev = config.trials > 1 ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1))) : 0.0;
    b.pool_hit_rate = pool_sum / trials;
    const double total = weights[0] + weights[1] + weights[2];
    double expected = 0;
    for (const auto& s : slots) expected += weights[static_cast<std::size_t>(s.actual)] / total;
    b.expected = rate(expected, n);
    for (std::size_t w = 0; w < week_hits.size(); ++w) report.weeks[w].baseline_hits[b.name] = week_hits[w] / trials;
    report.baselines.push_back(b);
  }

  if (!config.user_votes.empty())
    deterministic("user-votes", [&](const Slot& s) -> std::optional<Outcome> {
      auto it = config.user_votes.find(s.id);
      if (it == config.user_votes.end()) return std::nullopt;
      return it->second;
    });
  return report;
}

json report_to_json(const EvaluationReport& r) {
  json weeks = json::array();
  for (const auto& w : r.weeks) {
    weeks.push_back({{"season", season_label(w.week.season)},
                     {"week", w.week.week},
                     {"matches", w.matches},
                     {"hits", w.hits},
                     {"pool_matches", w.pool_matches},
                     {"pool_hits", w.pool_hits},
                     {"errors", w.errors},
                     {"prior_only", w.prior_only},
                     {"baseline_hits", w.baseline_hits}});
  }
  json baselines = json::array();
  for (const auto& b : r.baselines) {
    json j{{"name", b.name},
           {"hit_rate", b.hit_rate},
           {"stddev", b.stddev},
           {"pool_hit_rate", b.pool_hit_rate},
           {"trials", b.trials}};
    if (b.expected) j["expected_hit_rate"] = *b.expected;
    baselines.push_back(std::move(j));
  }
  return json{{"schema_version", kSchemaVersion},
              {"totals",
               {{"matches", r.matches},
                {"hits", r.hits},
                {"hit_rate", r.hit_rate()},
                {"pool_matches", r.pool_matches},
                {"pool_hits", r.pool_hits},
                {"pool_hit_rate", r.pool_hit_rate()},
                {"errors", r.errors}}},
              {"weeks", std::move(weeks)},
              {"baselines", std::move(baselines)},
              {"beats_all_baselines", r.beats_all_baselines()}};
}

void write_report_csv(std::ostream& out, const EvaluationReport& r) {
  out << "season,week,matches,hits,hit_rate,pool_matches,pool_hits";
  for (const auto& b : r.baselines) out << ',' << csv::quote(b.name);
  out << '\n';
  for (const auto& w : r.weeks) {
    out << season_label(w.week.season) << ',' << w.week.week << ',' << w.matches << ',' << w.hits << ','
        << short_double(w.matches ? static_cast<double>(w.hits) / static_cast<double>(w.matches) : 0.0) << ','
        << w.pool_matches << ',' << w.pool_hits;
    for (const auto& b : r.baselines) {
      auto it = w.baseline_hits.find(b.name);
      out << ',' << short_double(it == w.baseline_hits.end() ? 0.0 : it->second);
    }
    out << '\n';
  }
}

std::map<std::string, Outcome> parse_user_votes_csv(std::istream& in) {
  const csv::Table table(in, {"season", "week", "home", "away", "pick"});
  std::map<std::string, Outcome> out;
  for (const auto& row : table.rows()) {
    MatchRecord m;
    try {
      m.season = parse_season(table.get(row, "season"));
      m.week = static_cast<int>(csv::parse_int(table.get(row, "week"), row.line, "week"));
      m.home_team = table.get(row, "home");
      m.away_team = table.get(row, "away");
      out[m.id()] = parse_outcome(table.get(row, "pick"));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(row.line, e.what());
    }
  }
  return out;
}

std::vector<Timestamp> weeks_from(const Dataset& data, int first_season) {
  std::vector<Timestamp> out;
  for (const auto& t : data.timeline())
    if (t.season >= first_season) out.push_back(t);
  return out;
}

SyntheticLeague synthesize_league(const SyntheticLeagueOptions& o) {
  if (o.teams < 2 || o.teams % 2 != 0) throw ConfigError("synthetic league needs an even number of teams >= 2");
  if (o.seasons < 1) throw ConfigError("synthetic league needs at least one season");
  std::mt19937_64 rng(o.seed);
  auto below = [&](std::uint64_t n) { return static_cast<int>(rng() % n); };

  SyntheticLeague league;
  std::vector<std::string> names;
  std::vector<double> strength;
  for (int i = 0; i < o.teams; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "Team%02d", i + 1);
    names.emplace_back(buf);
    strength.push_back(unit(rng));
    league.strength[names.back()] = strength.back();
  }

  std::vector<MatchRecord> matches;
  std::vector<TeamMeta> budgets;
  const int rounds = o.teams - 1;
  for (int s = 0; s < o.seasons; ++s) {
    const int season = o.first_season + s;
    std::vector<int> order(o.teams);
    for (int i = 0; i < o.teams; ++i) order[i] = i;
    for (int i = o.teams - 1; i > 0; --i) std::swap(order[i], order[below(static_cast<std::uint64_t>(i) + 1)]);
    for (int i = 0; i < o.teams; ++i) {
      const double b = 10e6 * (1 + 3 * strength[i]) * (1 + 3 * strength[i]) * (0.9 + 0.2 * unit(rng));
      budgets.push_back({names[i], season, std::round(b / 1e5) * 1e5, o.division});
    }
    // Circle method: team order[0] stays, the rest rotate.
    for (int r = 0; r < 2 * rounds; ++r) {
      const int round = r % rounds;
      std::vector<int> ring(order.begin() + 1, order.end());
      std::rotate(ring.begin(), ring.begin() + round, ring.end());
      ring.insert(ring.begin(), order[0]);
      for (int k = 0; k < o.teams / 2; ++k) {
        int h = ring[k], a = ring[o.teams - 1 - k];
        if ((k == 0 ? round % 2 == 1 : k % 2 == 1) != (r >= rounds)) std::swap(h, a);
        const double gap = strength[h] - strength[a];
        Outcome result;
        if (std::fabs(gap) > o.deterministic_gap) {
          result = gap > 0 ? Outcome::Home : Outcome::Away;
        } else {
          const double p_home = 0.42 + 0.6 * gap;
          const double u = unit(rng);
          result = u < p_home ? Outcome::Home : u < p_home + 0.27 ? Outcome::Draw : Outcome::Away;
        }
        int hg = 0, ag = 0;
        if (result == Outcome::Draw) {
          hg = ag = below(3);
        } else {
          const int loser = below(2);
          const int winner = loser + 1 + below(3);
          hg = result == Outcome::Home ? winner : loser;
          ag = result == Outcome::Home ? loser : winner;
        }
        matches.push_back({season, r + 1, names[h], names[a], hg, ag, o.division});
      }
    }
  }
  league.data = Dataset(std::move(matches), std::move(budgets));
  return league;
}

}  // namespace galois
