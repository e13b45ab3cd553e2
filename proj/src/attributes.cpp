#include "galois/attributes.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <regex>
#include <set>

#include "galois/context_io.hpp"
#include "galois/errors.hpp"
#include "galois/implications.hpp"

namespace galois {

using nlohmann::json;

std::string to_string(Side side) { return side == Side::Home ? "HOME" : "AWAY"; }

Side parse_side(const std::string& text) {
  if (text == "HOME") return Side::Home;
  if (text == "AWAY") return Side::Away;
  throw ConfigError("unknown team side '" + text + "' (expected HOME or AWAY)");
}

AttributeParameters parameters_of(AttributeKind kind) {
  const int k = static_cast<int>(kind);
  if (k == 10) return {false, true, true};
  if (k <= 9) return {true, true, true};
  if (k <= 16) return {true, false, true};
  return {true, false, false};
}

std::string describe(AttributeKind kind) {
  static const char* const names[] = {
      "wins in previous matches",
      "losses in previous matches",
      "draws in previous matches",
      "points in previous matches",
      "position in the table over previous matches",
      "positions above the opponent over previous matches",
      "positions below the opponent over previous matches",
      "wins in previous meetings",
      "losses in previous meetings",
      "draws in previous meetings",
      "position in the table",
      "positions above the opponent",
      "positions below the opponent",
      "consecutive wins",
      "consecutive losses",
      "consecutive draws",
      "budget ratio over the opponent",
      "budget ratio under the opponent",
  };
  const int k = static_cast<int>(kind);
  return k >= 1 && k <= kAttributeKinds ? names[k - 1] : "unknown";
}

namespace {

std::string format_threshold(double t) {
  if (t == 0) t = 0;  // drop the sign of -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, t, std::chars_format::fixed);
  std::string s(buf, end);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

std::string AttributeSpec::label() const {
  std::string out = "ID_" + std::to_string(static_cast<int>(kind));
  if (team) out += "_" + to_string(*team);
  out += "_T_" + format_threshold(threshold);
  if (n_matches) out += "_N_" + std::to_string(*n_matches);
  if (match_kind) out += "_K_" + to_string(*match_kind);
  return out;
}

void AttributeSpec::validate() const {
  const int k = static_cast<int>(kind);
  if (k < 1 || k > kAttributeKinds) throw ConfigError("attribute kind must be 1.." + std::to_string(kAttributeKinds));
  const std::string where = "attribute kind " + std::to_string(k) + ": ";
  if (!std::isfinite(threshold) || threshold < 0) throw ConfigError(where + "threshold must be finite and >= 0");
  const auto p = parameters_of(kind);
  if (p.team != team.has_value()) throw ConfigError(where + (p.team ? "team is required" : "takes no team"));
  if (p.n_matches != n_matches.has_value())
    throw ConfigError(where + (p.n_matches ? "n_matches is required" : "takes no n_matches"));
  if (n_matches && *n_matches < 1) throw ConfigError(where + "n_matches must be positive");
  if (p.match_kind != match_kind.has_value())
    throw ConfigError(where + (p.match_kind ? "match_kind is required" : "takes no match_kind"));
}

AttributeSpec parse_label(const std::string& label) {
  static const std::regex pattern(
      R"(ID_(\d{1,2})(?:_(HOME|AWAY))?_T_([0-9.e+\-]+)(?:_N_(\d{1,6}))?(?:_K_(AS_HOME|AS_AWAY|ALL))?)");
  std::smatch m;
  if (!std::regex_match(label, m, pattern)) throw ConfigError("malformed attribute label '" + label + "'");
  AttributeSpec s;
  const int kind = std::stoi(m[1]);
  if (kind < 1 || kind > kAttributeKinds) throw ConfigError("unknown attribute kind in '" + label + "'");
  s.kind = static_cast<AttributeKind>(kind);
  const std::string t = m[3];
  auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), s.threshold);
  if (ec != std::errc{} || end != t.data() + t.size()) throw ConfigError("bad threshold in '" + label + "'");
  if (m[2].matched) s.team = parse_side(m[2]);
  if (m[4].matched) s.n_matches = std::stoi(m[4]);
  if (m[5].matched) s.match_kind = parse_match_kind(m[5]);
  s.validate();
  if (s.label() != label)
    throw ConfigError("non-canonical attribute label '" + label + "' (expected '" + s.label() + "')");
  return s;
}

namespace {

struct Sides {
  const std::string& team;
  const std::string& opponent;
};

Sides sides(const AttributeSpec& spec, const MatchRecord& match) {
  const Side side = spec.team.value_or(Side::Home);
  if (side == Side::Home) return {match.home_team, match.away_team};
  return {match.away_team, match.home_team};
}

double count_results(const Dataset& data, const std::vector<std::size_t>& matches, const std::string& team,
                     AttributeKind kind) {
  double total = 0;
  for (std::size_t i : matches) {
    const auto r = result_for(data.match(i), team);
    switch (kind) {
      case AttributeKind::Wins:
      case AttributeKind::HeadToHeadWins:
        total += r == TeamResult::Win;
        break;
      case AttributeKind::Losses:
      case AttributeKind::HeadToHeadLosses:
        total += r == TeamResult::Loss;
        break;
      case AttributeKind::Draws:
      case AttributeKind::HeadToHeadDraws:
        total += r == TeamResult::Draw;
        break;
      case AttributeKind::Points:
        total += r == TeamResult::Win ? 3 : r == TeamResult::Draw ? 1 : 0;
        break;
      default:
        break;
    }
  }
  return total;
}

int position_in(const StandingsTable& table, const std::string& team) {
  if (auto p = table.position_of(team)) return *p;
  throw EvaluationError("team '" + team + "' is not in the " + season_label(table.season) + " " + table.division +
                        " table");
}

double streak(const Dataset& data, const std::string& team, Timestamp before, MatchKind kind, TeamResult want) {
  const auto all = full_history(data, team, before, kind).matches;
  double n = 0;
  for (auto it = all.rbegin(); it != all.rend() && result_for(data.match(*it), team) == want; ++it) ++n;
  return n;
}

double budget_of(const Dataset& data, const std::string& team, int season) {
  if (auto b = data.budget(team, season)) return *b;
  throw EvaluationError("no budget for '" + team + "' in " + season_label(season));
}

}  // namespace

Measure measure(const AttributeSpec& spec, const MatchRecord& match, const Dataset& data) {
  spec.validate();
  const auto [team, opponent] = sides(spec, match);
  const Timestamp before = match.when();
  Measure out;
  out.threshold = spec.threshold;
  switch (spec.kind) {
    case AttributeKind::Wins:
    case AttributeKind::Losses:
    case AttributeKind::Draws:
    case AttributeKind::Points:
    case AttributeKind::HeadToHeadWins:
    case AttributeKind::HeadToHeadLosses:
    case AttributeKind::HeadToHeadDraws: {
      const int k = static_cast<int>(spec.kind);
      const auto n = static_cast<std::size_t>(*spec.n_matches);
      const auto h = k >= 8 ? history(data, team, before, n, *spec.match_kind, opponent)
                            : history(data, team, before, n, *spec.match_kind);
      out.value = count_results(data, h.matches, team, spec.kind);
      if (h.matches.size() < n) {
        out.threshold = rescale_threshold(spec.threshold, h.matches.size(), n);
        out.provenance |= kRescaled;
      }
      if (h.cross_division) out.provenance |= kCrossDivision;
      break;
    }
    case AttributeKind::WindowPosition:
    case AttributeKind::WindowAbove:
    case AttributeKind::WindowBelow: {
      const StandingsWindow window{*spec.n_matches, *spec.match_kind};
      const auto table = standings_before(data, before, match.division, window);
      const int own = position_in(table, team);
      const int other = position_in(table, opponent);
      out.value = spec.kind == AttributeKind::WindowPosition ? own
                  : spec.kind == AttributeKind::WindowAbove  ? other - own
                                                             : own - other;
      const auto n = static_cast<std::size_t>(*spec.n_matches);
      if (history(data, team, before, n, *spec.match_kind).cross_division ||
          history(data, opponent, before, n, *spec.match_kind).cross_division)
        out.provenance |= kCrossDivision;
      break;
    }
    case AttributeKind::Position:
    case AttributeKind::Above:
    case AttributeKind::Below: {
      int own = 0;
      int other = 0;
      if (before.week == 1) {
        const auto a = week_zero_position(data, team, before.season);
        const auto b = week_zero_position(data, opponent, before.season);
        own = a.position;
        other = b.position;
        out.provenance |= kWeekZero;
        if (a.flagged() || b.flagged()) out.provenance |= kNoHistory;
      } else {
        const auto table = standings_before(data, before, match.division, {std::nullopt, *spec.match_kind});
        own = position_in(table, team);
        other = position_in(table, opponent);
      }
      out.value = spec.kind == AttributeKind::Position ? own
                  : spec.kind == AttributeKind::Above  ? other - own
                                                       : own - other;
      break;
    }
    case AttributeKind::WinStreak:
      out.value = streak(data, team, before, *spec.match_kind, TeamResult::Win);
      break;
    case AttributeKind::LossStreak:
      out.value = streak(data, team, before, *spec.match_kind, TeamResult::Loss);
      break;
    case AttributeKind::DrawStreak:
      out.value = streak(data, team, before, *spec.match_kind, TeamResult::Draw);
      break;
    case AttributeKind::BudgetRatioAbove:
    case AttributeKind::BudgetRatioBelow: {
      const double own = budget_of(data, team, before.season);
      const double other = budget_of(data, opponent, before.season);
      // Compared as products so the threshold is never divided.
      if (spec.kind == AttributeKind::BudgetRatioAbove) {
        out.value = own;
        out.threshold = spec.threshold * other;
      } else {
        out.value = other;
        out.threshold = spec.threshold * own;
      }
      break;
    }
  }
  return out;
}

Evaluation evaluate(const AttributeSpec& spec, const MatchRecord& match, const Dataset& data) {
  const auto m = measure(spec, match, data);
  return {m.value > m.threshold, m.provenance};
}

CompositeSpec::CompositeSpec(AttributeSpec leaf) : op_(Op::Leaf), leaf_(std::move(leaf)) {}

CompositeSpec CompositeSpec::all_of(std::vector<CompositeSpec> children, std::string name) {
  CompositeSpec out(AttributeSpec{});
  out.op_ = Op::And;
  out.children_ = std::move(children);
  out.name_ = std::move(name);
  return out;
}

CompositeSpec CompositeSpec::any_of(std::vector<CompositeSpec> children, std::string name) {
  auto out = all_of(std::move(children), std::move(name));
  out.op_ = Op::Or;
  return out;
}

CompositeSpec CompositeSpec::negate(CompositeSpec child, std::string name) {
  auto out = all_of({std::move(child)}, std::move(name));
  out.op_ = Op::Not;
  return out;
}

std::string CompositeSpec::label() const {
  if (!name_.empty()) return name_;
  if (op_ == Op::Leaf) return leaf_.label();
  std::string out = op_ == Op::And ? "AND(" : op_ == Op::Or ? "OR(" : "NOT(";
  for (std::size_t i = 0; i < children_.size(); ++i) out += (i ? "," : "") + children_[i].label();
  return out + ")";
}

void CompositeSpec::validate() const {
  switch (op_) {
    case Op::Leaf:
      leaf_.validate();
      return;
    case Op::Not:
      if (children_.size() != 1) throw ConfigError("NOT takes exactly one operand");
      break;
    case Op::And:
    case Op::Or:
      if (children_.empty()) throw ConfigError("AND/OR need at least one operand");
      break;
  }
  for (const auto& c : children_) c.validate();
}

std::vector<AttributeSpec> CompositeSpec::leaves() const {
  if (op_ == Op::Leaf) return {leaf_};
  std::vector<AttributeSpec> out;
  for (const auto& c : children_) {
    auto sub = c.leaves();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

Evaluation evaluate_composite(const CompositeSpec& spec, const MatchRecord& match, const Dataset& data) {
  switch (spec.op()) {
    case CompositeSpec::Op::Leaf:
      return evaluate(spec.leaf(), match, data);
    case CompositeSpec::Op::Not: {
      auto e = evaluate_composite(spec.children().at(0), match, data);
      e.value = !e.value;
      return e;
    }
    case CompositeSpec::Op::And:
    case CompositeSpec::Op::Or: {
      const bool is_and = spec.op() == CompositeSpec::Op::And;
      Evaluation out{is_and, kExact};
      // No short-circuit: provenance covers every leaf.
      for (const auto& c : spec.children()) {
        const auto e = evaluate_composite(c, match, data);
        out.value = is_and ? (out.value && e.value) : (out.value || e.value);
        out.provenance |= e.provenance;
      }
      return out;
    }
  }
  return {};
}

namespace {

AttributeSpec leaf_from_json(const json& j) {
  AttributeSpec s;
  const int kind = j.at("kind").get<int>();
  if (kind < 1 || kind > kAttributeKinds)
    throw ConfigError("attribute kind must be 1.." + std::to_string(kAttributeKinds));
  s.kind = static_cast<AttributeKind>(kind);
  s.threshold = j.at("threshold").get<double>();
  if (j.contains("team")) s.team = parse_side(j["team"].get<std::string>());
  if (j.contains("n_matches")) s.n_matches = j["n_matches"].get<int>();
  if (j.contains("match_kind")) s.match_kind = parse_match_kind(j["match_kind"].get<std::string>());
  s.validate();
  return s;
}

CompositeSpec composite_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("attribute entries must be objects");
  const std::string name = j.value("name", std::string{});
  if (j.contains("and") || j.contains("or")) {
    const auto& list = j.contains("and") ? j["and"] : j["or"];
    if (!list.is_array()) throw ConfigError("'and'/'or' take a list");
    std::vector<CompositeSpec> children;
    for (const auto& c : list) children.push_back(composite_from_json(c));
    auto out = j.contains("and") ? CompositeSpec::all_of(std::move(children), name)
                                 : CompositeSpec::any_of(std::move(children), name);
    out.validate();
    return out;
  }
  if (j.contains("not")) return CompositeSpec::negate(composite_from_json(j["not"]), name);
  if (!name.empty()) throw ConfigError("only combinations may carry a name");
  return leaf_from_json(j);
}

json leaf_to_json(const AttributeSpec& s) {
  json j{{"kind", static_cast<int>(s.kind)}, {"threshold", s.threshold}};
  if (s.team) j["team"] = to_string(*s.team);
  if (s.n_matches) j["n_matches"] = *s.n_matches;
  if (s.match_kind) j["match_kind"] = to_string(*s.match_kind);
  return j;
}

json composite_to_json(const CompositeSpec& c) {
  if (c.is_leaf()) return leaf_to_json(c.leaf());
  json j;
  if (c.op() == CompositeSpec::Op::Not) {
    j["not"] = composite_to_json(c.children().front());
  } else {
    json list = json::array();
    for (const auto& child : c.children()) list.push_back(composite_to_json(child));
    j[c.op() == CompositeSpec::Op::And ? "and" : "or"] = std::move(list);
  }
  // Only an explicit name differs from the generated one.
  CompositeSpec unnamed = c.op() == CompositeSpec::Op::Not   ? CompositeSpec::negate(c.children().front())
                          : c.op() == CompositeSpec::Op::And ? CompositeSpec::all_of(c.children())
                                                             : CompositeSpec::any_of(c.children());
  if (unnamed.label() != c.label()) j["name"] = c.label();
  return j;
}

}  // namespace

AttributeSetConfig attributes_from_json(const json& doc) {
  try {
    const json* list = &doc;
    if (doc.is_object()) {
      if (doc.contains("schema_version") && doc["schema_version"].get<int>() != kSchemaVersion)
        throw ConfigError("unsupported attribute schema_version " + doc["schema_version"].dump());
      list = &doc.at("attributes");
    }
    if (!list->is_array()) throw ConfigError("attribute set must be a list");
    AttributeSetConfig out;
    for (const auto& entry : *list) out.push_back(composite_from_json(entry));
    return out;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed attribute set: ") + e.what());
  }
}

json attributes_to_json(const AttributeSetConfig& specs) {
  json list = json::array();
  for (const auto& s : specs) list.push_back(composite_to_json(s));
  return json{{"schema_version", kSchemaVersion}, {"attributes", std::move(list)}};
}

AttributeSetConfig load_attributes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return attributes_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

void save_attributes(const std::string& path, const AttributeSetConfig& specs) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << dump_json(attributes_to_json(specs));
}

namespace {

AttributeSpec spec(int kind, Side side, double t, std::optional<int> n, std::optional<MatchKind> k) {
  AttributeSpec s;
  s.kind = static_cast<AttributeKind>(kind);
  s.threshold = t;
  if (parameters_of(s.kind).team) s.team = side;
  s.n_matches = n;
  s.match_kind = k;
  return s;
}

struct PresetRow {
  int kind;
  std::optional<int> n;
  std::optional<MatchKind> match_kind;
  bool own_venue;  // AS_HOME for the home instance, AS_AWAY for the away one
  double home;
  double away;
};

AttributeSetConfig preset(const std::vector<PresetRow>& rows) {
  AttributeSetConfig out;
  for (Side side : {Side::Home, Side::Away}) {
    for (const auto& r : rows) {
      if (!parameters_of(static_cast<AttributeKind>(r.kind)).team) continue;
      const auto kind =
          r.own_venue ? std::optional(side == Side::Home ? MatchKind::AsHome : MatchKind::AsAway) : r.match_kind;
      out.push_back(spec(r.kind, side, side == Side::Home ? r.home : r.away, r.n, kind));
    }
  }
  for (const auto& r : rows)
    if (!parameters_of(static_cast<AttributeKind>(r.kind)).team)
      out.push_back(spec(r.kind, Side::Home, r.home, r.n, r.match_kind));
  return out;
}

constexpr auto kAll = MatchKind::All;

}  // namespace

AttributeSetConfig baseline_attributes() {
  return preset({
      {1, 5, kAll, false, 2, 3},
      {2, 5, kAll, false, 2, 3},
      {4, 6, std::nullopt, true, 8, 10},
      {6, 10, kAll, false, 3, 5},
      {8, 4, kAll, false, 1, 2},
      {12, std::nullopt, kAll, false, 4, 6},
      {14, std::nullopt, kAll, false, 1, 2},
      {17, std::nullopt, std::nullopt, false, 1.5, 2},
      {10, 4, kAll, false, 1, 1},
      {11, std::nullopt, kAll, false, 10, 10},
  });
}

AttributeSetConfig strict_attributes() {
  return preset({
      {1, 5, kAll, false, 3, 4},
      {2, 5, kAll, false, 3, 4},
      {4, 6, std::nullopt, true, 11, 13},
      {6, 10, kAll, false, 6, 8},
      {8, 4, kAll, false, 2, 3},
      {12, std::nullopt, kAll, false, 7, 9},
      {14, std::nullopt, kAll, false, 2, 3},
      {17, std::nullopt, std::nullopt, false, 2.5, 3},
      {10, 4, kAll, false, 2, 2},
      {11, std::nullopt, kAll, false, 14, 14},
  });
}

std::vector<std::string> MonsterContext::spec_labels() const {
  return {context.attributes().begin(), context.attributes().begin() + static_cast<std::ptrdiff_t>(spec_columns)};
}

namespace {

std::vector<std::string> checked_labels(const AttributeSetConfig& specs) {
  std::vector<std::string> labels;
  std::set<std::string> seen{"1", "X", "2"};
  for (const auto& s : specs) {
    s.validate();
    auto label = s.label();
    if (!seen.insert(label).second) throw ConfigError("duplicate or reserved attribute label '" + label + "'");
    labels.push_back(std::move(label));
  }
  return labels;
}

MonsterContext assemble(const Dataset& data, const AttributeSetConfig& specs, std::vector<std::string> labels,
                        std::vector<std::vector<Evaluation>>& cells) {
  const std::size_t rows = data.matches().size();
  std::vector<std::string> objects;
  std::vector<std::vector<bool>> incidence(rows, std::vector<bool>(specs.size() + 3));
  MonsterContext out{FormalContext({}, {}, std::vector<std::vector<bool>>{}), {}, specs.size()};
  out.provenance.assign(rows, std::vector<std::uint8_t>(specs.size()));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& m = data.match(r);
    objects.push_back(m.id());
    for (std::size_t c = 0; c < specs.size(); ++c) {
      incidence[r][c] = cells[r][c].value;
      out.provenance[r][c] = cells[r][c].provenance;
    }
    incidence[r][specs.size() + static_cast<std::size_t>(m.outcome())] = true;
  }
  for (Outcome o : kOutcomes) labels.push_back(outcome_symbol(o));
  out.context = FormalContext(std::move(objects), std::move(labels), incidence);
  return out;
}

void evaluate_row(const Dataset& data, const AttributeSetConfig& specs, std::size_t r, std::vector<Evaluation>& row) {
  const auto& m = data.match(r);
  try {
    for (std::size_t c = 0; c < specs.size(); ++c) row[c] = evaluate_composite(specs[c], m, data);
  } catch (const EvaluationError& e) {
    throw EvaluationError(m.id() + ": " + e.what());
  }
}

}  // namespace

MonsterContext build_monster(const Dataset& data, const AttributeSetConfig& specs) {
  auto labels = checked_labels(specs);
  const auto rows = static_cast<std::ptrdiff_t>(data.matches().size());
  std::vector<std::vector<Evaluation>> cells(data.matches().size(), std::vector<Evaluation>(specs.size()));
  std::vector<std::exception_ptr> errors(data.matches().size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    try {
      evaluate_row(data, specs, static_cast<std::size_t>(r), cells[r]);
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return assemble(data, specs, std::move(labels), cells);
}

namespace reference {

MonsterContext build_monster(const Dataset& data, const AttributeSetConfig& specs) {
  auto labels = checked_labels(specs);
  std::vector<std::vector<Evaluation>> cells(data.matches().size(), std::vector<Evaluation>(specs.size()));
  for (std::size_t r = 0; r < cells.size(); ++r) evaluate_row(data, specs, r, cells[r]);
  return assemble(data, specs, std::move(labels), cells);
}

}  // namespace reference

Rational strictness(const FormalContext& ctx, const std::string& label) {
  return support(ctx, ctx.attribute_set({label}));
}

std::vector<StrictnessEntry> strictness_ranking(const MonsterContext& monster) {
  std::vector<StrictnessEntry> out;
  for (const auto& label : monster.spec_labels()) out.push_back({label, strictness(monster.context, label)});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.support < b.support; });
  return out;
}

}  // namespace galois
