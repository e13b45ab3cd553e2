#pragma once

#include <cstdint>
#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galois/context.hpp"
#include "galois/league.hpp"
#include "galois/rational.hpp"

namespace galois {

enum class Side { Home, Away };
std::string to_string(Side side);
/// "HOME" | "AWAY". Throws ConfigError.
Side parse_side(const std::string& text);

/// Measured quantity for each template. The spec compares it with "> threshold".
enum class AttributeKind : int {
  Wins = 1,  // wins in the team's last n matches
  Losses = 2,
  Draws = 3,
  Points = 4,
  WindowPosition = 5,  // position in a table over each team's last n matches
  WindowAbove = 6,     // positions above the opponent in that table
  WindowBelow = 7,     // positions below the opponent in that table
  HeadToHeadWins = 8,  // last n meetings with the opponent, across seasons
  HeadToHeadLosses = 9,
  HeadToHeadDraws = 10,  // counted from the home team's side
  Position = 11,         // current season table
  Above = 12,
  Below = 13,
  WinStreak = 14,
  LossStreak = 15,
  DrawStreak = 16,
  BudgetRatioAbove = 17,  // budget(team) > threshold * budget(opponent)
  BudgetRatioBelow = 18,  // budget(opponent) > threshold * budget(team)
};

inline constexpr int kAttributeKinds = 18;

struct AttributeParameters {
  bool team = false;
  bool n_matches = false;
  bool match_kind = false;
};
/// Which parameters a kind takes besides the threshold.
AttributeParameters parameters_of(AttributeKind kind);
std::string describe(AttributeKind kind);

struct AttributeSpec {
  AttributeKind kind = AttributeKind::Wins;
  double threshold = 0;
  std::optional<Side> team;
  std::optional<int> n_matches;
  std::optional<MatchKind> match_kind;

  /// ID_<kind>_<TEAM>_T_<threshold>[_N_<n>][_K_<kind>], TEAM omitted for kind 10.
  std::string label() const;
  /// Throws ConfigError naming the offending parameter.
  void validate() const;
  bool operator==(const AttributeSpec&) const = default;
};

/// Inverse of AttributeSpec::label; rejects non-canonical spellings. Throws ConfigError.
AttributeSpec parse_label(const std::string& label);

/// Per-cell notes on how a value was obtained.
enum Provenance : std::uint8_t {
  kExact = 0,
  kRescaled = 1,       // threshold scaled down for short history
  kWeekZero = 2,       // standings taken from the week-zero rules
  kCrossDivision = 4,  // history included matches from another division
  kNoHistory = 8,      // week-zero position without any history
};

struct Evaluation {
  bool value = false;
  std::uint8_t provenance = kExact;
};

/// Evaluates `spec` for `match` using only data strictly before its week.
/// The match does not need to belong to `data`. Throws EvaluationError when
/// budgets are missing or a team has no division for the season.
Evaluation evaluate(const AttributeSpec& spec, const MatchRecord& match, const Dataset& data);

/// The raw quantity compared against the (possibly rescaled) threshold.
struct Measure {
  double value = 0;
  double threshold = 0;
  std::uint8_t provenance = kExact;
};
Measure measure(const AttributeSpec& spec, const MatchRecord& match, const Dataset& data);

/// Boolean combination of specs. A leaf wraps one spec.
class CompositeSpec {
 public:
  enum class Op { Leaf, And, Or, Not };

  CompositeSpec(AttributeSpec leaf);  // NOLINT(google-explicit-constructor)
  static CompositeSpec all_of(std::vector<CompositeSpec> children, std::string name = {});
  static CompositeSpec any_of(std::vector<CompositeSpec> children, std::string name = {});
  static CompositeSpec negate(CompositeSpec child, std::string name = {});

  Op op() const noexcept { return op_; }
  const AttributeSpec& leaf() const { return leaf_; }
  const std::vector<CompositeSpec>& children() const noexcept { return children_; }
  bool is_leaf() const noexcept { return op_ == Op::Leaf; }

  /// The explicit name if set, else AND(..)/OR(..)/NOT(..) over child labels.
  std::string label() const;
  void validate() const;
  /// Leaves in depth-first order.
  std::vector<AttributeSpec> leaves() const;

 private:
  Op op_ = Op::Leaf;
  AttributeSpec leaf_;
  std::vector<CompositeSpec> children_;
  std::string name_;
};

Evaluation evaluate_composite(const CompositeSpec& spec, const MatchRecord& match, const Dataset& data);

using AttributeSetConfig = std::vector<CompositeSpec>;

/// Accepts {"attributes": [...]} or a bare list. Leaves are objects with kind,
/// threshold, team, n_matches and match_kind; combinations use "and", "or"
/// or "not", with an optional "name". Throws ConfigError.
AttributeSetConfig attributes_from_json(const nlohmann::json& doc);
nlohmann::json attributes_to_json(const AttributeSetConfig& specs);
AttributeSetConfig load_attributes(const std::string& path);
void save_attributes(const std::string& path, const AttributeSetConfig& specs);

/// Home and away instances of every kind; lax thresholds for the home side.
AttributeSetConfig baseline_attributes();
/// Same shape with higher thresholds.
AttributeSetConfig strict_attributes();

/// Matches as objects (dataset order), spec labels then "1", "X", "2" as attributes.
struct MonsterContext {
  FormalContext context;
  std::vector<std::vector<std::uint8_t>> provenance;  // [object][spec column]
  std::size_t spec_columns = 0;

  std::size_t outcome_column(Outcome outcome) const { return spec_columns + static_cast<std::size_t>(outcome); }
  std::vector<std::string> spec_labels() const;
};

/// Rejects duplicate or reserved labels with ConfigError; evaluation errors
/// propagate with the match id prepended. Rows are evaluated in parallel.
MonsterContext build_monster(const Dataset& data, const AttributeSetConfig& specs);

/// Support of one column: the share of objects that have it.
Rational strictness(const FormalContext& ctx, const std::string& label);

struct StrictnessEntry {
  std::string label;
  Rational support;
};
/// Spec columns, strictest (lowest support) first, ties by column order.
std::vector<StrictnessEntry> strictness_ranking(const MonsterContext& monster);

namespace reference {
/// Single-threaded build, kept for testing and benchmarks.
MonsterContext build_monster(const Dataset& data, const AttributeSetConfig& specs);
}  // namespace reference

}  // namespace galois
