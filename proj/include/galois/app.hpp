#pragma once

// Operations shared by the command line and the HTTP API, so both produce the
// same bytes for the same request.

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "galois/attributes.hpp"
#include "galois/forecast.hpp"
#include "galois/lattice.hpp"

namespace galois::app {

/// $GALOIS_DATA_DIR, or "." when unset.
std::string data_root();

struct RunConfig {
  std::string data_path;        // matches CSV
  std::string budgets_path;     // optional budgets CSV
  std::string attributes_path;  // empty: built-in baseline set
  SelectionPolicy policy;
  ForecastOptions forecast = pipeline_forecast_options();
  std::uint64_t seed = 20091031;

  /// Paths default to <data_root>/matches.csv and <data_root>/budgets.csv when that file exists.
  static RunConfig defaults();
};

/// Parses "2009-10/31" or "2009-10:31".
Timestamp parse_week(const std::string& text);
/// "none" or "" gives an empty subset; otherwise comma-separated labels.
std::vector<std::string> parse_subset(const std::string& text);

class Workspace {
 public:
  Workspace(Dataset data, AttributeSetConfig specs);
  /// Reads the files named in `config`.
  static Workspace load(const RunConfig& config);

  const Dataset& data() const noexcept { return data_; }
  const AttributeSetConfig& specs() const noexcept { return specs_; }
  const MonsterContext& monster() const noexcept { return monster_; }
  /// Throws ResolutionError.
  std::size_t match(const std::string& id) const { return data_.match_index(id); }

 private:
  Dataset data_;
  AttributeSetConfig specs_;
  MonsterContext monster_;
};

/// The subcontext a forecast of `match_id` would mine, optionally without the outcome columns.
FormalContext match_context(const Workspace& ws, const std::string& match_id, const SelectionPolicy& policy,
                            bool exclude_outcomes = false);

struct LatticeExport {
  std::string json;
  std::string dot;
  std::size_t concepts = 0;
  std::size_t edges = 0;
};
LatticeExport export_lattice(const FormalContext& ctx);

/// {schema_version, context, min_confidence, min_support, rules: [...]}
std::string rules_json(const FormalContext& ctx, const Rational& gamma, const Rational& min_support = Rational(0));
std::string rules_text(const FormalContext& ctx, const Rational& gamma, const Rational& min_support = Rational(0));

nlohmann::json summary_json(const Dataset& data);
nlohmann::json strictness_json(const MonsterContext& monster);

std::string forecast_match_json(const Workspace& ws, const std::string& match_id, const SelectionPolicy& policy,
                                const ForecastOptions& options);
std::string forecast_weeks_json(const Workspace& ws, const std::vector<Timestamp>& weeks, const SelectionPolicy& policy,
                                const ForecastOptions& options);

}  // namespace galois::app
