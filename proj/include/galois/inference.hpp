#pragma once

#include <cstddef>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "galois/context.hpp"
#include "galois/implications.hpp"
#include "galois/outcome.hpp"

namespace galois {

/// How a rule's premise confidences are aggregated before scaling by the rule's
/// confidence. Derivations of the same attribute always combine by noisy-OR.
enum class PropagationMode { MinProduct, ProductProduct };

std::string to_string(PropagationMode mode);
/// Accepts "min-product" / "product-product" (case-insensitive, '_' allowed). Throws ConfigError.
PropagationMode parse_propagation_mode(const std::string& text);

struct Fact {
  std::string attribute;
  double confidence = 1.0;
  bool operator==(const Fact&) const = default;
};

/// (|a'| + 1) / (|O| + 1); an empty context gives 1.
double initial_confidence(const FormalContext& ctx, std::size_t attribute);
double initial_confidence(const FormalContext& ctx, const std::string& attribute);

/// Rules over one attribute space, plus background implications treated as
/// confidence-1 rules, plus per-attribute priors from the source context.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  KnowledgeBase(std::vector<std::string> attributes, std::vector<AssociationRule> rules,
                std::vector<Implication> background, std::vector<double> priors, std::string fingerprint);

  /// Priors and fingerprint taken from `ctx`; rules must live in ctx's attribute space.
  static KnowledgeBase from_context(const FormalContext& ctx, std::vector<AssociationRule> rules,
                                    std::vector<Implication> background = {});

  const std::vector<std::string>& attributes() const noexcept { return attributes_; }
  const std::vector<AssociationRule>& rules() const noexcept { return rules_; }
  const std::vector<Implication>& background() const noexcept { return background_; }
  const std::vector<double>& priors() const noexcept { return priors_; }
  const std::string& fingerprint() const noexcept { return fingerprint_; }

  std::optional<std::size_t> find(const std::string& attribute) const;
  /// Throws ResolutionError.
  std::size_t index_of(const std::string& attribute) const;

  /// Rule `id` as text; ids at or past rules().size() address background implications.
  std::string describe(std::size_t id) const;

 private:
  std::vector<std::string> attributes_;
  std::vector<AssociationRule> rules_;
  std::vector<Implication> background_;
  std::vector<double> priors_;
  std::string fingerprint_;
};

struct InferenceOptions {
  double epsilon = 1e-9;
  std::size_t max_iterations = 1'000'000;
  /// Ignore mined rules whose support is zero (vacuous rules with no witnessing object).
  bool skip_unsupported_rules = false;
};

struct FiredRule {
  std::size_t rule;  // KnowledgeBase::describe id
  double rule_confidence;
  double fired_confidence;
  bool operator==(const FiredRule&) const = default;
};

struct InferenceResult {
  /// Every attribute with non-zero confidence, in attribute-space order.
  std::vector<Fact> facts;
  /// Rules that fired at the fixpoint, ordered by rule id.
  std::vector<FiredRule> trace;
  std::size_t iterations = 0;

  std::optional<double> confidence(const std::string& attribute) const;
};

/// Forward chaining to a fixpoint.
///
/// Each round recomputes, from the previous round's confidences,
///   fired(r) = conf(r) * agg(premise confidences)
///   c(a)     = 1 - (1 - c0(a)) * prod over fired rules concluding a of (1 - fired(r))
/// where c0 are the input facts (duplicates merged by noisy-OR). Factors are
/// multiplied in sorted order so the result does not depend on rule order.
/// Stops once no confidence moves by more than epsilon.
///
/// Throws ResolutionError for unknown attributes and NumericError for
/// non-finite or out-of-range confidences, or when max_iterations is exceeded.
InferenceResult infer(const KnowledgeBase& kb, const std::vector<Fact>& facts, PropagationMode mode,
                      const InferenceOptions& options = {});

/// Argmax with ties broken 1 > X > 2.
Outcome pick_outcome(double home_win, double draw, double away_win);

struct Forecast {
  double home_win = 0;
  double draw = 0;
  double away_win = 0;
  Outcome pick = Outcome::Home;
  std::vector<FiredRule> trace;
  /// Outcomes no rule concluded; their confidence is the prior.
  std::vector<Outcome> prior_only;
};

struct ForecastOptions {
  PropagationMode mode = PropagationMode::MinProduct;
  double home_reduction = 0.85;
  InferenceOptions inference;
};

/// Runs infer, substitutes priors for unreached outcomes, scales the home-win
/// confidence by home_reduction and picks the argmax.
///
/// Throws ConfigError if the KB lacks any of the outcome attributes "1", "X", "2"
/// or if home_reduction is outside (0, 1]; throws ConfigError if an outcome is
/// passed as a fact.
Forecast forecast_match(const KnowledgeBase& kb, const std::vector<Fact>& facts, const ForecastOptions& options = {});

/// Chains only the confidence-1 rules and the background implications from
/// `premises`; true iff every goal attribute is reached.
bool entails_with_certainty(const KnowledgeBase& kb, const std::vector<std::string>& premises,
                            const std::vector<std::string>& goal);

/// {match, c1, cx, c2, pick, prior_only, trace: [{rule, fired_conf}]}
nlohmann::json forecast_to_json(const KnowledgeBase& kb, const Forecast& forecast, const std::string& match);

}  // namespace galois
