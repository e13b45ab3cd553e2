#include "galois/inference.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "galois/context_io.hpp"
#include "galois/errors.hpp"

namespace galois {

std::string to_string(PropagationMode mode) {
  return mode == PropagationMode::MinProduct ? "min-product" : "product-product";
}

PropagationMode parse_propagation_mode(const std::string& text) {
  std::string t;
  for (char c : text) t += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "min-product" || t == "minproduct") return PropagationMode::MinProduct;
  if (t == "product-product" || t == "productproduct") return PropagationMode::ProductProduct;
  throw ConfigError("unknown propagation mode '" + text + "' (expected min-product or product-product)");
}

double initial_confidence(const FormalContext& ctx, std::size_t attribute) {
  const auto count = static_cast<double>(ctx.column(attribute).count());
  return (count + 1.0) / (static_cast<double>(ctx.object_count()) + 1.0);
}

double initial_confidence(const FormalContext& ctx, const std::string& attribute) {
  return initial_confidence(ctx, ctx.attribute_index(attribute));
}

KnowledgeBase::KnowledgeBase(std::vector<std::string> attributes, std::vector<AssociationRule> rules,
                             std::vector<Implication> background, std::vector<double> priors, std::string fingerprint)
    : attributes_(std::move(attributes)),
      rules_(std::move(rules)),
      background_(std::move(background)),
      priors_(std::move(priors)),
      fingerprint_(std::move(fingerprint)) {
  const std::size_t m = attributes_.size();
  auto check = [&](const Implication& imp) {
    if (imp.premise.universe() != m || imp.conclusion.universe() != m)
      throw ResolutionError("rule does not live in the knowledge base's attribute space");
  };
  for (const auto& r : rules_) check(r.implication);
  for (const auto& b : background_) check(b);
  if (priors_.size() != m) throw ConfigError("knowledge base priors do not match its attribute space");
}

KnowledgeBase KnowledgeBase::from_context(const FormalContext& ctx, std::vector<AssociationRule> rules,
                                          std::vector<Implication> background) {
  std::vector<double> priors;
  priors.reserve(ctx.attribute_count());
  for (std::size_t a = 0; a < ctx.attribute_count(); ++a) priors.push_back(initial_confidence(ctx, a));
  return KnowledgeBase(ctx.attributes(), std::move(rules), std::move(background), std::move(priors), ctx.fingerprint());
}

std::optional<std::size_t> KnowledgeBase::find(const std::string& attribute) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i)
    if (attributes_[i] == attribute) return i;
  return std::nullopt;
}

std::size_t KnowledgeBase::index_of(const std::string& attribute) const {
  if (auto i = find(attribute)) return *i;
  throw ResolutionError("attribute '" + attribute + "' is not in the knowledge base");
}

std::string KnowledgeBase::describe(std::size_t id) const {
  if (id < rules_.size()) return format_rule(attributes_, rules_[id]);
  return format_implication(attributes_, background_.at(id - rules_.size())) + " [background]";
}

std::optional<double> InferenceResult::confidence(const std::string& attribute) const {
  for (const auto& f : facts)
    if (f.attribute == attribute) return f.confidence;
  return std::nullopt;
}

namespace {

void check_confidence(double c, const std::string& what) {
  if (!std::isfinite(c)) throw NumericError("non-finite confidence for " + what);
  if (c < 0.0 || c > 1.0) throw NumericError("confidence for " + what + " outside [0, 1]");
}

struct CompiledRule {
  std::size_t id;
  double confidence;
  std::vector<std::size_t> premise;
  std::vector<std::size_t> conclusion;
};

}  // namespace

InferenceResult infer(const KnowledgeBase& kb, const std::vector<Fact>& facts, PropagationMode mode,
                      const InferenceOptions& options) {
  const std::size_t m = kb.attributes().size();
  std::vector<double> base(m, 0.0);
  for (const auto& f : facts) {
    const std::size_t a = kb.index_of(f.attribute);
    check_confidence(f.confidence, "fact '" + f.attribute + "'");
    base[a] = base[a] == 0.0 ? f.confidence : 1.0 - (1.0 - base[a]) * (1.0 - f.confidence);
  }

  std::vector<CompiledRule> rules;
  rules.reserve(kb.rules().size() + kb.background().size());
  for (std::size_t i = 0; i < kb.rules().size(); ++i) {
    const auto& r = kb.rules()[i];
    if (options.skip_unsupported_rules && r.support == Rational(0)) continue;
    const double c = to_double(r.confidence);
    check_confidence(c, "rule " + std::to_string(i));
    if (c == 0.0) continue;
    rules.push_back(CompiledRule{i, c, r.implication.premise.indices(), r.implication.conclusion.indices()});
  }
  for (std::size_t i = 0; i < kb.background().size(); ++i) {
    const auto& b = kb.background()[i];
    rules.push_back(CompiledRule{kb.rules().size() + i, 1.0, b.premise.indices(), b.conclusion.indices()});
  }
  std::sort(rules.begin(), rules.end(), [](const CompiledRule& a, const CompiledRule& b) { return a.id < b.id; });

  InferenceResult result;
  std::vector<double> state = base;
  std::vector<double> next(m);
  std::vector<std::vector<double>> factors(m);
  std::vector<FiredRule> fired;

  for (;;) {
    if (result.iterations == options.max_iterations)
      throw NumericError("inference did not reach a fixpoint within " + std::to_string(options.max_iterations) +
                         " rounds");
    ++result.iterations;
    for (auto& f : factors) f.clear();
    fired.clear();
    for (const auto& r : rules) {
      double agg = 1.0;
      if (mode == PropagationMode::MinProduct) {
        for (auto p : r.premise) agg = std::min(agg, state[p]);
      } else {
        for (auto p : r.premise) agg *= state[p];
      }
      const double f = r.confidence * agg;
      if (!(f > 0.0)) continue;
      fired.push_back(FiredRule{r.id, r.confidence, f});
      for (auto a : r.conclusion) factors[a].push_back(1.0 - f);
    }
    double delta = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      if (factors[a].empty()) {
        next[a] = base[a];
      } else {
        std::sort(factors[a].begin(), factors[a].end());
        double keep = 1.0 - base[a];
        for (double f : factors[a]) keep *= f;
        next[a] = 1.0 - keep;
      }
      if (!std::isfinite(next[a])) throw NumericError("non-finite confidence during inference");
      delta = std::max(delta, std::abs(next[a] - state[a]));
    }
    state.swap(next);
    if (delta <= options.epsilon) break;
  }

  for (std::size_t a = 0; a < m; ++a)
    if (state[a] > 0.0) result.facts.push_back(Fact{kb.attributes()[a], state[a]});
  result.trace = fired;
  return result;
}

Outcome pick_outcome(double home_win, double draw, double away_win) {
  if (home_win >= draw && home_win >= away_win) return Outcome::Home;
  if (draw >= away_win) return Outcome::Draw;
  return Outcome::Away;
}

Forecast forecast_match(const KnowledgeBase& kb, const std::vector<Fact>& facts, const ForecastOptions& options) {
  if (!std::isfinite(options.home_reduction) || options.home_reduction <= 0.0 || options.home_reduction > 1.0)
    throw ConfigError("home_reduction must lie in (0, 1]");
  const auto home = kb.find("1");
  const auto draw = kb.find("X");
  const auto away = kb.find("2");
  if (!home || !draw || !away) throw ConfigError("knowledge base lacks the outcome attributes 1, X and 2");
  for (const auto& f : facts)
    if (f.attribute == "1" || f.attribute == "X" || f.attribute == "2")
      throw ConfigError("outcome attribute '" + f.attribute + "' cannot be an input fact");

  const InferenceResult inferred = infer(kb, facts, options.mode, options.inference);
  Forecast out;
  out.trace = inferred.trace;
  auto resolve = [&](std::size_t index, Outcome outcome) {
    const auto c = inferred.confidence(kb.attributes()[index]);
    if (c) return *c;
    out.prior_only.push_back(outcome);
    return kb.priors()[index];
  };
  out.home_win = resolve(*home, Outcome::Home) * options.home_reduction;
  out.draw = resolve(*draw, Outcome::Draw);
  out.away_win = resolve(*away, Outcome::Away);
  out.pick = pick_outcome(out.home_win, out.draw, out.away_win);
  return out;
}

bool entails_with_certainty(const KnowledgeBase& kb, const std::vector<std::string>& premises,
                            const std::vector<std::string>& goal) {
  const std::size_t m = kb.attributes().size();
  std::vector<Implication> certain;
  for (const auto& r : kb.rules())
    if (r.exact()) certain.push_back(r.implication);
  for (const auto& b : kb.background()) certain.push_back(b);
  AttributeSet start(m), target(m);
  for (const auto& p : premises) start.insert(kb.index_of(p));
  for (const auto& g : goal) target.insert(kb.index_of(g));
  return target.is_subset_of(armstrong_closure(certain, start));
}

nlohmann::json forecast_to_json(const KnowledgeBase& kb, const Forecast& forecast, const std::string& match) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& t : forecast.trace)
    trace.push_back(nlohmann::json{{"rule", kb.describe(t.rule)}, {"fired_conf", t.fired_confidence}});
  nlohmann::json prior_only = nlohmann::json::array();
  for (auto o : forecast.prior_only) prior_only.push_back(outcome_symbol(o));
  return nlohmann::json{{"match", match},
                        {"c1", forecast.home_win},
                        {"cx", forecast.draw},
                        {"c2", forecast.away_win},
                        {"pick", outcome_symbol(forecast.pick)},
                        {"prior_only", std::move(prior_only)},
                        {"trace", std::move(trace)}};
}

}  // namespace galois
