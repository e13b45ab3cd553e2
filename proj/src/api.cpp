#include "galois/api.hpp"

#include <optional>

#include "galois/context_io.hpp"
#include "galois/errors.hpp"

namespace galois::api {

using nlohmann::json;

namespace {

struct HttpError {
  int status;
  std::string message;
};

Response error_response(int status, const std::string& message) {
  return {status, dump_json(json{{"schema_version", kSchemaVersion}, {"status", status}, {"error", message}})};
}

std::string text_of(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Query parameters and JSON bodies share the same knobs.
struct Knobs {
  std::optional<std::string> match;
  std::optional<std::string> gamma;
  std::optional<std::string> min_support;
  std::optional<std::string> lookback;
  std::optional<std::string> subset;
  std::optional<std::string> mode;
  std::optional<std::string> home_reduction;
  bool exclude_outcomes = false;

  static Knobs from_query(const std::map<std::string, std::string>& q) {
    Knobs k;
    auto get = [&](const char* key) -> std::optional<std::string> {
      auto it = q.find(key);
      return it == q.end() ? std::nullopt : std::optional(it->second);
    };
    k.match = get("match");
    k.gamma = get("gamma");
    k.min_support = get("min_support");
    k.lookback = get("lookback");
    k.subset = get("subset");
    auto ex = get("exclude_outcomes");
    k.exclude_outcomes = ex && (*ex == "1" || *ex == "true");
    return k;
  }

  static Knobs from_body(const json& b) {
    Knobs k;
    auto get = [&](const char* key) -> std::optional<std::string> {
      if (!b.contains(key) || b[key].is_null()) return std::nullopt;
      if (b[key].is_array()) {
        std::string joined;
        for (const auto& item : b[key]) joined += (joined.empty() ? "" : ",") + text_of(item);
        return joined.empty() ? std::optional<std::string>("none") : std::optional(joined);
      }
      return text_of(b[key]);
    };
    k.match = get("match");
    k.gamma = get("gamma");
    k.min_support = get("min_support");
    k.lookback = get("lookback");
    k.subset = get("subset");
    k.mode = get("mode");
    k.home_reduction = get("home_reduction");
    return k;
  }
};

Rational parse_fraction(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw HttpError{422, std::string("invalid ") + what + " '" + text + "'"};
  }
}

SelectionPolicy policy_from(const Knobs& k, SelectionPolicy policy) {
  if (k.gamma) {
    policy.min_confidence = parse_fraction(*k.gamma, "gamma");
    if (!(policy.min_confidence > 0 && policy.min_confidence <= 1))
      throw HttpError{422, "gamma must be in (0, 1], got " + *k.gamma};
  }
  if (k.lookback) {
    try {
      std::size_t used = 0;
      policy.lookback_weeks = std::stoi(*k.lookback, &used);
      if (used != k.lookback->size()) throw std::invalid_argument("lookback");
    } catch (const std::exception&) {
      throw HttpError{422, "invalid lookback '" + *k.lookback + "'"};
    }
  }
  if (k.subset) policy.attribute_subset = app::parse_subset(*k.subset);
  return policy;
}

ForecastOptions forecast_from(const Knobs& k, ForecastOptions options) {
  if (k.mode) options.mode = parse_propagation_mode(*k.mode);
  if (k.home_reduction) {
    try {
      std::size_t used = 0;
      options.home_reduction = std::stod(*k.home_reduction, &used);
      if (used != k.home_reduction->size()) throw std::invalid_argument("home_reduction");
    } catch (const std::exception&) {
      throw HttpError{422, "invalid home_reduction '" + *k.home_reduction + "'"};
    }
    if (!(options.home_reduction > 0 && options.home_reduction <= 1))
      throw HttpError{422, "home_reduction must be in (0, 1], got " + *k.home_reduction};
  }
  return options;
}

const std::string& require_match(const Knobs& k) {
  if (!k.match) throw HttpError{422, "missing 'match'"};
  return *k.match;
}

json parse_body(const Request& r) {
  try {
    return r.body.empty() ? json::object() : json::parse(r.body);
  } catch (const json::parse_error& e) {
    throw HttpError{400, std::string("malformed JSON body: ") + e.what()};
  }
}

}  // namespace

Service::Service(app::Workspace workspace, app::RunConfig config)
    : workspace_(std::move(workspace)), config_(std::move(config)) {}

Response Service::handle(const Request& request) const {
  try {
    const auto& path = request.path;
    const bool get = request.method == "GET";
    const bool post = request.method == "POST";
    if (get && path == "/api/summary") return {200, dump_json(app::summary_json(workspace_.data()))};
    if (get && path == "/api/attributes") {
      auto doc = attributes_to_json(workspace_.specs());
      json labels = json::array();
      for (const auto& s : workspace_.specs()) labels.push_back(s.label());
      doc["labels"] = labels;
      return {200, dump_json(doc)};
    }
    if (get && path == "/api/strictness") return {200, dump_json(app::strictness_json(workspace_.monster()))};
    if (get && path == "/api/lattice") {
      const auto k = Knobs::from_query(request.query);
      const auto policy = policy_from(k, config_.policy);
      const auto ctx = app::match_context(workspace_, require_match(k), policy, k.exclude_outcomes);
      return {200, app::export_lattice(ctx).json};
    }
    if (get && path == "/api/rules") {
      const auto k = Knobs::from_query(request.query);
      const auto policy = policy_from(k, config_.policy);
      const auto ctx = app::match_context(workspace_, require_match(k), policy);
      const auto min_support = k.min_support ? parse_fraction(*k.min_support, "min_support") : Rational(0);
      return {200, app::rules_json(ctx, policy.min_confidence, min_support)};
    }
    if (post && path == "/api/attributes/evaluate") {
      const auto body = parse_body(request);
      if (!body.is_object() || !body.contains("attributes")) throw HttpError{422, "missing 'attributes'"};
      const auto k = Knobs::from_body(body);
      const app::Workspace edited(workspace_.data(), attributes_from_json(body["attributes"]));
      auto out = app::strictness_json(edited.monster());
      if (k.match) {
        const auto policy = policy_from(k, config_.policy);
        const auto ctx = app::match_context(edited, *k.match, policy);
        out["match"] = *k.match;
        out["min_confidence"] = to_string(policy.min_confidence);
        out["rule_count"] = mine_association_rules(ctx, policy.min_confidence, Rational(0)).size();
      }
      return {200, dump_json(out)};
    }
    if (post && path == "/api/forecast") {
      const auto body = parse_body(request);
      if (!body.is_object()) throw HttpError{400, "body must be a JSON object"};
      const auto k = Knobs::from_body(body);
      const auto policy = policy_from(k, config_.policy);
      const auto options = forecast_from(k, config_.forecast);
      if (body.contains("attributes")) {
        const app::Workspace edited(workspace_.data(), attributes_from_json(body["attributes"]));
        return {200, app::forecast_match_json(edited, require_match(k), policy, options)};
      }
      return {200, app::forecast_match_json(workspace_, require_match(k), policy, options)};
    }
    const bool known = path == "/api/summary" || path == "/api/attributes" || path == "/api/strictness" ||
                       path == "/api/lattice" || path == "/api/rules" || path == "/api/attributes/evaluate" ||
                       path == "/api/forecast";
    if (known) return error_response(405, "method " + request.method + " not allowed on " + path);
    return error_response(404, "no such endpoint " + path);
  } catch (const HttpError& e) {
    return error_response(e.status, e.message);
  } catch (const ResolutionError& e) {
    return error_response(404, e.what());
  } catch (const ConfigError& e) {
    return error_response(422, e.what());
  } catch (const DomainError& e) {
    return error_response(422, e.what());
  } catch (const Error& e) {
    return error_response(500, e.what());
  }
}

}  // namespace galois::api
