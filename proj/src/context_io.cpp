#include "galois/context_io.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "galois/errors.hpp"

namespace galois {

using nlohmann::json;

nlohmann::json context_to_json(const FormalContext& ctx) {
  json incidence = json::array();
  for (std::size_t o = 0; o < ctx.object_count(); ++o) {
    json row = json::array();
    for (std::size_t a = 0; a < ctx.attribute_count(); ++a) row.push_back(ctx.incident(o, a) ? 1 : 0);
    incidence.push_back(std::move(row));
  }
  return json{{"objects", ctx.objects()}, {"attributes", ctx.attributes()}, {"incidence", std::move(incidence)}};
}

FormalContext context_from_json(const nlohmann::json& doc) {
  try {
    auto objects = doc.at("objects").get<std::vector<std::string>>();
    auto attributes = doc.at("attributes").get<std::vector<std::string>>();
    std::vector<std::vector<bool>> incidence;
    for (const auto& row : doc.at("incidence")) {
      std::vector<bool> r;
      for (const auto& cell : row) {
        if (cell.is_boolean()) {
          r.push_back(cell.get<bool>());
        } else {
          const int v = cell.get<int>();
          if (v != 0 && v != 1) throw ConfigError("incidence cells must be 0 or 1");
          r.push_back(v == 1);
        }
      }
      incidence.push_back(std::move(r));
    }
    return FormalContext(std::move(objects), std::move(attributes), incidence);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed context JSON: ") + e.what());
  }
}

void write_cxt(std::ostream& out, const FormalContext& ctx) {
  out << "B\n\n" << ctx.object_count() << '\n' << ctx.attribute_count() << "\n\n";
  for (const auto& o : ctx.objects()) out << o << '\n';
  for (const auto& a : ctx.attributes()) out << a << '\n';
  for (std::size_t o = 0; o < ctx.object_count(); ++o) {
    for (std::size_t a = 0; a < ctx.attribute_count(); ++a) out << (ctx.incident(o, a) ? 'X' : '.');
    out << '\n';
  }
}

namespace {

std::string rstrip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

std::size_t parse_count(const std::string& s, std::size_t line) {
  if (s.empty()) throw ParseError(line, "expected a count");
  for (char c : s)
    if (c < '0' || c > '9') throw ParseError(line, "expected a count, got '" + s + "'");
  return std::stoul(s);
}

}  // namespace

FormalContext read_cxt(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(rstrip(line));
  std::size_t pos = 0;
  auto line_no = [&] { return pos + 1; };
  if (lines.empty() || lines[0] != "B") throw ParseError(1, "expected 'B' header");
  pos = 1;
  // Optional context name, then blank lines.
  if (pos < lines.size() && !lines[pos].empty() && lines[pos].find_first_not_of("0123456789") != std::string::npos)
    ++pos;
  while (pos < lines.size() && lines[pos].empty()) ++pos;
  if (pos >= lines.size()) throw ParseError(line_no(), "missing object count");
  const std::size_t n_obj = parse_count(lines[pos], line_no());
  ++pos;
  while (pos < lines.size() && lines[pos].empty()) ++pos;
  if (pos >= lines.size()) throw ParseError(line_no(), "missing attribute count");
  const std::size_t n_attr = parse_count(lines[pos], line_no());
  ++pos;
  // Exactly one separator line before the names, which may themselves be blank.
  if (pos < lines.size() && lines[pos].empty()) ++pos;

  std::vector<std::string> objects, attributes;
  for (std::size_t k = 0; k < n_obj; ++k, ++pos) {
    if (pos >= lines.size()) throw ParseError(line_no(), "missing object name");
    objects.push_back(lines[pos]);
  }
  for (std::size_t k = 0; k < n_attr; ++k, ++pos) {
    if (pos >= lines.size()) throw ParseError(line_no(), "missing attribute name");
    attributes.push_back(lines[pos]);
  }
  std::vector<std::vector<bool>> incidence;
  for (std::size_t k = 0; k < n_obj; ++k, ++pos) {
    if (pos >= lines.size()) throw ParseError(line_no(), "missing incidence row");
    const std::string& row = lines[pos];
    if (row.size() != n_attr)
      throw ParseError(
          line_no(), "incidence row has " + std::to_string(row.size()) + " cells, expected " + std::to_string(n_attr));
    std::vector<bool> r;
    for (char c : row) {
      if (c == 'X' || c == 'x')
        r.push_back(true);
      else if (c == '.')
        r.push_back(false);
      else
        throw ParseError(line_no(), std::string("unexpected incidence cell '") + c + "'");
    }
    incidence.push_back(std::move(r));
  }
  for (; pos < lines.size(); ++pos)
    if (!lines[pos].empty()) throw ParseError(line_no(), "trailing content after incidence rows");
  return FormalContext(std::move(objects), std::move(attributes), incidence);
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

FormalContext load_context(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open context file '" + path + "'");
  if (ends_with(path, ".cxt")) return read_cxt(in);
  try {
    return context_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
}

void save_context(const std::string& path, const FormalContext& ctx) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  if (ends_with(path, ".cxt"))
    write_cxt(out, ctx);
  else
    out << dump_json(context_to_json(ctx));
}

ReducedLabels reduced_labels(const FormalContext& ctx, const ConceptLattice& lattice) {
  std::unordered_map<AttributeSet, std::size_t, IndexSetHash> by_intent;
  for (std::size_t i = 0; i < lattice.size(); ++i) by_intent.emplace(lattice.concepts[i].intent, i);
  ReducedLabels labels;
  labels.attributes.resize(lattice.size());
  labels.objects.resize(lattice.size());
  for (std::size_t a = 0; a < ctx.attribute_count(); ++a) {
    AttributeSet single(ctx.attribute_count());
    single.insert(a);
    labels.attributes[by_intent.at(closure(ctx, single))].push_back(a);
  }
  for (std::size_t o = 0; o < ctx.object_count(); ++o) labels.objects[by_intent.at(ctx.row(o))].push_back(o);
  return labels;
}

nlohmann::json lattice_to_json(const FormalContext& ctx, const ConceptLattice& lattice) {
  const ReducedLabels labels = reduced_labels(ctx, lattice);
  json concepts = json::array();
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const Concept& c = lattice.concepts[i];
    std::vector<std::string> own_attrs, own_objs;
    for (auto a : labels.attributes[i]) own_attrs.push_back(ctx.attributes()[a]);
    for (auto o : labels.objects[i]) own_objs.push_back(ctx.objects()[o]);
    concepts.push_back(json{{"id", i},
                            {"extent", ctx.object_names(c.extent)},
                            {"intent", ctx.attribute_names(c.intent)},
                            {"own_attributes", own_attrs},
                            {"own_objects", own_objs}});
  }
  json edges = json::array();
  for (std::size_t i = 0; i < lattice.size(); ++i)
    for (auto j : lattice.lower_covers[i]) edges.push_back(json::array({i, j}));
  return json{{"schema_version", kSchemaVersion}, {"objects", ctx.objects()},
              {"attributes", ctx.attributes()},   {"top", lattice.top()},
              {"bottom", lattice.bottom()},       {"concepts", std::move(concepts)},
              {"edges", std::move(edges)}};
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string join_names(const std::vector<std::string>& names, const std::vector<std::size_t>& idx) {
  std::string out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) out += ", ";
    out += dot_escape(names[idx[k]]);
  }
  return out;
}

}  // namespace

std::string lattice_to_dot(const FormalContext& ctx, const ConceptLattice& lattice) {
  const ReducedLabels labels = reduced_labels(ctx, lattice);
  std::ostringstream out;
  out << "digraph lattice {\n"
      << "  node [shape=box, style=rounded, fontsize=10];\n"
      << "  edge [arrowhead=none];\n";
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    out << "  c" << i << " [label=\"" << join_names(ctx.attributes(), labels.attributes[i]) << "\\n"
        << join_names(ctx.objects(), labels.objects[i])
        << "\", tooltip=\"|extent|=" << lattice.concepts[i].extent.count()
        << " |intent|=" << lattice.concepts[i].intent.count() << "\"];\n";
  }
  for (std::size_t i = 0; i < lattice.size(); ++i)
    for (auto j : lattice.lower_covers[i]) out << "  c" << i << " -> c" << j << ";\n";
  out << "}\n";
  return out.str();
}

nlohmann::json rules_to_json(const FormalContext& ctx, const std::vector<AssociationRule>& rules) {
  json out = json::array();
  for (const auto& r : rules)
    out.push_back(json{{"premise", ctx.attribute_names(r.implication.premise)},
                       {"conclusion", ctx.attribute_names(r.implication.conclusion)},
                       {"support", to_string(r.support)},
                       {"confidence", to_string(r.confidence)}});
  return out;
}

std::vector<AssociationRule> rules_from_json(const FormalContext& ctx, const nlohmann::json& doc) {
  std::vector<AssociationRule> rules;
  try {
    for (const auto& r : doc) {
      rules.push_back(AssociationRule{
          Implication{ctx.attribute_set(r.at("premise").get<std::vector<std::string>>()),
                      ctx.attribute_set(r.at("conclusion").get<std::vector<std::string>>())},
          parse_rational(r.at("support").get<std::string>()), parse_rational(r.at("confidence").get<std::string>())});
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed rule JSON: ") + e.what());
  }
  return rules;
}

std::string format_set(const std::vector<std::string>& names) {
  if (names.empty()) return "{}";
  std::string out;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (k) out += ", ";
    out += names[k];
  }
  return out;
}

namespace {

std::vector<std::string> names_of(const std::vector<std::string>& names, const AttributeSet& set) {
  std::vector<std::string> out;
  set.for_each([&](std::size_t a) { out.push_back(names.at(a)); });
  return out;
}

}  // namespace

std::string format_implication(const std::vector<std::string>& names, const Implication& imp) {
  return format_set(names_of(names, imp.premise)) + " => " + format_set(names_of(names, imp.conclusion));
}

std::string format_implication(const FormalContext& ctx, const Implication& imp) {
  return format_implication(ctx.attributes(), imp);
}

std::string format_rule(const std::vector<std::string>& names, const AssociationRule& rule) {
  return format_implication(names, rule.implication) + " [supp=" + to_string(rule.support) +
         "; conf=" + to_string(rule.confidence) + "]";
}

std::string format_rule(const FormalContext& ctx, const AssociationRule& rule) {
  return format_rule(ctx.attributes(), rule);
}

std::string rules_to_text(const FormalContext& ctx, const std::vector<AssociationRule>& rules) {
  std::string out;
  for (const auto& r : rules) out += format_rule(ctx, r) + "\n";
  return out;
}

std::string dump_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace galois
