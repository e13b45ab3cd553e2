#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "galois/context.hpp"
#include "galois/implications.hpp"
#include "galois/lattice.hpp"

namespace galois {

inline constexpr int kSchemaVersion = 1;

// Context as {objects, attributes, incidence: [[0|1, ...], ...]}.
nlohmann::json context_to_json(const FormalContext& ctx);
FormalContext context_from_json(const nlohmann::json& doc);

// Burmeister .cxt
void write_cxt(std::ostream& out, const FormalContext& ctx);
FormalContext read_cxt(std::istream& in);

/// Loads .json or .cxt by extension.
FormalContext load_context(const std::string& path);
void save_context(const std::string& path, const FormalContext& ctx);

/// Reduced labelling: attribute a sits at the concept with intent {a}'', object o
/// at the concept with intent {o}'. Indexed by concept.
struct ReducedLabels {
  std::vector<std::vector<std::size_t>> attributes;
  std::vector<std::vector<std::size_t>> objects;
};
ReducedLabels reduced_labels(const FormalContext& ctx, const ConceptLattice& lattice);

nlohmann::json lattice_to_json(const FormalContext& ctx, const ConceptLattice& lattice);
/// Hasse diagram; top concept drawn first, edges run from upper to lower neighbour.
std::string lattice_to_dot(const FormalContext& ctx, const ConceptLattice& lattice);

// [{premise, conclusion, support: "p/q", confidence: "p/q"}]
nlohmann::json rules_to_json(const FormalContext& ctx, const std::vector<AssociationRule>& rules);
std::vector<AssociationRule> rules_from_json(const FormalContext& ctx, const nlohmann::json& doc);

std::string format_set(const std::vector<std::string>& names);
/// "A, B => C"
std::string format_implication(const std::vector<std::string>& names, const Implication& imp);
std::string format_implication(const FormalContext& ctx, const Implication& imp);
/// "A, B => C [supp=1/2; conf=2/3]"
std::string format_rule(const std::vector<std::string>& names, const AssociationRule& rule);
std::string format_rule(const FormalContext& ctx, const AssociationRule& rule);
std::string rules_to_text(const FormalContext& ctx, const std::vector<AssociationRule>& rules);

/// JSON text with a trailing newline; the single formatting path for every file and response.
std::string dump_json(const nlohmann::json& doc);

}  // namespace galois
