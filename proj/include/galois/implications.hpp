#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "galois/context.hpp"
#include "galois/rational.hpp"

namespace galois {

struct Implication {
  AttributeSet premise;
  AttributeSet conclusion;
  bool operator==(const Implication&) const = default;
};

/// T respects L iff L.premise is not contained in T or L.conclusion is.
bool respects(const AttributeSet& t, const Implication& l);

/// Every object intent respects L.
bool holds_in(const FormalContext& ctx, const Implication& l);

/// |Y'|. Kept separate from support() so callers can stay in integers.
std::size_t support_count(const FormalContext& ctx, const AttributeSet& y);

/// |Y'| / |O|. A context without objects has support 0 for every set; see is_degenerate().
Rational support(const FormalContext& ctx, const AttributeSet& y);

inline bool is_degenerate(const FormalContext& ctx) { return ctx.object_count() == 0; }

/// A complete, non-redundant set of implications for one context.
struct ImplicationBasis {
  std::vector<Implication> rules;
  std::string context_fingerprint;
};

using BasisGenerator = std::function<ImplicationBasis(const FormalContext&)>;

/// Pseudo-intents in lectic order.
std::vector<AttributeSet> pseudo_intents(const FormalContext& ctx);

/// Canonical basis { P -> P'' \ P : P pseudo-intent }, premises in lectic order.
///
/// Conclusions omit the premise attributes; P -> P'' and P -> P'' \ P are
/// equivalent under the Armstrong rules.
ImplicationBasis stem_basis(const FormalContext& ctx);

/// Least superset of x closed under every rule (premise contained => conclusion added).
AttributeSet armstrong_closure(std::span<const Implication> basis, const AttributeSet& x);

/// basis |= l, decided as l.conclusion within armstrong_closure(basis, l.premise).
bool follows(std::span<const Implication> basis, const Implication& l);

struct AssociationRule {
  Implication implication;
  Rational support;     // supp(premise u conclusion)
  Rational confidence;  // supp(premise u conclusion) / supp(premise)
  bool exact() const { return confidence == Rational(1); }
};

struct MiningOptions {
  BasisGenerator basis = stem_basis;
};

/// Exact rules from the basis (confidence 1) plus partial rules B1 -> B2 \ B1 for
/// every covering pair of intents B1 < B2, filtered by the thresholds.
///
/// A rule whose premise has no supporting object gets confidence 1 (it holds
/// vacuously) and support 0. Ordering is by confidence desc, support desc, then
/// lectic premise and conclusion.
///
/// Throws DomainError unless 0 < min_confidence <= 1 and 0 <= min_support <= 1.
std::vector<AssociationRule> mine_association_rules(const FormalContext& ctx, const Rational& min_confidence,
                                                    const Rational& min_support, const MiningOptions& options = {});

/// Strict weak ordering used for rule lists.
bool rule_order_less(const AssociationRule& a, const AssociationRule& b);

}  // namespace galois
