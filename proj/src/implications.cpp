#include "galois/implications.hpp"

#include <algorithm>

#include "galois/errors.hpp"
#include "galois/lattice.hpp"

namespace galois {

bool respects(const AttributeSet& t, const Implication& l) {
  return !l.premise.is_subset_of(t) || l.conclusion.is_subset_of(t);
}

bool holds_in(const FormalContext& ctx, const Implication& l) {
  for (std::size_t o = 0; o < ctx.object_count(); ++o)
    if (!respects(ctx.row(o), l)) return false;
  return true;
}

std::size_t support_count(const FormalContext& ctx, const AttributeSet& y) { return derive_attributes(ctx, y).count(); }

Rational support(const FormalContext& ctx, const AttributeSet& y) {
  if (ctx.object_count() == 0) return Rational(0);
  return Rational(static_cast<std::int64_t>(support_count(ctx, y)), static_cast<std::int64_t>(ctx.object_count()));
}

namespace {

// Closure under rules whose premise is a proper subset of the current set. Its
// closed sets are exactly the intents and pseudo-intents.
AttributeSet pseudo_closure(const std::vector<Implication>& rules, AttributeSet x) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rules) {
      if (r.premise.is_proper_subset_of(x) && !r.conclusion.is_subset_of(x)) {
        x |= r.conclusion;
        changed = true;
      }
    }
  }
  return x;
}

}  // namespace

std::vector<AttributeSet> pseudo_intents(const FormalContext& ctx) {
  std::vector<AttributeSet> out;
  std::vector<Implication> rules;
  auto close = [&](const AttributeSet& y) { return pseudo_closure(rules, y); };
  std::optional<AttributeSet> current = close(ctx.empty_attributes());
  while (current) {
    AttributeSet closed = closure(ctx, *current);
    if (closed != *current) {
      out.push_back(*current);
      rules.push_back(Implication{*current, std::move(closed)});
    }
    current = next_closure(*current, close);
  }
  return out;
}

ImplicationBasis stem_basis(const FormalContext& ctx) {
  ImplicationBasis basis;
  basis.context_fingerprint = ctx.fingerprint();
  for (auto& p : pseudo_intents(ctx)) {
    AttributeSet conclusion = closure(ctx, p) - p;
    basis.rules.push_back(Implication{std::move(p), std::move(conclusion)});
  }
  return basis;
}

AttributeSet armstrong_closure(std::span<const Implication> basis, const AttributeSet& x) {
  AttributeSet out = x;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : basis) {
      if (r.premise.is_subset_of(out) && !r.conclusion.is_subset_of(out)) {
        out |= r.conclusion;
        changed = true;
      }
    }
  }
  return out;
}

bool follows(std::span<const Implication> basis, const Implication& l) {
  return l.conclusion.is_subset_of(armstrong_closure(basis, l.premise));
}

bool rule_order_less(const AssociationRule& a, const AssociationRule& b) {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  if (a.support != b.support) return a.support > b.support;
  if (a.implication.premise != b.implication.premise) return a.implication.premise.lectic_less(b.implication.premise);
  return a.implication.conclusion.lectic_less(b.implication.conclusion);
}

std::vector<AssociationRule> mine_association_rules(const FormalContext& ctx, const Rational& min_confidence,
                                                    const Rational& min_support, const MiningOptions& options) {
  if (min_confidence <= Rational(0) || min_confidence > Rational(1))
    throw DomainError("min_confidence must lie in (0, 1], got " + to_string(min_confidence));
  if (min_support < Rational(0) || min_support > Rational(1))
    throw DomainError("min_support must lie in [0, 1], got " + to_string(min_support));

  const auto n = static_cast<std::int64_t>(ctx.object_count());
  auto ratio = [](std::int64_t num, std::int64_t den) { return den == 0 ? Rational(0) : Rational(num, den); };

  std::vector<AssociationRule> rules;
  for (const auto& imp : options.basis(ctx).rules) {
    const auto premise_count = static_cast<std::int64_t>(support_count(ctx, imp.premise));
    const auto joint_count = static_cast<std::int64_t>(support_count(ctx, imp.premise | imp.conclusion));
    AssociationRule rule{imp, ratio(joint_count, n),
                         premise_count == 0 ? Rational(1) : Rational(joint_count, premise_count)};
    if (rule.confidence >= min_confidence && rule.support >= min_support) rules.push_back(std::move(rule));
  }

  if (min_confidence < Rational(1)) {
    const ConceptLattice lattice = enumerate_concepts(ctx);
    for (std::size_t upper = 0; upper < lattice.size(); ++upper) {
      const Concept& from = lattice.concepts[upper];
      const auto from_count = static_cast<std::int64_t>(from.extent.count());
      for (auto lower : lattice.lower_covers[upper]) {
        const Concept& to = lattice.concepts[lower];
        const auto to_count = static_cast<std::int64_t>(to.extent.count());
        AssociationRule rule{Implication{from.intent, to.intent - from.intent}, ratio(to_count, n),
                             Rational(to_count, from_count)};
        if (rule.confidence >= min_confidence && rule.support >= min_support) rules.push_back(std::move(rule));
      }
    }
  }

  std::sort(rules.begin(), rules.end(), rule_order_less);
  rules.erase(
      std::unique(rules.begin(), rules.end(),
                  [](const AssociationRule& a, const AssociationRule& b) { return a.implication == b.implication; }),
      rules.end());
  return rules;
}

}  // namespace galois
