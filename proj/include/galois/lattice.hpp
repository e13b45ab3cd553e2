#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "galois/context.hpp"

namespace galois {

/// All concepts of a context with their covering relation.
///
/// Concepts are listed in lectic order of their intents, so index 0 is the top
/// concept (all objects) and the last index is the bottom concept (all attributes).
struct ConceptLattice {
  std::vector<Concept> concepts;
  /// lower_covers[i]: indices of the lower neighbours of concept i, ascending.
  std::vector<std::vector<std::size_t>> lower_covers;

  std::size_t size() const noexcept { return concepts.size(); }
  std::size_t edge_count() const noexcept;
  std::size_t top() const noexcept { return 0; }
  std::size_t bottom() const noexcept { return concepts.empty() ? 0 : concepts.size() - 1; }
  std::vector<std::vector<std::size_t>> upper_covers() const;

  /// Index of the concept with the given intent, if any.
  std::optional<std::size_t> find_intent(const AttributeSet& intent) const;
};

/// Next closed set after `current` in lectic order under `close`, or nullopt after the last one.
template <class Close>
std::optional<AttributeSet> next_closure(const AttributeSet& current, Close&& close) {
  const std::size_t m = current.universe();
  for (std::size_t i = m; i-- > 0;) {
    if (current.contains(i)) continue;
    AttributeSet candidate = current.prefix(i);
    candidate.insert(i);
    candidate = close(candidate);
    // Accept when the closure adds nothing below i.
    if ((candidate - current).first() >= i) return candidate;
  }
  return std::nullopt;
}

/// Intents of all concepts in lectic order (NextClosure).
std::vector<AttributeSet> enumerate_intents(const FormalContext& ctx);

/// Concepts in lectic order plus covering edges.
ConceptLattice enumerate_concepts(const FormalContext& ctx);

/// Covering edges by neighbour search: for each concept, the minimal closures of
/// intent+{m}. Parallel over concepts; results are assembled in concept order.
std::vector<std::vector<std::size_t>> covering_relation(const FormalContext& ctx, const std::vector<Concept>& concepts);

namespace reference {

/// Serial reference: pairwise extent inclusion followed by transitive reduction.
/// O(n^2 * |O|); used to check covering_relation.
std::vector<std::vector<std::size_t>> covering_relation(const std::vector<Concept>& concepts);

}  // namespace reference

}  // namespace galois
