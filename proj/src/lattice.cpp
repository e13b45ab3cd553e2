#include "galois/lattice.hpp"

#include <algorithm>
#include <unordered_map>

namespace galois {

std::size_t ConceptLattice::edge_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : lower_covers) n += c.size();
  return n;
}

std::vector<std::vector<std::size_t>> ConceptLattice::upper_covers() const {
  std::vector<std::vector<std::size_t>> up(concepts.size());
  for (std::size_t i = 0; i < lower_covers.size(); ++i)
    for (auto j : lower_covers[i]) up[j].push_back(i);
  return up;
}

std::optional<std::size_t> ConceptLattice::find_intent(const AttributeSet& intent) const {
  for (std::size_t i = 0; i < concepts.size(); ++i)
    if (concepts[i].intent == intent) return i;
  return std::nullopt;
}

std::vector<AttributeSet> enumerate_intents(const FormalContext& ctx) {
  auto close = [&](const AttributeSet& y) { return closure(ctx, y); };
  std::vector<AttributeSet> intents;
  std::optional<AttributeSet> current = close(ctx.empty_attributes());
  while (current) {
    intents.push_back(*current);
    current = next_closure(*current, close);
  }
  return intents;
}

ConceptLattice enumerate_concepts(const FormalContext& ctx) {
  ConceptLattice lattice;
  for (auto& intent : enumerate_intents(ctx)) {
    ObjectSet extent = derive_attributes(ctx, intent);
    lattice.concepts.push_back(Concept{std::move(extent), std::move(intent)});
  }
  lattice.lower_covers = covering_relation(ctx, lattice.concepts);
  return lattice;
}

std::vector<std::vector<std::size_t>> covering_relation(const FormalContext& ctx,
                                                        const std::vector<Concept>& concepts) {
  std::unordered_map<AttributeSet, std::size_t, IndexSetHash> index;
  index.reserve(concepts.size() * 2);
  for (std::size_t i = 0; i < concepts.size(); ++i) index.emplace(concepts[i].intent, i);

  const std::size_t m = ctx.attribute_count();
  std::vector<std::vector<std::size_t>> lower(concepts.size());
  const auto n = static_cast<long>(concepts.size());

#pragma omp parallel for schedule(dynamic, 16)
  for (long ci = 0; ci < n; ++ci) {
    const AttributeSet& intent = concepts[static_cast<std::size_t>(ci)].intent;
    // candidate[a] = (intent + a)'' for a outside the intent.
    std::vector<std::optional<AttributeSet>> candidate(m);
    for (std::size_t a = 0; a < m; ++a) {
      if (intent.contains(a)) continue;
      AttributeSet grown = intent;
      grown.insert(a);
      candidate[a] = closure(ctx, grown);
    }
    std::vector<std::size_t> neighbours;
    for (std::size_t a = 0; a < m; ++a) {
      if (!candidate[a]) continue;
      const AttributeSet& c = *candidate[a];
      // Minimal iff every attribute it adds generates the same closure.
      bool minimal = true;
      (c - intent).for_each([&](std::size_t b) {
        if (minimal && *candidate[b] != c) minimal = false;
      });
      if (minimal && (c - intent).first() == a) neighbours.push_back(index.at(c));
    }
    std::sort(neighbours.begin(), neighbours.end());
    lower[static_cast<std::size_t>(ci)] = std::move(neighbours);
  }
  return lower;
}

namespace reference {

std::vector<std::vector<std::size_t>> covering_relation(const std::vector<Concept>& concepts) {
  const std::size_t n = concepts.size();
  // below[i][j]: extent j strictly inside extent i.
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && concepts[j].extent.is_proper_subset_of(concepts[i].extent)) below[i][j] = true;

  std::vector<std::vector<std::size_t>> lower(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!below[i][j]) continue;
      bool transitive = false;
      for (std::size_t k = 0; k < n && !transitive; ++k) transitive = below[i][k] && below[k][j];
      if (!transitive) lower[i].push_back(j);
    }
  return lower;
}

}  // namespace reference

}  // namespace galois
