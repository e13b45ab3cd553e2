#include <doctest.h>

#include <chrono>
#include <random>

#include "galois/context_io.hpp"
#include "galois/lattice.hpp"
#include "support/oracle.hpp"

using namespace galois;

namespace {

std::vector<std::pair<std::uint32_t, std::uint32_t>> as_masks(const ConceptLattice& lattice) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& c : lattice.concepts) out.emplace_back(oracle::mask(c.extent), oracle::mask(c.intent));
  std::sort(out.begin(), out.end());
  return out;
}

// i reaches j through one or more covering edges of length >= 2
bool reachable_in_two_or_more(const ConceptLattice& l, std::size_t from, std::size_t to) {
  std::vector<std::size_t> stack;
  std::vector<bool> seen(l.size(), false);
  for (auto n : l.lower_covers[from])
    for (auto m : l.lower_covers[n]) stack.push_back(m);
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    if (seen[v]) continue;
    seen[v] = true;
    for (auto w : l.lower_covers[v]) stack.push_back(w);
  }
  return false;
}

}  // namespace

TEST_CASE("diagonal context has the four-element diamond") {
  const FormalContext ctx({"o1", "o2"}, {"a1", "a2"}, {{true, false}, {false, true}});
  const auto lattice = enumerate_concepts(ctx);
  REQUIRE(lattice.size() == 4);
  // lectic order of intents: {}, {a2}, {a1}, {a1,a2}
  CHECK(lattice.concepts[0].extent == ObjectSet::of(2, {0, 1}));
  CHECK(lattice.concepts[0].intent.empty());
  CHECK(lattice.concepts[1].intent == AttributeSet::of(2, {1}));
  CHECK(lattice.concepts[1].extent == ObjectSet::of(2, {1}));
  CHECK(lattice.concepts[2].intent == AttributeSet::of(2, {0}));
  CHECK(lattice.concepts[2].extent == ObjectSet::of(2, {0}));
  CHECK(lattice.concepts[3].intent == AttributeSet::full(2));
  CHECK(lattice.concepts[3].extent.empty());
  CHECK(lattice.lower_covers[0] == std::vector<std::size_t>{1, 2});
  CHECK(lattice.lower_covers[1] == std::vector<std::size_t>{3});
  CHECK(lattice.lower_covers[2] == std::vector<std::size_t>{3});
  CHECK(lattice.lower_covers[3].empty());
  CHECK(lattice.edge_count() == 4);
}

TEST_CASE("full incidence collapses to one concept") {
  const FormalContext ctx({"o1", "o2", "o3"}, {"a", "b"}, {{true, true}, {true, true}, {true, true}});
  const auto lattice = enumerate_concepts(ctx);
  REQUIRE(lattice.size() == 1);
  CHECK(lattice.concepts[0].extent == ObjectSet::full(3));
  CHECK(lattice.concepts[0].intent == AttributeSet::full(2));
  CHECK(lattice.edge_count() == 0);
}

TEST_CASE("empty context yields the single concept (empty, A)") {
  const FormalContext ctx({}, {"a", "b", "c"}, std::vector<std::vector<bool>>{});
  const auto lattice = enumerate_concepts(ctx);
  REQUIRE(lattice.size() == 1);
  CHECK(lattice.concepts[0].intent == AttributeSet::full(3));
  const FormalContext nothing({}, {}, std::vector<std::vector<bool>>{});
  CHECK(enumerate_concepts(nothing).size() == 1);
}

TEST_CASE("concepts match powerset enumeration on random 8x8 contexts") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = oracle::random_table(rng, 8, 8);
    const auto ctx = oracle::to_context(t);
    const auto lattice = enumerate_concepts(ctx);
    CHECK(as_masks(lattice) == oracle::concepts(t));
    for (std::size_t i = 1; i < lattice.size(); ++i)
      CHECK(lattice.concepts[i - 1].intent.lectic_less(lattice.concepts[i].intent));
  }
}

TEST_CASE("covering relation equals the pairwise reference and has no transitive edges") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 150; ++trial) {
    const auto ctx = oracle::to_context(oracle::random_table(rng, 9, 9));
    const auto lattice = enumerate_concepts(ctx);
    CHECK(lattice.lower_covers == reference::covering_relation(lattice.concepts));
    for (std::size_t i = 0; i < lattice.size(); ++i)
      for (auto j : lattice.lower_covers[i]) {
        CHECK(lattice.concepts[j].extent.is_proper_subset_of(lattice.concepts[i].extent));
        CHECK_FALSE(reachable_in_two_or_more(lattice, i, j));
      }
  }
}

TEST_CASE("lattice JSON and DOT for the diamond") {
  const FormalContext ctx({"o1", "o2"}, {"a1", "a2"}, {{true, false}, {false, true}});
  const auto lattice = enumerate_concepts(ctx);
  const auto doc = lattice_to_json(ctx, lattice);
  CHECK(doc["concepts"].size() == 4);
  CHECK(doc["edges"].size() == 4);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["concepts"][2]["own_attributes"] == nlohmann::json::array({"a1"}));
  CHECK(doc["concepts"][2]["own_objects"] == nlohmann::json::array({"o1"}));
  CHECK(doc["concepts"][0]["own_attributes"].empty());

  const std::string dot = lattice_to_dot(ctx, lattice);
  CHECK(dot ==
        "digraph lattice {\n"
        "  node [shape=box, style=rounded, fontsize=10];\n"
        "  edge [arrowhead=none];\n"
        "  c0 [label=\"\\n\", tooltip=\"|extent|=2 |intent|=0\"];\n"
        "  c1 [label=\"a2\\no2\", tooltip=\"|extent|=1 |intent|=1\"];\n"
        "  c2 [label=\"a1\\no1\", tooltip=\"|extent|=1 |intent|=1\"];\n"
        "  c3 [label=\"\\n\", tooltip=\"|extent|=0 |intent|=2\"];\n"
        "  c0 -> c1;\n"
        "  c0 -> c2;\n"
        "  c1 -> c3;\n"
        "  c2 -> c3;\n"
        "}\n");
}
