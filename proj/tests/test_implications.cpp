#include <doctest.h>

#include <random>

#include "galois/context_io.hpp"
#include "galois/errors.hpp"
#include "galois/implications.hpp"
#include "support/oracle.hpp"

using namespace galois;

namespace {

FormalContext diagonal() { return FormalContext({"o1", "o2"}, {"a1", "a2"}, {{true, false}, {false, true}}); }

std::vector<std::pair<std::uint32_t, std::uint32_t>> as_masks(const std::vector<Implication>& rules) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& r : rules) out.emplace_back(oracle::mask(r.premise), oracle::mask(r.conclusion));
  return out;
}

}  // namespace

TEST_CASE("respects") {
  const auto a = AttributeSet::of(2, {0});
  const auto ab = AttributeSet::of(2, {0, 1});
  const Implication a_to_b{a, AttributeSet::of(2, {1})};
  CHECK_FALSE(respects(a, a_to_b));
  CHECK(respects(ab, a_to_b));
  CHECK(respects(AttributeSet(2), a_to_b));
}

TEST_CASE("holds_in") {
  const auto ctx = diagonal();
  CHECK(holds_in(ctx, Implication{AttributeSet::of(2, {0}), AttributeSet::of(2, {0})}));
  CHECK_FALSE(holds_in(ctx, Implication{AttributeSet::of(2, {0}), AttributeSet::of(2, {1})}));

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = oracle::random_table(rng, 6, 5);
    const auto ctx2 = oracle::to_context(t);
    for (std::uint32_t p = 0; p <= oracle::full(t.attributes); ++p) {
      for (std::uint32_t c = 0; c <= oracle::full(t.attributes); ++c) {
        const Implication l{oracle::attribute_set(p, t.attributes), oracle::attribute_set(c, t.attributes)};
        const bool h = holds_in(ctx2, l);
        CHECK(h == oracle::holds(t, p, c));
        CHECK(h == l.conclusion.is_subset_of(closure(ctx2, l.premise)));
        if (c == oracle::full(t.attributes)) break;
      }
      if (p == oracle::full(t.attributes)) break;
    }
  }
}

TEST_CASE("support") {
  const FormalContext five({"1", "2", "3", "4", "5"}, {"a"}, {{true}, {false}, {false}, {true}, {false}});
  CHECK(support(five, AttributeSet(1)) == Rational(1));
  CHECK(support(five, AttributeSet::of(1, {0})) == Rational(2, 5));
  CHECK(support(diagonal(), AttributeSet::of(2, {0})) == Rational(1, 2));
  const FormalContext empty({}, {"a"}, std::vector<std::vector<bool>>{});
  CHECK(is_degenerate(empty));
  CHECK(support(empty, AttributeSet::of(1, {0})) == Rational(0));

  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = oracle::random_table(rng, 8, 6);
    if (t.objects == 0) continue;
    const auto ctx = oracle::to_context(t);
    for (std::uint32_t y = 0; y <= oracle::full(t.attributes); ++y) {
      CHECK(support(ctx, oracle::attribute_set(y, t.attributes)) ==
            Rational(static_cast<std::int64_t>(oracle::count_rows(t, y)), static_cast<std::int64_t>(t.objects)));
      if (y == oracle::full(t.attributes)) break;
    }
  }
}

TEST_CASE("stem basis small cases") {
  SUBCASE("full incidence gives {} -> A") {
    const FormalContext ctx({"o1", "o2"}, {"a", "b", "c"}, {{true, true, true}, {true, true, true}});
    const auto basis = stem_basis(ctx);
    REQUIRE(basis.rules.size() == 1);
    CHECK(basis.rules[0].premise.empty());
    CHECK(basis.rules[0].conclusion == AttributeSet::full(3));
    CHECK(basis.context_fingerprint == ctx.fingerprint());
  }
  SUBCASE("every subset closed gives an empty basis") {
    const FormalContext ctx({"o1", "o2", "o3"}, {"a", "b", "c"},
                            {{false, true, true}, {true, false, true}, {true, true, false}});
    CHECK(stem_basis(ctx).rules.empty());
  }
  SUBCASE("diagonal context") {
    // Pseudo-intent {a1, a2}? No: it is closed (empty extent). The basis is empty.
    CHECK(stem_basis(diagonal()).rules.empty());
  }
  SUBCASE("empty context gives {} -> A") {
    const FormalContext ctx({}, {"a", "b"}, std::vector<std::vector<bool>>{});
    const auto basis = stem_basis(ctx);
    REQUIRE(basis.rules.size() == 1);
    CHECK(basis.rules[0].conclusion == AttributeSet::full(2));
  }
  SUBCASE("known basis") {
    // a always implies b; b and c never co-occur.
    const FormalContext ctx({"o1", "o2", "o3"}, {"a", "b", "c"},
                            {{true, true, false}, {false, true, false}, {false, false, true}});
    const auto basis = stem_basis(ctx);
    // Lectic order puts {b, c} before {a}.
    REQUIRE(basis.rules.size() == 2);
    CHECK(basis.rules[0].premise == AttributeSet::of(3, {1, 2}));
    CHECK(basis.rules[0].conclusion == AttributeSet::of(3, {0}));
    CHECK(basis.rules[1].premise == AttributeSet::of(3, {0}));
    CHECK(basis.rules[1].conclusion == AttributeSet::of(3, {1}));
  }
}

TEST_CASE("armstrong closure and follows") {
  const std::vector<Implication> none;
  CHECK(armstrong_closure(none, AttributeSet::of(3, {1})) == AttributeSet::of(3, {1}));
  const std::vector<Implication> chain{{AttributeSet::of(3, {0}), AttributeSet::of(3, {1})},
                                       {AttributeSet::of(3, {1}), AttributeSet::of(3, {2})}};
  CHECK(armstrong_closure(chain, AttributeSet::of(3, {0})) == AttributeSet::full(3));
  const std::vector<Implication> a_to_b{{AttributeSet::of(3, {0}), AttributeSet::of(3, {1})}};
  CHECK(follows(a_to_b, Implication{AttributeSet::of(3, {0, 2}), AttributeSet::of(3, {1})}));
  CHECK(follows(a_to_b, Implication{AttributeSet::of(3, {2}), AttributeSet::of(3, {2})}));
  CHECK_FALSE(follows(a_to_b, Implication{AttributeSet::of(3, {1}), AttributeSet::of(3, {0})}));
}

TEST_CASE("stem basis is complete, sound and non-redundant on random contexts") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 120; ++trial) {
    const auto t = oracle::random_table(rng, 8, 6);
    const auto ctx = oracle::to_context(t);
    const auto basis = stem_basis(ctx);
    const auto rules = as_masks(basis.rules);
    const std::uint32_t all = oracle::full(t.attributes);
    for (std::uint32_t x = 0;; ++x) {
      CHECK(oracle::mask(armstrong_closure(basis.rules, oracle::attribute_set(x, t.attributes))) ==
            oracle::close(t, x));
      if (x == all) break;
    }
    for (const auto& [p, c] : rules) CHECK(oracle::holds(t, p, c));
    // Removing any rule loses that rule.
    for (std::size_t skip = 0; skip < rules.size(); ++skip) {
      auto rest = rules;
      rest.erase(rest.begin() + static_cast<long>(skip));
      const auto [p, c] = rules[skip];
      CHECK((oracle::implication_closure(rest, p) & c) != c);
    }
    // Premises are pseudo-intents: not closed, and contain the closure of every smaller premise.
    for (const auto& [p, c] : rules) {
      CHECK(oracle::close(t, p) != p);
      for (const auto& [q, d] : rules)
        if (q != p && (q & p) == q) CHECK((oracle::close(t, q) & p) == oracle::close(t, q));
    }
  }
}

TEST_CASE("mine_association_rules") {
  SUBCASE("diagonal context with gamma 0.4 yields {} -> a1 at 1/2") {
    const auto ctx = diagonal();
    const auto rules = mine_association_rules(ctx, Rational(2, 5), Rational(0));
    bool found = false;
    for (const auto& r : rules)
      if (r.implication.premise.empty() && r.implication.conclusion == AttributeSet::of(2, {0})) {
        found = true;
        CHECK(r.confidence == Rational(1, 2));
        CHECK(r.support == Rational(1, 2));
      }
    CHECK(found);
    CHECK(rules_to_text(ctx, rules) ==
          "{} => a2 [supp=1/2; conf=1/2]\n"
          "{} => a1 [supp=1/2; conf=1/2]\n");
  }
  SUBCASE("thresholds are validated") {
    CHECK_THROWS_AS(mine_association_rules(diagonal(), Rational(0), Rational(0)), DomainError);
    CHECK_THROWS_AS(mine_association_rules(diagonal(), Rational(3, 2), Rational(0)), DomainError);
    CHECK_THROWS_AS(mine_association_rules(diagonal(), Rational(1), Rational(-1, 2)), DomainError);
    CHECK_THROWS_AS(mine_association_rules(diagonal(), Rational(1), Rational(2)), DomainError);
  }
  SUBCASE("pluggable basis generator") {
    MiningOptions opts;
    opts.basis = [](const FormalContext&) { return ImplicationBasis{}; };
    const FormalContext ctx({"o1", "o2"}, {"a", "b"}, {{true, true}, {false, true}});
    CHECK(mine_association_rules(ctx, Rational(1), Rational(0), opts).empty());
    CHECK(mine_association_rules(ctx, Rational(1), Rational(0)).size() == 1);
  }
}

TEST_CASE("mined rules recount exactly and min confidence 1 is the stem basis") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 150; ++trial) {
    const auto t = oracle::random_table(rng, 9, 6);
    const auto ctx = oracle::to_context(t);
    const Rational gamma(std::uniform_int_distribution<int>(1, 10)(rng), 10);
    const Rational min_supp(std::uniform_int_distribution<int>(0, 3)(rng), 10);
    const auto rules = mine_association_rules(ctx, gamma, min_supp);
    for (const auto& r : rules) {
      const auto p = oracle::mask(r.implication.premise);
      const auto pc = p | oracle::mask(r.implication.conclusion);
      const auto np = static_cast<std::int64_t>(oracle::count_rows(t, p));
      const auto npc = static_cast<std::int64_t>(oracle::count_rows(t, pc));
      const Rational want_supp = t.objects == 0 ? Rational(0) : Rational(npc, static_cast<std::int64_t>(t.objects));
      const Rational want_conf = np == 0 ? Rational(1) : Rational(npc, np);
      CHECK(r.support == want_supp);
      CHECK(r.confidence == want_conf);
      CHECK(r.confidence >= gamma);
      CHECK(r.support >= min_supp);
      if (r.exact()) CHECK(oracle::holds(t, p, oracle::mask(r.implication.conclusion)));
    }
    for (std::size_t i = 1; i < rules.size(); ++i) CHECK_FALSE(rule_order_less(rules[i], rules[i - 1]));
    CHECK(mine_association_rules(ctx, gamma, min_supp).size() == rules.size());

    const auto exact = mine_association_rules(ctx, Rational(1), Rational(0));
    auto basis = stem_basis(ctx).rules;
    REQUIRE(exact.size() == basis.size());
    for (const auto& r : exact) CHECK(std::find(basis.begin(), basis.end(), r.implication) != basis.end());
  }
}

TEST_CASE("rule JSON round trip") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ctx = oracle::to_context(oracle::random_table(rng, 8, 6));
    const auto rules = mine_association_rules(ctx, Rational(1, 2), Rational(0));
    const auto back = rules_from_json(ctx, rules_to_json(ctx, rules));
    REQUIRE(back.size() == rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) {
      CHECK(back[i].implication == rules[i].implication);
      CHECK(back[i].support == rules[i].support);
      CHECK(back[i].confidence == rules[i].confidence);
    }
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("7/10") == Rational(7, 10));
  CHECK(parse_rational("0.7") == Rational(7, 10));
  CHECK(parse_rational("1") == Rational(1));
  CHECK(parse_rational(".25") == Rational(1, 4));
  CHECK(to_string(Rational(2, 4)) == "1/2");
  CHECK(to_string(Rational(1)) == "1/1");
  CHECK_THROWS_AS(parse_rational("a/b"), DomainError);
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational(""), DomainError);
}
