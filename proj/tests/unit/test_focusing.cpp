#include <doctest.h>

#include <algorithm>

#include "groundwork/focusing.hpp"
#include "polar.hpp"

using namespace groundwork;
using namespace groundwork::focusing;
using fixtures::na;
using fixtures::pa;
using R = Derivation::Rule;

namespace {

Derivation axiom(Sequent s) { return {std::move(s), R::Axiom, std::nullopt, {}, {}}; }

// The clustered derivation for the worked sequent, written out by hand.
Derivation expected_worked() {
  const PFormula N = fixtures::worked_negative();
  const PFormula P = fixtures::worked_positive();
  auto side = [&](const std::string& x) {
    return Derivation{{pa("A"), pa(x), P},
                      R::PositiveCluster,
                      P,
                      {{na("A"), na(x)}},
                      {axiom({na("A"), pa("A")}), axiom({na(x), pa(x)})}};
  };
  return Derivation{{N, P}, R::NegativeCluster, N, {{pa("A"), pa("B")}, {pa("A"), pa("C")}}, {side("B"), side("C")}};
}

Strategy expected_worked_strategy() {
  const PFormula N = fixtures::worked_negative();
  const PFormula P = fixtures::worked_positive();
  const Move nb{N, {pa("A"), pa("B")}};
  const Move nc{N, {pa("A"), pa("C")}};
  const Move pb{P, {na("A"), na("B")}};
  const Move pc{P, {na("A"), na("C")}};
  return {{nb}, {nb, pb}, {nc}, {nc, pc}};
}

}  // namespace

TEST_CASE("polarity and duality") {
  const PFormula f = fixtures::worked_negative();
  CHECK(f.negative());
  CHECK(fixtures::worked_positive().positive());
  CHECK(f.dual().positive());
  CHECK(f.dual().dual() == f);
  CHECK(f.dual().pretty() == "A⊥ ⊗ (B⊥ ⊕ C⊥)");
  CHECK(PFormula::one().dual() == PFormula::bottom());
  CHECK(PFormula::zero().dual() == PFormula::top());
  CHECK(pa("A").positive());
  CHECK(na("A").negative());
  CHECK(fixtures::worked_positive().pretty() == "(A⊥ ⊗ B⊥) ⊕ (A⊥ ⊗ C⊥)");
}

TEST_CASE("formula text round trip") {
  const PFormula f = parse_pformula("(par (atom+ A) (with (atom+ B) (atom+ C)))");
  CHECK(f == fixtures::worked_negative());
  CHECK(parse_pformula(f.to_sexpr()) == f);
  CHECK(parse_pformula("(dual (par (atom+ A) (with (atom+ B) (atom+ C))))") == f.dual());
  CHECK_THROWS_AS(parse_pformula("(xor (atom+ A) (atom+ B))"), ParseError);
  CHECK_THROWS_AS(parse_pformula("(tensor (atom+ A))"), ParseError);
  fixtures::PolarGen gen(3);
  for (int i = 0; i < 200; ++i) {
    const PFormula g = gen.formula(3, 3);
    CHECK(parse_pformula(g.to_sexpr()) == g);
    CHECK(g.dual().dual() == g);
    CHECK(g.dual().positive() != g.positive());
  }
}

TEST_CASE("cluster decompositions") {
  const auto branches = negative_branches(fixtures::worked_negative());
  REQUIRE(branches.size() == 2);
  CHECK(same_multiset(branches[0], {pa("A"), pa("B")}));
  CHECK(same_multiset(branches[1], {pa("A"), pa("C")}));
  const auto alts = positive_alternatives(fixtures::worked_positive());
  REQUIRE(alts.size() == 2);
  CHECK(same_multiset(alts[1], {na("A"), na("C")}));
  CHECK(negative_branches(PFormula::top()).empty());
  CHECK(negative_branches(PFormula::bottom()).size() == 1);
  CHECK(positive_alternatives(PFormula::zero()).empty());
}

TEST_CASE("search reproduces the worked clustered derivation") {
  const SearchResult r = focused_search(fixtures::worked_sequent());
  REQUIRE(r.tag == SearchResult::Tag::Found);
  CHECK(*r.derivation == expected_worked());
  CHECK(ok(validate_derivation(*r.derivation)));
  CHECK(!r.derivation->contains_daimon());
}

TEST_CASE("search failures") {
  CHECK(focused_search({pa("P")}).tag == SearchResult::Tag::None);
  CHECK(focused_search({PFormula::tensor(pa("A"), pa("B"))}).tag == SearchResult::Tag::None);
  CHECK(focused_search({na("A"), pa("B")}).tag == SearchResult::Tag::None);
  CHECK_THROWS_AS(focused_search({fixtures::worked_negative(), fixtures::worked_negative()}), std::invalid_argument);
  CHECK(focused_search(fixtures::worked_sequent(), 3).tag == SearchResult::Tag::FuelExhausted);
}

TEST_CASE("simple derivations") {
  auto r = focused_search({na("A"), pa("A")});
  REQUIRE(r.derivation);
  CHECK(r.derivation->rule == R::Axiom);
  r = focused_search({PFormula::one()});
  REQUIRE(r.derivation);
  CHECK(r.derivation->rule == R::PositiveCluster);
  CHECK(r.derivation->premises.empty());
  r = focused_search({PFormula::top(), pa("X")});
  REQUIRE(r.derivation);
  CHECK(r.derivation->rule == R::NegativeCluster);
  CHECK(r.derivation->premises.empty());
}

TEST_CASE("daimon mode") {
  auto r = focused_search({pa("P")}, kDefaultSearchFuel, true);
  REQUIRE(r.tag == SearchResult::Tag::Found);
  CHECK(r.derivation->rule == R::Daimon);
  CHECK(ok(validate_derivation(*r.derivation)));
  // Provable sequents keep their daimon-free derivation.
  r = focused_search(fixtures::worked_sequent(), kDefaultSearchFuel, true);
  CHECK(*r.derivation == expected_worked());

  const PFormula half = PFormula::par(pa("A"), pa("B"));
  r = focused_search({half}, kDefaultSearchFuel, true);
  REQUIRE(r.derivation);
  CHECK(r.derivation->rule == R::NegativeCluster);
  CHECK(r.derivation->premises[0].rule == R::Daimon);

  fixtures::PolarGen gen(11);
  for (int i = 0; i < 300; ++i) {
    Sequent s{gen.formula(2, 2), gen.formula(2, 2)};
    if (s[0].negative() && !s[0].is_atom() && s[1].negative() && !s[1].is_atom()) s[1] = s[1].dual();
    const SearchResult d = focused_search(s, kDefaultSearchFuel, true);
    REQUIRE(d.tag == SearchResult::Tag::Found);
    CHECK(ok(validate_derivation(*d.derivation)));
  }
}

TEST_CASE("derivation to strategy on the worked example") {
  const Strategy st = derivation_to_strategy(expected_worked());
  CHECK(st == expected_worked_strategy());
  CHECK(ok(validate_strategy(st, fixtures::worked_sequent())));
  Report rep;
  auto back = strategy_to_derivation(st, fixtures::worked_sequent(), rep);
  REQUIRE(back);
  CHECK(ok(rep));
  CHECK(*back == expected_worked());
}

TEST_CASE("lone axiom and empty strategy") {
  const Strategy st = derivation_to_strategy(axiom({na("A"), pa("A")}));
  REQUIRE(st.size() == 1);
  CHECK(st.begin()->size() == 1);
  Report rep;
  auto d = strategy_to_derivation(st, {na("A"), pa("A")}, rep);
  REQUIRE(d);
  CHECK(d->rule == R::Axiom);

  rep.clear();
  CHECK(!strategy_to_derivation({}, fixtures::worked_sequent(), rep));
  REQUIRE(!rep.empty());
  CHECK(rep.front().code == "empty-strategy");
}

TEST_CASE("malformed strategies") {
  const PFormula N = fixtures::worked_negative();
  const PFormula P = fixtures::worked_positive();
  const Move nb{N, {pa("A"), pa("B")}};
  const Move nc{N, {pa("A"), pa("C")}};
  auto code = [](const Strategy& st) {
    Report rep;
    auto d = strategy_to_derivation(st, fixtures::worked_sequent(), rep);
    return d || rep.empty() ? std::string() : rep.front().code;
  };
  Strategy st = expected_worked_strategy();
  st.erase(Game{nb});
  CHECK(code(st) == "not-prefix-closed");

  st = expected_worked_strategy();
  st.insert({nb, Move{P, {na("A"), na("C")}}});
  CHECK(code(st) == "conflict");

  st = {{nb}, {nb, Move{P, {na("A"), na("B")}}}};
  CHECK(code(st) == "missing-branch");

  st = expected_worked_strategy();
  st.insert({nc, Move{P, {na("B"), na("C")}}});
  CHECK(code(st) == "conflict");
}

TEST_CASE("game conditions") {
  const PFormula N = fixtures::worked_negative();
  const PFormula P = fixtures::worked_positive();
  const Move nb{N, {pa("A"), pa("B")}};
  const Move pb{P, {na("A"), na("B")}};
  CHECK(ok(validate_game({nb, pb})));
  CHECK(validate_game({}).front().code == "empty-game");
  const Report twice = validate_game({nb, nb});
  CHECK(std::any_of(twice.begin(), twice.end(), [](const Violation& v) { return v.code == "not-alternating"; }));
  CHECK(std::any_of(twice.begin(), twice.end(), [](const Violation& v) { return v.code == "repeated-focus"; }));
  CHECK(validate_game({pb, nb}).front().code == "unchosen-focus");
  CHECK(validate_game({nb, Move{P, {pa("B")}}}).front().code == "bad-choice");
  CHECK(validate_game({Move::daimon(), nb}).front().code == "daimon-not-last");
  // Only the first negative move may come from nowhere.
  CHECK(ok(validate_game({nb})));
}

TEST_CASE("strategy text round trip") {
  const Strategy st = expected_worked_strategy();
  CHECK(parse_strategy(strategy_to_sexpr(st)) == st);
  Strategy with_daimon{{Move::daimon()}};
  CHECK(parse_strategy(strategy_to_sexpr(with_daimon)) == with_daimon);
}

TEST_CASE("property: search soundness, alternation and round trip") {
  fixtures::PolarGen gen(2024);
  int found = 0, round_trips = 0;
  for (int i = 0; i < 400; ++i) {
    Sequent s;
    if (i % 2 == 0) {
      const PFormula f = gen.linear_formula(3);
      s = {f, f.dual()};
    } else {
      s = {gen.formula(2, 2), gen.formula(2, 2), gen.formula(1, 2)};
    }
    std::size_t negs = 0;
    for (auto& f : s)
      if (f.negative() && !f.is_atom() && negs++) f = f.dual();
    const bool daimon = i % 5 == 4;
    const SearchResult r = focused_search(s, kDefaultSearchFuel, daimon);
    if (i % 2 == 0 && !daimon) CHECK(r.tag == SearchResult::Tag::Found);
    if (!r.derivation) continue;
    ++found;
    CAPTURE(render(*r.derivation));
    CHECK(ok(validate_derivation(*r.derivation)));
    const Strategy st = derivation_to_strategy(*r.derivation);
    if (st.empty()) continue;  // a lone ⊤ cluster plays no move
    for (const auto& g : st) {
      const Report gr = validate_game(g);
      bool alternating = true;
      for (const auto& v : gr)
        if (v.code == "not-alternating") alternating = false;
      CHECK(alternating);
    }
    Report rep;
    auto back = strategy_to_derivation(st, s, rep);
    REQUIRE(back);
    CHECK(*back == *r.derivation);
    CHECK(derivation_to_strategy(*back) == st);
    ++round_trips;
  }
  CHECK(found > 200);
  CHECK(round_trips > 150);
}
