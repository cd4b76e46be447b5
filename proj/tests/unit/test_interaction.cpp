#include <doctest.h>

#include "designs.hpp"
#include "groundwork/interaction.hpp"
#include "naive_net.hpp"

using namespace groundwork;
using namespace groundwork::ludics;
using fixtures::A;

namespace {

bool has_code(const Report& r, const std::string& code) {
  for (const auto& v : r)
    if (v.code == code) return true;
  return false;
}

std::vector<Address> foci(const std::vector<Action>& trace) {
  std::vector<Address> out;
  for (const auto& a : trace)
    if (a.positive) out.push_back(a.focus);
  return out;
}

// The engine and the rewriting oracle consume the same pairs and agree on
// the outcome.
bool agrees(const CutNet& net) {
  InteractionResult r = normalize_closed(net);
  fixtures::NaiveOutcome o = fixtures::naive_normalize(net.designs);
  std::vector<std::pair<Address, Ramification>> pairs;
  for (const auto& a : r.trace)
    if (a.positive) pairs.push_back({a.focus, a.ramification});
  const bool same_tag = (o.tag == fixtures::NaiveOutcome::Tag::Converged) == r.converged();
  return same_tag && pairs == o.consumed;
}

}  // namespace

TEST_CASE("cut-net conditions") {
  const Address xi = A({0});
  SUBCASE("two dual designs") {
    CutNet net = make_cutnet({atomic_bomb(xi), skunk(xi)});
    CHECK(net.cuts == std::set<Address>{xi});
    CHECK(net.closed());
    CHECK(net.principal == 0);
  }
  SUBCASE("single design") {
    CutNet net = make_cutnet({atomic_bomb(xi)});
    CHECK(net.cuts.empty());
    CHECK(net.base == positive_base({xi}));
  }
  SUBCASE("address in three bases") {
    Report r;
    CHECK_FALSE(make_cutnet({atomic_bomb(xi), skunk(xi), skunk(xi)}, r));
    CHECK(has_code(r, "address-multiplicity"));
  }
  SUBCASE("same polarity twice") {
    Report r;
    CHECK_FALSE(make_cutnet({atomic_bomb(xi), atomic_bomb(xi)}, r));
    CHECK(has_code(r, "address-multiplicity"));
  }
  SUBCASE("overlapping addresses") {
    Report r;
    CHECK_FALSE(make_cutnet({atomic_bomb(xi), skunk(A({0, 1}))}, r));
    CHECK(has_code(r, "not-disjoint"));
  }
  SUBCASE("disconnected") {
    Report r;
    CHECK_FALSE(make_cutnet({atomic_bomb(xi), atomic_bomb(A({1}))}, r));
    CHECK(has_code(r, "disconnected"));
  }
  SUBCASE("cycle") {
    // 0 ⊢ 1 and 1 ⊢ 0 cut on both addresses
    Design a{negative_base(A({0}), {A({1})}), negative_node(A({0}), {})};
    Design b{negative_base(A({1}), {A({0})}), negative_node(A({1}), {})};
    Report r;
    CHECK_FALSE(make_cutnet({a, b}, r));
    CHECK(has_code(r, "cyclic"));
  }
  SUBCASE("invalid member") {
    Report r;
    CHECK_FALSE(make_cutnet({Design{positive_base({xi}), positive_node(A({5}), {}, {})}}, r));
    CHECK(has_code(r, "invalid-design"));
  }
  SUBCASE("three designs in a chain") {
    // ⊢ 0 ; 0 ⊢ 1 ; 1 ⊢
    Design mid = build_fax(A({0}), A({1}), 2, 1);
    CutNet net = make_cutnet({skunk(A({1})), mid, atomic_bomb(A({0}))});
    CHECK(net.principal == 2);
    CHECK(net.cuts.size() == 2);
    CHECK(net.closed());
  }
}

TEST_CASE("worked interaction example") {
  CutNet net = make_cutnet({fixtures::example_left(), fixtures::example_right()});
  InteractionResult r = normalize_closed(net);
  REQUIRE(r.converged());
  CHECK(r.result->base == positive_base({}));
  CHECK(r.result->root->is(Node::Kind::Daimon));
  CHECK(foci(r.trace) == std::vector<Address>{A({}), A({1})});
  CHECK(r.visited == std::vector<Address>{A({}), A({1}), A({1, 1})});
  for (const auto& a : r.visited) {
    CHECK_FALSE(a == A({1, 3}));
    CHECK_FALSE(is_prefix(A({2}), a));
  }

  Design left = used_part(fixtures::example_left(), r.trace);
  Design right = used_part(fixtures::example_right(), r.trace);
  CHECK(left.root->children[0]->branches.size() == 1);
  CHECK_FALSE(left.root->children[0]->branches.count({3}));
  CHECK(right.root->branches.size() == 1);
  CHECK(subdesign_order(left, fixtures::example_left()));
  CHECK(subdesign_order(right, fixtures::example_right()));
  CHECK(normalize_closed(make_cutnet({left, right})).trace == r.trace);

  Machine m(net);
  CHECK(m.current().size() == 2);
  REQUIRE(m.step());
  CHECK(m.current()[0].base == negative_base(A({1})));
  REQUIRE(m.step());
  CHECK(m.done());
  CHECK_FALSE(m.step());
  CHECK(m.result().trace == r.trace);
  CHECK(m.back());
  CHECK_FALSE(m.done());
  CHECK(m.steps() == 1);
}

TEST_CASE("small closed nets") {
  const Address xi = A({0});
  SUBCASE("daimon against anything") {
    InteractionResult r = normalize_closed(make_cutnet({daimon(positive_base({A({})})), fixtures::example_right()}));
    CHECK(r.converged());
    CHECK(r.pairs() == 0);
  }
  SUBCASE("bomb against skunk") {
    InteractionResult r = normalize_closed(make_cutnet({atomic_bomb(xi), skunk(xi)}));
    CHECK(r.tag == InteractionResult::Tag::Diverged);
    CHECK(r.reason == Divergence::NoMatchingNegativeAction);
    CHECK(r.at == xi);
    CHECK(orthogonal(atomic_bomb(xi), skunk(xi)) == Verdict::No);
  }
  SUBCASE("fid") {
    InteractionResult r = normalize_closed(make_cutnet({fid(positive_base({xi})), skunk(xi)}));
    CHECK(r.reason == Divergence::FidEncountered);
  }
  SUBCASE("bomb against the sponge on ∅") {
    CHECK(orthogonal(atomic_bomb(xi), negative_sponge(xi, {{}})) == Verdict::Yes);
    CHECK(orthogonal(skunk(xi), daimon(positive_base({xi}))) == Verdict::Yes);
  }
  SUBCASE("base mismatch") {
    CHECK_THROWS_AS(orthogonal(atomic_bomb(xi), skunk(A({1}))), BaseMismatch);
    CHECK_THROWS_AS(orthogonal(atomic_bomb(xi), atomic_bomb(xi)), BaseMismatch);
  }
  SUBCASE("fuel") {
    CutNet net = make_cutnet({fixtures::example_left(), fixtures::example_right()});
    CHECK(normalize_closed(net, 1).tag == InteractionResult::Tag::FuelExhausted);
    CHECK(normalize_closed(net, 2).converged());
    Machine m(net, 1);
    while (m.step()) {
    }
    CHECK(m.result().tag == InteractionResult::Tag::FuelExhausted);
  }
  SUBCASE("open net is rejected by the closed entry points") {
    CHECK_THROWS_AS(normalize_closed(make_cutnet({atomic_bomb(xi)})), std::invalid_argument);
  }
  SUBCASE("three-design chain") {
    // bomb ⊢0 through the copycat 0 ⊢ 1 into the sponge 1 ⊢
    CutNet net = make_cutnet({negative_sponge(A({1}), {{}}), build_fax(A({0}), A({1}), 2, 1), atomic_bomb(xi)});
    InteractionResult r = normalize_closed(net);
    CHECK(r.converged());
    CHECK(r.pairs() == 2);
    CHECK(agrees(net));
  }
}

TEST_CASE("nets with uncut addresses") {
  const Address xi = A({0}), xp = A({1});
  Design fax = build_fax(xi, xp, 2, 1);
  SUBCASE("copycat against the daimon") {
    InteractionResult r = normalize(make_cutnet({fax, daimon(positive_base({xi}))}));
    REQUIRE(r.converged());
    CHECK(*r.result == daimon(positive_base({xp})));
  }
  SUBCASE("copycat against a bomb") {
    InteractionResult r = normalize(make_cutnet({fax, atomic_bomb(xi)}));
    REQUIRE(r.converged());
    CHECK(*r.result == atomic_bomb(xp));
  }
  SUBCASE("copycat relocates a deeper design") {
    fixtures::DesignGen gen(21, powerset_pool(2));
    for (int n = 0; n < 100; ++n) {
      Design d = gen.positive(xi, 3);
      if (contains_fid(d)) continue;
      InteractionResult r = normalize(make_cutnet({build_fax(xi, xp, 3, 1), d}));
      REQUIRE(r.converged());
      CHECK(*r.result == relocate(d, xi, xp));
    }
  }
  SUBCASE("negative principal") {
    // A lone copycat: its innermost Fid leaves have no continuation and are
    // dropped, the rest is copied.
    InteractionResult r = normalize(make_cutnet({fax}));
    REQUIRE(r.converged());
    CHECK(r.result->base == fax.base);
    CHECK(subdesign_order(*r.result, fax));
    CHECK(r.result->root->branches.size() == 4);
    CHECK_FALSE(contains_fid(*r.result));
  }
}

TEST_CASE("normalization agrees with the rewriting oracle on every small net") {
  fixtures::Universe u(powerset_pool(2));
  const Address xi = A({});
  auto pos = u.positive({xi}, 2);
  auto neg = u.negative(xi, {}, 2);
  REQUIRE(pos.size() == 6);
  REQUIRE(neg.size() == 240);
  std::size_t agree = 0, total = 0;
  for (const auto& p : pos)
    for (const auto& n : neg) {
      Design d{positive_base({xi}), p}, e{negative_base(xi), n};
      CutNet net = make_cutnet({d, e});
      ++total;
      if (agrees(net)) ++agree;
    }
  CHECK(agree == total);
}

TEST_CASE("interaction properties on random designs") {
  const Address xi = A({0});
  fixtures::DesignGen gen(77, powerset_pool(2));
  for (int n = 0; n < 1500; ++n) {
    Design d = gen.positive(xi, 4 + n % 2);
    Design e = gen.negative(xi, 4 + (n / 2) % 2);
    CutNet net = make_cutnet({d, e});
    InteractionResult r = normalize_closed(net);
    const Verdict v = orthogonal(d, e);
    CHECK(v == orthogonal(e, d));
    CHECK((v == Verdict::Yes) == r.converged());
    CHECK(agrees(net));
    // batch and stepping agree
    Machine m(net);
    while (m.step()) {
    }
    CHECK(m.result().trace == r.trace);
    CHECK(m.result().tag == r.tag);
    // determinism
    CHECK(normalize_closed(net).trace == r.trace);
    // the used parts replay the same interaction
    Design ud = used_part(d, r.trace), ue = used_part(e, r.trace);
    CHECK(ok(validate_design(ud)));
    CHECK(ok(validate_design(ue)));
    CHECK(subdesign_order(ud, d));
    CHECK(subdesign_order(ue, e));
    if (r.converged()) {
      InteractionResult again = normalize_closed(make_cutnet({ud, ue}));
      CHECK(again.converged());
      CHECK(again.trace == r.trace);
    }
    // daimon universality and Fid sterility
    CHECK(orthogonal(daimon(positive_base({xi})), e) == Verdict::Yes);
    CHECK(orthogonal(fid(positive_base({xi})), e) == Verdict::No);
  }
  CHECK(used_part(fixtures::example_right(), {}) == skunk(A({})));
  CHECK_THROWS_AS(used_part(atomic_bomb(xi), {{true, xi, {0}}}), TraceMismatch);
}

TEST_CASE("snapshots match the golden rendering") {
  CutNet net = make_cutnet({fixtures::example_left(), fixtures::example_right()});
  RenderOptions opt;
  opt.root_symbol = "ξ";
  CHECK(render_snapshots(net, opt).size() == 4);
  CHECK(render_interaction(net, opt) == groundwork::read_file(std::string(GOLDEN_DIR) + "/interaction_example.txt"));
}
