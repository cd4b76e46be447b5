#include <doctest.h>

#include <functional>

#include "designs.hpp"

using namespace groundwork;
using namespace groundwork::ludics;
using fixtures::A;

namespace {

bool has_code(const Report& r, const std::string& code) {
  for (const auto& v : r)
    if (v.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("address algebra") {
  const Address xi = A({0, 2});
  for (std::uint32_t i = 0; i < 4; ++i) {
    CHECK_FALSE(disjoint(child(xi, i), xi));
    for (std::uint32_t j = 0; j < 4; ++j) CHECK(disjoint(child(xi, i), child(xi, j)) == (i != j));
  }
  CHECK(to_string(Address{}) == "ε");
  CHECK(to_string(A({0, 1, 2})) == "0.1.2");
  CHECK(parse_address("0.1.2") == A({0, 1, 2}));
  CHECK(parse_address("ε").empty());
  CHECK_THROWS(parse_address("0..1"));
  CHECK(star(xi, {1, 3}) == std::set<Address>{A({0, 2, 1}), A({0, 2, 3})});
  auto pool = powerset_pool(2);
  REQUIRE(pool.size() == 4);
  CHECK(pool[0].empty());
  CHECK(pool[3] == Ramification{0, 1});
}

TEST_CASE("pitchfork validation") {
  CHECK(ok(validate_pitchfork(negative_base(A({0}), {A({1})}))));
  CHECK_FALSE(ok(validate_pitchfork(negative_base(A({0}), {A({0, 1})}))));
  CHECK_FALSE(ok(validate_pitchfork(positive_base({A({}), A({1})}))));
  CHECK(dual(positive_base({A({2})})) == negative_base(A({2})));
}

TEST_CASE("named designs are valid") {
  const Address xi = A({0});
  CHECK(ok(validate_design(daimon(positive_base({xi})))));
  CHECK(ok(validate_design(fid(positive_base({xi})))));
  CHECK(ok(validate_design(atomic_bomb(xi))));
  CHECK(ok(validate_design(skunk(xi))));
  CHECK(ok(validate_design(negative_sponge(xi, powerset_pool(2)))));
  CHECK(ok(validate_design(build_fax(A({0}), A({1}), 3, 1))));
  CHECK(ok(validate_design(fixtures::example_left())));
  CHECK(ok(validate_design(fixtures::example_right())));
}

TEST_CASE("validation reports the offending node") {
  SUBCASE("child off the sub-address") {
    NodePtr bad = negative_node(A({1}), {});
    Report r = validate_design(Design{positive_base({A({0})}), positive_node(A({0}), {0}, {bad})});
    REQUIRE(has_code(r, "sub-address"));
    CHECK(r[0].path == "root/0.0");
  }
  SUBCASE("focus outside the base") {
    Report r = validate_design(Design{positive_base({A({0})}), positive_node(A({1}), {}, {})});
    CHECK(has_code(r, "focus-not-in-base"));
  }
  SUBCASE("polarity") {
    CHECK(has_code(validate_design(Design{negative_base(A({0})), daimon_node()}), "polarity"));
    NodePtr inner = negative_node(A({0, 0}), {{{}, negative_node(A({0, 0, 0}), {})}});
    CHECK(has_code(validate_design(Design{positive_base({A({0})}), positive_node(A({0}), {0}, {inner})}),
                   "polarity"));
  }
  SUBCASE("arity") {
    CHECK(has_code(validate_design(Design{positive_base({A({0})}), positive_node(A({0}), {0, 1}, {})}), "arity"));
  }
  SUBCASE("context used by two premises") {
    // ⊢ 0, 1 with a rule on 0 whose two premises both act on 1
    auto uses1 = [](std::uint32_t i) {
      return negative_node(A({0, i}), {{{}, positive_node(A({1}), {}, {})}});
    };
    Design d{positive_base({A({0}), A({1})}), positive_node(A({0}), {0, 1}, {uses1(0), uses1(1)})};
    Report r = validate_design(d);
    CHECK(has_code(r, "context-shared"));
  }
  SUBCASE("nested focus not available") {
    NodePtr n = negative_node(A({0, 0}), {{{}, positive_node(A({0, 1}), {}, {})}});
    CHECK(has_code(validate_design(Design{positive_base({A({0})}), positive_node(A({0}), {0}, {n})}),
                   "focus-not-in-base"));
  }
}

TEST_CASE("Fax unfolding") {
  Design fax = build_fax(A({0}), A({1}), 1, 1);
  REQUIRE(fax.root->is(Node::Kind::Negative));
  CHECK(fax.root->branches.size() == 4);
  const NodePtr& empty = fax.root->branches.at({});
  CHECK(equal(empty, atomic_bomb(A({1})).root));
  const NodePtr& both = fax.root->branches.at({0, 1});
  REQUIRE(both->children.size() == 2);
  CHECK(both->children[0]->focus == A({1, 0}));
  CHECK_THROWS(build_fax(A({0}), A({0, 1}), 1, 1));
  CHECK_THROWS(build_fax(A({0}), A({1}), 0, 1));
}

TEST_CASE("Fax depths are coherent") {
  for (std::size_t d = 1; d <= 3; ++d) {
    Design small = build_fax(A({0}), A({1}), d, 1);
    Design big = build_fax(A({0}), A({1}), d + 1, 1);
    CHECK(equal(fixtures::truncate_fax(big.root, d), small.root));
    CHECK(subdesign_order(small, big));
    CHECK_FALSE(subdesign_order(big, small));
  }
}

TEST_CASE("subdesign order") {
  const Address xi = A({0});
  fixtures::DesignGen gen(11, powerset_pool(2));
  for (int n = 0; n < 200; ++n) {
    Design d = gen.negative(xi, 4);
    CHECK(subdesign_order(d, d));
    CHECK(subdesign_order(skunk(xi), d));
  }
  CHECK_FALSE(subdesign_order(daimon(positive_base({xi})), atomic_bomb(xi)));
  CHECK(subdesign_order(fid(positive_base({xi})), atomic_bomb(xi)));
  CHECK_FALSE(subdesign_order(atomic_bomb(xi), fid(positive_base({xi}))));

  // antisymmetry and transitivity on random pairs of related designs
  std::mt19937 rng(3);
  std::function<NodePtr(const NodePtr&)> prune = [&](const NodePtr& n) -> NodePtr {
    switch (n->kind) {
      case Node::Kind::Positive: {
        if (rng() % 4 == 0) return fid_node();
        std::vector<NodePtr> kids;
        for (const auto& c : n->children) kids.push_back(prune(c));
        return positive_node(n->focus, n->ramification, kids);
      }
      case Node::Kind::Negative: {
        std::map<Ramification, NodePtr> br;
        for (const auto& [I, b] : n->branches)
          if (rng() % 3) br[I] = prune(b);
        return negative_node(n->focus, br);
      }
      default:
        return n;
    }
  };
  for (int n = 0; n < 200; ++n) {
    Design d3 = gen.positive(xi, 4);
    Design d2{d3.base, prune(d3.root)};
    Design d1{d3.base, prune(d2.root)};
    CHECK(subdesign_order(d2, d3));
    CHECK(subdesign_order(d1, d2));
    CHECK(subdesign_order(d1, d3));
    if (subdesign_order(d3, d2)) CHECK(d3 == d2);
    CHECK(ok(validate_design(d1)));
  }
}

TEST_CASE("join of subdesigns") {
  Design left = fixtures::example_left();
  const NodePtr& n1 = left.root->children[0];
  Design a{left.base, positive_node(A({}), {1}, {negative_node(A({1}), {{{1}, daimon_node()}})})};
  Design b{left.base, positive_node(A({}), {1}, {negative_node(A({1}), {{{3}, n1->branches.at({3})}})})};
  CHECK(join(a, b) == left);
  CHECK(join(a, a) == a);
  CHECK_THROWS_AS(join(a, daimon(left.base)), std::invalid_argument);
}

TEST_CASE("relocation keeps designs valid") {
  fixtures::DesignGen gen(5, powerset_pool(2));
  for (int n = 0; n < 100; ++n) {
    Design d = gen.positive(A({0}), 4);
    Design r = relocate(d, A({0}), A({3, 1}));
    CHECK(ok(validate_design(r)));
    CHECK(r.base == positive_base({A({3, 1})}));
    CHECK(relocate(r, A({3, 1}), A({0})) == d);
  }
}

TEST_CASE("text format round trip") {
  fixtures::DesignGen gen(9, powerset_pool(2));
  for (int n = 0; n < 200; ++n) {
    Design d = n % 2 ? gen.positive(A({0}), 4) : gen.negative(A({}), 4);
    CHECK(parse_design(print_design(d)) == d);
    CHECK(parse_design(print_design(d, true)) == d);
  }
  Design left = parse_design("(design (base (pos ε)) (pos ε (1) (neg 1 ((1) (daimon)) ((3) (pos 1.3 ())))))");
  CHECK(left == fixtures::example_left());
}

TEST_CASE("generated designs validate up to depth 4") {
  for (int seed = 0; seed < 4; ++seed) {
    fixtures::DesignGen gen(static_cast<unsigned>(seed), powerset_pool(2));
    for (int n = 0; n < 250; ++n) {
      Design d = n % 2 ? gen.positive(A({0}), 4) : gen.negative(A({0}), 4);
      CHECK(ok(validate_design(d)));
      CHECK(depth(d) <= 4);
    }
  }
}

TEST_CASE("rendering") {
  RenderOptions opt{std::string("ξ"), {A({1})}};
  std::string text = render_design(fixtures::example_left(), opt);
  CHECK(text.find("⊢ ξ  (ξ, {1})") == 0);
  CHECK(text.find("*ξ1* ⊢  (ξ1, {{1}, {3}})") != std::string::npos);
  CHECK(text.find("⊢ ξ13  (ξ13, ∅)") != std::string::npos);
}
