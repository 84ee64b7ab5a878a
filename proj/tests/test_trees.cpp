#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/sequences.hpp"
#include "core/trees.hpp"

using namespace latcomm;

namespace {

RootedTree path3() {
  return RootedTree({Edge({0, 0, 0}, {1, 0, 0}), Edge({1, 0, 0}, {2, 0, 0}),
                     Edge({2, 0, 0}, {3, 0, 0})});
}

RootedTree star3() {
  return RootedTree({Edge({0, 0, 0}, {1, 0, 0}), Edge({0, 0, 0}, {-1, 0, 0}),
                     Edge({0, 0, 0}, {0, 1, 0})});
}

RootedTree y_tree() {
  return RootedTree({Edge({0, 0, 0}, {1, 0, 0}), Edge({1, 0, 0}, {2, 0, 0}),
                     Edge({1, 0, 0}, {1, 1, 0})});
}

// Six edges: two right, a two-edge drop at (2,0), two more right.
RootedTree branched6() {
  return RootedTree({Edge({0, 0, 0}, {1, 0, 0}), Edge({1, 0, 0}, {2, 0, 0}),
                     Edge({2, 0, 0}, {2, -1, 0}), Edge({2, -1, 0}, {2, -2, 0}),
                     Edge({2, 0, 0}, {3, 0, 0}), Edge({3, 0, 0}, {4, 0, 0})});
}

}  // namespace

TEST_CASE("rooted trees reject cycles and disconnected edge sets") {
  CHECK_THROWS_AS(RootedTree({Edge({0, 0, 0}, {1, 0, 0}), Edge({1, 0, 0}, {1, 1, 0}),
                              Edge({1, 1, 0}, {0, 1, 0}), Edge({0, 1, 0}, {0, 0, 0})}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RootedTree({Edge({0, 0, 0}, {1, 0, 0}), Edge({3, 3, 0}, {4, 3, 0})}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RootedTree({Edge({1, 0, 0}, {2, 0, 0})}), std::invalid_argument);
}

TEST_CASE("parent, depth and degree bookkeeping") {
  RootedTree t = path3();
  CHECK(t.edge_count() == 3);
  CHECK(t.degree(kOrigin) == 1);
  CHECK(t.degree(Site{1, 0, 0}) == 2);
  CHECK(t.parent(Site{2, 0, 0}) == Site{1, 0, 0});
  CHECK(t.parent(kOrigin) == kOrigin);
  CHECK(t.child_end(Edge({1, 0, 0}, {2, 0, 0})) == Site{2, 0, 0});
  CHECK(t.depth(Site{3, 0, 0}) == 3);
}

TEST_CASE("edge weights count subtree sites") {
  auto wp = edge_weights(path3());
  CHECK(wp.at(Edge({0, 0, 0}, {1, 0, 0})) == 3);
  CHECK(wp.at(Edge({1, 0, 0}, {2, 0, 0})) == 2);
  CHECK(wp.at(Edge({2, 0, 0}, {3, 0, 0})) == 1);

  for (const auto& [e, w] : edge_weights(star3())) CHECK(w == 1);

  auto wy = edge_weights(y_tree());
  CHECK(wy.at(Edge({0, 0, 0}, {1, 0, 0})) == 3);
  CHECK(wy.at(Edge({1, 0, 0}, {2, 0, 0})) == 1);
  CHECK(wy.at(Edge({1, 0, 0}, {1, 1, 0})) == 1);
}

TEST_CASE("construction counts for the elementary shapes") {
  CHECK(construction_count(path3()) == 1);
  CHECK(construction_count(star3()) == 6);
  CHECK(construction_count(y_tree()) == 2);

  CHECK(brute_force_constructions(path3()) == 1);
  CHECK(brute_force_constructions(star3()) == 6);
  CHECK(brute_force_constructions(y_tree()) == 2);

  CHECK(log_construction_count(y_tree()) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("the weight product divides the factorial exactly") {
  for (RootedTree t : {path3(), star3(), y_tree(), branched6()}) {
    BigInt prod = 1;
    for (const auto& [e, w] : edge_weights(t)) prod *= w;
    CHECK(construction_count(t) * prod == factorial(unsigned(t.edge_count())));
  }
}

TEST_CASE("ordering enumeration is capped at eight edges") {
  std::vector<Edge> edges;
  for (int i = 0; i < 9; ++i)
    edges.emplace_back(Site{i, 0, 0}, Site{i + 1, 0, 0});
  CHECK_THROWS_AS(brute_force_constructions(RootedTree(edges)), budget_error);
}

TEST_CASE("tree catalog sizes and the histories cross-count") {
  CHECK(tree_catalog(1).size() == 4);
  CHECK(tree_catalog(2).size() == 18);

  auto hist = history_stats(5, 2);
  for (int n = 1; n <= 5; ++n) {
    BigInt sum = 0;
    for (const RootedTree& t : tree_catalog(n)) {
      BigInt formula = construction_count(t);
      CHECK(formula == brute_force_constructions(t));
      sum += formula;
    }
    CHECK(sum == hist.counts[n]);
  }
}

TEST_CASE("comb trees have a spine with evenly spaced teeth") {
  RootedTree comb = generate_comb_tree(2, 2, 2);
  CHECK(comb.edge_count() == 8);
  CHECK(comb.degree(Site{2, 0, 0}) == 3);
  CHECK(comb.degree(Site{4, 0, 0}) == 2);
  CHECK(comb.contains(Site{2, -2, 0}));

  RootedTree ell = generate_comb_tree(1, 1, 1);
  CHECK(ell.edge_count() == 2);
  CHECK(ell.contains(Site{1, -1, 0}));

  CHECK_THROWS_AS(generate_comb_tree(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_comb_tree(2000, 1000, 1000), budget_error);
}

TEST_CASE("toy family parameters follow the level recursion") {
  FamilyParams p = toy_family_params(2, 2, 4);
  REQUIRE(p.E.size() == 3);
  CHECK(p.E[2] == 16);
  CHECK(p.l[1] == 4);
  CHECK(p.l[2] == 32);
  CHECK(p.spacing[2] == 8);
  CHECK(family_edge_count(p) == 48);

  FamilyParams p3 = toy_family_params(3, 2, 4);
  CHECK(p3.E[3] == 256);
  CHECK(family_edge_count(p3) == 1024);

  CHECK_THROWS_AS(toy_family_params(3, 3, 9), std::invalid_argument);
}

TEST_CASE("the two-level family is a plain comb") {
  RootedTree fam = generate_family(toy_family_params(2, 2, 4));
  RootedTree comb = generate_comb_tree(4, 4, 8);
  CHECK(fam.edges() == comb.edges());
  CHECK(fam.edge_count() == 48);
}

TEST_CASE("three-level families materialize in both modes") {
  RootedTree unfolded = generate_family(toy_family_params(3, 2, 4));
  CHECK(unfolded.edge_count() == 1024);
  CHECK(validate_even_separation(unfolded));

  RootedTree folded =
      generate_family(toy_family_params(3, 2, 4, FamilyMode::Folded));
  CHECK(folded.edge_count() == 1024);
}

TEST_CASE("one-level families degenerate to a bare spine") {
  RootedTree t = generate_family(toy_family_params(1, 2, 4));
  CHECK(t.edge_count() == 4);
  CHECK(construction_count(t) == 1);
}

TEST_CASE("unfolded family paths only move right or down") {
  RootedTree t = generate_family(toy_family_params(3, 2, 4));
  for (const Site& s : t.sites()) {
    if (s == t.root()) continue;
    Site p = t.parent(s);
    bool right = s.x == p.x + 1 && s.y == p.y;
    bool down = s.x == p.x && s.y == p.y - 1;
    CHECK((right || down));
  }
}

TEST_CASE("target patterns follow the degree rules") {
  RootedTree single = RootedTree({Edge({0, 0, 0}, {1, 0, 0})});
  TargetPattern tp = target_string(single);
  CHECK(tp.n == 1);
  CHECK(tp.at(kOrigin) == kAlpha3);
  CHECK(tp.at(Site{1, 0, 0}) == kAlpha2);
  CHECK(tp.at(Site{5, 5, 0}) == kAlpha0);

  RootedTree two = RootedTree({Edge({0, 0, 0}, {1, 0, 0}), Edge({1, 0, 0}, {2, 0, 0})});
  TargetPattern tp2 = target_string(two);
  CHECK(tp2.at(Site{1, 0, 0}) == kAlpha3);
  CHECK(tp2.at(Site{2, 0, 0}) == kAlpha2);

  TargetPattern tp6 = target_string(branched6());
  CHECK(tp6.at(Site{2, 0, 0}) == kAlpha2);   // branch site
  CHECK(tp6.at(Site{2, -1, 0}) == kAlpha3);  // straight-through site
  CHECK(tp6.at(Site{4, 0, 0}) == kAlpha2);   // leaf

  CHECK_THROWS_AS(target_string(star3()), std::invalid_argument);
  RootedTree plus({Edge({0, 0, 0}, {1, 0, 0}), Edge({0, 0, 0}, {-1, 0, 0}),
                   Edge({0, 0, 0}, {0, 1, 0}), Edge({0, 0, 0}, {0, -1, 0})});
  CHECK_THROWS_AS(target_string(plus), std::invalid_argument);
}

TEST_CASE("even separation holds for straight pairs and the toy family") {
  RootedTree two = RootedTree({Edge({0, 0, 0}, {1, 0, 0}), Edge({1, 0, 0}, {2, 0, 0})});
  CHECK(validate_even_separation(two));

  RootedTree single = RootedTree({Edge({0, 0, 0}, {1, 0, 0})});
  CHECK_FALSE(validate_even_separation(single));

  CHECK_FALSE(validate_even_separation(generate_comb_tree(1, 1, 1)));
  CHECK(validate_even_separation(branched6()));
  CHECK(validate_even_separation(generate_family(toy_family_params(2, 2, 4))));
}

TEST_CASE("ordering lower bound evaluates and turns increasing late") {
  CHECK(family_count_lower_bound(1) == doctest::Approx(-21.0 * std::log(4.0)));

  auto inc = [](int64_t n) {
    return family_count_lower_bound(n + 1) - family_count_lower_bound(n);
  };
  int64_t big = int64_t(1) << 42;  // 4^21
  CHECK(inc(2 * big) > 0);
  CHECK(inc(big / 4) < 0);

  BigInt brute = brute_force_constructions(branched6());
  CHECK(std::log(brute.convert_to<double>()) >= family_count_lower_bound(6));
}

TEST_CASE("trees serialize and parse back") {
  RootedTree t = branched6();
  RootedTree parsed = RootedTree::from_json(t.to_json());
  CHECK(parsed.edges() == t.edges());
  CHECK(parsed.root() == t.root());
}
