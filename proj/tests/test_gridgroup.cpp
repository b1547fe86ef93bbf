#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "helpers.hpp"

using namespace pqcurve;

namespace {

Permutation cyc(int k, std::vector<std::vector<int>> cycles) { return Permutation::from_cycles(k, cycles); }

Permutation random_perm(std::mt19937_64& rng, int k) {
  std::vector<int> v(static_cast<std::size_t>(k));
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(v);
}

/// A tuple with product one: r - 1 random permutations and the inverse of
/// their product.
std::vector<Permutation> product_one_tuple(std::mt19937_64& rng, int k, int r) {
  std::vector<Permutation> out;
  for (int i = 0; i + 1 < r; ++i) out.push_back(random_perm(rng, k));
  out.push_back(product(out, k).inverse());
  return out;
}

/// Ordered pairs reachable from (0, 1): an independent double transitivity oracle.
bool pair_orbit_oracle(const std::vector<Permutation>& gens, int k) {
  std::vector<char> seen(static_cast<std::size_t>(k * k), 0);
  std::vector<std::pair<int, int>> stack{{0, 1}};
  seen[1] = 1;
  int count = 1;
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    for (const auto& g : gens) {
      int x = g(a) * k + g(b);
      if (!seen[static_cast<std::size_t>(x)]) {
        seen[static_cast<std::size_t>(x)] = 1;
        ++count;
        stack.emplace_back(g(a), g(b));
      }
    }
  }
  return count == k * (k - 1);
}

}  // namespace

TEST_CASE("permutations") {
  auto a = cyc(3, {{0, 1, 2}});
  CHECK(a.str() == "(1 2 3)");
  CHECK(Permutation::identity(3).str() == "()");
  CHECK(a.then(a).then(a).is_identity());
  CHECK(a.then(a.inverse()).is_identity());
  CHECK(a.cycle_type() == CycleType({3}));
  CHECK_THROWS_AS(Permutation(std::vector<int>{0, 0}), std::invalid_argument);
  auto t = cyc(3, {{0, 1}});
  // Right action: first t then a.
  CHECK(t.then(a)(0) == a(t(0)));
}

TEST_CASE("union find") {
  UnionFind uf(5);
  CHECK(uf.unite(0, 1));
  CHECK_FALSE(uf.unite(1, 0));
  CHECK(uf.unite(3, 4));
  CHECK(uf.find(0) == uf.find(1));
  CHECK(uf.find(2) != uf.find(3));
  CHECK(uf.set_count() == 3);
}

TEST_CASE("group predicates") {
  std::vector<Permutation> s3{cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})};
  CHECK(is_transitive(s3, 3));
  CHECK(is_primitive(s3, 3));
  CHECK(is_doubly_transitive(s3, 3));

  std::vector<Permutation> c4{cyc(4, {{0, 1, 2, 3}})};
  CHECK(is_transitive(c4, 4));
  CHECK_FALSE(is_primitive(c4, 4));
  auto blocks = nontrivial_block_system(c4, 4);
  REQUIRE(blocks.has_value());
  std::vector<std::vector<int>> expected{{0, 2}, {1, 3}};
  CHECK(*blocks == expected);

  CHECK_FALSE(is_transitive({cyc(3, {{0, 1}})}, 3));
}

TEST_CASE("grid action examples") {
  auto t = cyc(2, {{0, 1}});
  auto ga = grid_action({t}, {t});
  // (c11 c22)(c12 c21) with cells 0..3 = 11, 12, 21, 22
  CHECK(ga.deltas[0] == cyc(4, {{0, 3}, {1, 2}}));

  auto g3 = grid_action({cyc(3, {{0, 1, 2}})}, {Permutation::identity(2)});
  CHECK(g3.deltas[0].cycle_type() == CycleType({3, 3}));

  auto g6 = grid_action({cyc(2, {{0, 1}})}, {cyc(3, {{0, 1, 2}})});
  CHECK(g6.deltas[0].cycle_type() == CycleType({6}));
  CHECK(gcd_cycle_sum(CycleType({2}), CycleType({3})) == 1);
  CHECK(gcd_cycle_sum(CycleType({2, 2}), CycleType({4, 2})) == 8);
}

TEST_CASE("orbits of the z^2 grid action") {
  auto t = cyc(2, {{0, 1}});
  auto ga = grid_action({t, t}, {t, t});
  auto orb = orbits(ga);
  REQUIRE(orb.size() == 2);
  CHECK(orb[0].cells == std::vector<int>{0, 3});
  CHECK(orb[1].cells == std::vector<int>{1, 2});
  for (auto& o : orb) CHECK(component_genus(o, ga) == 0);

  auto id = grid_action({Permutation::identity(2)}, {Permutation::identity(3)});
  CHECK(orbits(id).size() == 6);
}

TEST_CASE("genus formula examples") {
  // T2 against T3 over -1, 1, infinity.
  std::vector<CycleType> l{CycleType({2}), CycleType({1, 1}), CycleType({2})};
  std::vector<CycleType> m{CycleType({1, 1, 1}), CycleType({2, 1}), CycleType({3})};
  CHECK(genus_gcd_formula(l, m, 3, 2, 3) == 0);

  // z^2 against (z^2+1)/z over 0, infinity, 2, -2.
  std::vector<CycleType> a{CycleType({2}), CycleType({2}), CycleType({1, 1}), CycleType({1, 1})};
  std::vector<CycleType> b{CycleType({1, 1}), CycleType({1, 1}), CycleType({2}), CycleType({2})};
  CHECK(genus_gcd_formula(a, b, 4, 2, 2) == 1);
  CHECK_THROWS_AS(genus_gcd_formula(a, b, 3, 2, 2), std::invalid_argument);
}

TEST_CASE("self curve examples") {
  auto t = cyc(2, {{0, 1}});
  auto res = self_curve_analysis({t, t}, 2);
  CHECK(res.irreducible);
  REQUIRE(res.genus.has_value());
  CHECK(*res.genus == 0);
  CHECK(res.diagonal.size == 2);
  CHECK(res.diagonal_cycles == res.expected_diagonal_cycles);

  // z^4: cyclic of order 4 at 0 and infinity.
  auto c = cyc(4, {{0, 1, 2, 3}});
  auto z4 = self_curve_analysis({c, c.inverse()}, 4);
  CHECK_FALSE(z4.irreducible);
  CHECK(z4.components.size() == 3);
}

TEST_CASE("property: grid invariants on random tuples") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 60; ++t) {
    int n = 2 + t % 4;
    int m = 2 + (t / 4) % 4;
    int r = 3 + t % 3;
    auto alphas = product_one_tuple(rng, n, r);
    auto betas = product_one_tuple(rng, m, r);
    auto ga = grid_action(alphas, betas);
    auto orb = orbits(ga);
    int total = 0;
    std::vector<int> cycles_total(static_cast<std::size_t>(r), 0);
    for (auto& o : orb) {
      total += o.size;
      bool blocks_ok = blocks_reproduce(o, ga, alphas, betas);
      if (is_transitive(alphas, n) && is_transitive(betas, m)) {
        CHECK(o.size % std::lcm(n, m) == 0);
        CHECK(blocks_ok);
      }
      try {
        component_genus(o, ga);
      } catch (const NonIntegerGenus&) {
        // Random tuples need not come from a cover; only the counts are checked.
      }
      for (int i = 0; i < r; ++i) cycles_total[static_cast<std::size_t>(i)] += o.cycle_counts[static_cast<std::size_t>(i)];
    }
    CHECK(total == n * m);
    for (int i = 0; i < r; ++i)
      CHECK(cycles_total[static_cast<std::size_t>(i)] ==
            gcd_cycle_sum(alphas[static_cast<std::size_t>(i)].cycle_type(), betas[static_cast<std::size_t>(i)].cycle_type()));
  }
}

TEST_CASE("property: double transitivity iff two orbits on the self grid") {
  std::mt19937_64 rng(47);
  int doubly = 0;
  for (int t = 0; t < 80; ++t) {
    int n = 3 + t % 4;
    std::vector<Permutation> gens;
    // Mix of small cyclic, dihedral-like and random generating sets.
    if (t % 4 == 0) {
      std::vector<int> v(static_cast<std::size_t>(n));
      std::iota(v.begin(), v.end(), 1);
      v.back() = 0;
      gens.push_back(Permutation(v));
      gens.push_back(gens[0].inverse());
    } else {
      gens = product_one_tuple(rng, n, 2 + t % 3);
    }
    if (!is_transitive(gens, n)) continue;
    bool dt = is_doubly_transitive(gens, n);
    CHECK(dt == pair_orbit_oracle(gens, n));
    auto grid = grid_action(gens, gens);
    CHECK(dt == (orbits(grid).size() == 2));
    doubly += dt;
  }
  CHECK(doubly > 0);
}

TEST_CASE("property: primitivity is preserved under relabeling") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 30; ++t) {
    int n = 4 + t % 3;
    auto gens = product_one_tuple(rng, n, 3);
    auto sigma = random_perm(rng, n);
    std::vector<Permutation> conj;
    for (const auto& g : gens) conj.push_back(sigma.inverse().then(g).then(sigma));
    CHECK(is_primitive(gens, n) == is_primitive(conj, n));
    CHECK(is_transitive(gens, n) == is_transitive(conj, n));
  }
}
