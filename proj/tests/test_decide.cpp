#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"

using namespace pqcurve;
using testing::f;
using testing::verify_opts;

namespace {

bool solutions_invariant(const AnalysisReport& r) {
  bool low = std::any_of(r.components.begin(), r.components.end(),
                         [](const ComponentReport& c) { return c.genus && *c.genus <= 1; });
  return low == r.has_meromorphic_solutions;
}

RationalFunction simple_valued(std::mt19937_64& rng, int n) {
  for (;;) {
    auto g = random_function(rng, n);
    auto c = critical_values<double>(g);
    if (static_cast<int>(c.size()) == 2 * n - 2) return g;
  }
}

}  // namespace

TEST_CASE("pair examples") {
  auto a = analyze_pair(f("z^2"), f("(z^2+1)/z"), verify_opts());
  REQUIRE(a.component_count() == 1);
  CHECK(a.components[0].size == 4);
  CHECK(*a.components[0].genus == 1);
  CHECK(a.has_meromorphic_solutions);
  CHECK(a.checks.all());
  CHECK(std::count(a.tags.begin(), a.tags.end(), "disjoint-critical-values") == 1);

  auto b = analyze_pair(f("z^3-3*z"), f("z^2/(z-1)"), verify_opts());
  REQUIRE(b.component_count() == 1);
  CHECK(*b.components[0].genus == 2);
  CHECK_FALSE(b.has_meromorphic_solutions);

  auto c = analyze_pair(f("z^2"), f("z^2+1"), verify_opts());
  REQUIRE(c.component_count() == 1);
  CHECK(*c.components[0].genus == 0);
  CHECK(c.has_meromorphic_solutions);

  for (const auto* r : {&a, &b, &c}) CHECK(solutions_invariant(*r));
}

TEST_CASE("the fast path reports the same genus as the monodromy") {
  auto fast = analyze_pair(f("z^3-3*z"), f("z^2/(z-1)"));
  auto full = analyze_pair(f("z^3-3*z"), f("z^2/(z-1)"), verify_opts());
  CHECK_FALSE(fast.monodromy_computed);
  CHECK(full.monodromy_computed);
  CHECK(fast.genus_multiset() == full.genus_multiset());
  CHECK(fast.size_multiset() == full.size_multiset());
}

TEST_CASE("degree one") {
  auto r = analyze_pair(f("2*z + 1"), f("z^3"));
  CHECK(r.component_count() == 1);
  CHECK(*r.components[0].genus == 0);
  CHECK(r.has_meromorphic_solutions);
}

TEST_CASE("reducible pairs") {
  auto r = analyze_pair(f("z^4"), f("z^6"), verify_opts());
  CHECK(r.component_count() == 2);
  CHECK(r.genus_multiset() == std::vector<int>{0, 0});
  CHECK(r.checks.all());

  // P(x) = P(R(y)) contains x = R(y).
  auto s = analyze_pair(f("z^3 - z"), f("(z^2+1)^3 - (z^2+1)"), verify_opts());
  CHECK(s.component_count() >= 2);
  CHECK(s.checks.all());
}

TEST_CASE("self examples") {
  std::mt19937_64 rng(73);
  auto three = analyze_self(simple_valued(rng, 3), verify_opts());
  REQUIRE(three.component_count() == 1);
  CHECK(*three.components[0].genus == 1);
  CHECK(three.has_meromorphic_solutions);
  REQUIRE(three.diagonal_cycles.has_value());
  CHECK(*three.diagonal_cycles == *three.expected_diagonal_cycles);

  auto four = analyze_self(simple_valued(rng, 4), verify_opts());
  REQUIRE(four.component_count() == 1);
  CHECK(*four.components[0].genus == 4);
  CHECK_FALSE(four.has_meromorphic_solutions);

  auto sq = analyze_self(f("z^2"), verify_opts());
  REQUIRE(sq.component_count() == 1);
  CHECK(*sq.components[0].genus == 0);

  auto z4 = analyze_self(f("z^4"), verify_opts());
  CHECK(z4.component_count() == 3);
  CHECK(z4.has_meromorphic_solutions);

  for (const auto* r : {&three, &four, &sq, &z4}) CHECK(solutions_invariant(*r));
}

TEST_CASE("strong uniqueness examples") {
  std::mt19937_64 rng(79);
  auto p4 = testing::generic_function(rng, 4);
  while (!ratio_guard(p4)) p4 = testing::generic_function(rng, 4);
  auto u = strong_uniqueness(p4);
  CHECK(u.is_strong_uniqueness);
  CHECK(u.ratio_set.size() == 30);
  CHECK(u.exceptional.size() == 30);
  for (const auto& e : u.exceptional) {
    REQUIRE(e.report.component_count() == 1);
    CHECK(*e.report.components[0].genus == 8);
  }
  REQUIRE(u.generic.report.component_count() == 1);
  CHECK(*u.generic.report.components[0].genus == 9);

  auto p3 = testing::generic_function(rng, 3);
  auto v = strong_uniqueness(p3);
  CHECK_FALSE(v.is_strong_uniqueness);
  CHECK(v.self.has_meromorphic_solutions);

  auto w = strong_uniqueness(f("z^4"));
  CHECK_FALSE(w.is_strong_uniqueness);
  CHECK(w.always_shared);
  CHECK(w.generic.report.has_meromorphic_solutions);
}

TEST_CASE("property: swapping P and Q transposes the grid") {
  std::mt19937_64 rng(83);
  for (int t = 0; t < 6; ++t) {
    auto p = random_function(rng, 2 + t % 3, false, 2);
    auto q = random_function(rng, 2 + (t / 2) % 3, t % 2 == 1, 2);
    auto a = analyze_pair(p, q, verify_opts(t));
    auto b = analyze_pair(q, p, verify_opts(t));
    CHECK(a.size_multiset() == b.size_multiset());
    CHECK(a.genus_multiset() == b.genus_multiset());
  }
}

TEST_CASE("property: Mobius maps on either side") {
  ExactMobius mu{GaussQ(1), GaussQ(2), GaussQ(mpq_class(0), mpq_class(1)), GaussQ(3)};
  ExactMobius nu{GaussQ(mpq_class(1, 2)), GaussQ(-1), GaussQ(1), GaussQ(1)};
  std::vector<std::pair<std::string, std::string>> pairs{
      {"z^4", "z^6"}, {"z^2", "(z^2+1)/z"}, {"z^3-z", "(z^2+1)^3 - (z^2+1)"}, {"z^3", "z^3+1"}};
  for (const auto& [ps, qs] : pairs) {
    auto p = f(ps);
    auto q = f(qs);
    auto base = analyze_pair(p, q, verify_opts());
    auto post = analyze_pair(p.postcompose(mu), q.postcompose(mu), verify_opts());
    auto pre = analyze_pair(p.precompose(nu), q, verify_opts());
    CHECK(base.size_multiset() == post.size_multiset());
    CHECK(base.genus_multiset() == post.genus_multiset());
    CHECK(base.genus_multiset() == pre.genus_multiset());
  }
}

TEST_CASE("property: strong uniqueness is invariant under precomposition") {
  ExactMobius nu{GaussQ(2), GaussQ(1), GaussQ(1), GaussQ(-1)};
  std::mt19937_64 rng(89);
  for (int n : {3, 4}) {
    auto p = testing::generic_function(rng, n);
    CHECK(strong_uniqueness(p).is_strong_uniqueness == strong_uniqueness(p.precompose(nu)).is_strong_uniqueness);
  }
  CHECK_FALSE(strong_uniqueness(f("z^3").precompose(nu)).is_strong_uniqueness);
}

TEST_CASE("property: quick criteria never contradict the orbit count") {
  std::mt19937_64 rng(97);
  for (int t = 0; t < 15; ++t) {
    auto p = random_function(rng, 2 + t % 4, t % 3 == 0, 1);
    auto q = random_function(rng, 2 + (t + 1) % 3, t % 5 == 0, 1);
    auto r = analyze_pair(p, q, verify_opts(t));
    CHECK(r.checks.all());
    if (proves_irreducible(r.criteria)) CHECK(r.component_count() == 1);
  }
}

TEST_CASE("sweeps") {
  auto s = generic_sweep(SweepKind::Pair, 3, 3, 25, 7);
  CHECK(s.matched == 25);
  CHECK(s.failures == 0);
  for (const auto& rec : s.records) {
    REQUIRE(rec.genera.size() == 1);
    CHECK(rec.genera[0] == 4);
  }
  auto again = generic_sweep(SweepKind::Pair, 3, 3, 25, 7);
  for (std::size_t k = 0; k < s.records.size(); ++k) CHECK(s.records[k].p == again.records[k].p);
  Options serial;
  serial.parallel = false;
  auto ser = generic_sweep(SweepKind::Pair, 3, 3, 25, 7, serial);
  for (std::size_t k = 0; k < s.records.size(); ++k) CHECK(s.records[k].q == ser.records[k].q);

  CHECK_THROWS_AS(generic_sweep(SweepKind::Pair, 2, 2, 3, 0), InputError);
  CHECK_THROWS_AS(generic_sweep(SweepKind::Uniqueness, 2, 2, 3, 0), InputError);
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("genericity guards") {
  CHECK_FALSE(generic_guards(f("z^3")));
  CHECK_FALSE(generic_guards(f("z^4-2*z^2")));
  std::mt19937_64 rng(101);
  CHECK(generic_guards(testing::generic_function(rng, 3)));
  CHECK(critical_values_disjoint(f("z^2"), f("(z^2+1)/z")));
  CHECK_FALSE(critical_values_disjoint(f("z^2"), f("z^2+1")));
}

TEST_CASE("precision ladder") {
  Options o;
  int calls = 0;
  int got = at_precision_ladder(o, [&]<class R>(int bits) {
    ++calls;
    if (bits < 113) throw NumericError("too coarse");
    return precision_bits<R>();
  });
  CHECK(calls == 2);
  CHECK(got == 113);

  try {
    at_precision_ladder(o, [&]<class R>(int) -> int { throw NoConvergence("never"); });
    FAIL("expected a failure");
  } catch (const NumericError& e) {
    CHECK(e.precision_bits() == 237);
  }

  o.escalate = false;
  calls = 0;
  CHECK_THROWS_AS(at_precision_ladder(o, [&]<class R>(int) -> int {
                    ++calls;
                    throw NumericError("x");
                  }),
                  NumericError);
  CHECK(calls == 1);

  o.precision_bits = 64;
  CHECK_THROWS_AS(at_precision_ladder(o, [&]<class R>(int) { return 0; }), InputError);
}

TEST_CASE("analyses at higher precision agree") {
  Options o = verify_opts();
  o.precision_bits = 113;
  auto hi = analyze_pair(f("z^2"), f("(z^2+1)/z"), o);
  CHECK(hi.precision_bits == 113);
  CHECK(hi.genus_multiset() == std::vector<int>{1});
}
