#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"

using namespace pqcurve;
using testing::crit;
using testing::f;
using testing::inf;
using testing::pt;

namespace {

bool has_value(const std::vector<CriticalDatum<double>>& c, std::complex<double> v, const std::vector<int>& parts) {
  for (const auto& d : c)
    if (!d.value.is_infinity() && std::abs(d.value.value() - v) < 1e-9) return d.cycle_type == CycleType(parts);
  return false;
}

bool has_infinity(const std::vector<CriticalDatum<double>>& c, const std::vector<int>& parts) {
  for (const auto& d : c)
    if (d.value.is_infinity()) return d.cycle_type == CycleType(parts);
  return false;
}

int rh_sum(const std::vector<CriticalDatum<double>>& c) {
  int s = 0;
  for (const auto& d : c) s += d.cycle_type.deficiency();
  return s;
}

ExactMobius random_mobius(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  for (;;) {
    ExactMobius m{GaussQ(mpq_class(d(rng)), mpq_class(d(rng))), GaussQ(mpq_class(d(rng))),
                  GaussQ(mpq_class(d(rng)), mpq_class(d(rng))), GaussQ(mpq_class(d(rng)))};
    if (!(m.a * m.d - m.b * m.c).is_zero()) return m;
  }
}

}  // namespace

TEST_CASE("normalize cancels common factors and makes the denominator monic") {
  auto g = RationalFunction::normalize(ExactPoly{GaussQ(-1), GaussQ(0), GaussQ(1)}, ExactPoly{GaussQ(-1), GaussQ(1)});
  CHECK(g.degree() == 1);
  CHECK(g.num() == (ExactPoly{GaussQ(1), GaussQ(1)}));
  CHECK(g.den() == ExactPoly::constant(GaussQ(1)));

  auto h = f("(z^2+1)/z");
  CHECK(h.degree() == 2);
  CHECK(h.num() == (ExactPoly{GaussQ(1), GaussQ(0), GaussQ(1)}));

  auto s = f("(2*z^2)/2");
  CHECK(s.num() == ExactPoly::monomial(GaussQ(1), 2));
  CHECK(s.den() == ExactPoly::constant(GaussQ(1)));

  CHECK_THROWS_AS(RationalFunction::normalize(ExactPoly::x(), ExactPoly()), ZeroDenominator);
  CHECK_THROWS_AS(f("(z+1)/(z+1)"), DegreeZero);
}

TEST_CASE("critical numerator") {
  CHECK(critical_numerator(f("z^2")) == ExactPoly::monomial(GaussQ(2), 1));
  CHECK(critical_numerator(f("(z^2+1)/z")) == (ExactPoly{GaussQ(-1), GaussQ(0), GaussQ(1)}));
  CHECK(critical_numerator(f("z^3")) == ExactPoly::monomial(GaussQ(3), 2));
}

TEST_CASE("fiber cycle types") {
  CHECK(fiber_cycle_type(f("z^2"), pt(0)) == CycleType({2}));
  CHECK(fiber_cycle_type(f("(z^2+1)/z"), inf()) == CycleType({1, 1}));
  CHECK(fiber_cycle_type(f("z^2"), pt(5)) == CycleType({1, 1}));
  CHECK(fiber_cycle_type(f("z^3-3*z"), pt(2)) == CycleType({2, 1}));
  CHECK(fiber_cycle_type(f("z^3-3*z"), inf()) == CycleType({3}));
}

TEST_CASE("critical values of the worked functions") {
  auto a = crit(f("z^2"));
  CHECK(a.size() == 2);
  CHECK(has_value(a, 0.0, {2}));
  CHECK(has_infinity(a, {2}));

  auto b = crit(f("(z^2+1)/z"));
  CHECK(b.size() == 2);
  CHECK(has_value(b, 2.0, {2}));
  CHECK(has_value(b, -2.0, {2}));

  std::mt19937_64 rng(3);
  auto c = crit(testing::generic_function(rng, 3));
  CHECK(c.size() == 4);
  CHECK(all_values_simple(c));
}

TEST_CASE("critical values agree across precisions") {
  auto g = f("(z^3 + (1/2)*z + i)/(z^2 - 3)");
  auto lo = crit<Real53>(g);
  auto hi = crit<Real113>(g);
  REQUIRE(lo.size() == hi.size());
  for (std::size_t k = 0; k < lo.size(); ++k) {
    CHECK(lo[k].cycle_type == hi[k].cycle_type);
    CHECK(lo[k].value.is_infinity() == hi[k].value.is_infinity());
    if (!lo[k].value.is_infinity())
      CHECK(std::abs(lo[k].value.value() - to_double(hi[k].value.value())) < 1e-10);
  }
}

TEST_CASE("coincident critical values are merged with the right multiplicity") {
  // z^4 - 2 z^2: critical points +-1 both over -1.
  auto c = crit(f("z^4 - 2*z^2"));
  CHECK(has_value(c, -1.0, {2, 2}));
  CHECK(has_value(c, 0.0, {2, 1, 1}));
  CHECK(has_infinity(c, {4}));
}

TEST_CASE("separation condition") {
  CHECK(separation_condition(f("z^3-3*z")));
  CHECK_FALSE(separation_condition(f("z^4-2*z^2")));
  CHECK(separation_condition(f("z^2")));
}

TEST_CASE("scalar ratio set") {
  auto s = scalar_ratio_set(crit(f("(z^2+1)/z")), 1e-9);
  REQUIRE(s.ratios.size() == 1);
  CHECK(std::abs(s.ratios[0] - std::complex<double>(-1)) < 1e-12);
  CHECK_FALSE(s.always_shared);

  CHECK(scalar_ratio_set(crit(f("z^5")), 1e-9).always_shared);

  std::mt19937_64 rng(5);
  for (int n : {3, 4}) {
    RationalFunction g = testing::generic_function(rng, n);
    while (!ratio_guard(g)) g = testing::generic_function(rng, n);
    auto r = scalar_ratio_set(crit(g), 1e-9);
    CHECK(r.ratios.size() == static_cast<std::size_t>((2 * n - 2) * (2 * n - 3)));
  }
}

TEST_CASE("ratio set matches a brute-force intersection test") {
  std::mt19937_64 rng(9);
  RationalFunction g = testing::generic_function(rng, 3);
  auto c = crit(g);
  auto set = scalar_ratio_set(c, 1e-9);
  REQUIRE_FALSE(set.always_shared);
  auto shares = [&](std::complex<double> alpha) {
    for (const auto& x : c)
      for (const auto& y : c)
        if (std::abs(alpha * y.value.value() - x.value.value()) < 1e-8 * (1 + std::abs(x.value.value())))
          return true;
    return false;
  };
  for (const auto& alpha : set.ratios) CHECK(shares(alpha));
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 20; ++t) {
    std::complex<double> alpha(u(rng), u(rng));
    bool near = std::abs(alpha - 1.0) < 1e-6;
    for (const auto& r : set.ratios) near = near || std::abs(alpha - r) < 1e-6;
    if (!near) CHECK_FALSE(shares(alpha));
  }
}

TEST_CASE("exact ratio resultant agrees with the numeric ratio set") {
  std::mt19937_64 rng(21);
  RationalFunction g = testing::generic_function(rng, 3);
  auto set = scalar_ratio_set(crit(g), 1e-9);
  auto agrees = ratio_resultant_check(g, set, 1e-7);
  REQUIRE(agrees.has_value());
  CHECK(*agrees);
  CHECK(ratio_resultant(g).degree() == static_cast<int>(set.ratios.size()));
}

TEST_CASE("power forms") {
  auto a = extract_power_form(f("z^4"), pt(0), inf());
  REQUIRE(a.has_value());
  CHECK(a->d == 4);
  CHECK(a->inner.degree() == 1);
  CHECK(recompose(*a) == f("z^4"));

  auto two = extract_power_form(f("z^4"), pt(0), inf(), 2);
  REQUIRE(two.has_value());
  CHECK(two->inner.degree() == 2);

  auto b = extract_power_form(f("(z^2+1)^2/z^2"), pt(0), inf());
  REQUIRE(b.has_value());
  CHECK(b->d == 2);
  CHECK(b->inner.degree() == 2);
  CHECK(recompose(*b) == f("(z^2+1)^2/z^2"));

  CHECK_FALSE(extract_power_form(f("z^3-3*z"), pt(0), inf()).has_value());

  // Values away from 0 and infinity: 1 + 2/(z^3 - i) takes 1 + 2i at z = 0 and 1 at infinity.
  auto c = extract_power_form(f("1 + 2/(z^3 - i)"), pt(1, 2), pt(1));
  REQUIRE(c.has_value());
  CHECK(c->d == 3);
  CHECK(recompose(*c) == f("1 + 2/(z^3 - i)"));

  CHECK(power_form_exponent(CycleType({4, 2}), CycleType({6})) == 2);
  CHECK(power_form_exponent(CycleType({2, 1}), CycleType({3})) == 1);
}

TEST_CASE("property: Riemann-Hurwitz and fiber sums on random functions") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    int n = 2 + t % 4;
    RationalFunction g = random_function(rng, n, t % 3 == 0, 2);
    auto c = crit(g);
    CHECK(rh_sum(c) == 2 * n - 2);
    for (const auto& d : c) CHECK(d.cycle_type.degree() == n);
    CHECK(fiber_cycle_type(g, inf()).degree() == n);
    CHECK(fiber_cycle_type(g, pt(t, 1)).degree() == n);
    CHECK((static_cast<int>(c.size()) == 2 * n - 2) == all_values_simple(c));
  }
}

TEST_CASE("property: precomposition keeps and postcomposition maps the critical data") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 8; ++t) {
    RationalFunction g = random_function(rng, 3, false, 2);
    ExactMobius nu = random_mobius(rng);
    auto base = crit(g);
    auto pre = crit(g.precompose(nu));
    REQUIRE(base.size() == pre.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
      CHECK(base[k].cycle_type == pre[k].cycle_type);
      CHECK(base[k].value.close_to(pre[k].value, 1e-8));
    }
    ExactMobius mu = random_mobius(rng);
    auto post = crit(g.postcompose(mu));
    auto mapped = MappedFunction<double>(g, Mobius<double>::from_exact(mu)).map_critical(base);
    REQUIRE(post.size() == mapped.size());
    for (std::size_t k = 0; k < post.size(); ++k) {
      CHECK(post[k].cycle_type == mapped[k].cycle_type);
      CHECK(post[k].value.close_to(mapped[k].value, 1e-7));
    }
  }
}

TEST_CASE("property: preimage count of a finite value set") {
  auto count = [](const RationalFunction& g, const std::vector<ExactPoint>& t) {
    int s = 0;
    for (const auto& x : t) s += fiber_cycle_type(g, x).count();
    return s;
  };
  auto bound = [](int n, std::size_t t) { return 2 + (static_cast<int>(t) - 2) * n; };

  RationalFunction g = f("(z^2+1)/z");
  std::vector<ExactPoint> t{pt(2), pt(-2)};
  CHECK(count(g, t) == bound(2, t.size()));
  t.push_back(pt(7));
  CHECK(count(g, t) == bound(2, t.size()));
  std::vector<ExactPoint> partial{pt(2), pt(5), pt(7)};
  CHECK(count(g, partial) > bound(2, partial.size()));

  RationalFunction cheb = f("z^3-3*z");
  std::vector<ExactPoint> all{pt(2), pt(-2), inf(), pt(1)};
  CHECK(count(cheb, all) == bound(3, all.size()));
  std::vector<ExactPoint> missing{pt(2), inf(), pt(1)};
  CHECK(count(cheb, missing) > bound(3, missing.size()));
}

TEST_CASE("numeric roots") {
  NumPoly<double> p{{6, 0}, {-5, 0}, {1, 0}};
  auto r = polynomial_roots(p);
  REQUIRE(r.size() == 2);
  std::sort(r.begin(), r.end(), [](auto a, auto b) { return a.real() < b.real(); });
  CHECK(std::abs(r[0] - 2.0) < 1e-12);
  CHECK(std::abs(r[1] - 3.0) < 1e-12);
}
