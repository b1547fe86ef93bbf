#include <random>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"

using namespace pqcurve;
using testing::crit;
using testing::f;

namespace {

using C = std::complex<double>;

double loop_angle(const LoopSystem<double>& sys, const C& z) { return std::arg((z - sys.basepoint) / -sys.basepoint); }

Permutation track_around(const RationalFunction& g, const std::vector<C>& points, int which,
                         const std::vector<C>& avoid = {}) {
  auto sys = build_loops(points, avoid);
  MappedFunction<double> mf(g);
  auto num = mf.numerator();
  auto den = mf.denominator();
  auto fiber = compute_fiber(num, den, sys.basepoint);
  std::vector<C> obstacles = points;
  obstacles.insert(obstacles.end(), avoid.begin(), avoid.end());
  for (std::size_t k = 0; k < sys.loops.size(); ++k)
    if (sys.order[k] == which) return track_loop(num, den, fiber, sys.loops[k], obstacles);
  FAIL("loop not found");
  return {};
}

std::vector<CycleType> cycle_types(const std::vector<Permutation>& perms) {
  std::vector<CycleType> out;
  for (const auto& p : perms) out.push_back(p.cycle_type());
  return out;
}

template <class R>
void check_invariants(const BranchData<R>& bd, const RationalFunction& p, const RationalFunction& q) {
  CHECK(product(bd.alphas, bd.n).is_identity());
  CHECK(product(bd.betas, bd.m).is_identity());
  int sp = 0;
  int sq = 0;
  for (int i = 0; i < bd.r(); ++i) {
    sp += bd.alphas[i].cycle_type().deficiency();
    sq += bd.betas[i].cycle_type().deficiency();
    // Independent cycle types from the fibers of the exact functions.
    CHECK(bd.alphas[i].cycle_type() == fiber_cycle_type_numeric<R>(p, bd.values[i]));
    CHECK(bd.betas[i].cycle_type() == fiber_cycle_type_numeric<R>(q, bd.values[i]));
    CHECK(bd.alphas[i].is_identity() == !bd.critical_p[i]);
    CHECK(bd.betas[i].is_identity() == !bd.critical_q[i]);
  }
  CHECK(sp == 2 * bd.n - 2);
  CHECK(sq == 2 * bd.m - 2);
  CHECK(is_transitive(bd.alphas, bd.n));
  CHECK(is_transitive(bd.betas, bd.m));
}

}  // namespace

TEST_CASE("loop systems") {
  auto one = build_loops<double>({C(0)});
  CHECK(one.loops.size() == 1);

  auto two = build_loops<double>({C(0), C(1)});
  CHECK(two.loops.size() == 2);
  CHECK(std::abs(two.basepoint) == doctest::Approx(4.0));

  std::vector<C> s{C(2), C(-2), C(1), C(-1)};
  auto four = build_loops<double>(s);
  REQUIRE(four.loops.size() == 4);
  for (std::size_t k = 1; k < 4; ++k)
    CHECK(loop_angle(four, s[four.order[k - 1]]) < loop_angle(four, s[four.order[k]]));
  for (const auto& l : four.loops) {
    CHECK(l.basepoint == four.basepoint);
    CHECK(std::abs(l.at(0) - four.basepoint) < 1e-12);
    CHECK(std::abs(l.at(l.length()) - four.basepoint) < 1e-9);
    CHECK(std::abs(l.at(l.segment_length() + l.circle_length() / 2) - l.centre) == doctest::Approx(l.radius));
    CHECK(l.radius <= 0.5 + 1e-12);
  }

  CHECK_THROWS_AS(build_loops<double>({}), EmptyCriticalSet);
}

TEST_CASE("basepoints are seeded and attempts differ") {
  std::vector<C> s{C(0), C(1), C(0, 1)};
  CHECK(build_loops(s, {}, 4).basepoint == build_loops(s, {}, 4).basepoint);
  CHECK(build_loops(s, {}, 4, 0).basepoint != build_loops(s, {}, 4, 1).basepoint);
}

TEST_CASE("square root monodromy") {
  auto sq = f("z^2");
  CHECK(track_around(sq, {C(0)}, 0) == Permutation::from_cycles(2, {{0, 1}}));
  CHECK(track_around(sq, {C(3)}, 0, {C(0)}).is_identity());
}

TEST_CASE("fiber over a deficient point is rejected") {
  // The fiber of 1/z over 0 is the point at infinity.
  auto g = f("(z^2+1)/z");
  MappedFunction<double> mf(g.postcompose(ExactMobius{GaussQ(0), GaussQ(1), GaussQ(1), GaussQ(0)}));
  CHECK_THROWS_AS(compute_fiber(mf.numerator(), mf.denominator(), C(0)), NumericError);
}

TEST_CASE("Chebyshev cubic") {
  auto p = f("z^3-3*z");
  MappedFunction<double> mp(p);
  auto bd = branch_data_self(mp, mp.map_critical(crit(p)));
  REQUIRE(bd.r() == 3);
  for (int i = 0; i < 3; ++i) {
    if (bd.values[i].is_infinity())
      CHECK(bd.alphas[i].cycle_type() == CycleType({3}));
    else
      CHECK(bd.alphas[i].cycle_type() == CycleType({2, 1}));
  }
  CHECK(product(bd.alphas, 3).is_identity());
  CHECK(bd.betas == bd.alphas);
}

TEST_CASE("normalization of infinity") {
  auto sq = MappedFunction<double>(f("z^2"));
  auto cube = MappedFunction<double>(f("z^3"));
  auto a = normalize_infinity(sq, cube);
  CHECK_FALSE(a.mu.is_identity());
  for (const auto* g : {&a.p, &a.q})
    for (const auto& c : g->map_critical(crit(g->base()))) CHECK_FALSE(c.value.is_infinity());

  auto b = normalize_infinity(MappedFunction<double>(f("(z^2+1)/z")), MappedFunction<double>(f("(z^2-1)/(z^2+4)")));
  CHECK(b.mu.is_identity());

  auto c = normalize_infinity(sq, MappedFunction<double>(f("(z^2+1)/z")));
  REQUIRE(c.mu.c != C(0));
  C pole = -c.mu.d / c.mu.c;
  for (C v : {C(0), C(2), C(-2)}) CHECK(std::abs(pole - v) > 0.1);
}

TEST_CASE("branch data of z^2 against itself") {
  auto sq = f("z^2");
  auto bd = branch_data(MappedFunction<double>(sq), MappedFunction<double>(sq));
  REQUIRE(bd.r() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(bd.alphas[i] == Permutation::from_cycles(2, {{0, 1}}));
    CHECK(bd.betas[i] == Permutation::from_cycles(2, {{0, 1}}));
  }
  check_invariants(bd, sq, sq);
}

TEST_CASE("branch data of z^2 against (z^2+1)/z") {
  auto p = f("z^2");
  auto q = f("(z^2+1)/z");
  auto bd = branch_data(MappedFunction<double>(p), MappedFunction<double>(q));
  REQUIRE(bd.r() == 4);
  for (int i = 0; i < 4; ++i) {
    const auto& v = bd.values[i];
    bool at_pm2 = !v.is_infinity() && std::abs(std::abs(v.value()) - 2.0) < 1e-9;
    CHECK(bd.alphas[i].is_identity() == at_pm2);
    CHECK(bd.betas[i].is_identity() == !at_pm2);
  }
  check_invariants(bd, p, q);
  CHECK(bd.summary().common_count() == 0);
}

TEST_CASE("generic cubic pairs have transpositions only") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 3; ++t) {
    auto p = testing::generic_function(rng, 3);
    auto q = testing::generic_function(rng, 3);
    auto bd = branch_data(MappedFunction<double>(p), MappedFunction<double>(q));
    CHECK(bd.r() <= 8);
    for (int i = 0; i < bd.r(); ++i) {
      for (const auto* g : {&bd.alphas[i], &bd.betas[i]})
        if (!g->is_identity()) CHECK(g->cycle_type() == CycleType({2, 1}));
    }
    check_invariants(bd, p, q);
  }
}

TEST_CASE("property: branch data invariants across random pairs and precisions") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 6; ++t) {
    auto p = random_function(rng, 2 + t % 3, t % 2 == 0, 4);
    auto q = random_function(rng, 2 + (t + 1) % 3, false, 4);
    auto lo = branch_data(MappedFunction<Real53>(p), MappedFunction<Real53>(q));
    check_invariants(lo, p, q);
    if (t < 2) {
      auto hi = branch_data(MappedFunction<Real113>(p), MappedFunction<Real113>(q));
      check_invariants(hi, p, q);
      REQUIRE(hi.r() == lo.r());
      CHECK(cycle_types(hi.alphas) == cycle_types(lo.alphas));
      CHECK(cycle_types(hi.betas) == cycle_types(lo.betas));
    }
  }
}

TEST_CASE("serial and parallel tracking agree") {
  std::mt19937_64 rng(41);
  auto p = testing::generic_function(rng, 5);
  auto c = crit(p);
  std::vector<C> pts;
  for (const auto& d : c) pts.push_back(d.value.value());
  auto sys = build_loops(pts);
  MappedFunction<double> mf(p);
  TrackTarget<double> target{mf.numerator(), mf.denominator(), {}};
  target.fiber = compute_fiber(target.num, target.den, sys.basepoint);
  std::vector<TrackTarget<double>> targets{target, target};
  std::vector<PathSample> s1;
  std::vector<PathSample> s2;
  auto a = track_loops_serial(targets, sys, pts, {}, &s1);
  auto b = track_loops_parallel(targets, sys, pts, {}, &s2);
  CHECK(a == b);
  REQUIRE(s1.size() == s2.size());
  CHECK_FALSE(s1.empty());
  for (std::size_t k = 0; k < s1.size(); ++k) {
    CHECK(s1[k].loop == s2[k].loop);
    CHECK(s1[k].re == s2[k].re);
  }
}

TEST_CASE("path dump format") {
  std::vector<PathSample> samples{{0, 0.5, 1, 1.25, -2.0}, {1, 1.0, 0, 0.0, 3.0}};
  std::ostringstream os;
  write_path_dump(os, samples);
  std::istringstream is(os.str());
  std::string line;
  int lines = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    int loop = 0;
    double t = 0;
    int point = 0;
    double re = 0;
    double im = 0;
    REQUIRE(static_cast<bool>(fields >> loop >> t >> point >> re >> im));
    CHECK(loop == samples[lines].loop);
    CHECK(re == samples[lines].re);
    CHECK(im == samples[lines].im);
    ++lines;
  }
  CHECK(lines == 2);
}

TEST_CASE("merging keeps one entry per common value") {
  auto p = f("z^2");
  auto q = f("z^2 + 1");
  auto m = merge_branch_values(crit(p), 2, crit(q), 2, 1e-9);
  CHECK(m.values.size() == 3);
  int both = 0;
  for (std::size_t k = 0; k < m.values.size(); ++k) both += m.critical_p[k] && m.critical_q[k];
  CHECK(both == 1);
}
