// Serial against OpenMP loop tracking on random generic functions.
// Usage: bench_monodromy [degree] [repeats] [seed]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

#include "pqcurve/decide.hpp"

using namespace pqcurve;

namespace {

template <class F>
double seconds(F&& f, int repeats) {
  auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < repeats; ++k) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 8;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 1;

  std::mt19937_64 rng(seed);
  auto draw = [&](int degree, bool polynomial) {
    for (;;) {
      RationalFunction f = random_function(rng, degree, polynomial);
      if (generic_guards(f)) return f;
    }
  };
  const RationalFunction p = draw(n, false);
  const RationalFunction q = draw(n + 1, false);

  using R = Real53;
  auto crit_p = critical_values<R>(p);
  auto crit_q = critical_values<R>(q);
  std::vector<Cx<R>> points;
  for (const auto* crit : {&crit_p, &crit_q})
    for (const auto& c : *crit) {
      if (c.value.is_infinity()) {
        std::cerr << "critical value at infinity, pick another seed\n";
        return 1;
      }
      points.push_back(c.value.value());
    }

  LoopSystem<R> sys = build_loops(points, {}, seed);
  std::vector<TrackTarget<R>> targets;
  for (const RationalFunction* f : {&p, &q}) {
    MappedFunction<R> mf(*f);
    TrackTarget<R> t{mf.numerator(), mf.denominator(), {}};
    t.fiber = compute_fiber(t.num, t.den, sys.basepoint);
    targets.push_back(std::move(t));
  }

  std::vector<std::vector<Permutation>> serial;
  std::vector<std::vector<Permutation>> parallel;
  double ts = seconds([&] { serial = track_loops_serial(targets, sys, points); }, repeats);
  double tp = seconds([&] { parallel = track_loops_parallel(targets, sys, points); }, repeats);

  std::cout << "P = " << p.str() << "\nQ = " << q.str() << "\n";
  std::cout << "loops " << sys.loops.size() << ", threads " << omp_get_max_threads() << "\n";
  std::cout << "serial   " << ts << " s\nparallel " << tp << " s\nspeedup  " << ts / tp << "\n";
  bool same = serial == parallel;
  std::cout << "results " << (same ? "identical" : "DIFFER") << "\n";
  return same ? 0 : 1;
}
