#pragma once

// Monodromy permutations by numerical continuation of fibers along loops
// around the critical values, and the merged branch data of a pair.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pqcurve/permutation.hpp"
#include "pqcurve/ratfunc.hpp"

namespace pqcurve {

/// Radial segment from the basepoint to a small circle, one positive turn,
/// and the same segment back.
template <class R>
struct LoopPath {
  Cx<R> basepoint;
  Cx<R> centre;
  R radius{};
  Cx<R> entry;
  R entry_angle{};

  R segment_length() const { return abs_cx(entry - basepoint); }
  R circle_length() const { return 2 * pi<R>() * radius; }
  R length() const { return 2 * segment_length() + circle_length(); }
  /// Point at arclength s in [0, length()].
  Cx<R> at(const R& s) const;
};

template <class R>
struct LoopSystem {
  Cx<R> basepoint;
  /// In product order: going around loops[0], then loops[1], ... is contractible.
  std::vector<LoopPath<R>> loops;
  /// loops[k] encircles points[order[k]].
  std::vector<int> order;
};

/// Loops around points. avoid lists regular values the paths should keep
/// clear of. attempt selects the attempt-th best basepoint angle among the
/// seeded candidates, for reselection after a failure.
template <class R>
LoopSystem<R> build_loops(const std::vector<Cx<R>>& points, const std::vector<Cx<R>>& avoid = {},
                          std::uint64_t seed = 0, int attempt = 0);

/// A tracked point sample for the debug dump.
struct PathSample {
  int loop = 0;
  double t = 0;
  int point = 0;
  double re = 0;
  double im = 0;
};

void write_path_dump(std::ostream& os, const std::vector<PathSample>& samples);

struct TrackOptions {
  int max_retries = 3;
  /// Multiplies the initial and maximal step (retries divide it by 4).
  double step_scale = 1.0;
};

/// The fiber of num/den over a regular z0, all n points finite and distinct.
/// Throws NumericError when z0 has a deficient or clustered fiber.
template <class R>
std::vector<Cx<R>> compute_fiber(const NumPoly<R>& num, const NumPoly<R>& den, const Cx<R>& z0);

/// Continues every fiber point along loop and matches the end fiber to the
/// start fiber: the result sends j to the index where point j arrives.
template <class R>
Permutation track_loop(const NumPoly<R>& num, const NumPoly<R>& den, const std::vector<Cx<R>>& fiber,
                       const LoopPath<R>& loop, const std::vector<Cx<R>>& obstacles,
                       const TrackOptions& opts = {}, std::vector<PathSample>* samples = nullptr,
                       int loop_index = 0);

/// One tracking job: a function (num/den) with its base fiber.
template <class R>
struct TrackTarget {
  NumPoly<R> num;
  NumPoly<R> den;
  std::vector<Cx<R>> fiber;
};

/// perms[t][k] is the permutation of target t along loop k.
template <class R>
std::vector<std::vector<Permutation>> track_loops_serial(const std::vector<TrackTarget<R>>& targets,
                                                         const LoopSystem<R>& system,
                                                         const std::vector<Cx<R>>& obstacles,
                                                         const TrackOptions& opts = {},
                                                         std::vector<PathSample>* samples = nullptr);

/// Same result as the serial version; loops of all targets run concurrently.
template <class R>
std::vector<std::vector<Permutation>> track_loops_parallel(const std::vector<TrackTarget<R>>& targets,
                                                           const LoopSystem<R>& system,
                                                           const std::vector<Cx<R>>& obstacles,
                                                           const TrackOptions& opts = {},
                                                           std::vector<PathSample>* samples = nullptr);

/// The union of two critical sets: values matched within tol, cycle types
/// trivial where a function is unbranched. Ordered by sphere_less.
template <class R>
struct MergedValues {
  std::vector<SpherePoint<R>> values;
  std::vector<CycleType> cycle_p;
  std::vector<CycleType> cycle_q;
  std::vector<bool> critical_p;
  std::vector<bool> critical_q;
};

/// Throws NumericallyCoincidentValues if one value of Q matches several of P.
template <class R>
MergedValues<R> merge_branch_values(const std::vector<CriticalDatum<R>>& crit_p, int n,
                                    const std::vector<CriticalDatum<R>>& crit_q, int m, R tol);

/// 1/(z - a) for a seeded Gaussian-rational a away from the finite values
/// when infinity is among them, else the identity.
template <class R>
Mobius<R> normalize_infinity(const std::vector<SpherePoint<R>>& values, std::uint64_t seed = 0);

template <class R>
struct NormalizedPair {
  Mobius<R> mu;
  MappedFunction<R> p;
  MappedFunction<R> q;
};

/// mu, mu ∘ P and mu ∘ Q, with every critical value of both finite after mu.
template <class R>
NormalizedPair<R> normalize_infinity(const MappedFunction<R>& p, const MappedFunction<R>& q,
                                     const CriticalOptions& copts = {}, std::uint64_t seed = 0);

struct BranchValue {
  SpherePoint<double> value;
  CycleType cycle_p;
  CycleType cycle_q;
  bool critical_p = false;
  bool critical_q = false;
};

/// Precision-independent view of BranchData.
struct BranchSummary {
  int n = 0;
  int m = 0;
  std::vector<BranchValue> values;
  bool p_polynomial = false;
  bool q_polynomial = false;

  int common_count() const;
};

template <class R>
struct BranchData {
  int n = 0;
  int m = 0;
  /// Original coordinates, in loop (product) order.
  std::vector<SpherePoint<R>> values;
  /// Images under mu; these are what the loops encircle.
  std::vector<Cx<R>> normalized;
  std::vector<CycleType> cycle_p;
  std::vector<CycleType> cycle_q;
  std::vector<bool> critical_p;
  std::vector<bool> critical_q;
  std::vector<Permutation> alphas;
  std::vector<Permutation> betas;
  std::vector<Cx<R>> fiber_p;
  std::vector<Cx<R>> fiber_q;
  Cx<R> basepoint;
  Mobius<R> mu;
  bool p_polynomial = false;
  bool q_polynomial = false;

  int r() const { return static_cast<int>(values.size()); }
  BranchSummary summary() const;
};

struct MonodromyOptions {
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  bool parallel = true;
  /// Basepoint selections tried before giving up.
  int attempts = 3;
  TrackOptions track;
  /// Receives the tracked samples of the first function.
  std::vector<PathSample>* dump = nullptr;
};

/// Throws ConsistencyFailure when an invariant of the tuples fails.
template <class R>
void validate_branch_data(const BranchData<R>& bd);

template <class R>
BranchData<R> branch_data(const MappedFunction<R>& p, const std::vector<CriticalDatum<R>>& crit_p,
                          const MappedFunction<R>& q, const std::vector<CriticalDatum<R>>& crit_q,
                          const MonodromyOptions& opts = {});

/// Computes the critical data first.
template <class R>
BranchData<R> branch_data(const MappedFunction<R>& p, const MappedFunction<R>& q,
                          const MonodromyOptions& opts = {});

/// P against itself: betas repeat alphas and the fibers coincide.
template <class R>
BranchData<R> branch_data_self(const MappedFunction<R>& p, const std::vector<CriticalDatum<R>>& crit_p,
                               const MonodromyOptions& opts = {});

}  // namespace pqcurve
