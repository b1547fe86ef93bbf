#pragma once

// Equation-level verdicts: meromorphic solvability of P(f) = Q(g) and of
// P(f) = P(g) with f != g, strong uniqueness over all scalars c, and
// randomized generic sweeps.

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pqcurve/criteria.hpp"
#include "pqcurve/gridgroup.hpp"
#include "pqcurve/monodromy.hpp"

namespace pqcurve {

struct Options {
  /// Starting precision: 53, 113 or 237.
  int precision_bits = 53;
  double tolerance = 1e-9;
  /// Always run the monodromy and check every criterion against it.
  bool verify = false;
  std::uint64_t seed = 0;
  bool parallel = true;
  /// Retry at the next precision on numeric failure.
  bool escalate = true;
};

/// Runs body.template operator()<R>(bits) at the starting precision and, on
/// NumericError, at each higher precision in turn. The final failure is
/// rethrown with its precision recorded.
template <class Body>
auto at_precision_ladder(const Options& opts, Body&& body) {
  if (opts.precision_bits != 53 && opts.precision_bits != 113 && opts.precision_bits != 237)
    throw InputError("precision must be 53, 113 or 237 bits");
  std::vector<int> ladder;
  for (int b : {53, 113, 237})
    if (b == opts.precision_bits || (opts.escalate && b > opts.precision_bits)) ladder.push_back(b);
  for (std::size_t k = 0;; ++k) {
    try {
      switch (ladder[k]) {
        case 53:
          return body.template operator()<Real53>(53);
        case 113:
          return body.template operator()<Real113>(113);
        default:
          return body.template operator()<Real237>(237);
      }
    } catch (NumericError& e) {
      if (k + 1 == ladder.size()) {
        e.set_precision_bits(ladder[k]);
        throw;
      }
    }
  }
}

struct IdentityChecks {
  /// False on the criteria shortcut, where only the formula genus exists.
  bool computed = false;
  bool product_identity = true;
  bool rh_sums = true;
  bool grid_cycle_counts = true;
  bool blocks = true;
  bool orbit_sizes_divisible = true;
  bool orbit_sizes_sum = true;
  std::optional<bool> gcd_matches_direct;

  bool all() const;
};

struct AnalysisReport {
  std::string p;
  std::string q;
  /// h_P rather than a pair.
  bool self = false;
  BranchSummary branch;
  /// Components of the curve (for h_P: off the diagonal).
  std::vector<ComponentReport> components;
  std::vector<CriterionVerdict> criteria;
  /// Some component has genus at most one (for h_P: solutions with f != g).
  bool has_meromorphic_solutions = false;
  std::vector<std::string> tags;
  /// Genus from cycle types alone, when the curve is irreducible.
  std::optional<int> genus_gcd;
  bool monodromy_computed = false;
  IdentityChecks checks;
  std::vector<std::string> alphas;
  std::vector<std::string> betas;
  std::optional<int> diagonal_cycles;
  std::optional<int> expected_diagonal_cycles;
  int precision_bits = 53;
  std::uint64_t seed = 0;

  int component_count() const { return static_cast<int>(components.size()); }
  std::vector<int> size_multiset() const;
  std::vector<int> genus_multiset() const;
};

/// The curve P(x) = Q(y): components, genera, criteria and the verdict.
AnalysisReport analyze_pair(const RationalFunction& p, const RationalFunction& q, const Options& opts = {});

/// The curve (P(x) - P(y)) / (x - y) = 0.
AnalysisReport analyze_self(const RationalFunction& p, const Options& opts = {});

struct ScalarCase {
  std::complex<double> c;
  AnalysisReport report;
};

struct UniquenessReport {
  std::string p;
  AnalysisReport self;
  /// Ratios of distinct critical values: the scalars c != 1 for which P and
  /// cP share a critical value.
  std::vector<std::complex<double>> ratio_set;
  /// 0 or infinity is critical: every cP shares it.
  bool always_shared = false;
  /// Agreement with the exact resultant construction, when it applies.
  std::optional<bool> ratio_resultant_agrees;
  std::vector<ScalarCase> exceptional;
  /// One scalar outside the ratio set, standing for all of them.
  ScalarCase generic;
  bool is_strong_uniqueness = false;
  int precision_bits = 53;
  std::uint64_t seed = 0;
};

UniquenessReport strong_uniqueness(const RationalFunction& p, const Options& opts = {});

enum class SweepKind { Pair, Uniqueness };

struct SweepTrial {
  int index = 0;
  std::uint64_t seed = 0;
  std::string p;
  std::string q;
  /// Draws discarded by the genericity guards before this instance.
  int rejected = 0;
  bool matched = false;
  std::optional<bool> strong;
  std::vector<int> sizes;
  std::vector<int> genera;
  std::string error;
};

struct SweepSummary {
  SweepKind kind = SweepKind::Pair;
  int n = 0;
  int m = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  /// Trials agreeing with the generic prediction.
  int matched = 0;
  /// Uniqueness sweeps: trials where P is a strong uniqueness function.
  int strong_count = 0;
  int failures = 0;
  int rejected = 0;
  std::vector<SweepTrial> records;
};

/// Pair sweeps need (n-1)(m-1) >= 2; uniqueness sweeps need n >= 3 and
/// ignore m. The prediction is a single component of genus (n-1)(m-1) for
/// pairs, and strong uniqueness exactly when n >= 4.
SweepSummary generic_sweep(SweepKind kind, int n, int m, int trials, std::uint64_t seed,
                           const Options& opts = {});

/// A degree-n function with Gaussian-rational coefficients (a + b i)/den,
/// a, b uniform in [-den, den]. Rational draws have numerator and
/// denominator of full degree n.
RationalFunction random_function(std::mt19937_64& rng, int n, bool polynomial = false, int den = 8);

/// All critical points finite and simple, all critical values finite and
/// pairwise distinct (so 2n - 2 of them), poles simple.
bool generic_guards(const RationalFunction& f);

/// No common critical value, decided exactly.
bool critical_values_disjoint(const RationalFunction& p, const RationalFunction& q);

/// 0 not critical and all ratios of distinct critical values pairwise
/// distinct and away from 1, so each exceptional c shares exactly one value.
bool ratio_guard(const RationalFunction& p, double margin = 1e-6);

std::uint64_t trial_seed(std::uint64_t seed, int index);

}  // namespace pqcurve
