#pragma once

// The grid action of a pair of monodromy tuples on the n x m cell set, its
// orbits (the irreducible components of the fiber-product curve), their
// genera, and the small permutation-group predicates the analysis needs.

#include <optional>
#include <vector>

#include "pqcurve/permutation.hpp"

namespace pqcurve {

class UnionFind {
 public:
  explicit UnionFind(int n);
  int find(int x);
  /// Returns true when x and y were in different sets.
  bool unite(int x, int y);
  int set_count() const { return sets_; }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
  int sets_;
};

bool is_transitive(const std::vector<Permutation>& gens, int k);

/// The finest block system of <gens> in which 0 and x share a block.
std::vector<std::vector<int>> minimal_block_system(const std::vector<Permutation>& gens, int k, int x);

/// A nontrivial block system if the (transitive) group is imprimitive.
std::optional<std::vector<std::vector<int>>> nontrivial_block_system(const std::vector<Permutation>& gens,
                                                                     int k);

/// Transitive with no nontrivial block system.
bool is_primitive(const std::vector<Permutation>& gens, int k);

/// Transitive on ordered pairs of distinct points.
bool is_doubly_transitive(const std::vector<Permutation>& gens, int k);

struct GridAction {
  int n = 0;
  int m = 0;
  /// Cell (j1, j2) has index j1 * m + j2.
  std::vector<Permutation> deltas;

  int cell(int j1, int j2) const { return j1 * m + j2; }
  int row(int c) const { return c / m; }
  int col(int c) const { return c % m; }
  int r() const { return static_cast<int>(deltas.size()); }
};

/// Sum over pairs of parts of gcd(p, q): the number of cycles of the grid
/// permutation built from permutations of these cycle types.
int gcd_cycle_sum(const CycleType& lambda, const CycleType& mu);

/// delta_i moves rows by alpha_i and columns by beta_i. Throws
/// ConsistencyFailure if a cycle count disagrees with gcd_cycle_sum.
GridAction grid_action(const std::vector<Permutation>& alphas, const std::vector<Permutation>& betas);

struct ComponentReport {
  std::vector<int> cells;
  int size = 0;
  /// e_i(j): cycles of delta_i restricted to this orbit.
  std::vector<int> cycle_counts;
  std::optional<int> genus;
  /// Cells of the orbit in each row / column (every row and column meets a
  /// transitive orbit). Indexed by row, respectively column.
  std::vector<std::vector<int>> row_blocks;
  std::vector<std::vector<int>> col_blocks;
};

/// Orbits of <delta_i>, ordered by smallest cell; genus left unset.
std::vector<ComponentReport> orbits(const GridAction& ga);

/// 2 - 2g = sum_i e_i - |U| (r - 2). Fills cycle_counts and genus.
/// Throws NonIntegerGenus if g is not a non-negative integer.
int component_genus(ComponentReport& report, const GridAction& ga);

/// Row blocks are permuted by delta_i exactly as alpha_i permutes rows, and
/// column blocks as beta_i permutes columns.
bool blocks_reproduce(const ComponentReport& report, const GridAction& ga,
                      const std::vector<Permutation>& alphas, const std::vector<Permutation>& betas);

/// Genus of an irreducible fiber product from cycle types alone:
/// 2 - 2g = sum_i gcd_cycle_sum(lambda_i, mu_i) - (r - 2) n m.
int genus_gcd_formula(const std::vector<CycleType>& lambdas, const std::vector<CycleType>& mus, int r,
                      int n, int m);

struct SelfCurveResult {
  /// h_P (the curve with the diagonal removed) is irreducible.
  bool irreducible = false;
  /// From 4 - 2g = sum gcd - (r - 2) n^2, when irreducible.
  std::optional<int> genus;
  /// From direct cycle counting on the off-diagonal orbit, when irreducible.
  std::optional<int> genus_direct;
  ComponentReport diagonal;
  /// Orbits off the diagonal, each with its genus: the components of h_P.
  std::vector<ComponentReport> components;
  /// Total cycle count on the diagonal and the value 2 + (r - 2) n it must equal.
  int diagonal_cycles = 0;
  int expected_diagonal_cycles = 0;
};

SelfCurveResult self_curve_analysis(const std::vector<Permutation>& alphas, int n);

}  // namespace pqcurve
