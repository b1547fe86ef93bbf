#include "pqcurve/gridgroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "pqcurve/errors.hpp"

namespace pqcurve {

UnionFind::UnionFind(int n) : parent_(static_cast<std::size_t>(n)), rank_(static_cast<std::size_t>(n), 0), sets_(n) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int UnionFind::find(int x) {
  auto xu = static_cast<std::size_t>(x);
  if (parent_[xu] != x) parent_[xu] = find(parent_[xu]);
  return parent_[xu];
}

bool UnionFind::unite(int x, int y) {
  int px = find(x);
  int py = find(y);
  if (px == py) return false;
  auto ux = static_cast<std::size_t>(px);
  auto uy = static_cast<std::size_t>(py);
  if (rank_[ux] < rank_[uy]) {
    parent_[ux] = py;
  } else if (rank_[ux] > rank_[uy]) {
    parent_[uy] = px;
  } else {
    parent_[uy] = px;
    rank_[ux]++;
  }
  --sets_;
  return true;
}

bool is_transitive(const std::vector<Permutation>& gens, int k) {
  if (k <= 1) return true;
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  std::deque<int> queue{0};
  seen[0] = true;
  int reached = 1;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      int y = g(x);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        ++reached;
        queue.push_back(y);
      }
    }
  }
  return reached == k;
}

std::vector<std::vector<int>> minimal_block_system(const std::vector<Permutation>& gens, int k, int x) {
  // Atkinson's closure: merging two classes forces merging their images.
  UnionFind uf(k);
  std::deque<std::pair<int, int>> queue;
  uf.unite(0, x);
  queue.emplace_back(0, x);
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      int ga = g(a);
      int gb = g(b);
      if (uf.unite(ga, gb)) queue.emplace_back(ga, gb);
    }
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> slot(static_cast<std::size_t>(k), -1);
  for (int y = 0; y < k; ++y) {
    int r = uf.find(y);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(y);
  }
  return blocks;
}

std::optional<std::vector<std::vector<int>>> nontrivial_block_system(const std::vector<Permutation>& gens,
                                                                     int k) {
  for (int x = 1; x < k; ++x) {
    auto blocks = minimal_block_system(gens, k, x);
    if (blocks.size() > 1) return blocks;
  }
  return std::nullopt;
}

bool is_primitive(const std::vector<Permutation>& gens, int k) {
  if (!is_transitive(gens, k)) return false;
  return !nontrivial_block_system(gens, k).has_value();
}

bool is_doubly_transitive(const std::vector<Permutation>& gens, int k) {
  if (k <= 1) return true;
  if (!is_transitive(gens, k)) return false;
  // Orbit of the ordered pair (0, 1) among the k(k-1) ordered pairs.
  auto idx = [k](int a, int b) { return static_cast<std::size_t>(a * k + b); };
  std::vector<bool> seen(static_cast<std::size_t>(k * k), false);
  std::deque<std::pair<int, int>> queue{{0, 1}};
  seen[idx(0, 1)] = true;
  int reached = 1;
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      int ga = g(a);
      int gb = g(b);
      if (!seen[idx(ga, gb)]) {
        seen[idx(ga, gb)] = true;
        ++reached;
        queue.emplace_back(ga, gb);
      }
    }
  }
  return reached == k * (k - 1);
}

int gcd_cycle_sum(const CycleType& lambda, const CycleType& mu) {
  int s = 0;
  for (int p : lambda.parts())
    for (int q : mu.parts()) s += std::gcd(p, q);
  return s;
}

GridAction grid_action(const std::vector<Permutation>& alphas, const std::vector<Permutation>& betas) {
  if (alphas.size() != betas.size()) throw std::invalid_argument("grid_action: tuple lengths differ");
  GridAction ga;
  ga.n = alphas.empty() ? 0 : alphas.front().size();
  ga.m = betas.empty() ? 0 : betas.front().size();
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    std::vector<int> img(static_cast<std::size_t>(ga.n * ga.m));
    for (int j1 = 0; j1 < ga.n; ++j1)
      for (int j2 = 0; j2 < ga.m; ++j2)
        img[static_cast<std::size_t>(ga.cell(j1, j2))] = ga.cell(alphas[i](j1), betas[i](j2));
    Permutation delta(std::move(img));
    if (delta.cycle_count() != gcd_cycle_sum(alphas[i].cycle_type(), betas[i].cycle_type()))
      throw ConsistencyFailure("grid permutation cycle count differs from the gcd double sum");
    ga.deltas.push_back(std::move(delta));
  }
  return ga;
}

std::vector<ComponentReport> orbits(const GridAction& ga) {
  const int cells = ga.n * ga.m;
  UnionFind uf(cells);
  for (const auto& d : ga.deltas)
    for (int c = 0; c < cells; ++c) uf.unite(c, d(c));
  std::vector<ComponentReport> out;
  std::vector<int> slot(static_cast<std::size_t>(cells), -1);
  for (int c = 0; c < cells; ++c) {
    int root = uf.find(c);
    if (slot[static_cast<std::size_t>(root)] < 0) {
      slot[static_cast<std::size_t>(root)] = static_cast<int>(out.size());
      out.emplace_back();
      out.back().row_blocks.resize(static_cast<std::size_t>(ga.n));
      out.back().col_blocks.resize(static_cast<std::size_t>(ga.m));
    }
    auto& rep = out[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])];
    rep.cells.push_back(c);
    rep.row_blocks[static_cast<std::size_t>(ga.row(c))].push_back(c);
    rep.col_blocks[static_cast<std::size_t>(ga.col(c))].push_back(c);
  }
  for (auto& rep : out) rep.size = static_cast<int>(rep.cells.size());
  return out;
}

namespace {

int restricted_cycles(const Permutation& p, const std::vector<int>& cells) {
  std::vector<int> sorted = cells;
  std::vector<bool> seen(sorted.size(), false);
  auto pos = [&](int c) {
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
  };
  int count = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (seen[k]) continue;
    ++count;
    for (int c = sorted[k]; !seen[pos(c)]; c = p(c)) seen[pos(c)] = true;
  }
  return count;
}

int genus_from_euler(long long twice_one_minus_g_numerator, const char* what) {
  // 2 - 2g = value  ->  g = (2 - value) / 2
  long long twice_g = 2 - twice_one_minus_g_numerator;
  if (twice_g < 0 || twice_g % 2 != 0)
    throw NonIntegerGenus(std::string(what) + ": genus is not a non-negative integer");
  return static_cast<int>(twice_g / 2);
}

}  // namespace

int component_genus(ComponentReport& report, const GridAction& ga) {
  report.cycle_counts.clear();
  long long sum = 0;
  for (const auto& d : ga.deltas) {
    int e = restricted_cycles(d, report.cells);
    report.cycle_counts.push_back(e);
    sum += e;
  }
  long long euler = sum - static_cast<long long>(report.size) * (ga.r() - 2);
  int g = genus_from_euler(euler, "component genus");
  report.genus = g;
  return g;
}

bool blocks_reproduce(const ComponentReport& report, const GridAction& ga,
                      const std::vector<Permutation>& alphas, const std::vector<Permutation>& betas) {
  auto check = [&](const std::vector<std::vector<int>>& blocks, const Permutation& delta,
                   const Permutation& expected, bool rows) {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) return false;
      int target = expected(static_cast<int>(b));
      std::vector<int> image;
      for (int c : blocks[b]) image.push_back(delta(c));
      std::sort(image.begin(), image.end());
      if (image != blocks[static_cast<std::size_t>(target)]) return false;
      for (int c : image)
        if ((rows ? ga.row(c) : ga.col(c)) != target) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < ga.deltas.size(); ++i) {
    if (!check(report.row_blocks, ga.deltas[i], alphas[i], true)) return false;
    if (!check(report.col_blocks, ga.deltas[i], betas[i], false)) return false;
  }
  return true;
}

int genus_gcd_formula(const std::vector<CycleType>& lambdas, const std::vector<CycleType>& mus, int r,
                      int n, int m) {
  if (static_cast<int>(lambdas.size()) != r || static_cast<int>(mus.size()) != r)
    throw std::invalid_argument("genus_gcd_formula: r differs from the cycle data length");
  long long sum = 0;
  for (int i = 0; i < r; ++i)
    sum += gcd_cycle_sum(lambdas[static_cast<std::size_t>(i)], mus[static_cast<std::size_t>(i)]);
  long long euler = sum - static_cast<long long>(r - 2) * n * m;
  return genus_from_euler(euler, "gcd genus formula");
}

SelfCurveResult self_curve_analysis(const std::vector<Permutation>& alphas, int n) {
  SelfCurveResult out;
  GridAction ga = grid_action(alphas, alphas);
  const int r = ga.r();
  auto orbs = orbits(ga);
  for (auto& o : orbs) {
    component_genus(o, ga);
    bool diagonal = std::all_of(o.cells.begin(), o.cells.end(),
                                [&](int c) { return ga.row(c) == ga.col(c); });
    if (diagonal && o.size == n) {
      out.diagonal = o;
    } else {
      out.components.push_back(o);
    }
  }
  out.diagonal_cycles = std::accumulate(out.diagonal.cycle_counts.begin(), out.diagonal.cycle_counts.end(), 0);
  out.expected_diagonal_cycles = 2 + (r - 2) * n;
  out.irreducible = out.components.size() == 1;
  if (out.irreducible) {
    long long sum = 0;
    for (const auto& a : alphas) sum += gcd_cycle_sum(a.cycle_type(), a.cycle_type());
    // 4 - 2g = sum - (r - 2) n^2
    long long twice_g = 4 - (sum - static_cast<long long>(r - 2) * n * n);
    if (twice_g < 0 || twice_g % 2 != 0) throw NonIntegerGenus("self-curve genus formula is not integral");
    out.genus = static_cast<int>(twice_g / 2);
    out.genus_direct = out.components.front().genus;
  }
  return out;
}

}  // namespace pqcurve
