#include "pqcurve/decide.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pqcurve {

bool IdentityChecks::all() const {
  return product_identity && rh_sums && grid_cycle_counts && blocks && orbit_sizes_divisible && orbit_sizes_sum &&
         gcd_matches_direct.value_or(true);
}

std::vector<int> AnalysisReport::size_multiset() const {
  std::vector<int> out;
  for (const auto& c : components) out.push_back(c.size);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> AnalysisReport::genus_multiset() const {
  std::vector<int> out;
  for (const auto& c : components) out.push_back(c.genus.value_or(-1));
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, int index) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(index) + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

std::string complex_str(const std::complex<double>& c) {
  std::ostringstream os;
  os.precision(17);
  os << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "*i";
  return os.str();
}

template <class R>
BranchSummary summary_of(const MergedValues<R>& mv, int n, int m, bool pp, bool qp) {
  BranchSummary s;
  s.n = n;
  s.m = m;
  s.p_polynomial = pp;
  s.q_polynomial = qp;
  for (std::size_t i = 0; i < mv.values.size(); ++i)
    s.values.push_back({mv.values[i].to_double_point(), mv.cycle_p[i], mv.cycle_q[i], mv.critical_p[i],
                        mv.critical_q[i]});
  return s;
}

bool all_simple_or_trivial(const BranchSummary& s, bool for_q) {
  for (const auto& v : s.values) {
    const CycleType& c = for_q ? v.cycle_q : v.cycle_p;
    if (!c.is_trivial() && !c.is_simple()) return false;
  }
  return true;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConsistencyFailure(what);
}

template <class R>
AnalysisReport pair_impl(const MappedFunction<R>& p, const std::vector<CriticalDatum<R>>& crit_p,
                         const MappedFunction<R>& q, const std::vector<CriticalDatum<R>>& crit_q,
                         const RationalFunction* p_exact, const RationalFunction* q_exact, const Options& opts) {
  AnalysisReport rep;
  rep.seed = opts.seed;
  const int n = p.degree();
  const int m = q.degree();
  const R tol(opts.tolerance);
  MergedValues<R> merged = merge_branch_values(crit_p, n, crit_q, m, tol);
  rep.branch = summary_of(merged, n, m, p.is_polynomial(), q.is_polynomial());

  if (n == 1 || m == 1) {
    // One side is invertible: the curve is the graph of a rational map.
    ComponentReport c;
    c.size = n * m;
    c.genus = 0;
    rep.components.push_back(c);
    rep.genus_gcd = 0;
    rep.tags.push_back("degree-one");
    rep.has_meromorphic_solutions = true;
    return rep;
  }

  rep.criteria = quick_irreducibility(rep.branch);
  const bool quick = proves_irreducible(rep.criteria);
  const int common = rep.branch.common_count();
  if (common == 2) rep.criteria.push_back(two_common_values_structure(rep.branch, p_exact, q_exact));

  if (!opts.verify && quick) {
    ComponentReport c;
    c.size = n * m;
    for (const auto& v : rep.branch.values) c.cycle_counts.push_back(gcd_cycle_sum(v.cycle_p, v.cycle_q));
    c.genus = genus_gcd_formula(merged.cycle_p, merged.cycle_q, static_cast<int>(merged.values.size()), n, m);
    rep.genus_gcd = c.genus;
    rep.components.push_back(c);
  } else {
    MonodromyOptions mo;
    mo.seed = opts.seed;
    mo.tolerance = opts.tolerance;
    mo.parallel = opts.parallel;
    BranchData<R> bd = branch_data(p, crit_p, q, crit_q, mo);
    rep.branch = bd.summary();
    rep.monodromy_computed = true;
    for (const auto& a : bd.alphas) rep.alphas.push_back(a.str());
    for (const auto& b : bd.betas) rep.betas.push_back(b.str());

    IdentityChecks& ck = rep.checks;
    ck.computed = true;
    ck.product_identity = product(bd.alphas, n).is_identity() && product(bd.betas, m).is_identity();
    int rp = 0;
    int rq = 0;
    for (const auto& a : bd.alphas) rp += n - a.cycle_count();
    for (const auto& b : bd.betas) rq += m - b.cycle_count();
    ck.rh_sums = rp == 2 * n - 2 && rq == 2 * m - 2;
    GridAction ga = grid_action(bd.alphas, bd.betas);
    ck.grid_cycle_counts = true;
    rep.components = orbits(ga);
    const int l = std::lcm(n, m);
    int total = 0;
    for (auto& c : rep.components) {
      component_genus(c, ga);
      ck.blocks = ck.blocks && blocks_reproduce(c, ga, bd.alphas, bd.betas);
      ck.orbit_sizes_divisible = ck.orbit_sizes_divisible && c.size % l == 0;
      total += c.size;
    }
    ck.orbit_sizes_sum = total == n * m;
    if (rep.components.size() == 1) {
      rep.genus_gcd = genus_gcd_formula(bd.cycle_p, bd.cycle_q, bd.r(), n, m);
      ck.gcd_matches_direct = rep.genus_gcd == rep.components.front().genus;
    }
    require(ck.all(), "identity check failed on the grid analysis");

    rep.criteria.push_back(indecomposability(bd.alphas, n, "indecomposable-p"));
    rep.criteria.push_back(indecomposability(bd.betas, m, "indecomposable-q"));
    const bool irreducible = rep.components.size() == 1;
    for (auto& v : rep.criteria) {
      if (!v.applicable) continue;
      if (v.conclusion == Conclusion::Irreducible || v.conclusion == Conclusion::Reducible) {
        bool agrees = (v.conclusion == Conclusion::Irreducible) == irreducible;
        v.witness["agrees"] = agrees;
        if (!agrees) {
          require(v.id == "two-common-values", "criterion " + v.id + " disagrees with the orbit count");
          rep.tags.push_back("criterion-disagreement");
        }
      }
    }
  }

  if (common == 0) {
    rep.tags.push_back("disjoint-critical-values");
    require(rep.components.size() == 1 && rep.components.front().genus == (n - 1) * (m - 1),
            "disjoint critical values without a single component of genus (n-1)(m-1)");
  }
  if (common == 1 && n == m && all_simple_or_trivial(rep.branch, false) && all_simple_or_trivial(rep.branch, true)) {
    rep.tags.push_back("one-shared-simple-value");
    require(rep.components.size() == 1 && rep.components.front().genus == n * n - 2 * n,
            "one shared simple value without a single component of genus n^2-2n");
  }
  for (const auto& c : rep.components)
    if (c.genus.value_or(2) <= 1) rep.has_meromorphic_solutions = true;
  return rep;
}

template <class R>
AnalysisReport self_impl(const MappedFunction<R>& p, const std::vector<CriticalDatum<R>>& crit,
                         const Options& opts) {
  AnalysisReport rep;
  rep.self = true;
  rep.seed = opts.seed;
  const int n = p.degree();
  const R tol(opts.tolerance);
  MergedValues<R> merged = merge_branch_values(crit, n, crit, n, tol);
  rep.branch = summary_of(merged, n, n, p.is_polynomial(), p.is_polynomial());
  if (n == 1) {
    rep.tags.push_back("degree-one");
    return rep;
  }
  const bool all_simple = all_values_simple(crit);

  if (!opts.verify && all_simple) {
    const int r = static_cast<int>(crit.size());
    long long sum = 0;
    for (const auto& c : crit) sum += gcd_cycle_sum(c.cycle_type, c.cycle_type);
    long long twice_g = 4 - (sum - static_cast<long long>(r - 2) * n * n);
    if (twice_g < 0 || twice_g % 2 != 0) throw NonIntegerGenus("self-curve genus formula is not integral");
    ComponentReport c;
    c.size = n * n - n;
    c.genus = static_cast<int>(twice_g / 2);
    rep.genus_gcd = c.genus;
    rep.components.push_back(c);
    std::vector<CycleType> types;
    for (const auto& d : crit) types.push_back(d.cycle_type);
    rep.criteria = self_curve_criteria(types, n, nullptr, nullptr);
  } else {
    MonodromyOptions mo;
    mo.seed = opts.seed;
    mo.tolerance = opts.tolerance;
    mo.parallel = opts.parallel;
    BranchData<R> bd = branch_data_self(p, crit, mo);
    rep.branch = bd.summary();
    rep.monodromy_computed = true;
    for (const auto& a : bd.alphas) rep.alphas.push_back(a.str());
    rep.betas = rep.alphas;
    SelfCurveResult sc = self_curve_analysis(bd.alphas, n);
    rep.components = sc.components;
    rep.genus_gcd = sc.genus;
    rep.diagonal_cycles = sc.diagonal_cycles;
    rep.expected_diagonal_cycles = sc.expected_diagonal_cycles;

    IdentityChecks& ck = rep.checks;
    ck.computed = true;
    ck.product_identity = product(bd.alphas, n).is_identity();
    int rh = 0;
    for (const auto& a : bd.alphas) rh += n - a.cycle_count();
    ck.rh_sums = rh == 2 * n - 2;
    int total = sc.diagonal.size;
    for (const auto& c : sc.components) total += c.size;
    ck.orbit_sizes_sum = total == n * n && sc.diagonal.size == n;
    if (sc.irreducible) ck.gcd_matches_direct = sc.genus == sc.genus_direct;
    require(ck.all(), "identity check failed on the self-curve analysis");
    require(sc.diagonal_cycles == sc.expected_diagonal_cycles, "diagonal cycle total differs from 2+(r-2)n");

    rep.criteria = self_curve_criteria(bd.cycle_p, n, &bd.alphas, &sc);
    rep.criteria.push_back(indecomposability(bd.alphas, n, "indecomposable-p"));
    for (const auto& v : rep.criteria)
      if (v.applicable && v.conclusion == Conclusion::Irreducible)
        require(sc.irreducible, "criterion " + v.id + " disagrees with the self-curve orbits");
  }

  if (all_simple) {
    rep.tags.push_back("self-simple-values");
    require(rep.components.size() == 1 && rep.components.front().genus == (n - 2) * (n - 2),
            "all values simple without an irreducible self curve of genus (n-2)^2");
  }
  for (const auto& c : rep.components)
    if (c.genus.value_or(2) <= 1) rep.has_meromorphic_solutions = true;
  return rep;
}

}  // namespace

AnalysisReport analyze_pair(const RationalFunction& p, const RationalFunction& q, const Options& opts) {
  return at_precision_ladder(opts, [&]<class R>(int bits) {
    CriticalOptions copts;
    copts.cluster_tolerance = opts.tolerance;
    auto cp = critical_values<R>(p, copts);
    auto cq = critical_values<R>(q, copts);
    AnalysisReport rep = pair_impl<R>(MappedFunction<R>(p), cp, MappedFunction<R>(q), cq, &p, &q, opts);
    rep.p = p.str();
    rep.q = q.str();
    rep.precision_bits = bits;
    return rep;
  });
}

AnalysisReport analyze_self(const RationalFunction& p, const Options& opts) {
  return at_precision_ladder(opts, [&]<class R>(int bits) {
    CriticalOptions copts;
    copts.cluster_tolerance = opts.tolerance;
    auto cp = critical_values<R>(p, copts);
    AnalysisReport rep = self_impl<R>(MappedFunction<R>(p), cp, opts);
    rep.p = p.str();
    rep.q = p.str();
    rep.precision_bits = bits;
    return rep;
  });
}

UniquenessReport strong_uniqueness(const RationalFunction& p, const Options& opts) {
  return at_precision_ladder(opts, [&]<class R>(int bits) {
    UniquenessReport out;
    out.p = p.str();
    out.precision_bits = bits;
    out.seed = opts.seed;
    CriticalOptions copts;
    copts.cluster_tolerance = opts.tolerance;
    const R tol(opts.tolerance);
    auto crit = critical_values<R>(p, copts);
    MappedFunction<R> mp(p);
    out.self = self_impl<R>(mp, crit, opts);
    out.self.p = out.self.q = p.str();
    out.self.precision_bits = bits;

    ScalarRatioSet<R> set = scalar_ratio_set(crit, tol);
    out.always_shared = set.always_shared;
    if (opts.verify) out.ratio_resultant_agrees = ratio_resultant_check(p, set, R(1e-6));

    auto scalar_case = [&](const Cx<R>& c) {
      MappedFunction<R> cp(p, Mobius<R>::scaling(c));
      auto crit_c = cp.map_critical(crit);
      ScalarCase sc;
      sc.c = to_double(c);
      sc.report = pair_impl<R>(mp, crit, cp, crit_c, &p, nullptr, opts);
      sc.report.p = p.str();
      sc.report.q = "(" + complex_str(sc.c) + ")*(" + p.str() + ")";
      sc.report.precision_bits = bits;
      return sc;
    };
    for (const auto& c : set.ratios) {
      out.ratio_set.push_back(to_double(c));
      out.exceptional.push_back(scalar_case(c));
    }

    // A scalar away from the ratio set and from 1.
    std::mt19937_64 rng(trial_seed(opts.seed, 7919));
    std::uniform_int_distribution<int> pick(-16, 16);
    std::optional<Cx<R>> generic;
    for (int attempt = 0; attempt < 1000 && !generic; ++attempt) {
      Cx<R> c(R(pick(rng)) / R(8), R(pick(rng)) / R(8));
      if (c == Cx<R>(0)) continue;
      auto far = [&](const Cx<R>& x) { return !close_relative(c, x, R(1e-3)); };
      if (far(Cx<R>(1)) && std::all_of(set.ratios.begin(), set.ratios.end(), far)) generic = c;
    }
    if (!generic) throw NumericError("no scalar found away from the ratio set");
    out.generic = scalar_case(*generic);

    out.is_strong_uniqueness = !out.self.has_meromorphic_solutions && !out.generic.report.has_meromorphic_solutions;
    for (const auto& sc : out.exceptional)
      if (sc.report.has_meromorphic_solutions) out.is_strong_uniqueness = false;
    return out;
  });
}

RationalFunction random_function(std::mt19937_64& rng, int n, bool polynomial, int den) {
  std::uniform_int_distribution<int> pick(-den, den);
  auto coeff = [&] { return GaussQ(mpq_class(pick(rng), den), mpq_class(pick(rng), den)); };
  for (;;) {
    std::vector<GaussQ> a;
    std::vector<GaussQ> b;
    for (int k = 0; k <= n; ++k) a.push_back(coeff());
    if (polynomial) {
      b.push_back(GaussQ(1));
    } else {
      for (int k = 0; k <= n; ++k) b.push_back(coeff());
    }
    if (a.back().is_zero() || b.back().is_zero()) continue;
    try {
      RationalFunction f = RationalFunction::normalize(ExactPoly(a), ExactPoly(b));
      if (f.degree() == n) return f;
    } catch (const InputError&) {
    }
  }
}

bool generic_guards(const RationalFunction& f) {
  const int n = f.degree();
  ExactPoly e = critical_numerator(f);
  if (e.degree() != 2 * n - 2 || !is_squarefree(e)) return false;
  if (!is_squarefree(f.den()) || gcd(e, f.den()).degree() > 0) return false;
  ExactPoly u = critical_value_resultant(f);
  return u.degree() == 2 * n - 2 && is_squarefree(u);
}

bool critical_values_disjoint(const RationalFunction& p, const RationalFunction& q) {
  const ExactPoint inf = ExactPoint::infinity();
  const bool p_inf = !fiber_cycle_type(p, inf).is_trivial();
  const bool q_inf = !fiber_cycle_type(q, inf).is_trivial();
  if (p_inf && q_inf) return false;
  // Finite values over a critical point at infinity are not roots of U.
  for (auto [f, g] : {std::pair{&p, &q}, std::pair{&q, &p}}) {
    if (multiplicity_at_infinity(*f) < 2) continue;
    ExactPoint v = f->eval(inf);
    if (!fiber_cycle_type(*g, v).is_trivial()) return false;
  }
  ExactPoly up = critical_value_resultant(p);
  ExactPoly uq = critical_value_resultant(q);
  if (up.degree() < 1 || uq.degree() < 1) return true;
  return !resultant(up, uq).is_zero();
}

bool ratio_guard(const RationalFunction& p, double margin) {
  std::vector<CriticalDatum<double>> crit;
  try {
    crit = critical_values<double>(p);
  } catch (const NumericError&) {
    return false;
  }
  std::vector<std::complex<double>> vals;
  for (const auto& c : crit) {
    if (c.value.is_infinity() || std::abs(c.value.value()) <= margin) return false;
    vals.push_back(c.value.value());
  }
  std::vector<std::complex<double>> ratios;
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = 0; j < vals.size(); ++j)
      if (i != j) ratios.push_back(vals[i] / vals[j]);
  for (std::size_t a = 0; a < ratios.size(); ++a) {
    if (close_relative(ratios[a], {1.0, 0.0}, margin)) return false;
    for (std::size_t b = a + 1; b < ratios.size(); ++b)
      if (close_relative(ratios[a], ratios[b], margin)) return false;
  }
  return true;
}

SweepSummary generic_sweep(SweepKind kind, int n, int m, int trials, std::uint64_t seed, const Options& opts) {
  if (kind == SweepKind::Pair && (n - 1) * (m - 1) < 2)
    throw InputError("pair sweep needs (n-1)(m-1) >= 2");
  if (kind == SweepKind::Uniqueness && n < 3) throw InputError("uniqueness sweep needs n >= 3");
  if (n < 2 || (kind == SweepKind::Pair && m < 2) || trials < 0) throw InputError("sweep degrees must be at least 2");
  SweepSummary sum;
  sum.kind = kind;
  sum.n = n;
  sum.m = kind == SweepKind::Pair ? m : n;
  sum.trials = trials;
  sum.seed = seed;
  sum.records.resize(static_cast<std::size_t>(trials));

#pragma omp parallel for schedule(dynamic) if (opts.parallel)
  for (int t = 0; t < trials; ++t) {
    SweepTrial& rec = sum.records[static_cast<std::size_t>(t)];
    rec.index = t;
    rec.seed = trial_seed(seed, t);
    try {
      std::mt19937_64 rng(rec.seed);
      Options o = opts;
      o.seed = rec.seed;
      o.parallel = false;
      if (kind == SweepKind::Pair) {
        for (;; ++rec.rejected) {
          if (rec.rejected > 1000) throw NumericError("no generic draw within 1000 attempts");
          RationalFunction p = random_function(rng, n);
          RationalFunction q = random_function(rng, m);
          if (!generic_guards(p) || !generic_guards(q) || !critical_values_disjoint(p, q)) continue;
          rec.p = p.str();
          rec.q = q.str();
          AnalysisReport rep = analyze_pair(p, q, o);
          rec.sizes = rep.size_multiset();
          rec.genera = rep.genus_multiset();
          rec.matched = rep.component_count() == 1 && rep.components.front().genus == (n - 1) * (m - 1) &&
                        !rep.has_meromorphic_solutions;
          break;
        }
      } else {
        for (;; ++rec.rejected) {
          if (rec.rejected > 1000) throw NumericError("no generic draw within 1000 attempts");
          RationalFunction p = random_function(rng, n);
          if (!generic_guards(p) || !ratio_guard(p)) continue;
          rec.p = p.str();
          UniquenessReport rep = strong_uniqueness(p, o);
          rec.sizes = rep.self.size_multiset();
          rec.genera = rep.self.genus_multiset();
          rec.strong = rep.is_strong_uniqueness;
          rec.matched = rep.is_strong_uniqueness == (n >= 4);
          break;
        }
      }
    } catch (const std::exception& e) {
      rec.error = e.what();
      rec.matched = false;
    }
  }

  for (const auto& rec : sum.records) {
    sum.matched += rec.matched ? 1 : 0;
    sum.strong_count += rec.strong.value_or(false) ? 1 : 0;
    sum.failures += rec.error.empty() ? 0 : 1;
    sum.rejected += rec.rejected;
  }
  return sum;
}

}  // namespace pqcurve
