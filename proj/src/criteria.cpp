#include "pqcurve/criteria.hpp"

#include <cmath>
#include <numeric>

namespace pqcurve {

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Irreducible:
      return "irreducible";
    case Conclusion::Reducible:
      return "reducible";
    case Conclusion::Indecomposable:
      return "indecomposable";
    case Conclusion::Decomposable:
      return "decomposable";
    case Conclusion::Unknown:
      break;
  }
  return "unknown";
}

namespace {

bool infinity_critical(const BranchSummary& s, bool for_q) {
  for (const auto& v : s.values)
    if (v.value.is_infinity() && (for_q ? v.critical_q : v.critical_p)) return true;
  return false;
}

nlohmann::json point_json(const SpherePoint<double>& p) {
  if (p.is_infinity()) return "inf";
  return nlohmann::json::array({p.value().real(), p.value().imag()});
}

}  // namespace

std::vector<CriterionVerdict> quick_irreducibility(const BranchSummary& s) {
  std::vector<CriterionVerdict> out;

  CriterionVerdict common{"common-values-at-most-one"};
  int k = s.common_count();
  common.applicable = k <= 1;
  common.conclusion = common.applicable ? Conclusion::Irreducible : Conclusion::Unknown;
  common.witness["common_count"] = k;
  out.push_back(common);

  CriterionVerdict coprime{"coprime-degrees"};
  int g = std::gcd(s.n, s.m);
  coprime.applicable = g == 1;
  coprime.conclusion = coprime.applicable ? Conclusion::Irreducible : Conclusion::Unknown;
  coprime.witness["gcd"] = g;
  out.push_back(coprime);

  CriterionVerdict poly{"polynomial-against-simple-poles"};
  bool pq = s.p_polynomial && !infinity_critical(s, true);
  bool qp = s.q_polynomial && !infinity_critical(s, false);
  poly.applicable = pq || qp;
  poly.conclusion = poly.applicable ? Conclusion::Irreducible : Conclusion::Unknown;
  poly.witness["p_polynomial"] = s.p_polynomial;
  poly.witness["q_polynomial"] = s.q_polynomial;
  poly.witness["p_multiple_poles"] = infinity_critical(s, false);
  poly.witness["q_multiple_poles"] = infinity_critical(s, true);
  out.push_back(poly);
  return out;
}

bool proves_irreducible(const std::vector<CriterionVerdict>& verdicts) {
  for (const auto& v : verdicts)
    if (v.applicable && v.conclusion == Conclusion::Irreducible) return true;
  return false;
}

std::optional<mpq_class> recognise_rational(double x, long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents until one is close enough.
  double tol = 1e-12 * std::max(1.0, std::fabs(x));
  double rem = x;
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(rem);
    mpz_class ai(a);
    mpz_class h = ai * h0 + h1;
    mpz_class k = ai * k0 + k1;
    if (k > max_den) break;
    mpq_class q(h, k);
    q.canonicalize();
    if (std::fabs(q.get_d() - x) <= tol) return q;
    double frac = rem - a;
    if (frac == 0) break;
    rem = 1.0 / frac;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
  }
  return std::nullopt;
}

namespace {

std::optional<ExactPoint> recognise_point(const SpherePoint<double>& p) {
  if (p.is_infinity()) return ExactPoint::infinity();
  auto re = recognise_rational(p.value().real());
  auto im = recognise_rational(p.value().imag());
  if (!re || !im) return std::nullopt;
  return ExactPoint::finite(GaussQ(*re, *im));
}

}  // namespace

CriterionVerdict two_common_values_structure(const BranchSummary& s, const RationalFunction* p_exact,
                                             const RationalFunction* q_exact) {
  CriterionVerdict v{"two-common-values"};
  std::vector<const BranchValue*> common;
  for (const auto& b : s.values)
    if (b.critical_p && b.critical_q) common.push_back(&b);
  v.witness["common_count"] = static_cast<int>(common.size());
  if (common.size() != 2) return v;
  v.applicable = true;
  const BranchValue& w1 = *common[0];
  const BranchValue& w2 = *common[1];
  int dp = power_form_exponent(w1.cycle_p, w2.cycle_p);
  int dq = power_form_exponent(w1.cycle_q, w2.cycle_q);
  int d = std::gcd(dp, dq);
  v.witness["w1"] = point_json(w1.value);
  v.witness["w2"] = point_json(w2.value);
  v.witness["exponent_p"] = dp;
  v.witness["exponent_q"] = dq;
  v.witness["d"] = d;
  v.conclusion = d > 1 ? Conclusion::Reducible : Conclusion::Irreducible;
  if (d > 1 && p_exact && q_exact) {
    auto e1 = recognise_point(w1.value);
    auto e2 = recognise_point(w2.value);
    if (e1 && e2) {
      auto fp = extract_power_form(*p_exact, *e1, *e2, d);
      auto fq = extract_power_form(*q_exact, *e1, *e2, d);
      if (fp && fq) {
        v.witness["p_form"] = {{"mu", fp->mu.str()}, {"d", fp->d}, {"inner", fp->inner.str()}};
        v.witness["q_form"] = {{"mu", fq->mu.str()}, {"d", fq->d}, {"inner", fq->inner.str()}};
      } else {
        v.witness["extraction_failed"] = true;
      }
    }
  }
  return v;
}

CriterionVerdict indecomposability(const std::vector<Permutation>& alphas, int n, const std::string& id) {
  CriterionVerdict v{id};
  v.applicable = true;
  auto blocks = nontrivial_block_system(alphas, n);
  if (!blocks) {
    v.conclusion = Conclusion::Indecomposable;
    return v;
  }
  v.conclusion = Conclusion::Decomposable;
  nlohmann::json bl = nlohmann::json::array();
  for (const auto& b : *blocks) {
    nlohmann::json one = nlohmann::json::array();
    for (int x : b) one.push_back(x + 1);
    bl.push_back(one);
  }
  v.witness["blocks"] = bl;
  return v;
}

std::vector<CriterionVerdict> self_curve_criteria(const std::vector<CycleType>& cycle_types, int n,
                                                  const std::vector<Permutation>* alphas,
                                                  const SelfCurveResult* analysis) {
  std::vector<CycleType> crit;
  for (const auto& c : cycle_types)
    if (!c.is_trivial()) crit.push_back(c);
  const int r = static_cast<int>(crit.size());
  bool any_simple = std::any_of(crit.begin(), crit.end(), [](const CycleType& c) { return c.is_simple(); });
  bool all_simple = std::all_of(crit.begin(), crit.end(), [](const CycleType& c) { return c.is_simple(); });
  bool separated = std::all_of(crit.begin(), crit.end(), [](const CycleType& c) { return c.ramified_points() <= 1; });
  std::optional<bool> primitive;
  if (alphas) primitive = is_primitive(*alphas, n);

  auto agree = [&](CriterionVerdict& v) {
    if (analysis && v.applicable && v.conclusion == Conclusion::Irreducible)
      v.witness["agrees"] = analysis->irreducible;
  };
  std::vector<CriterionVerdict> out;

  CriterionVerdict a{"indecomposable-with-simple-value"};
  a.applicable = primitive.value_or(false) && any_simple;
  a.conclusion = a.applicable ? Conclusion::Irreducible : Conclusion::Unknown;
  a.witness["has_simple_value"] = any_simple;
  if (primitive) a.witness["indecomposable"] = *primitive;
  agree(a);
  out.push_back(a);

  CriterionVerdict b{"separation-condition"};
  b.applicable = separated;
  b.witness["separated"] = separated;
  if (separated) {
    // The alternative to indecomposability: two totally ramified values.
    bool power = r == 2 && crit[0].count() == 1 && crit[1].count() == 1;
    b.witness["power_form"] = power;
    if (primitive) {
      b.conclusion = *primitive ? Conclusion::Indecomposable : Conclusion::Decomposable;
      b.witness["indecomposable"] = *primitive;
      b.witness["consistent"] = *primitive || power;
    }
  }
  out.push_back(b);

  CriterionVerdict c{"all-values-simple"};
  c.applicable = all_simple && r > 0;
  c.conclusion = c.applicable ? Conclusion::Irreducible : Conclusion::Unknown;
  c.witness["r"] = r;
  c.witness["two_n_minus_two"] = 2 * n - 2;
  c.witness["count_matches"] = (r == 2 * n - 2) == all_simple;
  agree(c);
  out.push_back(c);
  return out;
}

}  // namespace pqcurve
