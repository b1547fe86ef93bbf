#pragma once

// Irreducibility criteria for the fiber-product curve and the self curve,
// usable as shortcuts ahead of the monodromy computation and as independent
// predicates checked against it.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pqcurve/gridgroup.hpp"
#include "pqcurve/monodromy.hpp"

namespace pqcurve {

enum class Conclusion { Irreducible, Reducible, Unknown, Indecomposable, Decomposable };

std::string to_string(Conclusion c);

struct CriterionVerdict {
  std::string id;
  bool applicable = false;
  Conclusion conclusion = Conclusion::Unknown;
  nlohmann::json witness = nlohmann::json::object();
};

/// Common critical values at most one; coprime degrees; one side a
/// polynomial and the other without multiple poles (both orientations).
std::vector<CriterionVerdict> quick_irreducibility(const BranchSummary& summary);

/// True if some verdict concludes Irreducible.
bool proves_irreducible(const std::vector<CriterionVerdict>& verdicts);

/// For exactly two common critical values w1, w2: reducible iff both
/// functions factor through z^d after a Möbius map sending 0, inf to w1, w2,
/// for a shared d > 1. The exponent is read off the cycle types; when the
/// exact functions are supplied and w1, w2 are recognizably rational, the
/// witness carries the extracted forms.
CriterionVerdict two_common_values_structure(const BranchSummary& summary, const RationalFunction* p_exact,
                                             const RationalFunction* q_exact);

/// Indecomposable iff the monodromy group is primitive; a block system is
/// attached otherwise.
CriterionVerdict indecomposability(const std::vector<Permutation>& alphas, int n, const std::string& id);

/// Criteria for h_P from the cycle data of P and (optionally) its monodromy:
/// an indecomposable P with a simple critical value, the separation
/// condition, and all critical values simple. When the self-curve analysis
/// is supplied every verdict records whether it agrees with it.
std::vector<CriterionVerdict> self_curve_criteria(const std::vector<CycleType>& cycle_types, int n,
                                                  const std::vector<Permutation>* alphas,
                                                  const SelfCurveResult* analysis);

/// Simplest rational within 1e-12 relative of x with denominator at most
/// max_den; used to recognise exact critical values.
std::optional<mpq_class> recognise_rational(double x, long max_den = 1000000);

}  // namespace pqcurve
