#include "pqcurve/report.hpp"

#include <ostream>
#include <sstream>

namespace pqcurve {

namespace {

Json point_json(const SpherePoint<double>& p) {
  if (p.is_infinity()) return "inf";
  return Json::array({p.value().real(), p.value().imag()});
}

Json complex_json(const std::complex<double>& c) { return Json::array({c.real(), c.imag()}); }

Json parts_json(const CycleType& c) { return Json(c.parts()); }

std::string point_text(const SpherePoint<double>& p) {
  if (p.is_infinity()) return "inf";
  std::ostringstream os;
  os.precision(10);
  os << p.value().real() << (p.value().imag() < 0 ? " - " : " + ") << std::abs(p.value().imag()) << "i";
  return os.str();
}

Json components_json(const AnalysisReport& rep) {
  Json out = Json::array();
  for (const auto& c : rep.components) {
    Json j;
    j["size"] = c.size;
    j["genus"] = c.genus ? Json(*c.genus) : Json();
    j["e_counts"] = c.cycle_counts;
    j["genus_direct"] = rep.monodromy_computed && c.genus ? Json(*c.genus) : Json();
    j["genus_gcd"] = rep.components.size() == 1 && rep.genus_gcd ? Json(*rep.genus_gcd) : Json();
    out.push_back(j);
  }
  return out;
}

Json criteria_json(const std::vector<CriterionVerdict>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    Json j;
    j["id"] = v.id;
    j["applicable"] = v.applicable;
    j["conclusion"] = to_string(v.conclusion);
    j["witness"] = Json::parse(v.witness.dump());
    out.push_back(j);
  }
  return out;
}

Json checks_json(const IdentityChecks& c) {
  Json j;
  j["computed"] = c.computed;
  j["product_identity"] = c.product_identity;
  j["rh_sums"] = c.rh_sums;
  j["grid_cycle_counts"] = c.grid_cycle_counts;
  j["blocks"] = c.blocks;
  j["orbit_sizes_divisible"] = c.orbit_sizes_divisible;
  j["orbit_sizes_sum"] = c.orbit_sizes_sum;
  j["gcd_matches_direct"] = c.gcd_matches_direct ? Json(*c.gcd_matches_direct) : Json();
  return j;
}

}  // namespace

Json branch_json(const BranchSummary& s) {
  Json j;
  j["n"] = s.n;
  j["m"] = s.m;
  Json values = Json::array();
  for (const auto& v : s.values) {
    Json e;
    e["value"] = point_json(v.value);
    e["cycle_p"] = parts_json(v.cycle_p);
    e["cycle_q"] = parts_json(v.cycle_q);
    e["critical_p"] = v.critical_p;
    e["critical_q"] = v.critical_q;
    values.push_back(e);
  }
  j["values"] = values;
  return j;
}

Json to_json(const AnalysisReport& rep) {
  Json j;
  j["inputs"] = {{"p", rep.p}, {"q", rep.q}};
  Json branch = branch_json(rep.branch);
  if (rep.monodromy_computed) {
    branch["alphas"] = rep.alphas;
    branch["betas"] = rep.betas;
  }
  j["branch"] = branch;
  j["components"] = components_json(rep);
  j["criteria"] = criteria_json(rep.criteria);
  j["checks"] = checks_json(rep.checks);
  if (rep.diagonal_cycles) {
    j["diagonal"] = {{"cycles", *rep.diagonal_cycles}, {"expected", *rep.expected_diagonal_cycles}};
  }
  j["tags"] = rep.tags;
  j["verdict"] = {{"solutions", rep.has_meromorphic_solutions}};
  j["meta"] = {{"mode", rep.self ? "self" : "pair"},
               {"monodromy", rep.monodromy_computed},
               {"precision", rep.precision_bits},
               {"seed", rep.seed},
               {"version", kVersion}};
  return j;
}

Json to_json(const UniquenessReport& rep) {
  Json j;
  j["inputs"] = {{"p", rep.p}};
  Json self = to_json(rep.self);
  self.erase("meta");
  j["self"] = self;
  Json ratios = Json::array();
  for (const auto& c : rep.ratio_set) ratios.push_back(complex_json(c));
  j["ratio_set"] = ratios;
  j["always_shared"] = rep.always_shared;
  j["ratio_resultant_agrees"] = rep.ratio_resultant_agrees ? Json(*rep.ratio_resultant_agrees) : Json();
  auto scalar = [](const ScalarCase& sc) {
    Json s;
    s["c"] = complex_json(sc.c);
    s["common_count"] = sc.report.branch.common_count();
    s["components"] = components_json(sc.report);
    s["solutions"] = sc.report.has_meromorphic_solutions;
    return s;
  };
  Json ex = Json::array();
  for (const auto& sc : rep.exceptional) ex.push_back(scalar(sc));
  j["exceptional"] = ex;
  j["generic"] = scalar(rep.generic);
  j["verdict"] = {{"strong_uniqueness", rep.is_strong_uniqueness}};
  j["meta"] = {{"mode", "uniqueness"}, {"precision", rep.precision_bits}, {"seed", rep.seed}, {"version", kVersion}};
  return j;
}

Json to_json(const SweepSummary& sum) {
  Json j;
  j["kind"] = sum.kind == SweepKind::Pair ? "pair" : "uniqueness";
  j["n"] = sum.n;
  j["m"] = sum.m;
  j["trials"] = sum.trials;
  j["matched"] = sum.matched;
  if (sum.kind == SweepKind::Uniqueness) j["strong_count"] = sum.strong_count;
  j["failures"] = sum.failures;
  j["rejected_draws"] = sum.rejected;
  Json recs = Json::array();
  for (const auto& r : sum.records) {
    Json e;
    e["index"] = r.index;
    e["seed"] = r.seed;
    e["p"] = r.p;
    if (sum.kind == SweepKind::Pair) e["q"] = r.q;
    e["matched"] = r.matched;
    if (r.strong) e["strong_uniqueness"] = *r.strong;
    e["sizes"] = r.sizes;
    e["genera"] = r.genera;
    if (!r.error.empty()) e["error"] = r.error;
    recs.push_back(e);
  }
  j["records"] = recs;
  j["meta"] = {{"seed", sum.seed}, {"version", kVersion}};
  return j;
}

void write_text(std::ostream& os, const AnalysisReport& rep) {
  if (rep.self) {
    os << "self curve of P = " << rep.p << "\n";
  } else {
    os << "P = " << rep.p << "\nQ = " << rep.q << "\n";
  }
  os << "critical values (" << rep.branch.values.size() << "):\n";
  for (const auto& v : rep.branch.values) {
    os << "  " << point_text(v.value) << "  P " << v.cycle_p.str();
    if (!rep.self) os << "  Q " << v.cycle_q.str();
    os << "\n";
  }
  os << "components: " << rep.components.size() << "\n";
  for (const auto& c : rep.components)
    os << "  size " << c.size << "  genus " << (c.genus ? std::to_string(*c.genus) : "?") << "\n";
  for (const auto& v : rep.criteria)
    if (v.applicable) os << "criterion " << v.id << ": " << to_string(v.conclusion) << "\n";
  os << (rep.self ? "solutions with f != g: " : "meromorphic solutions: ")
     << (rep.has_meromorphic_solutions ? "yes" : "no") << "\n";
}

void write_text(std::ostream& os, const UniquenessReport& rep) {
  os << "P = " << rep.p << "\n";
  os << "self curve components: " << rep.self.components.size() << "  genera";
  for (int g : rep.self.genus_multiset()) os << " " << g;
  os << "\nexceptional scalars: " << rep.exceptional.size() << (rep.always_shared ? " (0 or inf critical)" : "")
     << "\n";
  int bad = 0;
  for (const auto& sc : rep.exceptional) bad += sc.report.has_meromorphic_solutions ? 1 : 0;
  os << "  with a component of genus <= 1: " << bad << "\n";
  os << "generic scalar genera";
  for (int g : rep.generic.report.genus_multiset()) os << " " << g;
  os << "\nstrong uniqueness: " << (rep.is_strong_uniqueness ? "yes" : "no") << "\n";
}

void write_text(std::ostream& os, const SweepSummary& sum) {
  os << (sum.kind == SweepKind::Pair ? "pair" : "uniqueness") << " sweep n=" << sum.n;
  if (sum.kind == SweepKind::Pair) os << " m=" << sum.m;
  os << ": " << sum.matched << "/" << sum.trials << " conforming";
  if (sum.kind == SweepKind::Uniqueness) os << ", " << sum.strong_count << "/" << sum.trials << " strong uniqueness";
  os << ", " << sum.failures << " failures, " << sum.rejected << " draws rejected\n";
}

}  // namespace pqcurve
