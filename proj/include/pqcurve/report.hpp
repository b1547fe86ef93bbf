#pragma once

// JSON and plain-text renderings of the analysis results. Key order is fixed
// and numbers print identically across runs.

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "pqcurve/decide.hpp"

namespace pqcurve {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

Json to_json(const AnalysisReport& rep);
Json to_json(const UniquenessReport& rep);
Json to_json(const SweepSummary& sum);
Json branch_json(const BranchSummary& s);

void write_text(std::ostream& os, const AnalysisReport& rep);
void write_text(std::ostream& os, const UniquenessReport& rep);
void write_text(std::ostream& os, const SweepSummary& sum);

}  // namespace pqcurve
