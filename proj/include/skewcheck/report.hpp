#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "skewcheck/geometry.hpp"
#include "skewcheck/local_condition.hpp"
#include "skewcheck/skewness.hpp"
#include "skewcheck/stratification.hpp"

namespace skewcheck {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

Json to_json(const Vec& v);
Json to_json(const KernelWitness& w);
Json report_json(const LocalConditionReport& r);
Json report_json(const SweepReport& r);
Json report_json(const GenericityReport& r);
Json report_json(const EquivalenceReport& r);
Json report_json(const PairSkewResult& skew, const FailureClassification& cls);
Json report_json(const TransversalityResult& r, int n, int N, double tol);

// Adds the audit fields shared by every CLI report and serializes with a
// fixed layout so identical runs produce identical bytes.
std::string finalize_report(Json report, const Json& config_echo);

}  // namespace skewcheck
