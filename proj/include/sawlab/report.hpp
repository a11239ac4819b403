#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "sawlab/estimator.hpp"
#include "sawlab/pi.hpp"
#include "sawlab/proof.hpp"
#include "sawlab/saw.hpp"

// JSON renderings of every result type. Exact integers are decimal strings;
// floats appear only as display values next to them.
namespace sawlab::report {

using Json = nlohmann::ordered_json;

Json series_json(const GraphRule& rule, const SawCountSeries& s);
std::string series_csv(const SawCountSeries& s);

Json fit_json(const MuFit& fit);
Json estimate_json(const GraphRule& rule, const GrowthEstimate& g, const std::vector<SawCountSeries>& per_rep,
                   bool truncated);
std::string estimate_csv(const GrowthEstimate& g);

Json bounds_json(const GrowthEstimate& g, const BoundReport& r);

Json prefix_json(const GraphRule& rule, const SawPrefix& p);
SawPrefix prefix_from_json(const GraphRule& rule, const Json& j);

Json pi_certificate_json(const GraphRule& rule, const PiCertificate& c);
// Inverse of pi_certificate_json; throws SpecError on malformed input.
PiCertificate pi_certificate_from_json(const GraphRule& rule, const Json& j);

Json audit_json(const GraphRule& rule, const BlueCountAudit& a);

Json menger_json(const GraphRule& rule, const MengerResult& m, const std::string& validation);
Json strictness_json(const GraphRule& rule, const StrictnessReport& r);
Json g_induction_json(const GInductionReport& r);
Json inequality_json(const GraphRule& rule, const InequalityReport& r);

}  // namespace sawlab::report
