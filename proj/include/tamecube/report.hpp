#pragma once

// JSON views of the check and construction reports.

#include <json.hpp>

#include "tamecube/replace.hpp"
#include "tamecube/tame.hpp"

namespace tamecube {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchemaVersion = "1.0.0";

/// {passed, eps, worst, witness: {point[], axis, alpha} | null, samples};
/// the witness axis is 1-based.
Json to_json(const TamenessReport& r);
Json to_json(const SeamReport& r);
Json to_json(const ReplacementTrace& t);

}  // namespace tamecube
