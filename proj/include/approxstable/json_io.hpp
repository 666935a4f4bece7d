#pragma once

#include <string>

#include "json.hpp"

#include "approxstable/gda.hpp"
#include "approxstable/market.hpp"
#include "approxstable/packing.hpp"
#include "approxstable/stability.hpp"

namespace approxstable {

using Json = nlohmann::ordered_json;

// Markets serialize to {"doctors", "hospitals", "preferences", "utilities",
// "constraints"}; all maps key by display name in index order, so
// generate -> parse -> serialize is byte-stable.

Json market_to_json(const Market& m);
Market market_from_json(const Json& j);

std::string market_to_string(const Market& m);
Market market_from_string(const std::string& text);

Json matching_to_json(const Market& m, const Matching& mu);
Matching matching_from_json(const Market& m, const Json& j);

Json report_to_json(const Market& m, const StabilityReport& report);
Json packing_solution_to_json(const Market& m, const PackingSolution& solution);
Json trace_to_json(const Market& m, const GdaTrace& trace);

}  // namespace approxstable
