#pragma once

#include <json.hpp>

#include "effopt/descent.hpp"

namespace effopt {

using Json = nlohmann::ordered_json;

// {"m": "<mantissa as text>", "e": <exponent>} — bit-exact round trip.
Json dyadic_to_json(const Dyadic& d);
Dyadic dyadic_from_json(const Json& j);

Json interval_to_json(const Interval& v);
Interval interval_from_json(const Json& j);

Json trace_to_json(const Trace& t);
Trace trace_from_json(const Json& j);

Json trace_schema();
Json report_schema();

}  // namespace effopt
