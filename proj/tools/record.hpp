#pragma once

#include "ptsdist/metric_result.hpp"
#include "ptsdist/properties.hpp"
#include "ptsdist/relations.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace ptsdist::cli
{

using Json = nlohmann::ordered_json;

// Machine-readable records. Rationals are canonical "a/b" strings; decimals are
// rendered for reading only.
Json metric_json( const MetricResult& m );
Json verdict_json( const RobustnessVerdict& v );
Json relation_json( const RelationOutcome& r, const RelationQuery& q );
Json property_json( const PropertyReport& r );

// Human-readable key=value lines.
void print_metric( std::ostream& os, const MetricResult& m );

} // namespace ptsdist::cli
