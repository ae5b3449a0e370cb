#pragma once

#include "ptsdist/model_format.hpp"

#include <string>

namespace ptsdist
{

// Graphviz DOT output. States are circles; every transition is a point node
// reached by a solid edge carrying the action, fanning out to its targets along
// dotted edges carrying the probabilities. The initial state is bold and a
// test's success state is a double circle. Output order follows declaration order.
std::string emit_dot( const Pts& p );
std::string emit_dot( const Npt& o );
// One cluster per block.
std::string emit_dot( const Model& m );

} // namespace ptsdist
