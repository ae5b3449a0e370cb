#pragma once

#include "ptsdist/pts.hpp"
#include "ptsdist/testing_metrics.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ptsdist
{

using NamedTrace = std::vector< std::string >;

// Test that succeeds right after performing `trace`. With dead_ends every step can
// also move to a dead state, so the interaction may stop counting at any point.
Npt linear_test( const NamedTrace& trace, bool dead_ends, const std::string& name = "" );

// linear_test for every trace of length 1..depth that some root can perform.
TestSuite trace_test_suite( const Pts& p, const std::vector< StateId >& roots, unsigned depth, bool dead_ends );

// Traces leading from the root of o to its success state, up to max_len.
std::vector< NamedTrace > test_success_traces( const Npt& o, unsigned max_len );

// o synchronized with linear_test(trace): succeeds only through `trace`. Empty
// when o cannot reach success through it.
std::optional< Npt > restrict_test( const Npt& o, const NamedTrace& trace );

// o plus its restriction to each of its success traces.
TestSuite restriction_closure( const TestSuite& suite, unsigned max_len );

// x running alongside o, seen as a test: configurations where o succeeded are
// merged into one success state. Empty when success is unreachable.
std::optional< Npt > compose_test( const Pts& p, StateId x, const Npt& o );

// Test whose success probability against any process is the sum over traces of
// weight * Pr(trace). Weights are nonnegative and sum to at most 1 along every
// chain of prefixes.
Npt weighted_trace_test( const std::vector< std::string >& alphabet, const std::map< NamedTrace, Rat >& weights,
                         const std::string& name = "weighted" );

NamedTrace named( const Pts& p, const Trace& t );

} // namespace ptsdist
