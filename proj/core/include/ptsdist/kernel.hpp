#pragma once

#include "ptsdist/achievable.hpp"
#include "ptsdist/limits.hpp"
#include "ptsdist/pts.hpp"
#include "ptsdist/testing_metrics.hpp"
#include "ptsdist/trace_metrics.hpp"

namespace ptsdist
{

// Direct implementations of the depth-bounded preorders, stated over the
// enumerated deterministic resolutions instead of achievable sets. Randomized
// variants use that a randomized resolution realizes exactly the convex
// combinations of deterministic ones. They serve as oracles for the metrics.

// s below t in the trace preorder of the approach, on traces up to depth.
bool trace_preorder( const Pts& p, StateId s, StateId t, TraceApproach approach, SchedulerMode::Class scheduler,
                     unsigned depth, const Limits& limits = default_limits() );

// s below t in the testing preorder on the suite, over maximal resolutions of the
// interaction systems. Needs acyclic interaction systems.
bool testing_preorder( const Pts& p, StateId s, StateId t, const TestSuite& suite, TestingApproach approach,
                       SchedulerMode::Class scheduler, const Limits& limits = default_limits() );

} // namespace ptsdist
