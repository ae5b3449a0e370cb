#pragma once

#include "ptsdist/limits.hpp"
#include "ptsdist/pts.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <vector>

namespace ptsdist
{

// Node of a deterministic resolution on the depth-bounded unfolding. Subtrees
// are shared between resolutions, so nodes are immutable.
struct ResNode
{
    static constexpr int halt = -1;
    static constexpr int leaf = -2; // depth bound reached, nothing is decided below

    StateId state = 0;
    int choice = leaf; // halt, leaf or an index into Pts::transitions()
    std::vector< std::shared_ptr< const ResNode > > children; // aligned with the chosen target's entries
};

using ResNodePtr = std::shared_ptr< const ResNode >;

struct ResolutionTree
{
    ResNodePtr root;
    unsigned depth = 0;
};

// Number of deterministic resolutions of the depth-bounded unfolding, saturating at UINT64_MAX.
std::uint64_t count_det_resolutions( const Pts& p, StateId root, unsigned depth, bool maximal );

// Calls `visit` on every deterministic resolution: at each node Halt (not at a
// non-deadlock node when maximal) or one enabled transition. Order is
// lexicographic: Halt first, then transitions by index, last child varying
// fastest. Stops early when visit returns false. Returns the number visited.
// Throws CapExceeded before enumerating when the count exceeds limits.max_resolutions.
std::uint64_t enumerate_det_resolutions( const Pts& p, StateId root, unsigned depth, bool maximal,
                                         const std::function< bool( const ResolutionTree& ) >& visit,
                                         const Limits& limits = default_limits() );

// Trace -> Pr(C(z, trace)) for every trace of length <= depth with positive
// probability; the empty trace maps to 1.
using TraceDistribution = std::map< Trace, Rat >;

TraceDistribution trace_distribution( const Pts& p, const ResolutionTree& r, unsigned depth );

// Success-filtered variant: trace -> probability of successful computations
// with exactly that trace. success[s] marks success states.
TraceDistribution success_distribution( const Pts& p, const ResolutionTree& r, const std::vector< bool >& success );

// Sparse vector over nonempty traces, sorted by trace, zero entries omitted.
using TraceVector = std::vector< std::pair< Trace, Rat > >;

// Distinct trace-distribution vectors of all deterministic non-maximal
// resolutions of depth `depth`, computed bottom-up with deduplication.
std::vector< TraceVector > det_trace_vectors( const Pts& p, StateId root, unsigned depth,
                                              const Limits& limits = default_limits() );

// Distinct trace-distribution vectors of randomized non-maximal resolutions whose
// per-node weights (halting included) are multiples of 1/grid.
std::vector< TraceVector > grid_trace_vectors( const Pts& p, StateId root, unsigned depth, unsigned grid,
                                               const Limits& limits = default_limits() );

Rat value_at( const TraceVector& v, const Trace& t );

} // namespace ptsdist
