#pragma once

#include "ptsdist/pts.hpp"

#include <optional>
#include <set>
#include <vector>

namespace ptsdist
{

struct Classification
{
    bool fully_nondeterministic = false; // every target is a Dirac distribution
    bool fully_probabilistic = false;    // at most one outgoing transition per state

    [[nodiscard]] bool general() const { return !fully_nondeterministic && !fully_probabilistic; }
};

Classification classify( const Pts& p );

struct StructureInfo
{
    bool acyclic = true;
    std::optional< unsigned > depth; // longest path from the root; empty when cyclic
    std::vector< StateId > reachable; // sorted
    std::vector< StateId > on_cycle;  // reachable states lying on a cycle, sorted
};

StructureInfo structure_info( const Pts& p, StateId root );

// Traces of length 1..max_len that some path from `root` can perform.
// Sorted lexicographically by action id, shorter first on common prefixes.
std::set< Trace > realizable_traces( const Pts& p, StateId root, unsigned max_len );

} // namespace ptsdist
