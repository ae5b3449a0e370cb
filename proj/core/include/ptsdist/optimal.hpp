#pragma once

#include "ptsdist/compose.hpp"
#include "ptsdist/pts.hpp"

#include <map>
#include <vector>

namespace ptsdist
{

// sup over resolutions of Pr(C(z, alpha)) by Bellman recursion. With a success
// marking the base case is 1 only at success states (success-filtered variant).
class TraceMax
{
    const Pts& _p;
    const std::vector< bool >* _success;
    std::map< std::pair< StateId, std::size_t >, Rat > _memo;
    Trace _alpha;

    const Rat& compute( StateId s, std::size_t from );

public:
    explicit TraceMax( const Pts& p, const std::vector< bool >* success = nullptr ) : _p( p ), _success( success ) {}
    Rat get( StateId s, const Trace& alpha );
};

Rat max_trace_prob( const Pts& p, StateId root, const Trace& alpha );

// Bellman max of the success-filtered recursion on an acyclic interaction system.
// Throws UnsupportedInput on cyclic systems.
Rat success_trace_max( const InteractionSystem& is, StateId c0, const Trace& alpha );

enum class Objective
{
    sup,
    inf
};

// Optimal probability of eventually reaching a success configuration over maximal
// resolutions. Acyclic systems use direct recursion, cyclic ones policy iteration
// with exact linear solves.
Rat opt_success_prob( const InteractionSystem& is, StateId c0, Objective objective );
Rat opt_success_prob( const InteractionSystem& is, Objective objective );

// Policy iteration on its own, exposed so that tests can compare it with the
// acyclic recursion.
Rat opt_success_policy_iteration( const InteractionSystem& is, StateId c0, Objective objective );

// Solves A x = b exactly. A is square and nonsingular.
std::vector< Rat > solve_linear( std::vector< std::vector< Rat > > a, std::vector< Rat > b );

} // namespace ptsdist
