#pragma once

#include "ptsdist/pts.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ptsdist
{

// Result of a synchronous product. pairs[i] are the component states of product state i.
struct Composition
{
    Pts pts;
    std::vector< std::pair< StateId, StateId > > pairs;

    [[nodiscard]] std::optional< StateId > find( StateId x, StateId y ) const;
};

// CSP-style synchronous product: (x,y) -a-> pi1 x pi2 iff x -a-> pi1 and y -a-> pi2.
// Labels are matched by name and the alphabet is the union. With start pairs the
// result is restricted to the pairs reachable from them; the first start pair
// becomes the root. Without start pairs the roots of p1 and p2 are used when both
// exist; otherwise (or with full = true) the whole product is built.
Composition parallel_compose( const Pts& p1, const Pts& p2,
                              const std::vector< std::pair< StateId, StateId > >& starts = {}, bool full = false );

// Product of a process and a test, restricted to configurations reachable from
// (s, test root). success[c] marks configurations whose test component is the
// success state. The root of pts is the start configuration.
struct InteractionSystem
{
    Pts pts;
    std::vector< std::pair< StateId, StateId > > configs;
    std::vector< bool > success;

    [[nodiscard]] StateId root() const { return *pts.root(); }
    [[nodiscard]] bool is_success( StateId c ) const { return success.at( c ); }
};

InteractionSystem build_interaction_system( const Pts& p, StateId s, const Npt& o );

} // namespace ptsdist
