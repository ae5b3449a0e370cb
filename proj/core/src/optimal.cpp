#include "ptsdist/optimal.hpp"

#include "ptsdist/errors.hpp"
#include "ptsdist/structure.hpp"

#include <deque>
#include <optional>
#include <functional>
#include <stdexcept>

namespace ptsdist
{

const Rat& TraceMax::compute( StateId s, std::size_t from )
{
    auto key = std::make_pair( s, from );
    if ( auto it = _memo.find( key ); it != _memo.end() )
        return it->second;
    Rat best = 0;
    if ( from == _alpha.size() )
        best = ( _success == nullptr || ( *_success )[ s ] ) ? Rat( 1 ) : Rat( 0 );
    else
        for ( auto i : _p.outgoing( s ) )
        {
            const auto& t = _p.transition( i );
            if ( t.label != _alpha[ from ] )
                continue;
            Rat v = 0;
            for ( const auto& [ c, pr ] : t.target.entries )
                v += pr * compute( c, from + 1 );
            best = ptsdist::max( best, v );
        }
    return _memo.emplace( key, best ).first->second;
}

Rat TraceMax::get( StateId s, const Trace& alpha )
{
    if ( alpha != _alpha )
    {
        _memo.clear();
        _alpha = alpha;
    }
    return compute( s, 0 );
}

Rat max_trace_prob( const Pts& p, StateId root, const Trace& alpha )
{
    TraceMax m( p );
    return m.get( root, alpha );
}

Rat success_trace_max( const InteractionSystem& is, StateId c0, const Trace& alpha )
{
    if ( !structure_info( is.pts, c0 ).acyclic )
        throw UnsupportedInput( "trace-indexed success probabilities need an acyclic interaction system" );
    TraceMax m( is.pts, &is.success );
    return m.get( c0, alpha );
}

std::vector< Rat > solve_linear( std::vector< std::vector< Rat > > a, std::vector< Rat > b )
{
    const std::size_t n = b.size();
    for ( std::size_t col = 0; col < n; ++col )
    {
        std::size_t piv = col;
        while ( piv < n && a[ piv ][ col ].is_zero() )
            ++piv;
        if ( piv == n )
            throw std::domain_error( "singular linear system" );
        std::swap( a[ piv ], a[ col ] );
        std::swap( b[ piv ], b[ col ] );
        const Rat inv = Rat( 1 ) / a[ col ][ col ];
        for ( std::size_t j = col; j < n; ++j )
            a[ col ][ j ] *= inv;
        b[ col ] *= inv;
        for ( std::size_t r = 0; r < n; ++r )
        {
            if ( r == col || a[ r ][ col ].is_zero() )
                continue;
            const Rat f = a[ r ][ col ];
            for ( std::size_t j = col; j < n; ++j )
                if ( !a[ col ][ j ].is_zero() )
                    a[ r ][ j ] -= f * a[ col ][ j ];
            b[ r ] -= f * b[ col ];
        }
    }
    return b;
}

namespace
{

Rat acyclic_value( const InteractionSystem& is, StateId c0, Objective objective )
{
    const auto& p = is.pts;
    std::vector< std::optional< Rat > > memo( p.num_states() );
    std::function< Rat( StateId ) > value = [ & ]( StateId s ) -> Rat {
        if ( memo[ s ] )
            return *memo[ s ];
        Rat v = 0;
        if ( is.success[ s ] )
            v = 1;
        else
        {
            bool first = true;
            for ( auto i : p.outgoing( s ) )
            {
                Rat e = 0;
                for ( const auto& [ c, pr ] : p.transition( i ).target.entries )
                    e += pr * value( c );
                if ( first || ( objective == Objective::sup ? v < e : e < v ) )
                    v = e;
                first = false;
            }
        }
        memo[ s ] = v;
        return v;
    };
    return value( c0 );
}

// States (among `live`) from which some state in `target` is reachable using only
// the allowed transitions.
std::vector< bool > can_reach( const Pts& p, const std::vector< bool >& target,
                               const std::function< bool( StateId, std::size_t ) >& allowed )
{
    const auto n = p.num_states();
    std::vector< std::vector< StateId > > pred( n );
    for ( StateId s = 0; s < n; ++s )
        for ( auto i : p.outgoing( s ) )
            if ( allowed( s, i ) )
                for ( const auto& [ c, _ ] : p.transition( i ).target.entries )
                    pred[ c ].push_back( s );
    std::vector< bool > reach = target;
    std::deque< StateId > work;
    for ( StateId s = 0; s < n; ++s )
        if ( target[ s ] )
            work.push_back( s );
    while ( !work.empty() )
    {
        auto s = work.front();
        work.pop_front();
        for ( auto q : pred[ s ] )
            if ( !reach[ q ] )
            {
                reach[ q ] = true;
                work.push_back( q );
            }
    }
    return reach;
}

} // namespace

Rat opt_success_policy_iteration( const InteractionSystem& is, StateId c0, Objective objective )
{
    const auto& p = is.pts;
    const auto n = p.num_states();
    const bool sup = objective == Objective::sup;

    // zero[s]: the optimum at s is 0 whatever the policy does later.
    std::vector< bool > zero( n, false );
    if ( sup )
    {
        auto reach = can_reach( p, is.success, []( StateId, std::size_t ) { return true; } );
        for ( StateId s = 0; s < n; ++s )
            zero[ s ] = !reach[ s ];
    }
    else
    {
        // Greatest set of non-success states where success can be avoided forever.
        std::vector< bool > avoid( n );
        for ( StateId s = 0; s < n; ++s )
            avoid[ s ] = !is.success[ s ];
        bool changed = true;
        while ( changed )
        {
            changed = false;
            for ( StateId s = 0; s < n; ++s )
            {
                if ( !avoid[ s ] || p.is_deadlock( s ) )
                    continue;
                bool ok = false;
                for ( auto i : p.outgoing( s ) )
                {
                    bool inside = true;
                    for ( const auto& [ c, _ ] : p.transition( i ).target.entries )
                        inside = inside && avoid[ c ];
                    ok = ok || inside;
                }
                if ( !ok )
                {
                    avoid[ s ] = false;
                    changed = true;
                }
            }
        }
        zero = avoid;
    }

    // undecided states: neither success nor zero
    std::vector< std::size_t > policy( n, 0 );
    for ( StateId s = 0; s < n; ++s )
        if ( !p.is_deadlock( s ) )
            policy[ s ] = p.outgoing( s ).front();

    std::vector< Rat > value( n, Rat( 0 ) );
    while ( true )
    {
        // Evaluate: states that cannot reach success under the policy get 0.
        auto reach = can_reach( p, is.success, [ & ]( StateId s, std::size_t i ) {
            return !is.success[ s ] && !zero[ s ] && policy[ s ] == i;
        } );
        std::vector< long > idx( n, -1 );
        std::vector< StateId > vars;
        for ( StateId s = 0; s < n; ++s )
            if ( !is.success[ s ] && !zero[ s ] && reach[ s ] )
            {
                idx[ s ] = static_cast< long >( vars.size() );
                vars.push_back( s );
            }
        std::vector< std::vector< Rat > > a( vars.size(), std::vector< Rat >( vars.size(), Rat( 0 ) ) );
        std::vector< Rat > b( vars.size(), Rat( 0 ) );
        for ( std::size_t r = 0; r < vars.size(); ++r )
        {
            a[ r ][ r ] = 1;
            for ( const auto& [ c, pr ] : p.transition( policy[ vars[ r ] ] ).target.entries )
            {
                if ( is.success[ c ] )
                    b[ r ] += pr;
                else if ( idx[ c ] >= 0 )
                    a[ r ][ static_cast< std::size_t >( idx[ c ] ) ] -= pr;
            }
        }
        auto x = solve_linear( std::move( a ), std::move( b ) );
        for ( StateId s = 0; s < n; ++s )
            value[ s ] = is.success[ s ] ? Rat( 1 ) : ( idx[ s ] >= 0 ? x[ static_cast< std::size_t >( idx[ s ] ) ] : Rat( 0 ) );

        // Improve: switch only on strict improvement, best choice, lowest index on ties.
        bool changed = false;
        for ( StateId s = 0; s < n; ++s )
        {
            if ( is.success[ s ] || zero[ s ] || p.is_deadlock( s ) )
                continue;
            auto q = [ & ]( std::size_t i ) {
                Rat e = 0;
                for ( const auto& [ c, pr ] : p.transition( i ).target.entries )
                    e += pr * value[ c ];
                return e;
            };
            const Rat current = q( policy[ s ] );
            std::size_t best_i = policy[ s ];
            Rat best = current;
            for ( auto i : p.outgoing( s ) )
            {
                Rat e = q( i );
                if ( sup ? best < e : e < best )
                {
                    best = e;
                    best_i = i;
                }
            }
            if ( best != current )
            {
                policy[ s ] = best_i;
                changed = true;
            }
        }
        if ( !changed )
            break;
    }
    return value[ c0 ];
}

Rat opt_success_prob( const InteractionSystem& is, StateId c0, Objective objective )
{
    if ( structure_info( is.pts, c0 ).acyclic )
        return acyclic_value( is, c0, objective );
    return opt_success_policy_iteration( is, c0, objective );
}

Rat opt_success_prob( const InteractionSystem& is, Objective objective )
{
    return opt_success_prob( is, is.root(), objective );
}

} // namespace ptsdist
