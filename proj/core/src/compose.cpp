#include "ptsdist/compose.hpp"

#include <deque>
#include <map>
#include <unordered_map>

namespace ptsdist
{

std::optional< StateId > Composition::find( StateId x, StateId y ) const
{
    for ( StateId i = 0; i < pairs.size(); ++i )
        if ( pairs[ i ] == std::make_pair( x, y ) )
            return i;
    return std::nullopt;
}

Composition parallel_compose( const Pts& p1, const Pts& p2, const std::vector< std::pair< StateId, StateId > >& starts,
                              bool full )
{
    // Union alphabet: p1's labels first, then p2's new ones.
    std::vector< std::string > actions = p1.action_names();
    std::unordered_map< std::string, ActionId > aidx;
    for ( ActionId i = 0; i < actions.size(); ++i )
        aidx[ actions[ i ] ] = i;
    for ( const auto& a : p2.action_names() )
        if ( aidx.emplace( a, static_cast< ActionId >( actions.size() ) ).second )
            actions.push_back( a );
    // p2 label -> p1 label, when shared
    std::vector< std::optional< ActionId > > shared( p2.num_actions() );
    for ( ActionId b = 0; b < p2.num_actions(); ++b )
        shared[ b ] = p1.find_action( p2.action_name( b ) );

    std::vector< std::pair< StateId, StateId > > seeds = starts;
    if ( seeds.empty() && !full && p1.root() && p2.root() )
        seeds.emplace_back( *p1.root(), *p2.root() );
    if ( seeds.empty() )
        full = true;

    Composition c;
    std::map< std::pair< StateId, StateId >, StateId > index;
    std::deque< std::pair< StateId, StateId > > work;
    auto intern = [ & ]( std::pair< StateId, StateId > xy ) {
        auto [ it, inserted ] = index.emplace( xy, static_cast< StateId >( c.pairs.size() ) );
        if ( inserted )
        {
            c.pairs.push_back( xy );
            work.push_back( xy );
        }
        return it->second;
    };
    if ( full )
    {
        for ( StateId x = 0; x < p1.num_states(); ++x )
            for ( StateId y = 0; y < p2.num_states(); ++y )
                intern( { x, y } );
    }
    else
    {
        for ( const auto& xy : seeds )
            intern( xy );
    }

    std::vector< Transition > ts;
    while ( !work.empty() )
    {
        auto [ x, y ] = work.front();
        work.pop_front();
        const StateId src = index.at( { x, y } );
        for ( auto i : p1.outgoing( x ) )
        {
            const auto& t1 = p1.transition( i );
            for ( auto j : p2.outgoing( y ) )
            {
                const auto& t2 = p2.transition( j );
                if ( shared[ t2.label ] != t1.label )
                    continue;
                Transition t{ src, t1.label, {} };
                for ( const auto& [ x1, q1 ] : t1.target.entries )
                    for ( const auto& [ y1, q2 ] : t2.target.entries )
                        t.target.entries.emplace_back( intern( { x1, y1 } ), q1 * q2 );
                ts.push_back( std::move( t ) );
            }
        }
    }

    std::vector< std::string > names;
    names.reserve( c.pairs.size() );
    for ( const auto& [ x, y ] : c.pairs )
        names.push_back( "(" + p1.state_name( x ) + "," + p2.state_name( y ) + ")" );
    std::optional< StateId > root;
    if ( !seeds.empty() )
        root = index.at( seeds.front() );
    c.pts = make_pts( p1.name() + "||" + p2.name(), std::move( names ), std::move( actions ), std::move( ts ), root );
    return c;
}

InteractionSystem build_interaction_system( const Pts& p, StateId s, const Npt& o )
{
    auto comp = parallel_compose( p, o.base, { { s, o.root() } } );
    InteractionSystem is;
    is.success.reserve( comp.pairs.size() );
    for ( const auto& [ x, y ] : comp.pairs )
        is.success.push_back( y == o.success );
    is.configs = std::move( comp.pairs );
    is.pts = std::move( comp.pts );
    return is;
}

} // namespace ptsdist
