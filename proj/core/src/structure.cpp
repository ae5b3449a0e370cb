#include "ptsdist/structure.hpp"

#include <algorithm>
#include <functional>

namespace ptsdist
{

Classification classify( const Pts& p )
{
    Classification c{ true, true };
    for ( const auto& t : p.transitions() )
        if ( !t.target.is_dirac() )
            c.fully_nondeterministic = false;
    for ( StateId s = 0; s < p.num_states(); ++s )
        if ( p.outgoing( s ).size() > 1 )
            c.fully_probabilistic = false;
    return c;
}

StructureInfo structure_info( const Pts& p, StateId root )
{
    StructureInfo info;
    const auto n = p.num_states();
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector< int > color( n, 0 );
    std::vector< unsigned > height( n, 0 );

    std::function< void( StateId ) > visit = [ & ]( StateId s ) {
        color[ s ] = 1;
        unsigned h = 0;
        for ( auto i : p.outgoing( s ) )
            for ( const auto& [ c, _ ] : p.transition( i ).target.entries )
            {
                if ( color[ c ] == 1 )
                    info.acyclic = false;
                else
                {
                    if ( color[ c ] == 0 )
                        visit( c );
                    h = std::max( h, height[ c ] + 1 );
                }
            }
        height[ s ] = h;
        color[ s ] = 2;
    };
    visit( root );

    for ( StateId s = 0; s < n; ++s )
        if ( color[ s ] == 2 )
            info.reachable.push_back( s );
    if ( info.acyclic )
        info.depth = height[ root ];
    else
    {
        // cycle membership via strongly connected components
        std::vector< int > idx( n, -1 ), low( n, 0 );
        std::vector< bool > on( n, false );
        std::vector< StateId > st;
        int counter = 0;
        std::vector< bool > in_cycle( n, false );
        std::function< void( StateId ) > tarjan = [ & ]( StateId s ) {
            idx[ s ] = low[ s ] = counter++;
            st.push_back( s );
            on[ s ] = true;
            bool self = false;
            for ( auto i : p.outgoing( s ) )
                for ( const auto& [ c, _ ] : p.transition( i ).target.entries )
                {
                    if ( c == s )
                        self = true;
                    if ( idx[ c ] < 0 )
                    {
                        tarjan( c );
                        low[ s ] = std::min( low[ s ], low[ c ] );
                    }
                    else if ( on[ c ] )
                        low[ s ] = std::min( low[ s ], idx[ c ] );
                }
            if ( low[ s ] == idx[ s ] )
            {
                std::vector< StateId > comp;
                StateId w;
                do
                {
                    w = st.back();
                    st.pop_back();
                    on[ w ] = false;
                    comp.push_back( w );
                } while ( w != s );
                if ( comp.size() > 1 || self )
                    for ( auto v : comp )
                        in_cycle[ v ] = true;
            }
        };
        tarjan( root );
        for ( StateId s = 0; s < n; ++s )
            if ( in_cycle[ s ] )
                info.on_cycle.push_back( s );
    }
    return info;
}

std::set< Trace > realizable_traces( const Pts& p, StateId root, unsigned max_len )
{
    std::set< Trace > out;
    // frontier: trace -> set of states reachable by it
    std::vector< std::pair< Trace, std::vector< StateId > > > frontier{ { {}, { root } } };
    for ( unsigned len = 1; len <= max_len && !frontier.empty(); ++len )
    {
        std::vector< std::pair< Trace, std::vector< StateId > > > next;
        for ( const auto& [ tr, states ] : frontier )
        {
            std::vector< std::vector< StateId > > by_label( p.num_actions() );
            for ( auto s : states )
                for ( auto i : p.outgoing( s ) )
                {
                    const auto& t = p.transition( i );
                    for ( const auto& [ c, _ ] : t.target.entries )
                        by_label[ t.label ].push_back( c );
                }
            for ( ActionId a = 0; a < p.num_actions(); ++a )
            {
                auto& succ = by_label[ a ];
                if ( succ.empty() )
                    continue;
                std::sort( succ.begin(), succ.end() );
                succ.erase( std::unique( succ.begin(), succ.end() ), succ.end() );
                Trace t2 = tr;
                t2.push_back( a );
                out.insert( t2 );
                next.emplace_back( std::move( t2 ), std::move( succ ) );
            }
        }
        frontier = std::move( next );
    }
    return out;
}

} // namespace ptsdist
