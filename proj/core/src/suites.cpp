#include "ptsdist/suites.hpp"

#include "ptsdist/compose.hpp"
#include "ptsdist/structure.hpp"

#include <functional>
#include <set>

namespace ptsdist
{

namespace
{

std::string join( const NamedTrace& t, const std::string& sep )
{
    std::string out;
    for ( std::size_t i = 0; i < t.size(); ++i )
        out += ( i ? sep : "" ) + t[ i ];
    return out;
}

// Collapses the states marked in `success` into one success state "top".
// Transitions that become identical are kept once.
std::optional< Npt > merge_success( const Pts& p, const std::vector< bool >& success, const std::string& name )
{
    if ( !p.root() || success.at( *p.root() ) )
        return std::nullopt;
    bool any = false;
    for ( StateId s = 0; s < p.num_states(); ++s )
        any = any || success[ s ];
    if ( !any )
        return std::nullopt;

    auto rename = [ & ]( StateId s ) { return success[ s ] ? std::string( "top" ) : p.state_name( s ); };
    PtsDraft d;
    d.name = name;
    for ( StateId s = 0; s < p.num_states(); ++s )
        if ( !success[ s ] )
            d.state( p.state_name( s ) );
    d.state( "top" );
    for ( const auto& a : p.action_names() )
        d.action( a );
    std::set< std::tuple< std::string, std::string, std::vector< std::pair< std::string, Rat > > > > seen;
    for ( const auto& t : p.transitions() )
    {
        std::map< std::string, Rat > merged;
        for ( const auto& [ x, pr ] : t.target.entries )
            merged[ rename( x ) ] += pr;
        std::vector< std::pair< std::string, Rat > > target( merged.begin(), merged.end() );
        auto key = std::make_tuple( rename( t.source ), p.action_name( t.label ), target );
        if ( !seen.insert( key ).second )
            continue;
        d.trans( std::get< 0 >( key ), std::get< 1 >( key ), std::move( target ) );
    }
    d.init = p.state_name( *p.root() );
    return validate_npt( d, "top" );
}

} // namespace

NamedTrace named( const Pts& p, const Trace& t )
{
    NamedTrace out;
    for ( auto a : t )
        out.push_back( p.action_name( a ) );
    return out;
}

Npt linear_test( const NamedTrace& trace, bool dead_ends, const std::string& name )
{
    PtsDraft d;
    d.name = name.empty() ? ( dead_ends ? "lin*_" : "lin_" ) + join( trace, "." ) : name;
    for ( std::size_t i = 0; i < trace.size(); ++i )
        d.state( "q" + std::to_string( i ) );
    d.state( "top" );
    for ( std::size_t i = 0; i < trace.size(); ++i )
    {
        const std::string next = i + 1 == trace.size() ? std::string( "top" ) : "q" + std::to_string( i + 1 );
        d.trans( "q" + std::to_string( i ), trace[ i ], next );
        if ( dead_ends )
            d.trans( "q" + std::to_string( i ), trace[ i ], "dead" );
    }
    d.init = "q0";
    return validate_npt( d, "top" );
}

TestSuite trace_test_suite( const Pts& p, const std::vector< StateId >& roots, unsigned depth, bool dead_ends )
{
    std::set< Trace > traces;
    for ( auto r : roots )
        for ( const auto& t : realizable_traces( p, r, depth ) )
            traces.insert( t );
    TestSuite out;
    for ( const auto& t : traces )
        out.add( linear_test( named( p, t ), dead_ends ) );
    return out;
}

std::vector< NamedTrace > test_success_traces( const Npt& o, unsigned max_len )
{
    std::set< NamedTrace > out;
    const Pts& p = o.base;
    NamedTrace path;
    std::function< void( StateId ) > walk = [ & ]( StateId s ) {
        if ( s == o.success )
        {
            out.insert( path );
            return;
        }
        if ( path.size() == max_len )
            return;
        for ( auto i : p.outgoing( s ) )
        {
            const auto& t = p.transition( i );
            path.push_back( p.action_name( t.label ) );
            for ( const auto& [ x, _ ] : t.target.entries )
                walk( x );
            path.pop_back();
        }
    };
    walk( o.root() );
    return { out.begin(), out.end() };
}

std::optional< Npt > restrict_test( const Npt& o, const NamedTrace& trace )
{
    if ( trace.empty() )
        return std::nullopt;
    const Npt lin = linear_test( trace, false );
    const auto comp = parallel_compose( o.base, lin.base, { { o.root(), lin.root() } } );
    std::vector< bool > success( comp.pts.num_states(), false );
    for ( StateId c = 0; c < comp.pts.num_states(); ++c )
        success[ c ] = comp.pairs[ c ] == std::make_pair( o.success, lin.success );
    return merge_success( comp.pts, success, o.name() + "|" + join( trace, "." ) );
}

TestSuite restriction_closure( const TestSuite& suite, unsigned max_len )
{
    TestSuite out;
    for ( std::size_t k = 0; k < suite.tests.size(); ++k )
    {
        const auto& o = suite.tests[ k ];
        out.add( o, suite.weight( k ) );
        for ( const auto& tr : test_success_traces( o, max_len ) )
            if ( auto r = restrict_test( o, tr ) )
                out.add( std::move( *r ), suite.weight( k ) );
    }
    return out;
}

std::optional< Npt > compose_test( const Pts& p, StateId x, const Npt& o )
{
    const auto comp = parallel_compose( p, o.base, { { x, o.root() } } );
    std::vector< bool > success( comp.pts.num_states(), false );
    for ( StateId c = 0; c < comp.pts.num_states(); ++c )
        success[ c ] = comp.pairs[ c ].second == o.success;
    return merge_success( comp.pts, success, p.state_name( x ) + "||" + o.name() );
}

Npt weighted_trace_test( const std::vector< std::string >& alphabet, const std::map< NamedTrace, Rat >& weights,
                         const std::string& name )
{
    PtsDraft d;
    d.name = name;
    d.state( "root" ).state( "top" ).state( "dead" );
    for ( const auto& a : alphabet )
        d.action( a );

    auto weight = [ & ]( const NamedTrace& t ) {
        auto it = weights.find( t );
        return it == weights.end() ? Rat( 0 ) : it->second;
    };
    auto has_deeper = [ & ]( const NamedTrace& t ) {
        for ( const auto& [ k, w ] : weights )
            if ( k.size() > t.size() && std::equal( t.begin(), t.end(), k.begin() ) && w.sign() > 0 )
                return true;
        return false;
    };
    // remaining is the probability that the test is still running at beta
    std::function< void( const NamedTrace&, const Rat&, const std::string& ) > build =
            [ & ]( const NamedTrace& beta, const Rat& remaining, const std::string& node ) {
                for ( const auto& a : alphabet )
                {
                    NamedTrace next = beta;
                    next.push_back( a );
                    const Rat w = weight( next );
                    const Rat c = remaining.is_zero() ? Rat( 0 ) : w / remaining;
                    const bool deeper = has_deeper( next ) && c < Rat( 1 );
                    const std::string cont = deeper ? "<" + join( next, "." ) + ">" : "dead";
                    if ( c.is_one() )
                        d.trans( node, a, "top" );
                    else if ( c.is_zero() )
                        d.trans( node, a, cont );
                    else
                        d.trans( node, a, { { "top", c }, { cont, Rat( 1 ) - c } } );
                    if ( deeper )
                        build( next, remaining - w, cont );
                }
            };
    build( {}, Rat( 1 ), "root" );
    d.init = "root";
    return validate_npt( d, "top" );
}

} // namespace ptsdist
