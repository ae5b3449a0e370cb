#include "ptsdist/resolution.hpp"

#include "ptsdist/errors.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>

namespace ptsdist
{

namespace
{

constexpr std::uint64_t saturated = std::numeric_limits< std::uint64_t >::max();

std::uint64_t sat_add( std::uint64_t a, std::uint64_t b )
{
    return a > saturated - b ? saturated : a + b;
}

std::uint64_t sat_mul( std::uint64_t a, std::uint64_t b )
{
    if ( a == 0 || b == 0 )
        return 0;
    return a > saturated / b ? saturated : a * b;
}

std::uint64_t memo_key( StateId s, unsigned k )
{
    return ( static_cast< std::uint64_t >( s ) << 32 ) | k;
}

class Counter
{
    const Pts& _p;
    bool _maximal;
    std::unordered_map< std::uint64_t, std::uint64_t > _memo;

public:
    Counter( const Pts& p, bool maximal ) : _p( p ), _maximal( maximal ) {}

    std::uint64_t count( StateId s, unsigned k )
    {
        if ( k == 0 || _p.is_deadlock( s ) )
            return 1;
        if ( auto it = _memo.find( memo_key( s, k ) ); it != _memo.end() )
            return it->second;
        std::uint64_t n = _maximal ? 0 : 1;
        for ( auto i : _p.outgoing( s ) )
        {
            std::uint64_t prod = 1;
            for ( const auto& [ c, _ ] : _p.transition( i ).target.entries )
                prod = sat_mul( prod, count( c, k - 1 ) );
            n = sat_add( n, prod );
        }
        _memo[ memo_key( s, k ) ] = n;
        return n;
    }
};

// Odometer step over a product of lists, last position fastest.
bool advance( std::vector< std::size_t >& pos, const std::vector< const std::vector< ResNodePtr >* >& lists )
{
    for ( std::size_t j = lists.size(); j-- > 0; )
    {
        if ( ++pos[ j ] < lists[ j ]->size() )
            return true;
        pos[ j ] = 0;
    }
    return false;
}

class Materializer
{
    const Pts& _p;
    bool _maximal;
    std::unordered_map< std::uint64_t, std::vector< ResNodePtr > > _memo;

public:
    Materializer( const Pts& p, bool maximal ) : _p( p ), _maximal( maximal ) {}

    const std::vector< ResNodePtr >& options( StateId s, unsigned k )
    {
        auto key = memo_key( s, k );
        if ( auto it = _memo.find( key ); it != _memo.end() )
            return it->second;
        std::vector< ResNodePtr > out;
        if ( k == 0 )
        {
            out.push_back( std::make_shared< const ResNode >( ResNode{ s, ResNode::leaf, {} } ) );
        }
        else
        {
            if ( !_maximal || _p.is_deadlock( s ) )
                out.push_back( std::make_shared< const ResNode >( ResNode{ s, ResNode::halt, {} } ) );
            for ( auto i : _p.outgoing( s ) )
            {
                const auto& entries = _p.transition( i ).target.entries;
                std::vector< const std::vector< ResNodePtr >* > lists;
                for ( const auto& [ c, _ ] : entries )
                    lists.push_back( &options( c, k - 1 ) );
                std::vector< std::size_t > pos( lists.size(), 0 );
                do
                {
                    ResNode n{ s, static_cast< int >( i ), {} };
                    for ( std::size_t j = 0; j < lists.size(); ++j )
                        n.children.push_back( ( *lists[ j ] )[ pos[ j ] ] );
                    out.push_back( std::make_shared< const ResNode >( std::move( n ) ) );
                } while ( advance( pos, lists ) );
            }
        }
        return _memo.emplace( key, std::move( out ) ).first->second;
    }
};

void accumulate( const Pts& p, const ResNode& n, Trace& prefix, const Rat& mass, unsigned depth,
                 TraceDistribution& out )
{
    if ( n.choice < 0 || prefix.size() >= depth )
        return;
    const auto& t = p.transition( static_cast< std::size_t >( n.choice ) );
    prefix.push_back( t.label );
    out[ prefix ] += mass;
    for ( std::size_t j = 0; j < n.children.size(); ++j )
        accumulate( p, *n.children[ j ], prefix, mass * t.target.entries[ j ].second, depth, out );
    prefix.pop_back();
}

void accumulate_success( const Pts& p, const ResNode& n, Trace& prefix, const Rat& mass,
                         const std::vector< bool >& success, TraceDistribution& out )
{
    if ( success[ n.state ] )
    {
        out[ prefix ] += mass;
        return;
    }
    if ( n.choice < 0 )
        return;
    const auto& t = p.transition( static_cast< std::size_t >( n.choice ) );
    prefix.push_back( t.label );
    for ( std::size_t j = 0; j < n.children.size(); ++j )
        accumulate_success( p, *n.children[ j ], prefix, mass * t.target.entries[ j ].second, success, out );
    prefix.pop_back();
}

// acc += w * prefix(a, x)
void add_scaled_prefixed( std::map< Trace, Rat >& acc, const Rat& w, ActionId a, const TraceVector& x )
{
    for ( const auto& [ tr, v ] : x )
    {
        Trace t2;
        t2.reserve( tr.size() + 1 );
        t2.push_back( a );
        t2.insert( t2.end(), tr.begin(), tr.end() );
        acc[ t2 ] += w * v;
    }
}

TraceVector to_vector( const std::map< Trace, Rat >& m )
{
    TraceVector v;
    v.reserve( m.size() );
    for ( const auto& [ t, r ] : m )
        if ( !r.is_zero() )
            v.emplace_back( t, r );
    return v;
}

void check_cap( std::size_t n, const Limits& limits, const char* what )
{
    if ( n > limits.max_resolutions )
        throw CapExceeded( std::string( what ) + ": more than " + std::to_string( limits.max_resolutions ) +
                           " distinct trace vectors" );
}

// Cartesian combination: every sum over groups of mass * prefix(label, choice).
struct Group
{
    ActionId label;
    Rat mass;
    const std::vector< TraceVector >* options;
};

void combine( const std::vector< Group >& groups, std::map< Trace, Rat > base, std::set< TraceVector >& out,
              const Limits& limits, const char* what )
{
    std::vector< std::map< Trace, Rat > > partial{ std::move( base ) };
    for ( const auto& g : groups )
    {
        std::set< std::map< Trace, Rat > > next;
        for ( const auto& acc : partial )
            for ( const auto& x : *g.options )
            {
                auto m = acc;
                add_scaled_prefixed( m, g.mass, g.label, x );
                next.insert( std::move( m ) );
                check_cap( next.size(), limits, what );
            }
        partial.assign( next.begin(), next.end() );
    }
    for ( const auto& m : partial )
    {
        out.insert( to_vector( m ) );
        check_cap( out.size(), limits, what );
    }
}

class DetVectors
{
    const Pts& _p;
    const Limits& _limits;
    std::unordered_map< std::uint64_t, std::vector< TraceVector > > _memo;

public:
    DetVectors( const Pts& p, const Limits& limits ) : _p( p ), _limits( limits ) {}

    const std::vector< TraceVector >& get( StateId s, unsigned k )
    {
        auto key = memo_key( s, k );
        if ( auto it = _memo.find( key ); it != _memo.end() )
            return it->second;
        std::set< TraceVector > out;
        out.insert( TraceVector{} ); // halt, leaf or deadlock
        if ( k > 0 )
        {
            for ( auto i : _p.outgoing( s ) )
            {
                const auto& t = _p.transition( i );
                std::vector< Group > groups;
                for ( const auto& [ c, pr ] : t.target.entries )
                    groups.push_back( Group{ t.label, pr, &get( c, k - 1 ) } );
                std::map< Trace, Rat > base{ { Trace{ t.label }, Rat( 1 ) } };
                combine( groups, std::move( base ), out, _limits, "det_trace_vectors" );
            }
        }
        return _memo.emplace( key, std::vector< TraceVector >( out.begin(), out.end() ) ).first->second;
    }
};

// All ways to write n as an ordered sum of m nonnegative integers.
void compositions( unsigned n, std::size_t m, std::vector< unsigned >& cur, std::vector< std::vector< unsigned > >& out )
{
    if ( cur.size() + 1 == m )
    {
        cur.push_back( n );
        out.push_back( cur );
        cur.pop_back();
        return;
    }
    for ( unsigned i = 0; i <= n; ++i )
    {
        cur.push_back( i );
        compositions( n - i, m, cur, out );
        cur.pop_back();
    }
}

class GridVectors
{
    const Pts& _p;
    unsigned _grid;
    const Limits& _limits;
    std::unordered_map< std::uint64_t, std::vector< TraceVector > > _memo;

public:
    GridVectors( const Pts& p, unsigned grid, const Limits& limits ) : _p( p ), _grid( grid ), _limits( limits ) {}

    const std::vector< TraceVector >& get( StateId s, unsigned k )
    {
        auto key = memo_key( s, k );
        if ( auto it = _memo.find( key ); it != _memo.end() )
            return it->second;
        std::set< TraceVector > out;
        const auto& outs = _p.outgoing( s );
        if ( k == 0 || outs.empty() )
        {
            out.insert( TraceVector{} );
        }
        else
        {
            // option 0 is halting, option j > 0 is outs[j-1]
            std::vector< std::vector< unsigned > > weights;
            std::vector< unsigned > cur;
            compositions( _grid, outs.size() + 1, cur, weights );
            for ( const auto& w : weights )
            {
                std::map< Trace, Rat > base;
                // (label, child) -> mass; children reached by the same label share a subtree
                std::map< std::pair< ActionId, StateId >, Rat > mass;
                for ( std::size_t j = 1; j < w.size(); ++j )
                {
                    if ( w[ j ] == 0 )
                        continue;
                    Rat wj( static_cast< long >( w[ j ] ), static_cast< long >( _grid ) );
                    const auto& t = _p.transition( outs[ j - 1 ] );
                    base[ Trace{ t.label } ] += wj;
                    for ( const auto& [ c, pr ] : t.target.entries )
                        mass[ { t.label, c } ] += wj * pr;
                }
                std::vector< Group > groups;
                for ( const auto& [ lc, m ] : mass )
                    groups.push_back( Group{ lc.first, m, &get( lc.second, k - 1 ) } );
                combine( groups, std::move( base ), out, _limits, "grid_trace_vectors" );
            }
        }
        return _memo.emplace( key, std::vector< TraceVector >( out.begin(), out.end() ) ).first->second;
    }
};

} // namespace

std::uint64_t count_det_resolutions( const Pts& p, StateId root, unsigned depth, bool maximal )
{
    Counter c( p, maximal );
    return c.count( root, depth );
}

std::uint64_t enumerate_det_resolutions( const Pts& p, StateId root, unsigned depth, bool maximal,
                                         const std::function< bool( const ResolutionTree& ) >& visit,
                                         const Limits& limits )
{
    auto n = count_det_resolutions( p, root, depth, maximal );
    if ( n > limits.max_resolutions )
        throw CapExceeded( "resolution enumeration: about " +
                           ( n == saturated ? std::string( "2^64" ) : std::to_string( n ) ) +
                           " resolutions exceed the cap of " + std::to_string( limits.max_resolutions ) );
    Materializer m( p, maximal );
    std::uint64_t visited = 0;
    for ( const auto& node : m.options( root, depth ) )
    {
        ++visited;
        if ( !visit( ResolutionTree{ node, depth } ) )
            break;
    }
    return visited;
}

TraceDistribution trace_distribution( const Pts& p, const ResolutionTree& r, unsigned depth )
{
    TraceDistribution out;
    out[ Trace{} ] = Rat( 1 );
    Trace prefix;
    accumulate( p, *r.root, prefix, Rat( 1 ), std::min( depth, r.depth ), out );
    return out;
}

TraceDistribution success_distribution( const Pts& p, const ResolutionTree& r, const std::vector< bool >& success )
{
    TraceDistribution out;
    Trace prefix;
    accumulate_success( p, *r.root, prefix, Rat( 1 ), success, out );
    return out;
}

std::vector< TraceVector > det_trace_vectors( const Pts& p, StateId root, unsigned depth, const Limits& limits )
{
    DetVectors dv( p, limits );
    return dv.get( root, depth );
}

std::vector< TraceVector > grid_trace_vectors( const Pts& p, StateId root, unsigned depth, unsigned grid,
                                               const Limits& limits )
{
    if ( grid == 0 )
        throw UsageError( "grid must be at least 1" );
    GridVectors gv( p, grid, limits );
    return gv.get( root, depth );
}

Rat value_at( const TraceVector& v, const Trace& t )
{
    auto it = std::lower_bound( v.begin(), v.end(), t, []( const auto& e, const Trace& x ) { return e.first < x; } );
    if ( it != v.end() && it->first == t )
        return it->second;
    return Rat( 0 );
}

} // namespace ptsdist
