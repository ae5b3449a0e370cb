#include "ptsdist/generator.hpp"

#include "ptsdist/errors.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace ptsdist
{

std::string to_string( SystemClass c )
{
    switch ( c )
    {
    case SystemClass::general: return "general";
    case SystemClass::fully_nondeterministic: return "fully-nondeterministic";
    case SystemClass::fully_probabilistic: return "fully-probabilistic";
    }
    return "?";
}

void check_params( const GenParams& params )
{
    if ( params.max_states < 1 || params.max_transitions < 1 || params.max_support < 1 ||
         params.max_denominator < 1 || params.alphabet < 1 || params.roots < 1 )
        throw UsageError( "generator bounds must be at least 1" );
    if ( params.alphabet > 26 )
        throw UsageError( "generator alphabet is limited to 26 actions" );
    if ( params.min_transitions > params.max_transitions )
        throw UsageError( "min_transitions exceeds max_transitions" );
    if ( params.cls == SystemClass::fully_probabilistic && params.min_transitions > 1 )
        throw UsageError( "a fully-probabilistic system has at most one transition per state" );
    if ( params.acyclic && params.min_transitions > 0 )
        throw UsageError( "an acyclic system needs deadlocked states; min_transitions must be 0" );
}

std::uint64_t Rng::uniform( std::uint64_t lo, std::uint64_t hi )
{
    if ( hi < lo )
        throw std::invalid_argument( "empty range" );
    const std::uint64_t span = hi - lo;
    if ( span == std::numeric_limits< std::uint64_t >::max() )
        return _engine();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = std::numeric_limits< std::uint64_t >::max() - std::numeric_limits< std::uint64_t >::max() % range;
    std::uint64_t x;
    do
        x = _engine();
    while ( x >= limit );
    return lo + x % range;
}

std::uint64_t trial_seed( std::uint64_t base, std::uint64_t trial )
{
    std::uint64_t z = base + ( trial + 1 ) * 0x9e3779b97f4a7c15ULL;
    z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ULL;
    z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebULL;
    return z ^ ( z >> 31 );
}

std::vector< std::string > generator_alphabet( unsigned size )
{
    std::vector< std::string > out;
    for ( unsigned i = 0; i < size; ++i )
        out.emplace_back( 1, static_cast< char >( 'a' + i ) );
    return out;
}

namespace
{

struct RawTrans
{
    unsigned source;
    unsigned label;
    std::vector< std::pair< unsigned, Rat > > target; // sorted by state
};

// k distinct elements of `pool`, sorted.
std::vector< unsigned > sample( Rng& rng, std::vector< unsigned > pool, std::size_t k )
{
    for ( std::size_t i = 0; i < k; ++i )
        std::swap( pool[ i ], pool[ rng.uniform( i, pool.size() - 1 ) ] );
    pool.resize( k );
    std::sort( pool.begin(), pool.end() );
    return pool;
}

// Random split of 1 into k positive parts with a common denominator <= max_den.
std::vector< Rat > split( Rng& rng, std::size_t k, unsigned max_den )
{
    if ( k == 1 )
        return { Rat( 1 ) };
    const unsigned d = static_cast< unsigned >( rng.uniform( k, std::max< std::size_t >( k, max_den ) ) );
    std::vector< unsigned > cuts( d - 1 );
    for ( unsigned i = 0; i < d - 1; ++i )
        cuts[ i ] = i + 1;
    cuts = sample( rng, cuts, k - 1 );
    std::vector< Rat > out;
    unsigned prev = 0;
    for ( auto c : cuts )
    {
        out.emplace_back( static_cast< long >( c - prev ), static_cast< long >( d ) );
        prev = c;
    }
    out.emplace_back( static_cast< long >( d - prev ), static_cast< long >( d ) );
    return out;
}

std::vector< std::pair< unsigned, Rat > > random_target( Rng& rng, const GenParams& params,
                                                       const std::vector< unsigned >& candidates )
{
    std::size_t cap = std::min< std::size_t >( { params.max_support, candidates.size(), params.max_denominator } );
    if ( params.cls == SystemClass::fully_nondeterministic )
        cap = 1;
    const std::size_t k = rng.uniform( 1, cap );
    auto targets = sample( rng, candidates, k );
    auto probs = split( rng, k, params.max_denominator );
    std::vector< std::pair< unsigned, Rat > > out;
    for ( std::size_t i = 0; i < k; ++i )
        out.emplace_back( targets[ i ], probs[ i ] );
    return out;
}

bool same( const RawTrans& a, const RawTrans& b )
{
    return a.source == b.source && a.label == b.label && a.target == b.target;
}

void push_unique( std::vector< RawTrans >& ts, RawTrans t )
{
    for ( const auto& u : ts )
        if ( same( u, t ) )
            return;
    ts.push_back( std::move( t ) );
}

std::vector< RawTrans > random_block( Rng& rng, const GenParams& params, unsigned n )
{
    std::vector< RawTrans > out;
    for ( unsigned s = 0; s < n; ++s )
    {
        std::vector< unsigned > candidates;
        for ( unsigned x = params.acyclic ? s + 1 : 0; x < n; ++x )
            candidates.push_back( x );
        if ( candidates.empty() )
            continue;
        const unsigned hi = params.cls == SystemClass::fully_probabilistic ? 1 : params.max_transitions;
        // states 0 and 1 are the usual roots and never deadlock; others do with probability 1/4
        unsigned m = static_cast< unsigned >( rng.uniform( std::max( 1u, std::min( params.min_transitions, hi ) ), hi ) );
        if ( params.min_transitions == 0 && s > 1 && rng.chance( 1, 4 ) )
            m = 0;
        for ( unsigned j = 0; j < m; ++j )
            push_unique( out, RawTrans{ s, static_cast< unsigned >( rng.uniform( 0, params.alphabet - 1 ) ),
                                        random_target( rng, params, candidates ) } );
    }
    return out;
}

// One local change: drop a transition, re-split a distribution or relabel.
void mutate( Rng& rng, const GenParams& params, std::vector< RawTrans >& ts )
{
    if ( ts.empty() )
        return;
    const std::size_t i = rng.uniform( 0, ts.size() - 1 );
    RawTrans t = ts[ i ];
    ts.erase( ts.begin() + static_cast< std::ptrdiff_t >( i ) );
    switch ( rng.uniform( 0, 2 ) )
    {
    case 0: return;
    case 1:
        if ( t.target.size() > 1 )
        {
            auto probs = split( rng, t.target.size(), params.max_denominator );
            for ( std::size_t k = 0; k < probs.size(); ++k )
                t.target[ k ].second = probs[ k ];
        }
        break;
    default: t.label = static_cast< unsigned >( rng.uniform( 0, params.alphabet - 1 ) ); break;
    }
    push_unique( ts, std::move( t ) );
}

} // namespace

GeneratedPts generate_random_pts( const GenParams& params )
{
    check_params( params );
    Rng rng( params.seed );

    enum Kind
    {
        other,
        copy,
        variant
    };
    std::vector< Kind > kinds;
    unsigned copies = 0;
    for ( unsigned r = 1; r < params.roots; ++r )
    {
        auto x = rng.uniform( 0, 5 );
        Kind k = x < 3 ? other : ( x == 3 ? copy : variant );
        if ( k != other && params.max_states / ( copies + 2 ) < 2 )
            k = other;
        if ( k != other )
            ++copies;
        kinds.push_back( k );
    }
    const unsigned cap = std::max( 1u, params.max_states / ( copies + 1 ) );
    const unsigned n = static_cast< unsigned >( rng.uniform( std::min( 2u, cap ), cap ) );
    const auto base = random_block( rng, params, n );

    const auto alphabet = generator_alphabet( params.alphabet );
    PtsDraft d;
    d.name = "gen";
    for ( const auto& a : alphabet )
        d.action( a );
    auto add_block = [ & ]( const std::string& prefix, const std::vector< RawTrans >& ts ) {
        for ( unsigned s = 0; s < n; ++s )
            d.state( prefix + std::to_string( s ) );
        for ( const auto& t : ts )
        {
            std::vector< std::pair< std::string, Rat > > target;
            for ( const auto& [ x, pr ] : t.target )
                target.emplace_back( prefix + std::to_string( x ), pr );
            d.trans( prefix + std::to_string( t.source ), alphabet[ t.label ], std::move( target ) );
        }
    };
    add_block( "s", base );

    std::vector< std::string > root_names{ "s0" };
    unsigned block = 0;
    for ( auto k : kinds )
    {
        if ( k == other )
        {
            const auto x = n < 2 ? 0 : ( rng.chance( 1, 2 ) ? 1 : rng.uniform( 1, n - 1 ) );
            root_names.push_back( "s" + std::to_string( x ) );
            continue;
        }
        auto ts = base;
        if ( k == variant )
            mutate( rng, params, ts );
        const std::string prefix( 1, static_cast< char >( 't' + block++ ) );
        add_block( prefix, ts );
        root_names.push_back( prefix + "0" );
    }
    d.init = root_names.front();

    GeneratedPts out;
    out.pts = validate_pts( d );
    for ( const auto& r : root_names )
        out.roots.push_back( out.pts.state( r ) );
    return out;
}

Npt generate_random_test( const GenParams& params, const std::string& name )
{
    check_params( params );
    Rng rng( params.seed ^ 0x7e57ULL );
    const unsigned n = static_cast< unsigned >( rng.uniform( 1, std::max( 1u, params.max_states - 1 ) ) );
    const auto alphabet = generator_alphabet( params.alphabet );
    const unsigned top = n; // index of the success state

    std::vector< RawTrans > ts;
    for ( unsigned s = 0; s < n; ++s )
    {
        std::vector< unsigned > candidates;
        for ( unsigned x = s + 1; x <= n; ++x )
            candidates.push_back( x );
        const unsigned m = static_cast< unsigned >( rng.uniform( 1, params.max_transitions ) );
        for ( unsigned j = 0; j < m; ++j )
        {
            RawTrans t{ s, static_cast< unsigned >( rng.uniform( 0, params.alphabet - 1 ) ),
                        random_target( rng, params, candidates ) };
            // keep every state reachable: the first move of s may reach s + 1
            if ( j == 0 && std::none_of( t.target.begin(), t.target.end(),
                                         [ & ]( const auto& e ) { return e.first == s + 1; } ) )
            {
                t.target = { { s + 1, Rat( 1 ) } };
            }
            push_unique( ts, std::move( t ) );
        }
    }

    PtsDraft d;
    d.name = name;
    for ( const auto& a : alphabet )
        d.action( a );
    auto state_name = [ & ]( unsigned x ) { return x == top ? std::string( "top" ) : "q" + std::to_string( x ); };
    for ( unsigned s = 0; s <= n; ++s )
        d.state( state_name( s ) );
    for ( const auto& t : ts )
    {
        std::vector< std::pair< std::string, Rat > > target;
        for ( const auto& [ x, pr ] : t.target )
            target.emplace_back( state_name( x ), pr );
        d.trans( state_name( t.source ), alphabet[ t.label ], std::move( target ) );
    }
    d.init = "q0";
    return validate_npt( d, "top" );
}

} // namespace ptsdist
