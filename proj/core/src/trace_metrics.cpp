#include "ptsdist/trace_metrics.hpp"

#include "ptsdist/errors.hpp"
#include "ptsdist/linear_program.hpp"
#include "ptsdist/optimal.hpp"
#include "ptsdist/resolution.hpp"
#include "ptsdist/structure.hpp"

#include <algorithm>
#include <vector>

namespace ptsdist
{

std::string to_string( Direction d )
{
    switch ( d )
    {
    case Direction::left: return "left";
    case Direction::right: return "right";
    case Direction::symmetric: return "symmetric";
    }
    return "?";
}

std::string to_string( TraceApproach a )
{
    switch ( a )
    {
    case TraceApproach::dis: return "dis";
    case TraceApproach::tbt: return "tbt";
    case TraceApproach::sup: return "sup";
    }
    return "?";
}

Rat trace_weight( const Rat& lambda, std::size_t length )
{
    return length == 0 ? Rat( 1 ) : pow( lambda, static_cast< unsigned >( length - 1 ) );
}

void check_spec( const TraceMetricSpec& spec )
{
    if ( spec.lambda.sign() <= 0 || spec.lambda > Rat( 1 ) )
        throw UsageError( "lambda must lie in (0,1]" );
    if ( spec.depth < 1 )
        throw UsageError( "depth must be at least 1" );
    if ( spec.grid )
    {
        if ( *spec.grid < 1 )
            throw UsageError( "grid must be at least 1" );
        if ( spec.approach != TraceApproach::dis || spec.scheduler != SchedulerMode::Class::rand )
            throw UsageError( "--grid only applies to the dis approach with randomized schedulers" );
    }
}

namespace
{

using Dense = std::vector< Rat >;

struct TraceIndex
{
    std::vector< Trace > traces;
    std::vector< Rat > weights;
};

TraceIndex trace_index( const Pts& p, StateId s, StateId t, const TraceMetricSpec& spec )
{
    auto ts = realizable_traces( p, s, spec.depth );
    auto tt = realizable_traces( p, t, spec.depth );
    ts.insert( tt.begin(), tt.end() );
    TraceIndex idx;
    for ( const auto& tr : ts )
    {
        idx.traces.push_back( tr );
        idx.weights.push_back( trace_weight( spec.lambda, tr.size() ) );
    }
    return idx;
}

std::vector< Dense > densify( const std::vector< TraceVector >& vs, const TraceIndex& idx )
{
    std::vector< Dense > out;
    out.reserve( vs.size() );
    for ( const auto& v : vs )
    {
        Dense d( idx.traces.size(), Rat( 0 ) );
        std::size_t j = 0;
        for ( const auto& [ tr, val ] : v )
        {
            while ( j < idx.traces.size() && idx.traces[ j ] < tr )
                ++j;
            if ( j < idx.traces.size() && idx.traces[ j ] == tr )
                d[ j ] = val;
        }
        out.push_back( std::move( d ) );
    }
    return out;
}

// weighted L-infinity distance, stopping once it reaches `cutoff`
Rat wdist( const Dense& u, const Dense& v, const std::vector< Rat >& w, const std::optional< Rat >& cutoff = {} )
{
    Rat best = 0;
    for ( std::size_t j = 0; j < u.size(); ++j )
    {
        if ( u[ j ] == v[ j ] )
            continue;
        Rat d = w[ j ] * abs( u[ j ] - v[ j ] );
        if ( best < d )
        {
            best = d;
            if ( cutoff && *cutoff <= best )
                return best;
        }
    }
    return best;
}

// weighted L-infinity distance <= r
bool within( const Dense& u, const Dense& v, const std::vector< Rat >& w, const Rat& r )
{
    for ( std::size_t j = 0; j < u.size(); ++j )
        if ( u[ j ] != v[ j ] && r < w[ j ] * abs( u[ j ] - v[ j ] ) )
            return false;
    return true;
}

std::string render( const Pts& p, const TraceIndex& idx, const Dense& u )
{
    std::string out = "{";
    bool first = true;
    for ( std::size_t j = 0; j < u.size(); ++j )
    {
        if ( u[ j ].is_zero() )
            continue;
        if ( !first )
            out += ", ";
        first = false;
        out += trace_str( p, idx.traces[ j ] ) + ":" + u[ j ].str();
    }
    return out + "}";
}

// Weighted L-infinity distance from u to the convex hull of vs.
Rat hull_distance( const Dense& u, const std::vector< Dense >& vs, const std::vector< Rat >& w )
{
    const std::size_t n = vs.size();
    LinearProgram lp;
    lp.num_vars = n + 1; // mixing weights, then delta
    lp.objective.assign( n + 1, Rat( 0 ) );
    lp.objective[ n ] = 1;
    LinearProgram::Row sum;
    sum.coeffs.assign( n + 1, Rat( 1 ) );
    sum.coeffs[ n ] = 0;
    sum.sense = LinearProgram::Sense::eq;
    sum.rhs = 1;
    lp.rows.push_back( std::move( sum ) );
    for ( std::size_t j = 0; j < u.size(); ++j )
    {
        bool constant = std::all_of( vs.begin(), vs.end(), [ & ]( const Dense& v ) { return v[ j ] == u[ j ]; } );
        if ( constant )
            continue;
        LinearProgram::Row up, down;
        up.coeffs.resize( n + 1 );
        down.coeffs.resize( n + 1 );
        for ( std::size_t i = 0; i < n; ++i )
        {
            up.coeffs[ i ] = w[ j ] * vs[ i ][ j ];
            down.coeffs[ i ] = -( w[ j ] * vs[ i ][ j ] );
        }
        up.coeffs[ n ] = -1;
        down.coeffs[ n ] = -1;
        up.sense = down.sense = LinearProgram::Sense::le;
        up.rhs = w[ j ] * u[ j ];
        down.rhs = -( w[ j ] * u[ j ] );
        lp.rows.push_back( std::move( up ) );
        lp.rows.push_back( std::move( down ) );
    }
    auto sol = solve_lp( lp );
    if ( sol.status != LpSolution::Status::optimal )
        throw std::logic_error( "hull distance LP not optimal" );
    return sol.value;
}

struct Partial
{
    Rat value;
    std::string witness;
};

Partial dis_det( const std::vector< Dense >& S, const std::vector< Dense >& T, const TraceIndex& idx, const Pts& p )
{
    Partial best{ Rat( 0 ), "" };
    bool have = false;
    for ( const auto& u : S )
    {
        // min over T, abandoned as soon as it cannot beat the current best
        std::optional< Rat > m;
        for ( const auto& v : T )
        {
            Rat d = wdist( u, v, idx.weights, m );
            if ( !m || d < *m )
                m = d;
            if ( *m <= best.value && have )
                break;
        }
        if ( !have || best.value < *m )
        {
            best = Partial{ *m, "resolution " + render( p, idx, u ) };
            have = true;
        }
    }
    return best;
}

// Distance from each s-vertex to t's hull, pruned by the nearest t-vertex.
// Vertices whose LP was skipped are reported with their upper bound flagged.
struct VertexValue
{
    const Dense* u;
    Rat value;
    bool solved;
};

std::vector< VertexValue > vertex_values( const std::vector< Dense >& S, const std::vector< Dense >& T,
                                          const TraceIndex& idx, Rat& best, std::optional< std::size_t >& arg )
{
    std::vector< VertexValue > out;
    for ( std::size_t i = 0; i < S.size(); ++i )
    {
        const auto& u = S[ i ];
        std::optional< Rat > upper;
        for ( const auto& v : T )
        {
            Rat d = wdist( u, v, idx.weights, upper );
            if ( !upper || d < *upper )
                upper = d;
        }
        if ( arg && *upper <= best )
        {
            out.push_back( VertexValue{ &u, *upper, false } );
            continue;
        }
        Rat d = upper->is_zero() ? Rat( 0 ) : hull_distance( u, T, idx.weights );
        out.push_back( VertexValue{ &u, d, true } );
        if ( !arg || best < d )
        {
            best = d;
            arg = i;
        }
    }
    return out;
}

Partial dis_rand( const std::vector< Dense >& S, const std::vector< Dense >& T, const TraceIndex& idx, const Pts& p )
{
    Rat best = 0;
    std::optional< std::size_t > arg;
    vertex_values( S, T, idx, best, arg );
    return Partial{ best, arg ? "resolution " + render( p, idx, S[ *arg ] ) : "" };
}

// Grid variant: the outer sup ranges over grid resolutions of s. The distance
// to t's hull is 1-Lipschitz in the weighted norm, so a grid point within
// `best - d(k)` of an evaluated point k cannot raise the maximum and is skipped.
Partial dis_rand_grid( const std::vector< Dense >& vertices, const std::vector< Dense >& grid_points,
                       const std::vector< Dense >& T, const TraceIndex& idx, const Pts& p )
{
    Rat best = 0;
    std::optional< std::size_t > arg;
    auto known = vertex_values( vertices, T, idx, best, arg );
    Partial result{ best, arg ? "resolution " + render( p, idx, vertices[ *arg ] ) : "" };
    // only exact values may serve as Lipschitz anchors
    known.erase( std::remove_if( known.begin(), known.end(), []( const VertexValue& k ) { return !k.solved; } ),
                 known.end() );
    for ( const auto& u : grid_points )
    {
        // the nearest t-vertex bounds the hull distance from above
        std::optional< Rat > upper;
        for ( const auto& v : T )
        {
            Rat d = wdist( u, v, idx.weights, upper );
            if ( !upper || d < *upper )
                upper = d;
            if ( *upper <= result.value )
                break;
        }
        bool skip = *upper <= result.value;
        for ( std::size_t k = 0; !skip && k < known.size(); ++k )
        {
            Rat slack = result.value - known[ k ].value;
            skip = slack.sign() >= 0 && within( u, *known[ k ].u, idx.weights, slack );
        }
        if ( skip )
            continue;
        Rat d = hull_distance( u, T, idx.weights );
        known.push_back( VertexValue{ &u, d, true } );
        if ( result.value < d )
            result = Partial{ d, "resolution " + render( p, idx, u ) };
    }
    return result;
}

Partial per_trace( const TraceIndex& idx, const Pts& p, const std::function< Rat( const Trace& ) >& term )
{
    Partial best{ Rat( 0 ), "" };
    for ( std::size_t j = 0; j < idx.traces.size(); ++j )
    {
        Rat v = idx.weights[ j ] * term( idx.traces[ j ] );
        if ( best.value < v )
            best = Partial{ v, "trace " + trace_str( p, idx.traces[ j ] ) };
    }
    return best;
}

} // namespace

MetricResult trace_hemimetric( const Pts& p, StateId s, StateId t, const TraceMetricSpec& spec )
{
    check_spec( spec );
    const auto idx = trace_index( p, s, t, spec );
    Partial part{ Rat( 0 ), "" };

    switch ( spec.approach )
    {
    case TraceApproach::dis:
    {
        auto S = densify( det_trace_vectors( p, s, spec.depth, spec.limits ), idx );
        auto T = densify( det_trace_vectors( p, t, spec.depth, spec.limits ), idx );
        if ( spec.scheduler == SchedulerMode::Class::det )
            part = dis_det( S, T, idx, p );
        else if ( !spec.grid )
            part = dis_rand( S, T, idx, p );
        else
        {
            auto G = densify( grid_trace_vectors( p, s, spec.depth, *spec.grid, spec.limits ), idx );
            part = dis_rand_grid( S, G, T, idx, p );
        }
        break;
    }
    case TraceApproach::tbt:
    {
        AchievableSets sets( p, SchedulerMode{ spec.scheduler, false }, nullptr, spec.limits );
        part = per_trace( idx, p, [ & ]( const Trace& a ) {
            return hausdorff_one_sided( sets.get( s, a ), sets.get( t, a ) );
        } );
        break;
    }
    case TraceApproach::sup:
    {
        TraceMax ms( p ), mt( p );
        part = per_trace( idx, p, [ & ]( const Trace& a ) { return monus( ms.get( s, a ), mt.get( t, a ) ); } );
        break;
    }
    }

    MetricResult r;
    r.value = part.value;
    r.witness = part.witness;
    r.family = "trace";
    r.approach = to_string( spec.approach );
    r.scheduler = to_string( spec.scheduler );
    r.lambda = spec.lambda;
    r.depth = spec.depth;
    r.direction = Direction::left;

    auto is = structure_info( p, s );
    auto it = structure_info( p, t );
    bool complete = is.acyclic && it.acyclic && *is.depth <= spec.depth && *it.depth <= spec.depth;
    if ( complete )
        r.truncation_bound = 0;
    else
    {
        r.truncation_bound = pow( spec.lambda, spec.depth );
        r.bounded = spec.lambda < Rat( 1 ) || ( is.acyclic && it.acyclic );
        if ( !r.bounded )
            r.truncation_bound = 1;
    }
    if ( spec.grid )
    {
        r.exact = false;
        r.grid_step = Rat( 1, static_cast< long >( *spec.grid ) );
    }
    return r;
}

MetricResult trace_distance( const Pts& p, StateId s, StateId t, const TraceMetricSpec& spec )
{
    if ( spec.direction == Direction::left )
        return trace_hemimetric( p, s, t, spec );
    if ( spec.direction == Direction::right )
    {
        auto r = trace_hemimetric( p, t, s, spec );
        r.direction = Direction::right;
        return r;
    }
    auto a = trace_hemimetric( p, s, t, spec );
    auto b = trace_hemimetric( p, t, s, spec );
    auto& r = b.value > a.value ? b : a;
    r.truncation_bound = max( a.truncation_bound, b.truncation_bound );
    r.bounded = a.bounded && b.bounded;
    r.direction = Direction::symmetric;
    if ( &r == &b && !b.witness.empty() )
        r.witness = "reverse " + b.witness;
    return r;
}

MetricResult trace_pseudometric( const Pts& p, StateId s, StateId t, TraceMetricSpec spec )
{
    spec.direction = Direction::symmetric;
    return trace_distance( p, s, t, spec );
}

} // namespace ptsdist
