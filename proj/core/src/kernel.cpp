#include "ptsdist/kernel.hpp"

#include "ptsdist/compose.hpp"
#include "ptsdist/errors.hpp"
#include "ptsdist/linear_program.hpp"
#include "ptsdist/resolution.hpp"
#include "ptsdist/structure.hpp"

#include <algorithm>
#include <set>

namespace ptsdist
{

namespace
{

using Dist = std::map< Trace, Rat >;

std::set< Dist > trace_dists( const Pts& p, StateId root, unsigned depth, const Limits& limits )
{
    std::set< Dist > out;
    enumerate_det_resolutions(
            p, root, depth, false,
            [ & ]( const ResolutionTree& r ) {
                auto d = trace_distribution( p, r, depth );
                d.erase( Trace{} );
                out.insert( std::move( d ) );
                return true;
            },
            limits );
    return out;
}

Rat at( const Dist& d, const Trace& t )
{
    auto it = d.find( t );
    return it == d.end() ? Rat( 0 ) : it->second;
}

std::set< Trace > keys( const std::set< Dist >& a, const std::set< Dist >& b )
{
    std::set< Trace > out;
    for ( const auto* side : { &a, &b } )
        for ( const auto& d : *side )
            for ( const auto& [ t, _ ] : d )
                out.insert( t );
    return out;
}

std::set< Rat > values( const std::set< Dist >& ds, const Trace& t )
{
    std::set< Rat > out;
    for ( const auto& d : ds )
        out.insert( at( d, t ) );
    return out;
}

// u is a convex combination of the points in vs (feasibility LP).
bool in_hull( const Dist& u, const std::set< Dist >& vs, const std::set< Trace >& traces )
{
    const std::vector< Dist > pts( vs.begin(), vs.end() );
    LinearProgram lp;
    lp.num_vars = pts.size();
    lp.objective.assign( pts.size(), Rat( 0 ) );
    LinearProgram::Row sum;
    sum.coeffs.assign( pts.size(), Rat( 1 ) );
    sum.sense = LinearProgram::Sense::eq;
    sum.rhs = 1;
    lp.rows.push_back( sum );
    for ( const auto& t : traces )
    {
        LinearProgram::Row row;
        for ( const auto& v : pts )
            row.coeffs.push_back( at( v, t ) );
        row.sense = LinearProgram::Sense::eq;
        row.rhs = at( u, t );
        lp.rows.push_back( std::move( row ) );
    }
    return solve_lp( lp ).status == LpSolution::Status::optimal;
}

// Per-trace comparison of value sets: det needs inclusion, rand inclusion of the
// hulls, sup only compares maxima.
bool per_trace_below( const std::set< Rat >& a, const std::set< Rat >& b, bool det, bool sup_only )
{
    if ( sup_only )
        return *a.rbegin() <= *b.rbegin();
    if ( det )
        return std::includes( b.begin(), b.end(), a.begin(), a.end() );
    return *b.begin() <= *a.begin() && *a.rbegin() <= *b.rbegin();
}

struct Outcomes
{
    std::vector< Rat > totals;       // success probability per resolution
    std::set< Dist > by_trace;       // success probability per trace, per resolution
};

Outcomes outcomes( const InteractionSystem& is, const Limits& limits )
{
    auto info = structure_info( is.pts, is.root() );
    if ( !info.acyclic )
        throw UnsupportedInput( "testing oracle needs acyclic interaction systems" );
    Outcomes out;
    enumerate_det_resolutions(
            is.pts, is.root(), std::max( 1u, *info.depth ), true,
            [ & ]( const ResolutionTree& r ) {
                auto d = success_distribution( is.pts, r, is.success );
                Rat total = 0;
                for ( const auto& [ _, pr ] : d )
                    total += pr;
                out.totals.push_back( total );
                out.by_trace.insert( std::move( d ) );
                return true;
            },
            limits );
    return out;
}

} // namespace

bool trace_preorder( const Pts& p, StateId s, StateId t, TraceApproach approach, SchedulerMode::Class scheduler,
                     unsigned depth, const Limits& limits )
{
    const auto S = trace_dists( p, s, depth, limits );
    const auto T = trace_dists( p, t, depth, limits );
    const auto traces = keys( S, T );
    const bool det = scheduler == SchedulerMode::Class::det;

    if ( approach == TraceApproach::dis )
    {
        for ( const auto& u : S )
            if ( det ? !T.contains( u ) : !in_hull( u, T, traces ) )
                return false;
        return true;
    }
    for ( const auto& tr : traces )
        if ( !per_trace_below( values( S, tr ), values( T, tr ), det, approach == TraceApproach::sup ) )
            return false;
    return true;
}

bool testing_preorder( const Pts& p, StateId s, StateId t, const TestSuite& suite, TestingApproach approach,
                       SchedulerMode::Class scheduler, const Limits& limits )
{
    const bool det = scheduler == SchedulerMode::Class::det;
    for ( const auto& o : suite.tests )
    {
        const auto S = outcomes( build_interaction_system( p, s, o ), limits );
        const auto T = outcomes( build_interaction_system( p, t, o ), limits );
        const auto [ smin, smax ] = std::minmax_element( S.totals.begin(), S.totals.end() );
        const auto [ tmin, tmax ] = std::minmax_element( T.totals.begin(), T.totals.end() );
        switch ( approach )
        {
        case TestingApproach::may:
            if ( *smax > *tmax )
                return false;
            break;
        case TestingApproach::must:
            if ( *smin > *tmin )
                return false;
            break;
        case TestingApproach::mm:
            if ( *smax > *tmax || *smin > *tmin )
                return false;
            break;
        case TestingApproach::tbt:
        case TestingApproach::sup:
            for ( const auto& tr : keys( S.by_trace, T.by_trace ) )
                if ( !per_trace_below( values( S.by_trace, tr ), values( T.by_trace, tr ), det,
                                       approach == TestingApproach::sup ) )
                    return false;
            break;
        }
    }
    return true;
}

} // namespace ptsdist
