#include "common.hpp"

#include "ptsdist/errors.hpp"
#include "ptsdist/generator.hpp"
#include "ptsdist/resolution.hpp"
#include "ptsdist/structure.hpp"
#include "ptsdist/trace_metrics.hpp"

#include <gtest/gtest.h>

using namespace ptsdist;
using namespace ptsdist::testing;

namespace
{

TraceMetricSpec spec( TraceApproach a, SchedulerMode::Class c, Rat lambda, unsigned depth,
                      Direction d = Direction::left )
{
    TraceMetricSpec s;
    s.approach = a;
    s.scheduler = c;
    s.lambda = std::move( lambda );
    s.depth = depth;
    s.direction = d;
    return s;
}

constexpr auto det = SchedulerMode::Class::det;
constexpr auto rnd = SchedulerMode::Class::rand;

Rat h( const Joined& j, TraceApproach a, SchedulerMode::Class c, const Rat& lambda, unsigned depth,
       Direction d = Direction::left )
{
    return trace_distance( j.u.pts, j.s, j.t, spec( a, c, lambda, depth, d ) ).value;
}

std::vector< TraceDistribution > dists( const Pts& p, StateId s, unsigned depth )
{
    std::vector< TraceDistribution > out;
    enumerate_det_resolutions( p, s, depth, false, [ & ]( const ResolutionTree& r ) {
        out.push_back( trace_distribution( p, r, depth ) );
        return true;
    } );
    return out;
}

Rat at( const TraceDistribution& d, const Trace& t ) { return d.contains( t ) ? d.at( t ) : Rat( 0 ); }

// sup-inf-sup over enumerated deterministic resolutions.
Rat brute_dis( const Pts& p, StateId s, StateId t, const Rat& lambda, unsigned depth )
{
    std::set< Trace > traces = realizable_traces( p, s, depth );
    for ( const auto& x : realizable_traces( p, t, depth ) )
        traces.insert( x );
    Rat best = 0;
    const auto dt = dists( p, t, depth );
    for ( const auto& ds : dists( p, s, depth ) )
    {
        std::optional< Rat > inner;
        for ( const auto& d : dt )
        {
            Rat worst = 0;
            for ( const auto& x : traces )
                worst = max( worst, trace_weight( lambda, x.size() ) * abs( at( ds, x ) - at( d, x ) ) );
            inner = inner ? min( *inner, worst ) : worst;
        }
        best = max( best, *inner );
    }
    return best;
}

// max over traces of the one-sided Hausdorff distance between enumerated value sets.
Rat brute_tbt( const Pts& p, StateId s, StateId t, const Rat& lambda, unsigned depth )
{
    std::set< Trace > traces = realizable_traces( p, s, depth );
    for ( const auto& x : realizable_traces( p, t, depth ) )
        traces.insert( x );
    const auto ds = dists( p, s, depth ), dt = dists( p, t, depth );
    Rat best = 0;
    for ( const auto& x : traces )
        for ( const auto& a : ds )
        {
            std::optional< Rat > inner;
            for ( const auto& b : dt )
                inner = inner ? min( *inner, abs( at( a, x ) - at( b, x ) ) ) : abs( at( a, x ) - at( b, x ) );
            best = max( best, trace_weight( lambda, x.size() ) * *inner );
        }
    return best;
}

} // namespace

class BranchingExample : public ::testing::TestWithParam< std::tuple< const char*, const char* > >
{
};

TEST_P( BranchingExample, ClosedFormsHold )
{
    const Rat p = R( std::get< 0 >( GetParam() ) );
    const Rat lambda = R( std::get< 1 >( GetParam() ) );
    const Model m = load( "branching.pts", { { "p", p } } );
    const Joined ts = join( sys( m, "t" ), sys( m, "sp" ) );
    const Rat half( 1, 2 );
    const Rat near = min( min( p, abs( half - p ) ), 1 - p );

    EXPECT_EQ( h( ts, TraceApproach::dis, det, lambda, 2 ), lambda * half );
    EXPECT_EQ( h( ts, TraceApproach::dis, det, lambda, 2, Direction::right ), lambda * near );
    EXPECT_EQ( h( ts, TraceApproach::tbt, det, lambda, 2 ), lambda * abs( half - p ) );
    EXPECT_EQ( h( ts, TraceApproach::tbt, det, lambda, 2, Direction::right ), lambda * near );
    EXPECT_EQ( h( ts, TraceApproach::dis, rnd, lambda, 2, Direction::symmetric ), Rat( 0 ) );
}

INSTANTIATE_TEST_SUITE_P( Grid, BranchingExample,
                          ::testing::Combine( ::testing::Values( "0", "1/10", "1/4", "1/2", "3/4", "9/10", "1" ),
                                              ::testing::Values( "1", "1/2" ) ) );

TEST( TraceMetrics, PerturbedPair )
{
    for ( const auto& [ e1, e2 ] : { std::pair{ "0", "0" }, std::pair{ "1/8", "1/4" } } )
    {
        const Model m = load( "perturbed.pts", { { "e1", R( e1 ) }, { "e2", R( e2 ) } } );
        const Joined j = join( sys( m, "s" ), sys( m, "t" ) );
        const Rat eps = max( R( e1 ), R( e2 ) );
        for ( const Rat lambda : { Rat( 1 ), Rat( 1, 2 ) } )
        {
            EXPECT_EQ( h( j, TraceApproach::tbt, det, lambda, 2, Direction::symmetric ), lambda * eps );
            EXPECT_EQ( h( j, TraceApproach::tbt, rnd, lambda, 2, Direction::symmetric ), lambda * eps );
            EXPECT_EQ( h( j, TraceApproach::dis, det, lambda, 2, Direction::symmetric ), lambda / 2 );
        }
    }
}

// Independent float LP oracle: tests/oracles/hull_distance.py gives 0.35 and 0.25.
TEST( TraceMetrics, PerturbedRandomizedDistributionDistance )
{
    const Model m = load( "perturbed.pts" );
    const Joined j = join( sys( m, "s" ), sys( m, "t" ) );
    EXPECT_EQ( h( j, TraceApproach::dis, rnd, 1, 2, Direction::left ), Rat( 7, 20 ) );
    EXPECT_EQ( h( j, TraceApproach::dis, rnd, 1, 2, Direction::right ), Rat( 1, 4 ) );

    auto grid = spec( TraceApproach::dis, rnd, 1, 2, Direction::symmetric );
    grid.grid = 8;
    const auto r = trace_distance( j.u.pts, j.s, j.t, grid );
    EXPECT_FALSE( r.exact );
    EXPECT_EQ( r.grid_step, Rat( 1, 8 ) );
    EXPECT_LE( r.value, Rat( 7, 20 ) );
    EXPECT_GE( r.value, Rat( 7, 20 ) - Rat( 1, 8 ) );
}

TEST( TraceMetrics, SpectrumSeparations )
{
    const Model m = load( "spectrum.pts" );
    const Joined st = join( sys( m, "s" ), sys( m, "t" ) );
    EXPECT_EQ( h( st, TraceApproach::tbt, det, 1, 2, Direction::symmetric ), Rat( 1, 2 ) );
    EXPECT_EQ( h( st, TraceApproach::tbt, det, Rat( 1, 2 ), 2, Direction::symmetric ), Rat( 1, 4 ) );
    EXPECT_EQ( h( st, TraceApproach::sup, det, 1, 2, Direction::symmetric ), Rat( 0 ) );
    const Joined tu = join( sys( m, "t" ), sys( m, "u" ) );
    for ( auto a : { TraceApproach::dis, TraceApproach::tbt, TraceApproach::sup } )
        for ( auto c : { det, rnd } )
            EXPECT_EQ( h( tu, a, c, 1, 2, Direction::symmetric ), Rat( 0 ) );
}

TEST( TraceMetrics, DetValuesMatchBruteForce )
{
    for ( unsigned trial = 0; trial < 40; ++trial )
    {
        GenParams g;
        g.seed = trial_seed( 41, trial );
        const auto gen = generate_random_pts( g );
        const StateId s = gen.roots[ 0 ], t = gen.roots[ 1 ];
        const Rat lambda = trial % 2 ? Rat( 1, 2 ) : Rat( 1 );
        EXPECT_EQ( trace_hemimetric( gen.pts, s, t, spec( TraceApproach::dis, det, lambda, 3 ) ).value,
                   brute_dis( gen.pts, s, t, lambda, 3 ) )
                << "trial " << trial;
        EXPECT_EQ( trace_hemimetric( gen.pts, s, t, spec( TraceApproach::tbt, det, lambda, 3 ) ).value,
                   brute_tbt( gen.pts, s, t, lambda, 3 ) )
                << "trial " << trial;
    }
}

TEST( TraceMetrics, TruncationBound )
{
    const Model m = load( "retry.pts" );
    const Joined j = join( sys( m, "lossy" ), sys( m, "reliable" ) );
    const auto r = trace_distance( j.u.pts, j.s, j.t, spec( TraceApproach::tbt, det, Rat( 1, 2 ), 3 ) );
    EXPECT_TRUE( r.bounded );
    EXPECT_EQ( r.truncation_bound, Rat( 1, 8 ) );
    const auto u = trace_distance( j.u.pts, j.s, j.t, spec( TraceApproach::tbt, det, 1, 3 ) );
    EXPECT_FALSE( u.bounded );

    const Model a = load( "spectrum.pts" );
    const Joined st = join( sys( a, "s" ), sys( a, "t" ) );
    EXPECT_EQ( trace_distance( st.u.pts, st.s, st.t, spec( TraceApproach::tbt, det, 1, 2 ) ).truncation_bound,
               Rat( 0 ) );
    EXPECT_EQ( trace_distance( st.u.pts, st.s, st.t, spec( TraceApproach::tbt, det, Rat( 1, 2 ), 1 ) )
                       .truncation_bound,
               Rat( 1, 2 ) );
}

TEST( TraceMetrics, RejectsBadSpecs )
{
    const Model m = load( "spectrum.pts" );
    const Joined st = join( sys( m, "s" ), sys( m, "t" ) );
    EXPECT_THROW( trace_distance( st.u.pts, st.s, st.t, spec( TraceApproach::tbt, det, 0, 2 ) ), UsageError );
    EXPECT_THROW( trace_distance( st.u.pts, st.s, st.t, spec( TraceApproach::tbt, det, 2, 2 ) ), UsageError );
    EXPECT_THROW( trace_distance( st.u.pts, st.s, st.t, spec( TraceApproach::tbt, det, 1, 0 ) ), UsageError );
    auto g = spec( TraceApproach::tbt, det, 1, 2 );
    g.grid = 4;
    EXPECT_THROW( trace_distance( st.u.pts, st.s, st.t, g ), UsageError );
}

TEST( TraceMetrics, SymmetricIsMaxOfDirections )
{
    const Model m = load( "branching.pts" );
    const Joined j = join( sys( m, "t" ), sys( m, "sp" ) );
    for ( auto a : { TraceApproach::dis, TraceApproach::tbt, TraceApproach::sup } )
        EXPECT_EQ( h( j, a, det, 1, 2, Direction::symmetric ),
                   max( h( j, a, det, 1, 2, Direction::left ), h( j, a, det, 1, 2, Direction::right ) ) );
}
