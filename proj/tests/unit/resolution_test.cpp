#include "common.hpp"

#include "ptsdist/achievable.hpp"
#include "ptsdist/errors.hpp"
#include "ptsdist/generator.hpp"
#include "ptsdist/optimal.hpp"
#include "ptsdist/resolution.hpp"
#include "ptsdist/structure.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace ptsdist;
using namespace ptsdist::testing;

namespace
{

// Census by direct recursion over the unfolding: halt or pick a transition,
// each target subtree chosen independently.
std::uint64_t census( const Pts& p, StateId s, unsigned depth, bool maximal )
{
    if ( depth == 0 )
        return 1;
    std::uint64_t n = ( maximal && !p.is_deadlock( s ) ) ? 0 : 1;
    for ( auto i : p.outgoing( s ) )
    {
        std::uint64_t prod = 1;
        for ( const auto& [ x, _ ] : p.transition( i ).target.entries )
            prod *= census( p, x, depth - 1, maximal );
        n += prod;
    }
    return n;
}

std::vector< TraceDistribution > all_distributions( const Pts& p, StateId s, unsigned depth, bool maximal )
{
    std::vector< TraceDistribution > out;
    enumerate_det_resolutions( p, s, depth, maximal, [ & ]( const ResolutionTree& r ) {
        out.push_back( trace_distribution( p, r, depth ) );
        return true;
    } );
    return out;
}

} // namespace

TEST( Resolution, BranchingSystemHasNineNonMaximalResolutionsAtDepthTwo )
{
    const Model m = load( "branching.pts" );
    const Pts& t = sys( m, "t" );
    EXPECT_EQ( count_det_resolutions( t, *t.root(), 2, false ), 9u );
    EXPECT_EQ( count_det_resolutions( t, *t.root(), 2, true ), 3u );
}

TEST( Resolution, CountMatchesCensusAndEnumeration )
{
    for ( unsigned trial = 0; trial < 40; ++trial )
    {
        GenParams g;
        g.seed = trial_seed( 11, trial );
        g.roots = 1;
        g.max_transitions = 3;
        const auto gen = generate_random_pts( g );
        const StateId r = gen.roots[ 0 ];
        for ( unsigned d = 1; d <= 3; ++d )
            for ( bool maximal : { false, true } )
            {
                const auto expected = census( gen.pts, r, d, maximal );
                EXPECT_EQ( count_det_resolutions( gen.pts, r, d, maximal ), expected );
                EXPECT_EQ( enumerate_det_resolutions( gen.pts, r, d, maximal, []( const auto& ) { return true; } ),
                           expected );
            }
    }
}

TEST( Resolution, EnumerationStopsEarlyAndRespectsCap )
{
    const Model m = load( "branching.pts" );
    const Pts& t = sys( m, "t" );
    unsigned seen = 0;
    EXPECT_EQ( enumerate_det_resolutions( t, *t.root(), 2, false, [ & ]( const auto& ) { return ++seen < 4; } ), 4u );
    Limits tiny;
    tiny.max_resolutions = 5;
    EXPECT_THROW( enumerate_det_resolutions( t, *t.root(), 2, false, []( const auto& ) { return true; }, tiny ),
                  CapExceeded );
}

TEST( Resolution, TraceDistributionsArePrefixMonotoneSubProbabilities )
{
    for ( unsigned trial = 0; trial < 30; ++trial )
    {
        GenParams g;
        g.seed = trial_seed( 5, trial );
        g.roots = 1;
        const auto gen = generate_random_pts( g );
        for ( const auto& d : all_distributions( gen.pts, gen.roots[ 0 ], 3, false ) )
        {
            EXPECT_EQ( d.at( Trace{} ), Rat( 1 ) );
            std::map< std::size_t, Rat > per_length;
            for ( const auto& [ tr, pr ] : d )
            {
                EXPECT_GT( pr, Rat( 0 ) );
                if ( tr.empty() )
                    continue;
                const Trace prefix( tr.begin(), tr.end() - 1 );
                ASSERT_TRUE( d.contains( prefix ) );
                EXPECT_LE( pr, d.at( prefix ) );
                per_length[ tr.size() ] += pr;
            }
            for ( const auto& [ _, total ] : per_length )
                EXPECT_LE( total, Rat( 1 ) );
        }
    }
}

TEST( Resolution, DetTraceVectorsAreTheDistinctEnumeratedDistributions )
{
    for ( unsigned trial = 0; trial < 30; ++trial )
    {
        GenParams g;
        g.seed = trial_seed( 17, trial );
        g.roots = 1;
        const auto gen = generate_random_pts( g );
        const StateId r = gen.roots[ 0 ];
        std::set< TraceVector > expected;
        for ( auto d : all_distributions( gen.pts, r, 3, false ) )
        {
            d.erase( Trace{} );
            expected.insert( TraceVector( d.begin(), d.end() ) );
        }
        const auto got = det_trace_vectors( gen.pts, r, 3 );
        EXPECT_EQ( std::set< TraceVector >( got.begin(), got.end() ), expected );
        EXPECT_EQ( got.size(), expected.size() );
    }
}

TEST( Resolution, GridVectorsContainDetVectorsAndStayInHull )
{
    const Model m = load( "branching.pts", { { "p", Rat( 1, 2 ) } } );
    const Pts& s = sys( m, "sp" );
    const auto det = det_trace_vectors( s, *s.root(), 2 );
    const auto grid = grid_trace_vectors( s, *s.root(), 2, 2 );
    const std::set< TraceVector > g( grid.begin(), grid.end() );
    for ( const auto& v : det )
        EXPECT_TRUE( g.contains( v ) );
    EXPECT_GT( grid.size(), det.size() );
    for ( const auto& v : grid )
        EXPECT_LE( value_at( v, tr( s, { "a" } ) ), Rat( 1 ) );
}

TEST( Achievable, DetSetEqualsEnumeratedValues )
{
    for ( unsigned trial = 0; trial < 30; ++trial )
    {
        GenParams g;
        g.seed = trial_seed( 23, trial );
        g.roots = 1;
        const auto gen = generate_random_pts( g );
        const StateId r = gen.roots[ 0 ];
        for ( bool maximal : { false, true } )
        {
            const auto dists = all_distributions( gen.pts, r, 3, maximal );
            AchievableSets sets( gen.pts, SchedulerMode::det( maximal ) );
            for ( const auto& alpha : realizable_traces( gen.pts, r, 3 ) )
            {
                std::vector< Rat > values;
                for ( const auto& d : dists )
                    values.push_back( d.contains( alpha ) ? d.at( alpha ) : Rat( 0 ) );
                EXPECT_EQ( sets.get( r, alpha ), AchievableSet::points( values ) ) << "trial " << trial;
                EXPECT_EQ( max_trace_prob( gen.pts, r, alpha ), *std::max_element( values.begin(), values.end() ) );
            }
        }
    }
}

TEST( Achievable, RandomizedNonMaximalSetIsZeroToMax )
{
    const Model m = load( "perturbed.pts" );
    const Pts& t = sys( m, "t" );
    const auto ae = tr( t, { "a", "e" } ), a = tr( t, { "a" } );
    EXPECT_EQ( achievable_set( t, *t.root(), ae, SchedulerMode::rand() ), AchievableSet::interval( 0, Rat( 3, 4 ) ) );
    EXPECT_EQ( achievable_set( t, *t.root(), ae, SchedulerMode::rand( true ) ),
               AchievableSet::interval( 0, Rat( 3, 4 ) ) );
    EXPECT_EQ( achievable_set( t, *t.root(), ae, SchedulerMode::det() ), AchievableSet::points( { 0, Rat( 3, 4 ) } ) );
    EXPECT_EQ( achievable_set( t, *t.root(), a, SchedulerMode::rand() ), AchievableSet::interval( 0, 1 ) );
    EXPECT_EQ( achievable_set( t, *t.root(), a, SchedulerMode::rand( true ) ), AchievableSet::point( 1 ) );
}

TEST( Achievable, SetAlgebraAndHausdorff )
{
    const auto a = AchievableSet( { { 0, Rat( 1, 4 ) }, { Rat( 1, 4 ), Rat( 1, 2 ) }, { 1, 1 } } );
    EXPECT_EQ( a.size(), 2u );
    EXPECT_TRUE( a.contains( Rat( 1, 3 ) ) );
    EXPECT_FALSE( a.contains( Rat( 3, 4 ) ) );
    EXPECT_EQ( a.distance( Rat( 3, 4 ) ), Rat( 1, 4 ) );
    const auto b = AchievableSet::points( { 0, 1 } );
    EXPECT_EQ( hausdorff_one_sided( a, b ), Rat( 1, 2 ) );
    EXPECT_EQ( hausdorff_one_sided( b, a ), Rat( 0 ) );
    EXPECT_EQ( AchievableSet::point( 1 ).plus_scaled( Rat( 1, 2 ), AchievableSet::interval( 0, 1 ) ),
               AchievableSet::interval( 1, Rat( 3, 2 ) ) );
    EXPECT_EQ( b.unite( AchievableSet::interval( 0, 1 ) ), AchievableSet::interval( 0, 1 ) );
}
