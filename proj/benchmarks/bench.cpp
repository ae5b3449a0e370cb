#include "ptsdist/generator.hpp"
#include "ptsdist/model_format.hpp"
#include "ptsdist/optimal.hpp"
#include "ptsdist/resolution.hpp"
#include "ptsdist/testing_metrics.hpp"
#include "ptsdist/trace_metrics.hpp"

#include <benchmark/benchmark.h>

using namespace ptsdist;

namespace
{

Model corpus( const std::string& file ) { return load_model( std::string( PTSDIST_CORPUS_DIR ) + "/" + file ); }

struct Pair
{
    DisjointUnion u;
    StateId s, t;
};

Pair pair_of( const Model& m, const char* a, const char* b )
{
    const Pts &x = *m.find_system( a ), &y = *m.find_system( b );
    Pair p{ disjoint_union( { &x, &y } ), 0, 0 };
    p.s = p.u.offsets[ 0 ] + *x.root();
    p.t = p.u.offsets[ 1 ] + *y.root();
    return p;
}

GeneratedPts random_pair( unsigned states, unsigned transitions )
{
    GenParams g;
    g.seed = 2024;
    g.max_states = states;
    g.max_transitions = transitions;
    g.alphabet = 2;
    return generate_random_pts( g );
}

void trace_metric( benchmark::State& state, TraceApproach a, SchedulerMode::Class c )
{
    const auto gen = random_pair( static_cast< unsigned >( state.range( 0 ) ), 3 );
    TraceMetricSpec spec;
    spec.approach = a;
    spec.scheduler = c;
    spec.depth = static_cast< unsigned >( state.range( 1 ) );
    spec.direction = Direction::symmetric;
    for ( auto _ : state )
        benchmark::DoNotOptimize( trace_distance( gen.pts, gen.roots[ 0 ], gen.roots[ 1 ], spec ) );
}

} // namespace

BENCHMARK_CAPTURE( trace_metric, dis_det, TraceApproach::dis, SchedulerMode::Class::det )
        ->ArgsProduct( { { 6, 12 }, { 2, 3 } } );
BENCHMARK_CAPTURE( trace_metric, dis_rand, TraceApproach::dis, SchedulerMode::Class::rand )
        ->ArgsProduct( { { 6, 12 }, { 2, 3 } } );
BENCHMARK_CAPTURE( trace_metric, tbt_det, TraceApproach::tbt, SchedulerMode::Class::det )
        ->ArgsProduct( { { 6, 12 }, { 2, 3, 4 } } );
BENCHMARK_CAPTURE( trace_metric, tbt_rand, TraceApproach::tbt, SchedulerMode::Class::rand )
        ->ArgsProduct( { { 6, 12 }, { 2, 3, 4 } } );
BENCHMARK_CAPTURE( trace_metric, sup_det, TraceApproach::sup, SchedulerMode::Class::det )
        ->ArgsProduct( { { 6, 12 }, { 2, 3, 4 } } );

static void perturbed_dis_rand_grid( benchmark::State& state )
{
    const Model m = corpus( "perturbed.pts" );
    const Pair p = pair_of( m, "s", "t" );
    TraceMetricSpec spec;
    spec.approach = TraceApproach::dis;
    spec.scheduler = SchedulerMode::Class::rand;
    spec.depth = 2;
    spec.direction = Direction::symmetric;
    spec.grid = static_cast< unsigned >( state.range( 0 ) );
    for ( auto _ : state )
        benchmark::DoNotOptimize( trace_distance( p.u.pts, p.s, p.t, spec ) );
}
BENCHMARK( perturbed_dis_rand_grid )->Arg( 2 )->Arg( 4 )->Unit( benchmark::kMillisecond );

static void det_resolution_count( benchmark::State& state )
{
    const auto gen = random_pair( 12, 3 );
    const auto depth = static_cast< unsigned >( state.range( 0 ) );
    for ( auto _ : state )
        benchmark::DoNotOptimize( det_trace_vectors( gen.pts, gen.roots[ 0 ], depth ) );
}
BENCHMARK( det_resolution_count )->DenseRange( 1, 4 );

static void testing_may_must( benchmark::State& state )
{
    const Model m = corpus( "late-choice.pts" ), o = corpus( "biased.tests" );
    const Pair p = pair_of( m, "s", "t" );
    TestSuite suite;
    for ( const auto& t : o.tests )
        suite.add( t );
    TestingMetricSpec spec;
    spec.approach = state.range( 0 ) ? TestingApproach::tbt : TestingApproach::mm;
    spec.direction = Direction::symmetric;
    for ( auto _ : state )
        benchmark::DoNotOptimize( testing_distance( p.u.pts, p.s, p.t, suite, spec ) );
}
BENCHMARK( testing_may_must )->Arg( 0 )->Arg( 1 );

static void policy_iteration_cyclic( benchmark::State& state )
{
    GenParams g;
    g.seed = 5;
    g.max_states = static_cast< unsigned >( state.range( 0 ) );
    g.max_transitions = 3;
    g.acyclic = false;
    g.roots = 1;
    const auto gen = generate_random_pts( g );
    const Npt o = generate_random_test( g );
    const auto is = build_interaction_system( gen.pts, gen.roots[ 0 ], o );
    for ( auto _ : state )
        benchmark::DoNotOptimize( opt_success_prob( is, Objective::sup ) );
}
BENCHMARK( policy_iteration_cyclic )->Arg( 6 )->Arg( 12 );
BENCHMARK_MAIN();
