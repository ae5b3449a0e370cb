#include "common.hpp"

#include "ptsdist/compose.hpp"
#include "ptsdist/optimal.hpp"
#include "ptsdist/suites.hpp"

#include <gtest/gtest.h>

using namespace ptsdist;
using namespace ptsdist::testing;

namespace
{

Rat success( const Pts& p, StateId s, const Npt& o, Objective obj = Objective::sup )
{
    return opt_success_prob( build_interaction_system( p, s, o ), obj );
}

const char* const kChain = R"(pts x
  states x0 x1 x2 nil
  actions a b c
  init x0
  trans x0 a -> x1: 1/2, x2: 1/2
  trans x1 b -> nil
  trans x2 c -> nil
end
)";

} // namespace

TEST( Suites, LinearTestSucceedsExactlyOnItsTrace )
{
    const Model m = parse_model( kChain );
    const Pts& x = m.systems.at( 0 );
    EXPECT_EQ( success( x, 0, linear_test( { "a", "b" }, false ) ), Rat( 1, 2 ) );
    EXPECT_EQ( success( x, 0, linear_test( { "a" }, false ) ), Rat( 1 ) );
    EXPECT_EQ( success( x, 0, linear_test( { "b" }, false ) ), Rat( 0 ) );
    const Npt dead = linear_test( { "a", "c" }, true );
    EXPECT_EQ( dead.name(), "lin*_a.c" );
    EXPECT_EQ( success( x, 0, dead ), Rat( 1, 2 ) );
}

TEST( Suites, WeightedTraceTestSumsWeightedTraceProbabilities )
{
    const Model m = parse_model( kChain );
    const Pts& x = m.systems.at( 0 );
    const std::map< NamedTrace, Rat > w{ { { "a" }, Rat( 1, 4 ) }, { { "a", "b" }, Rat( 1, 2 ) },
                                         { { "a", "c" }, Rat( 1, 8 ) } };
    const Npt o = weighted_trace_test( { "a", "b", "c" }, w );
    // 1/4 * 1 + 1/2 * 1/2 + 1/8 * 1/2
    EXPECT_EQ( success( x, 0, o ), Rat( 9, 16 ) );
}

TEST( Suites, TraceSuiteCoversRealizableTraces )
{
    const Model m = parse_model( kChain );
    const Pts& x = m.systems.at( 0 );
    const auto suite = trace_test_suite( x, { 0 }, 2, false );
    EXPECT_EQ( suite.tests.size(), 3u ); // a, ab, ac
    const auto traces = test_success_traces( linear_test( { "a", "b" }, true ), 3 );
    EXPECT_EQ( traces, ( std::vector< NamedTrace >{ { "a", "b" } } ) );
}

TEST( Suites, RestrictionKeepsOnlyOneSuccessTrace )
{
    const Model o = load( "ab.tests" );
    const Npt& o2 = *o.find_test( "o2" );
    const auto traces = test_success_traces( o2, 3 );
    ASSERT_EQ( traces.size(), 2u );
    const auto only_ab = restrict_test( o2, { "a", "b" } );
    ASSERT_TRUE( only_ab );
    EXPECT_EQ( test_success_traces( *only_ab, 3 ), ( std::vector< NamedTrace >{ { "a", "b" } } ) );
    EXPECT_EQ( restriction_closure( TestSuite{ { o2 }, {} }, 3 ).tests.size(), 3u );
}

TEST( Suites, ComposedTestAbsorbsTheProcess )
{
    const Model m = parse_model( kChain );
    const Pts& x = m.systems.at( 0 );
    const auto o = compose_test( x, 0, linear_test( { "a", "b" }, false ) );
    ASSERT_TRUE( o );
    // x || x composed with the test equals x composed with (x || test)
    const auto xx = parallel_compose( x, x, { { 0, 0 } } );
    EXPECT_EQ( success( x, 0, *o ), success( xx.pts, *xx.pts.root(), linear_test( { "a", "b" }, false ) ) );
}
