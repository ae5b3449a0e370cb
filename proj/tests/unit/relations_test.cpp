#include "common.hpp"

#include "ptsdist/errors.hpp"
#include "ptsdist/kernel.hpp"
#include "ptsdist/relations.hpp"

#include <gtest/gtest.h>

using namespace ptsdist;
using namespace ptsdist::testing;

namespace
{

RelationQuery query( RelationKind k, bool equiv, unsigned depth = 2, const TestSuite* suite = nullptr )
{
    RelationQuery q;
    q.kind = k;
    q.equivalence = equiv;
    q.depth = depth;
    q.suite = suite;
    return q;
}

MetricResult measured( Rat value, Rat bound, bool bounded = true, bool exact = true )
{
    MetricResult m;
    m.value = std::move( value );
    m.truncation_bound = std::move( bound );
    m.bounded = bounded;
    m.exact = exact;
    return m;
}

} // namespace

TEST( Relations, NamesRoundTrip )
{
    for ( auto k : { RelationKind::tr_dis, RelationKind::tr_tbt, RelationKind::tr_sup, RelationKind::te_may,
                     RelationKind::te_must, RelationKind::te_mm, RelationKind::te_tbt, RelationKind::te_sup } )
        EXPECT_EQ( parse_relation_kind( to_string( k ) ), k );
    EXPECT_FALSE( parse_relation_kind( "nope" ) );
    EXPECT_TRUE( is_testing( RelationKind::te_mm ) );
    EXPECT_FALSE( is_testing( RelationKind::tr_sup ) );
}

TEST( Relations, TraceEquivalencesOnSpectrum )
{
    const Model m = load( "spectrum.pts" );
    const Joined tu = join( sys( m, "t" ), sys( m, "u" ) );
    for ( auto k : { RelationKind::tr_dis, RelationKind::tr_tbt, RelationKind::tr_sup } )
        EXPECT_TRUE( check_relation( tu.u.pts, tu.s, tu.t, query( k, true ) ).holds );

    const Joined st = join( sys( m, "s" ), sys( m, "t" ) );
    const auto tbt = check_relation( st.u.pts, st.s, st.t, query( RelationKind::tr_tbt, true ) );
    EXPECT_FALSE( tbt.holds );
    EXPECT_EQ( tbt.measured.value, Rat( 1, 2 ) );
    EXPECT_FALSE( tbt.measured.witness.empty() );
    EXPECT_TRUE( check_relation( st.u.pts, st.s, st.t, query( RelationKind::tr_sup, true ) ).holds );
}

TEST( Relations, RelationAgreesWithKernel )
{
    const Model m = load( "spectrum.pts" );
    for ( auto [ a, b ] : { std::pair{ "s", "t" }, std::pair{ "t", "s" }, std::pair{ "t", "u" }, std::pair{ "u", "s" } } )
    {
        const Joined j = join( sys( m, a ), sys( m, b ) );
        for ( auto [ k, ap ] : { std::pair{ RelationKind::tr_dis, TraceApproach::dis },
                                 std::pair{ RelationKind::tr_tbt, TraceApproach::tbt },
                                 std::pair{ RelationKind::tr_sup, TraceApproach::sup } } )
            EXPECT_EQ( check_relation( j.u.pts, j.s, j.t, query( k, false ) ).holds,
                       trace_preorder( j.u.pts, j.s, j.t, ap, SchedulerMode::Class::det, 2 ) )
                    << a << " " << b << " " << to_string( k );
    }
}

TEST( Relations, TestingRelationsNeedASuite )
{
    const Model m = load( "spectrum.pts" ), o = load( "ab.tests" );
    const Joined tu = join( sys( m, "t" ), sys( m, "u" ) );
    EXPECT_THROW( check_relation( tu.u.pts, tu.s, tu.t, query( RelationKind::te_may, false ) ), UsageError );
    TestSuite s;
    s.add( *o.find_test( "o1" ) );
    EXPECT_TRUE( check_relation( tu.u.pts, tu.s, tu.t, query( RelationKind::te_may, false, 2, &s ) ).holds );
    EXPECT_FALSE( check_relation( tu.u.pts, tu.s, tu.t, query( RelationKind::te_must, false, 2, &s ) ).holds );
}

TEST( Robustness, VerdictRules )
{
    EXPECT_EQ( robustness_verdict( measured( Rat( 1, 4 ), 0 ), Rat( 1, 8 ) ), Verdict::fails );
    EXPECT_EQ( robustness_verdict( measured( Rat( 1, 4 ), 0 ), Rat( 1, 4 ) ), Verdict::holds );
    EXPECT_EQ( robustness_verdict( measured( Rat( 1, 8 ), Rat( 1, 8 ) ), Rat( 1, 4 ) ), Verdict::holds );
    EXPECT_EQ( robustness_verdict( measured( Rat( 1, 8 ), Rat( 1, 4 ) ), Rat( 1, 4 ) ), Verdict::inconclusive );
    EXPECT_EQ( robustness_verdict( measured( Rat( 1, 8 ), 0, false ), Rat( 1, 4 ) ), Verdict::inconclusive );
    EXPECT_EQ( robustness_verdict( measured( Rat( 1, 8 ), 0, true, false ), Rat( 1, 4 ) ), Verdict::inconclusive );
    EXPECT_EQ( robustness_verdict( measured( Rat( 1, 8 ), 0, false ), Rat( 1 ) ), Verdict::holds );
}

TEST( Robustness, ViewsPickTheDirection )
{
    const Model m = load( "spectrum.pts" );
    MetricSelector sel;
    TraceMetricSpec spec;
    spec.depth = 2;
    sel.spec = spec;
    const Pts &s = sys( m, "s" ), &t = sys( m, "t" );
    const auto lower = check_robustness( t, *t.root(), s, *s.root(), Rat( 1, 4 ), sel, RobustView::lower );
    EXPECT_EQ( lower.verdict, Verdict::fails );
    EXPECT_EQ( lower.measured.value, Rat( 1, 2 ) );
    const auto upper = check_robustness( t, *t.root(), s, *s.root(), 0, sel, RobustView::upper );
    EXPECT_EQ( upper.verdict, Verdict::holds );
    EXPECT_TRUE( check_robustness( t, *t.root(), s, *s.root(), 1, sel ).holds() );
    // the same block on both sides
    EXPECT_TRUE( check_robustness( s, *s.root(), s, *s.root(), 0, sel ).holds() );
}

TEST( BackwardCompat, ClassicalEquivalencesAgree )
{
    const Model m = parse_model( R"(pts n
  states x y z w nil
  actions a b c
  trans x a -> y
  trans x a -> z
  trans y b -> nil
  trans z c -> nil
  trans w a -> y
  trans w a -> z
  trans w a -> nil
end
pts q
  states x y nil
  actions a b
  trans x a -> y: 1/2, nil: 1/2
  trans y b -> nil
end
pts general
  states x y nil
  actions a
  trans x a -> y: 1/2, nil: 1/2
  trans x a -> nil
end
)" );
    const Pts& n = sys( m, "n" );
    const auto same = check_backward_compat( n, n.state( "x" ), n.state( "w" ), 2 );
    EXPECT_EQ( same.cls, SystemClass::fully_nondeterministic );
    EXPECT_TRUE( same.reference ); // the extra a-move of w adds no new trace
    EXPECT_TRUE( same.consistent() );
    const auto differ = check_backward_compat( n, n.state( "x" ), n.state( "y" ), 2 );
    EXPECT_FALSE( differ.reference );
    EXPECT_TRUE( differ.consistent() );
    const Pts& q = sys( m, "q" );
    const auto fp = check_backward_compat( q, q.state( "x" ), q.state( "y" ), 2 );
    EXPECT_EQ( fp.cls, SystemClass::fully_probabilistic );
    EXPECT_FALSE( fp.reference );
    EXPECT_TRUE( fp.consistent() );
    EXPECT_TRUE( check_backward_compat( q, q.state( "x" ), q.state( "x" ), 2 ).reference );
    const Pts& g = sys( m, "general" );
    EXPECT_THROW( check_backward_compat( g, 0, 0, 2 ), UnsupportedInput );
}
