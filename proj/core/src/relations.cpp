#include "ptsdist/relations.hpp"

#include "ptsdist/errors.hpp"
#include "ptsdist/structure.hpp"

#include <functional>
#include <map>

namespace ptsdist
{

namespace
{

constexpr std::pair< RelationKind, const char* > kind_names[] = {
        { RelationKind::tr_dis, "tr-dis" },   { RelationKind::tr_tbt, "tr-tbt" },  { RelationKind::tr_sup, "tr-sup" },
        { RelationKind::te_may, "te-may" },   { RelationKind::te_must, "te-must" }, { RelationKind::te_mm, "te-mm" },
        { RelationKind::te_tbt, "te-tbt" },   { RelationKind::te_sup, "te-sup" },
};

TraceApproach trace_approach( RelationKind k )
{
    switch ( k )
    {
    case RelationKind::tr_dis: return TraceApproach::dis;
    case RelationKind::tr_tbt: return TraceApproach::tbt;
    default: return TraceApproach::sup;
    }
}

TestingApproach testing_approach( RelationKind k )
{
    switch ( k )
    {
    case RelationKind::te_may: return TestingApproach::may;
    case RelationKind::te_must: return TestingApproach::must;
    case RelationKind::te_mm: return TestingApproach::mm;
    case RelationKind::te_tbt: return TestingApproach::tbt;
    default: return TestingApproach::sup;
    }
}

} // namespace

std::string to_string( RelationKind k )
{
    for ( const auto& [ kind, name ] : kind_names )
        if ( kind == k )
            return name;
    return "?";
}

std::optional< RelationKind > parse_relation_kind( const std::string& name )
{
    for ( const auto& [ kind, n ] : kind_names )
        if ( name == n )
            return kind;
    return std::nullopt;
}

bool is_testing( RelationKind k )
{
    return k != RelationKind::tr_dis && k != RelationKind::tr_tbt && k != RelationKind::tr_sup;
}

RelationOutcome check_relation( const Pts& p, StateId s, StateId t, const RelationQuery& q )
{
    const Direction dir = q.equivalence ? Direction::symmetric : Direction::left;
    RelationOutcome out;
    if ( is_testing( q.kind ) )
    {
        if ( !q.suite )
            throw UsageError( "testing relations need a test suite" );
        TestingMetricSpec spec;
        spec.approach = testing_approach( q.kind );
        spec.scheduler = q.scheduler;
        spec.direction = dir;
        spec.limits = q.limits;
        out.measured = testing_distance( p, s, t, *q.suite, spec );
    }
    else
    {
        TraceMetricSpec spec;
        spec.approach = trace_approach( q.kind );
        spec.scheduler = q.scheduler;
        spec.depth = q.depth;
        spec.direction = dir;
        spec.limits = q.limits;
        out.measured = trace_distance( p, s, t, spec );
    }
    out.holds = out.measured.value.is_zero();
    return out;
}

MetricResult measure( const Pts& p, StateId s, StateId t, const MetricSelector& sel )
{
    if ( const auto* tr = std::get_if< TraceMetricSpec >( &sel.spec ) )
        return trace_distance( p, s, t, *tr );
    if ( !sel.suite )
        throw UsageError( "testing distances need a test suite" );
    return testing_distance( p, s, t, *sel.suite, std::get< TestingMetricSpec >( sel.spec ) );
}

std::string to_string( RobustView v )
{
    return v == RobustView::lower ? "lower" : "upper";
}

std::string to_string( Verdict v )
{
    switch ( v )
    {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict robustness_verdict( const MetricResult& m, const Rat& epsilon )
{
    if ( m.value > epsilon )
        return Verdict::fails;
    // Distances never exceed 1. Approximate values carry no proven upper bound.
    Rat upper = 1;
    if ( m.exact && m.bounded )
        upper = min( Rat( 1 ), m.value + m.truncation_bound );
    return upper <= epsilon ? Verdict::holds : Verdict::inconclusive;
}

RobustnessVerdict check_robustness( const Pts& spec, StateId spec_root, const Pts& impl, StateId impl_root,
                                    const Rat& epsilon, MetricSelector sel, RobustView view )
{
    if ( epsilon.sign() < 0 )
        throw UsageError( "epsilon must be nonnegative" );
    std::visit( []( auto& s ) { s.direction = Direction::left; }, sel.spec );
    const auto u = disjoint_union( { &spec, &impl }, "robustness" );
    const StateId a = u.offsets[ 0 ] + spec_root;
    const StateId b = u.offsets[ 1 ] + impl_root;

    RobustnessVerdict out;
    out.epsilon = epsilon;
    out.view = view;
    out.measured = view == RobustView::lower ? measure( u.pts, a, b, sel ) : measure( u.pts, b, a, sel );
    out.verdict = robustness_verdict( out.measured, epsilon );
    return out;
}

BackwardCompatReport check_backward_compat( const Pts& p, StateId s, StateId t, unsigned depth )
{
    const auto c = classify( p );
    if ( c.general() )
        throw UnsupportedInput( "backward compatibility needs a fully nondeterministic or fully probabilistic system" );

    BackwardCompatReport r;
    if ( c.fully_nondeterministic )
    {
        r.cls = SystemClass::fully_nondeterministic;
        r.reference = realizable_traces( p, s, depth ) == realizable_traces( p, t, depth );
    }
    else
    {
        r.cls = SystemClass::fully_probabilistic;
        // Probability of performing each trace under the unique maximal resolution.
        std::function< void( StateId, const Rat&, Trace&, std::map< Trace, Rat >& ) > walk =
                [ & ]( StateId x, const Rat& mass, Trace& prefix, std::map< Trace, Rat >& out ) {
                    if ( prefix.size() == depth || p.outgoing( x ).empty() )
                        return;
                    const auto& tr = p.transition( p.outgoing( x ).front() );
                    prefix.push_back( tr.label );
                    for ( const auto& [ y, pr ] : tr.target.entries )
                    {
                        out[ prefix ] += mass * pr;
                        walk( y, mass * pr, prefix, out );
                    }
                    prefix.pop_back();
                };
        std::map< Trace, Rat > ps, pt;
        Trace scratch;
        walk( s, Rat( 1 ), scratch, ps );
        walk( t, Rat( 1 ), scratch, pt );
        r.reference = ps == pt;
    }

    RelationQuery q;
    q.kind = RelationKind::tr_sup;
    q.equivalence = true;
    q.depth = depth;
    q.scheduler = SchedulerMode::Class::det;
    r.sup_det = check_relation( p, s, t, q ).holds;
    q.scheduler = SchedulerMode::Class::rand;
    r.sup_rand = check_relation( p, s, t, q ).holds;
    return r;
}

} // namespace ptsdist
