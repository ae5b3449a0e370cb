#include "record.hpp"

namespace ptsdist::cli
{

namespace
{

Json opt_rat( const std::optional< Rat >& r )
{
    return r ? Json( r->str() ) : Json( nullptr );
}

} // namespace

Json metric_json( const MetricResult& m )
{
    Json j;
    j[ "family" ] = m.family;
    j[ "approach" ] = m.approach;
    j[ "scheduler" ] = m.scheduler;
    j[ "direction" ] = to_string( m.direction );
    j[ "lambda" ] = opt_rat( m.lambda );
    j[ "depth" ] = m.depth ? Json( *m.depth ) : Json( nullptr );
    j[ "value" ] = m.value.str();
    j[ "decimal" ] = m.value.decimal();
    j[ "truncation_bound" ] = m.truncation_bound.str();
    j[ "bounded" ] = m.bounded;
    j[ "exact" ] = m.exact;
    j[ "grid_step" ] = opt_rat( m.grid_step );
    j[ "witness" ] = m.witness;
    return j;
}

Json verdict_json( const RobustnessVerdict& v )
{
    Json j;
    j[ "verdict" ] = to_string( v.verdict );
    j[ "epsilon" ] = v.epsilon.str();
    j[ "view" ] = to_string( v.view );
    j[ "measured" ] = metric_json( v.measured );
    return j;
}

Json relation_json( const RelationOutcome& r, const RelationQuery& q )
{
    Json j;
    j[ "relation" ] = to_string( q.kind );
    j[ "form" ] = q.equivalence ? "equivalence" : "preorder";
    j[ "scheduler" ] = to_string( q.scheduler );
    j[ "holds" ] = r.holds;
    j[ "measured" ] = metric_json( r.measured );
    return j;
}

Json property_json( const PropertyReport& r )
{
    Json j;
    j[ "suite" ] = r.name;
    j[ "status" ] = r.ok() ? "ok" : "failed";
    j[ "expect_failure" ] = r.expect_failure;
    j[ "trials" ] = r.trials;
    j[ "passed" ] = r.passed;
    j[ "skipped" ] = r.skipped;
    Json fails = Json::array();
    for ( const auto& f : r.failures )
    {
        Json x;
        x[ "seed" ] = f.seed;
        x[ "message" ] = f.message;
        x[ "shrunk_message" ] = f.shrunk_message;
        x[ "shrunk_still_fails" ] = f.shrunk_still_fails;
        x[ "counterexample" ] = f.counterexample;
        fails.push_back( std::move( x ) );
    }
    j[ "failures" ] = std::move( fails );
    return j;
}

void print_metric( std::ostream& os, const MetricResult& m )
{
    os << "value=" << m.value.str() << '\n';
    os << "decimal=" << m.value.decimal() << '\n';
    os << "truncation_bound=" << ( m.bounded ? m.truncation_bound.str() : std::string( "unbounded" ) ) << '\n';
    os << "exact=" << ( m.exact ? "true" : "false" ) << '\n';
    if ( m.grid_step )
        os << "grid_step=" << m.grid_step->str() << '\n';
    os << "approach=" << m.family << ' ' << m.approach << '\n';
    os << "scheduler=" << m.scheduler << '\n';
    os << "direction=" << to_string( m.direction ) << '\n';
    if ( m.lambda )
        os << "lambda=" << m.lambda->str() << '\n';
    if ( m.depth )
        os << "depth=" << *m.depth << '\n';
    if ( !m.witness.empty() )
        os << "witness=" << m.witness << '\n';
}

} // namespace ptsdist::cli
