#include "ptsdist/testing_metrics.hpp"

#include "ptsdist/errors.hpp"
#include "ptsdist/optimal.hpp"
#include "ptsdist/structure.hpp"
#include "ptsdist/trace_metrics.hpp"

#include <set>

namespace ptsdist
{

void TestSuite::add( Npt o, Rat w )
{
    if ( omega.empty() && w != Rat( 1 ) )
        omega.assign( tests.size(), Rat( 1 ) );
    const bool weighted = !omega.empty() || w != Rat( 1 );
    tests.push_back( std::move( o ) );
    if ( weighted )
        omega.push_back( std::move( w ) );
}

std::vector< Rat > depth_discount( const TestSuite& suite, const Rat& lambda )
{
    std::vector< Rat > out;
    for ( const auto& o : suite.tests )
    {
        auto info = structure_info( o.base, o.root() );
        if ( !info.acyclic )
            throw UnsupportedInput( "test '" + o.name() + "' is cyclic; its depth is unbounded" );
        out.push_back( pow( lambda, *info.depth ) );
    }
    return out;
}

std::string to_string( TestingApproach a )
{
    switch ( a )
    {
    case TestingApproach::may: return "may";
    case TestingApproach::must: return "must";
    case TestingApproach::mm: return "mm";
    case TestingApproach::tbt: return "tbt";
    case TestingApproach::sup: return "sup";
    }
    return "?";
}

void check_spec( const TestingMetricSpec& spec, const TestSuite& suite )
{
    if ( spec.lambda.sign() <= 0 || spec.lambda > Rat( 1 ) )
        throw UsageError( "lambda must lie in (0,1]" );
    if ( spec.depth && *spec.depth < 1 )
        throw UsageError( "depth must be at least 1" );
    if ( !suite.omega.empty() && suite.omega.size() != suite.tests.size() )
        throw UsageError( "omega must give one weight per test" );
    for ( const auto& w : suite.omega )
        if ( w.sign() <= 0 || w > Rat( 1 ) )
            throw UsageError( "omega weights must lie in (0,1]" );
}

namespace
{

struct Partial
{
    Rat value;
    std::string witness;
};

void improve( Partial& best, const Rat& v, const std::string& witness )
{
    if ( best.value < v )
        best = Partial{ v, witness };
}

// Traces that lead to success in the interaction system, up to max_len.
std::set< Trace > success_traces( const InteractionSystem& is, unsigned max_len )
{
    std::set< Trace > out;
    std::vector< std::pair< Trace, std::vector< StateId > > > frontier{ { {}, { is.root() } } };
    for ( unsigned len = 1; len <= max_len && !frontier.empty(); ++len )
    {
        std::vector< std::pair< Trace, std::vector< StateId > > > next;
        for ( const auto& [ tr, states ] : frontier )
        {
            std::vector< std::set< StateId > > by_label( is.pts.num_actions() );
            for ( auto s : states )
                for ( auto i : is.pts.outgoing( s ) )
                {
                    const auto& t = is.pts.transition( i );
                    for ( const auto& [ c, _ ] : t.target.entries )
                        by_label[ t.label ].insert( c );
                }
            for ( ActionId a = 0; a < by_label.size(); ++a )
            {
                if ( by_label[ a ].empty() )
                    continue;
                Trace t2 = tr;
                t2.push_back( a );
                std::vector< StateId > succ( by_label[ a ].begin(), by_label[ a ].end() );
                for ( auto c : succ )
                    if ( is.success[ c ] )
                    {
                        out.insert( t2 );
                        break;
                    }
                next.emplace_back( std::move( t2 ), std::move( succ ) );
            }
        }
        frontier = std::move( next );
    }
    return out;
}

} // namespace

MetricResult testing_hemimetric( const Pts& p, StateId s, StateId t, const TestSuite& suite,
                                 const TestingMetricSpec& spec )
{
    check_spec( spec, suite );
    Partial best{ Rat( 0 ), "" };
    bool truncated = false;

    for ( std::size_t k = 0; k < suite.tests.size(); ++k )
    {
        const auto& o = suite.tests[ k ];
        const auto is_s = build_interaction_system( p, s, o );
        const auto is_t = build_interaction_system( p, t, o );
        const std::string tag = "test " + o.name();

        switch ( spec.approach )
        {
        case TestingApproach::may:
        case TestingApproach::must:
        case TestingApproach::mm:
        {
            const Rat w = suite.weight( k );
            if ( spec.approach != TestingApproach::must )
                improve( best,
                         w * monus( opt_success_prob( is_s, Objective::sup ), opt_success_prob( is_t, Objective::sup ) ),
                         tag + " (may)" );
            if ( spec.approach != TestingApproach::may )
                improve( best,
                         w * monus( opt_success_prob( is_s, Objective::inf ), opt_success_prob( is_t, Objective::inf ) ),
                         tag + " (must)" );
            break;
        }
        case TestingApproach::tbt:
        case TestingApproach::sup:
        {
            auto info_s = structure_info( is_s.pts, is_s.root() );
            auto info_t = structure_info( is_t.pts, is_t.root() );
            if ( !info_s.acyclic || !info_t.acyclic )
                throw UnsupportedInput( "interaction with " + tag +
                                        " is cyclic; trace-indexed testing needs acyclic interaction systems" );
            const unsigned full = std::max( *info_s.depth, *info_t.depth );
            const unsigned depth = spec.depth ? std::min( *spec.depth, full ) : full;
            if ( spec.depth && *spec.depth < full )
                truncated = true;

            // Both systems are products of p and o, so they share one alphabet numbering.
            std::set< Trace > traces = success_traces( is_s, depth );
            for ( const auto& tr : success_traces( is_t, depth ) )
                traces.insert( tr );

            if ( spec.approach == TestingApproach::tbt )
            {
                AchievableSets as( is_s.pts, SchedulerMode{ spec.scheduler, true }, &is_s.success, spec.limits );
                AchievableSets at( is_t.pts, SchedulerMode{ spec.scheduler, true }, &is_t.success, spec.limits );
                for ( const auto& tr : traces )
                    improve( best,
                             trace_weight( spec.lambda, tr.size() ) *
                                     hausdorff_one_sided( as.get( is_s.root(), tr ), at.get( is_t.root(), tr ) ),
                             tag + ", trace " + trace_str( is_s.pts, tr ) );
            }
            else
            {
                TraceMax ms( is_s.pts, &is_s.success ), mt( is_t.pts, &is_t.success );
                for ( const auto& tr : traces )
                    improve( best,
                             trace_weight( spec.lambda, tr.size() ) *
                                     monus( ms.get( is_s.root(), tr ), mt.get( is_t.root(), tr ) ),
                             tag + ", trace " + trace_str( is_s.pts, tr ) );
            }
            break;
        }
        }
    }

    MetricResult r;
    r.value = best.value;
    r.witness = best.witness;
    r.family = "testing";
    r.approach = to_string( spec.approach );
    r.scheduler = to_string( spec.scheduler );
    if ( spec.approach == TestingApproach::tbt || spec.approach == TestingApproach::sup )
    {
        r.lambda = spec.lambda;
        r.depth = spec.depth;
        if ( truncated )
        {
            r.truncation_bound = pow( spec.lambda, *spec.depth );
            r.bounded = true;
        }
    }
    r.truncation_bound = truncated ? r.truncation_bound : Rat( 0 );
    return r;
}

MetricResult testing_distance( const Pts& p, StateId s, StateId t, const TestSuite& suite,
                               const TestingMetricSpec& spec )
{
    if ( spec.direction == Direction::left )
        return testing_hemimetric( p, s, t, suite, spec );
    if ( spec.direction == Direction::right )
    {
        auto r = testing_hemimetric( p, t, s, suite, spec );
        r.direction = Direction::right;
        return r;
    }
    auto a = testing_hemimetric( p, s, t, suite, spec );
    auto b = testing_hemimetric( p, t, s, suite, spec );
    auto& r = b.value > a.value ? b : a;
    r.truncation_bound = max( a.truncation_bound, b.truncation_bound );
    r.direction = Direction::symmetric;
    if ( &r == &b && !b.witness.empty() )
        r.witness = "reverse " + b.witness;
    return r;
}

MetricResult testing_pseudometric( const Pts& p, StateId s, StateId t, const TestSuite& suite,
                                   TestingMetricSpec spec )
{
    spec.direction = Direction::symmetric;
    return testing_distance( p, s, t, suite, spec );
}

} // namespace ptsdist
