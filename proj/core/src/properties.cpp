#include "ptsdist/properties.hpp"

#include "ptsdist/achievable.hpp"
#include "ptsdist/compose.hpp"
#include "ptsdist/errors.hpp"
#include "ptsdist/kernel.hpp"
#include "ptsdist/linear_program.hpp"
#include "ptsdist/model_format.hpp"
#include "ptsdist/optimal.hpp"
#include "ptsdist/relations.hpp"
#include "ptsdist/resolution.hpp"
#include "ptsdist/structure.hpp"
#include "ptsdist/suites.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace ptsdist
{

using Class = SchedulerMode::Class;
using Fail = std::optional< std::string >;

// ---------------------------------------------------------------------------
// instances and shrinking

std::string emit_instance( const Instance& inst )
{
    std::ostringstream os;
    os << "# roots:";
    for ( auto r : inst.roots )
        os << ' ' << quote_name( inst.pts.state_name( r ) );
    os << "\n# lambda: " << inst.lambda.str() << ", depth: " << inst.depth << ", seed: " << inst.seed << '\n';
    if ( !inst.suite.omega.empty() )
    {
        os << "# omega:";
        for ( const auto& w : inst.suite.omega )
            os << ' ' << w.str();
        os << '\n';
    }
    os << emit_pts( inst.pts );
    for ( const auto& o : inst.suite.tests )
        os << '\n' << emit_npt( o );
    return os.str();
}

namespace
{

// Validates a modified draft and drops states no root can reach.
std::optional< Instance > rebuild( const Instance& in, PtsDraft d )
{
    std::vector< std::string > root_names;
    for ( auto r : in.roots )
        root_names.push_back( in.pts.state_name( r ) );
    Pts p;
    try
    {
        p = validate_pts( d );
    }
    catch ( const ValidationError& )
    {
        return std::nullopt;
    }

    std::vector< bool > seen( p.num_states(), false );
    std::deque< StateId > queue;
    for ( const auto& n : root_names )
    {
        auto s = p.state( n );
        if ( !seen[ s ] )
        {
            seen[ s ] = true;
            queue.push_back( s );
        }
    }
    while ( !queue.empty() )
    {
        auto s = queue.front();
        queue.pop_front();
        for ( auto i : p.outgoing( s ) )
            for ( const auto& [ x, _ ] : p.transition( i ).target.entries )
                if ( !seen[ x ] )
                {
                    seen[ x ] = true;
                    queue.push_back( x );
                }
    }

    PtsDraft g;
    g.name = d.name;
    g.actions = d.actions;
    for ( StateId s = 0; s < p.num_states(); ++s )
        if ( seen[ s ] )
            g.state( p.state_name( s ) );
    for ( const auto& t : d.transitions )
        if ( seen[ p.state( t.source ) ] )
            g.transitions.push_back( t );
    g.init = root_names.front();

    Instance out = in;
    out.pts = validate_pts( g );
    out.roots.clear();
    for ( const auto& n : root_names )
        out.roots.push_back( out.pts.state( n ) );
    return out;
}

std::vector< Instance > shrink_candidates( const Instance& in )
{
    std::vector< Instance > out;
    for ( std::size_t j = 0; j < in.suite.tests.size(); ++j )
    {
        Instance c = in;
        c.suite.tests.erase( c.suite.tests.begin() + static_cast< std::ptrdiff_t >( j ) );
        if ( !c.suite.omega.empty() )
            c.suite.omega.erase( c.suite.omega.begin() + static_cast< std::ptrdiff_t >( j ) );
        out.push_back( std::move( c ) );
    }
    const PtsDraft base = in.pts.to_draft();
    auto push = [ & ]( PtsDraft d ) {
        if ( auto c = rebuild( in, std::move( d ) ) )
            out.push_back( std::move( *c ) );
    };
    for ( std::size_t i = 0; i < base.transitions.size(); ++i )
    {
        PtsDraft d = base;
        d.transitions.erase( d.transitions.begin() + static_cast< std::ptrdiff_t >( i ) );
        push( std::move( d ) );
    }
    for ( std::size_t i = 0; i < base.transitions.size(); ++i )
    {
        const auto& target = base.transitions[ i ].target;
        if ( target.size() < 2 )
            continue;
        for ( const auto& entry : target )
        {
            PtsDraft d = base;
            d.transitions[ i ].target = { { entry.first, Rat( 1 ) } };
            push( std::move( d ) );
        }
        const Rat u( 1, static_cast< long >( target.size() ) );
        if ( std::any_of( target.begin(), target.end(), [ & ]( const auto& e ) { return e.second != u; } ) )
        {
            PtsDraft d = base;
            for ( auto& e : d.transitions[ i ].target )
                e.second = u;
            push( std::move( d ) );
        }
    }
    // unreachable states go last: harmless to keep, cheap to drop
    if ( auto c = rebuild( in, base ); c && c->pts.num_states() < in.pts.num_states() )
        out.push_back( std::move( *c ) );
    return out;
}

Fail guarded( const PropertyCheck& check, const Instance& in )
{
    try
    {
        return check( in );
    }
    catch ( const CapExceeded& )
    {
        return std::nullopt;
    }
    catch ( const UnsupportedInput& )
    {
        return std::nullopt;
    }
}

} // namespace

Instance shrink_instance( Instance inst, const PropertyCheck& check, unsigned max_steps )
{
    for ( unsigned step = 0; step < max_steps; ++step )
    {
        bool changed = false;
        for ( auto& c : shrink_candidates( inst ) )
            if ( guarded( check, c ) )
            {
                inst = std::move( c );
                changed = true;
                break;
            }
        if ( !changed )
            break;
    }
    return inst;
}

// ---------------------------------------------------------------------------
// metric shorthands

namespace
{

const std::string& nm( const Instance& in, StateId s )
{
    return in.pts.state_name( s );
}

std::string pair_str( const Instance& in, StateId s, StateId t )
{
    return "(" + nm( in, s ) + ", " + nm( in, t ) + ")";
}

TraceMetricSpec tspec( TraceApproach a, Class x, const Rat& lambda, unsigned depth )
{
    TraceMetricSpec spec;
    spec.approach = a;
    spec.scheduler = x;
    spec.lambda = lambda;
    spec.depth = depth;
    return spec;
}

Rat th( const Pts& p, StateId s, StateId t, TraceApproach a, Class x, const Rat& lambda, unsigned depth )
{
    return trace_hemimetric( p, s, t, tspec( a, x, lambda, depth ) ).value;
}

Rat th( const Instance& in, StateId s, StateId t, TraceApproach a, Class x )
{
    return th( in.pts, s, t, a, x, in.lambda, in.depth );
}

Rat teh( const Pts& p, StateId s, StateId t, const TestSuite& suite, TestingApproach a, Class x, const Rat& lambda )
{
    TestingMetricSpec spec;
    spec.approach = a;
    spec.scheduler = x;
    spec.lambda = lambda;
    return testing_hemimetric( p, s, t, suite, spec ).value;
}

std::string label( TraceApproach a, Class x )
{
    return "trace " + to_string( a ) + "/" + to_string( x );
}

std::string label( TestingApproach a, Class x )
{
    return "testing " + to_string( a ) + "/" + to_string( x );
}

constexpr TraceApproach trace_approaches[] = { TraceApproach::dis, TraceApproach::tbt, TraceApproach::sup };
constexpr TestingApproach testing_approaches[] = { TestingApproach::may, TestingApproach::must, TestingApproach::mm,
                                                   TestingApproach::tbt, TestingApproach::sup };
constexpr Class classes[] = { Class::det, Class::rand };

// Identity, 1-boundedness, triangle inequality and symmetry of the max, given
// the hemimetric on all ordered pairs of roots.
Fail check_axioms( const Instance& in, const std::string& what, const std::function< Rat( StateId, StateId ) >& h )
{
    const auto& r = in.roots;
    std::map< std::pair< StateId, StateId >, Rat > v;
    for ( auto x : r )
        for ( auto y : r )
            v[ { x, y } ] = h( x, y );
    for ( const auto& [ xy, d ] : v )
    {
        if ( d.sign() < 0 || d > Rat( 1 ) )
            return what + ": h" + pair_str( in, xy.first, xy.second ) + " = " + d.str() + " outside [0,1]";
        if ( xy.first == xy.second && !d.is_zero() )
            return what + ": h" + pair_str( in, xy.first, xy.second ) + " = " + d.str() + " is not 0";
    }
    for ( auto x : r )
        for ( auto y : r )
            for ( auto z : r )
            {
                const Rat lhs = v[ { x, z } ];
                if ( lhs > v[ { x, y } ] + v[ { y, z } ] )
                    return what + ": triangle fails, h" + pair_str( in, x, z ) + " = " + lhs.str() + " > h" +
                           pair_str( in, x, y ) + " + h" + pair_str( in, y, z ) + " = " + v[ { x, y } ].str() + " + " +
                           v[ { y, z } ].str();
                const Rat mxz = max( v[ { x, z } ], v[ { z, x } ] );
                const Rat mxy = max( v[ { x, y } ], v[ { y, x } ] );
                const Rat myz = max( v[ { y, z } ], v[ { z, y } ] );
                if ( mxz > mxy + myz )
                    return what + ": metric triangle fails at " + nm( in, x ) + ", " + nm( in, y ) + ", " + nm( in, z );
            }
    return std::nullopt;
}

Fail leq( const Rat& a, const Rat& b, const std::string& what )
{
    if ( a <= b )
        return std::nullopt;
    return what + ": " + a.str() + " > " + b.str();
}

Fail eq( const Rat& a, const Rat& b, const std::string& what )
{
    if ( a == b )
        return std::nullopt;
    return what + ": " + a.str() + " != " + b.str();
}

TestSuite unit_weights( TestSuite s )
{
    s.omega.clear();
    return s;
}

TestSuite joined( TestSuite a, const TestSuite& b )
{
    for ( std::size_t k = 0; k < b.tests.size(); ++k )
        a.add( b.tests[ k ], b.weight( k ) );
    return a;
}

// Weights on traces (summing to at most 1) that maximize
// sum_a w_a u_a - max_v sum_a w_a v_a over s's deterministic trace vectors u and
// t's v. Returns the weights and the optimum.
std::pair< std::map< NamedTrace, Rat >, Rat > separating_weights( const Pts& p, StateId s, StateId t, unsigned depth,
                                                                  const Limits& limits )
{
    const auto S = det_trace_vectors( p, s, depth, limits );
    const auto T = det_trace_vectors( p, t, depth, limits );
    std::set< Trace > all;
    for ( const auto* side : { &S, &T } )
        for ( const auto& v : *side )
            for ( const auto& [ tr, _ ] : v )
                all.insert( tr );
    const std::vector< Trace > traces( all.begin(), all.end() );
    const std::size_t n = traces.size();

    std::map< NamedTrace, Rat > best_w;
    Rat best = 0;
    for ( const auto& u : S )
    {
        LinearProgram lp;
        lp.num_vars = n + 1; // weights, then z
        lp.objective.assign( n + 1, Rat( 0 ) );
        for ( std::size_t i = 0; i < n; ++i )
            lp.objective[ i ] = -value_at( u, traces[ i ] );
        lp.objective[ n ] = 1;
        for ( const auto& v : T )
        {
            LinearProgram::Row row;
            for ( std::size_t i = 0; i < n; ++i )
                row.coeffs.push_back( value_at( v, traces[ i ] ) );
            row.coeffs.push_back( Rat( -1 ) );
            row.sense = LinearProgram::Sense::le;
            row.rhs = 0;
            lp.rows.push_back( std::move( row ) );
        }
        LinearProgram::Row total;
        total.coeffs.assign( n + 1, Rat( 1 ) );
        total.coeffs[ n ] = 0;
        total.sense = LinearProgram::Sense::le;
        total.rhs = 1;
        lp.rows.push_back( std::move( total ) );
        const auto sol = solve_lp( lp );
        if ( sol.status != LpSolution::Status::optimal )
            throw std::logic_error( "separating weights LP not optimal" );
        const Rat value = -sol.value;
        if ( best < value )
        {
            best = value;
            best_w.clear();
            for ( std::size_t i = 0; i < n; ++i )
                if ( sol.x[ i ].sign() > 0 )
                    best_w[ named( p, traces[ i ] ) ] = sol.x[ i ];
        }
    }
    return { best_w, best };
}

struct Composed
{
    Pts pts;
    StateId s, t;
};

Composed compose_pairs( const Pts& p, StateId s1, StateId s2, StateId t1, StateId t2 )
{
    auto c = parallel_compose( p, p, { { s1, s2 }, { t1, t2 } } );
    return { c.pts, *c.find( s1, s2 ), *c.find( t1, t2 ) };
}

// Transition multiset of a product, with states renamed through `rename`.
using Edge = std::tuple< std::string, std::string, std::vector< std::pair< std::string, Rat > > >;

std::multiset< Edge > edges( const Pts& p, const std::function< std::string( StateId ) >& rename )
{
    std::multiset< Edge > out;
    for ( const auto& t : p.transitions() )
    {
        std::vector< std::pair< std::string, Rat > > target;
        for ( const auto& [ x, pr ] : t.target.entries )
            target.emplace_back( rename( x ), pr );
        std::sort( target.begin(), target.end() );
        out.emplace( rename( t.source ), p.action_name( t.label ), std::move( target ) );
    }
    return out;
}

// ---------------------------------------------------------------------------
// suites

struct Suite
{
    std::string name;
    std::string description;
    unsigned roots = 2;
    bool needs_suite = false;
    bool expect_failure = false;
    std::function< void( GenParams&, unsigned trial ) > tune;
    PropertyCheck check;
};

Fail axioms_trace( const Instance& in )
{
    for ( auto a : trace_approaches )
        for ( auto x : classes )
            if ( auto f = check_axioms( in, label( a, x ), [ & ]( StateId s, StateId t ) { return th( in, s, t, a, x ); } ) )
                return f;
    return std::nullopt;
}

Fail axioms_testing( const Instance& in )
{
    for ( auto a : testing_approaches )
        for ( auto x : classes )
            if ( auto f = check_axioms( in, label( a, x ), [ & ]( StateId s, StateId t ) {
                     return teh( in.pts, s, t, in.suite, a, x, in.lambda );
                 } ) )
                return f;
    return std::nullopt;
}

Fail kernel_trace( const Instance& in )
{
    const StateId s = in.roots[ 0 ], t = in.roots[ 1 ];
    for ( auto a : trace_approaches )
        for ( auto x : classes )
            for ( auto [ u, v ] : { std::pair{ s, t }, std::pair{ t, s } } )
            {
                const Rat d = th( in, u, v, a, x );
                const bool rel = trace_preorder( in.pts, u, v, a, x, in.depth );
                if ( d.is_zero() != rel )
                    return label( a, x ) + ": h" + pair_str( in, u, v ) + " = " + d.str() + " but the preorder " +
                           ( rel ? "holds" : "fails" );
            }
    return std::nullopt;
}

Fail kernel_testing( const Instance& in )
{
    const StateId s = in.roots[ 0 ], t = in.roots[ 1 ];
    for ( auto a : testing_approaches )
        for ( auto x : classes )
            for ( auto [ u, v ] : { std::pair{ s, t }, std::pair{ t, s } } )
            {
                const Rat d = teh( in.pts, u, v, in.suite, a, x, in.lambda );
                const bool rel = testing_preorder( in.pts, u, v, in.suite, a, x );
                if ( d.is_zero() != rel )
                    return label( a, x ) + ": h" + pair_str( in, u, v ) + " = " + d.str() + " but the preorder " +
                           ( rel ? "holds" : "fails" );
            }
    return std::nullopt;
}

Fail sup_coincidence( const Instance& in )
{
    const StateId s = in.roots[ 0 ], t = in.roots[ 1 ];
    for ( auto [ u, v ] : { std::pair{ s, t }, std::pair{ t, s } } )
    {
        const Rat sd = th( in, u, v, TraceApproach::sup, Class::det );
        const Rat sr = th( in, u, v, TraceApproach::sup, Class::rand );
        const Rat tr = th( in, u, v, TraceApproach::tbt, Class::rand );
        const std::string at = " at " + pair_str( in, u, v );
        if ( auto f = eq( sd, sr, "sup det vs sup rand" + at ) )
            return f;
        if ( auto f = eq( sd, tr, "sup det vs tbt rand" + at ) )
            return f;
    }
    return std::nullopt;
}

Fail spectrum_trace( const Instance& in )
{
    const StateId s = in.roots[ 0 ], t = in.roots[ 1 ];
    for ( auto [ u, v ] : { std::pair{ s, t }, std::pair{ t, s } } )
    {
        const std::string at = " at " + pair_str( in, u, v );
        std::map< std::pair< TraceApproach, Class >, Rat > h;
        for ( auto a : { TraceApproach::dis, TraceApproach::tbt } )
            for ( auto x : classes )
                h[ { a, x } ] = th( in, u, v, a, x );
        for ( auto a : { TraceApproach::dis, TraceApproach::tbt } )
            if ( auto f = leq( h[ { a, Class::rand } ], h[ { a, Class::det } ], to_string( a ) + " rand <= det" + at ) )
                return f;
        for ( auto x : classes )
            if ( auto f = leq( h[ { TraceApproach::tbt, x } ], h[ { TraceApproach::dis, x } ],
                               "tbt <= dis, " + to_string( x ) + at ) )
                return f;
    }
    return std::nullopt;
}

Fail spectrum_testing( const Instance& in )
{
    const StateId s = in.roots[ 0 ], t = in.roots[ 1 ];
    const TestSuite& O = in.suite;
    const TestSuite O1 = unit_weights( O );
    const Rat one = 1;
    for ( auto [ u, v ] : { std::pair{ s, t }, std::pair{ t, s } } )
    {
        const std::string at = " at " + pair_str( in, u, v );
        auto te = [ & ]( const TestSuite& suite, TestingApproach a, Class x, const Rat& lambda ) {
            return teh( in.pts, u, v, suite, a, x, lambda );
        };

        // scheduler classes
        for ( auto a : { TestingApproach::may, TestingApproach::must, TestingApproach::mm, TestingApproach::sup } )
            if ( auto f = eq( te( O, a, Class::det, in.lambda ), te( O, a, Class::rand, in.lambda ),
                              "testing " + to_string( a ) + " det = rand" + at ) )
                return f;
        if ( auto f = leq( te( O, TestingApproach::tbt, Class::rand, in.lambda ),
                           te( O, TestingApproach::tbt, Class::det, in.lambda ), "testing tbt rand <= det" + at ) )
            return f;

        // testing approaches among themselves
        const Rat mm = te( O, TestingApproach::mm, Class::det, one );
        if ( auto f = leq( te( O, TestingApproach::may, Class::det, one ), mm, "may <= mm" + at ) )
            return f;
        if ( auto f = leq( te( O, TestingApproach::must, Class::det, one ), mm, "must <= mm" + at ) )
            return f;
        const TestSuite restricted = restriction_closure( O1, 64 );
        if ( auto f = leq( te( O1, TestingApproach::sup, Class::det, one ),
                           te( restricted, TestingApproach::may, Class::det, one ),
                           "testing sup <= may on the restriction closure" + at ) )
            return f;
        for ( auto x : classes )
            if ( auto f = leq( te( O, TestingApproach::sup, x, in.lambda ), te( O, TestingApproach::tbt, x, in.lambda ),
                               "testing sup <= testing tbt, " + to_string( x ) + at ) )
                return f;

        // trace against testing: the suite is closed under the tests that read off
        // single traces, plus the test that separates trace distributions best
        const TestSuite traced = joined( O1, trace_test_suite( in.pts, { u, v }, in.depth, true ) );
        for ( auto x : classes )
        {
            if ( auto f = leq( th( in, u, v, TraceApproach::tbt, x ), te( traced, TestingApproach::tbt, x, in.lambda ),
                               "trace tbt <= testing tbt, " + to_string( x ) + at ) )
                return f;
            if ( auto f = leq( th( in, u, v, TraceApproach::sup, x ), te( traced, TestingApproach::sup, x, in.lambda ),
                               "trace sup <= testing sup, " + to_string( x ) + at ) )
                return f;
        }
        const auto [ weights, bound ] = separating_weights( in.pts, u, v, in.depth, default_limits() );
        TestSuite weighted = O1;
        weighted.add( weighted_trace_test( in.pts.action_names(), weights ) );
        const Rat dis = th( in.pts, u, v, TraceApproach::dis, Class::rand, one, in.depth );
        if ( auto f = leq( dis, te( weighted, TestingApproach::may, Class::det, one ),
                           "trace dis rand <= may (best separating test reaches " + bound.str() + ")" + at ) )
            return f;
    }
    return std::nullopt;
}

Fail nonexp_trace( const Instance& in )
{
    const StateId s1 = in.roots[ 0 ], t1 = in.roots[ 1 ], s2 = in.roots[ 2 ], t2 = in.roots[ 3 ];
    const auto c = compose_pairs( in.pts, s1, s2, t1, t2 );
    for ( auto a : { TraceApproach::tbt, TraceApproach::sup } )
        for ( auto x : classes )
        {
            const Rat h1 = th( in, s1, t1, a, x ), h2 = th( in, s2, t2, a, x );
            const Rat h = th( c.pts, c.s, c.t, a, x, in.lambda, in.depth );
            if ( auto f = leq( h, h1 + h2 - h1 * h2, label( a, x ) + " strict non-expansiveness (hemimetric)" ) )
                return f;
            const Rat m1 = max( h1, th( in, t1, s1, a, x ) ), m2 = max( h2, th( in, t2, s2, a, x ) );
            const Rat m = max( h, th( c.pts, c.t, c.s, a, x, in.lambda, in.depth ) );
            if ( auto f = leq( m, m1 + m2 - m1 * m2, label( a, x ) + " strict non-expansiveness (metric)" ) )
                return f;
        }
    return std::nullopt;
}

Fail nonexp_testing( const Instance& in )
{
    const StateId s1 = in.roots[ 0 ], t1 = in.roots[ 1 ], s2 = in.roots[ 2 ], t2 = in.roots[ 3 ];
    const auto c = compose_pairs( in.pts, s1, s2, t1, t2 );
    // Tests for one component absorb the other component's processes.
    auto closure = [ & ]( std::initializer_list< StateId > partners ) {
        TestSuite out = in.suite;
        for ( std::size_t k = 0; k < in.suite.tests.size(); ++k )
            for ( auto x : partners )
                if ( auto o = compose_test( in.pts, x, in.suite.tests[ k ] ) )
                    out.add( std::move( *o ), in.suite.weight( k ) );
        return out;
    };
    const TestSuite O = closure( { s1, s2, t1, t2 } );
    for ( auto a : testing_approaches )
        for ( auto x : classes )
        {
            const bool strict = a == TestingApproach::tbt || a == TestingApproach::sup;
            auto bound = [ & ]( const Rat& d1, const Rat& d2 ) { return strict ? d1 + d2 - d1 * d2 : d1 + d2; };
            const std::string what = label( a, x ) + ( strict ? " strict non-expansiveness" : " non-expansiveness" );
            const Rat h1 = teh( in.pts, s1, t1, O, a, x, in.lambda ), h2 = teh( in.pts, s2, t2, O, a, x, in.lambda );
            const Rat h = teh( c.pts, c.s, c.t, in.suite, a, x, in.lambda );
            if ( auto f = leq( h, bound( h1, h2 ), what + " (hemimetric)" ) )
                return f;
            const Rat m1 = max( h1, teh( in.pts, t1, s1, O, a, x, in.lambda ) );
            const Rat m2 = max( h2, teh( in.pts, t2, s2, O, a, x, in.lambda ) );
            const Rat m = max( h, teh( c.pts, c.t, c.s, in.suite, a, x, in.lambda ) );
            if ( auto f = leq( m, bound( m1, m2 ), what + " (metric)" ) )
                return f;
        }
    return std::nullopt;
}

Fail backward_compat( const Instance& in )
{
    const auto r = check_backward_compat( in.pts, in.roots[ 0 ], in.roots[ 1 ], in.depth );
    if ( r.consistent() )
        return std::nullopt;
    return to_string( r.cls ) + ": reference equivalence " + ( r.reference ? "holds" : "fails" ) + ", sup det " +
           ( r.sup_det ? "holds" : "fails" ) + ", sup rand " + ( r.sup_rand ? "holds" : "fails" );
}

Fail relations( const Instance& in )
{
    const auto& r = in.roots;
    for ( int k = 0; k < 8; ++k )
        for ( auto x : classes )
        {
            RelationQuery q;
            q.kind = static_cast< RelationKind >( k );
            q.scheduler = x;
            q.depth = in.depth;
            q.suite = &in.suite;
            std::map< std::pair< StateId, StateId >, bool > pre, equ;
            for ( auto u : r )
                for ( auto v : r )
                {
                    q.equivalence = false;
                    pre[ { u, v } ] = check_relation( in.pts, u, v, q ).holds;
                    q.equivalence = true;
                    equ[ { u, v } ] = check_relation( in.pts, u, v, q ).holds;
                }
            const std::string what = to_string( q.kind ) + "/" + to_string( x );
            for ( auto u : r )
            {
                if ( !pre[ { u, u } ] || !equ[ { u, u } ] )
                    return what + ": not reflexive at " + nm( in, u );
                for ( auto v : r )
                {
                    if ( equ[ { u, v } ] != equ[ { v, u } ] )
                        return what + ": equivalence not symmetric at " + pair_str( in, u, v );
                    if ( equ[ { u, v } ] != ( pre[ { u, v } ] && pre[ { v, u } ] ) )
                        return what + ": equivalence is not the kernel of the preorder at " + pair_str( in, u, v );
                    for ( auto w : r )
                        if ( pre[ { u, v } ] && pre[ { v, w } ] && !pre[ { u, w } ] )
                            return what + ": preorder not transitive at " + nm( in, u ) + ", " + nm( in, v ) + ", " +
                                   nm( in, w );
                }
            }
        }
    return std::nullopt;
}

Fail robustness( const Instance& in )
{
    const StateId s = in.roots[ 0 ], t = in.roots[ 1 ];
    const Rat eps[] = { Rat( 0 ), Rat( 1, 8 ), Rat( 1, 4 ), Rat( 1, 2 ), Rat( 3, 4 ), Rat( 1 ) };
    for ( auto a : trace_approaches )
        for ( auto x : classes )
            for ( auto view : { RobustView::lower, RobustView::upper } )
            {
                MetricSelector sel{ tspec( a, x, in.lambda, in.depth ), nullptr };
                bool held = false;
                for ( const auto& e : eps )
                {
                    const auto v = check_robustness( in.pts, s, in.pts, t, e, sel, view );
                    const std::string what = label( a, x ) + " robustness, " + to_string( view ) + " view, eps " + e.str();
                    if ( held && !v.holds() )
                        return what + ": verdict not monotone in epsilon";
                    if ( ( v.verdict == Verdict::fails ) != ( v.measured.value > e ) )
                        return what + ": verdict " + to_string( v.verdict ) + " for value " + v.measured.value.str();
                    held = held || v.holds();
                }
                if ( !held )
                    return label( a, x ) + ": epsilon 1 does not hold";
            }
    return std::nullopt;
}

Fail resolution_roundtrip( const Instance& in )
{
    const StateId s = in.roots[ 0 ];
    const auto traces = realizable_traces( in.pts, s, in.depth );
    AchievableSets det( in.pts, SchedulerMode::det() ), rnd( in.pts, SchedulerMode::rand() );
    std::map< Trace, std::set< Rat > > realized;
    std::optional< std::string > bad;
    enumerate_det_resolutions( in.pts, s, in.depth, false, [ & ]( const ResolutionTree& r ) {
        const auto dist = trace_distribution( in.pts, r, in.depth );
        for ( const auto& tr : traces )
        {
            auto it = dist.find( tr );
            const Rat v = it == dist.end() ? Rat( 0 ) : it->second;
            realized[ tr ].insert( v );
            if ( !det.get( s, tr ).contains( v ) )
            {
                bad = "resolution value " + v.str() + " of trace " + trace_str( in.pts, tr ) + " missing from " +
                      det.get( s, tr ).str();
                return false;
            }
        }
        // prefix monotonicity: extensions never carry more mass than the prefix
        std::map< Trace, Rat > ext;
        for ( const auto& [ tr, pr ] : dist )
            if ( !tr.empty() )
                ext[ Trace( tr.begin(), tr.end() - 1 ) ] += pr;
        for ( const auto& [ pre, mass ] : ext )
            if ( mass > dist.at( pre ) )
            {
                bad = "extensions of " + trace_str( in.pts, pre ) + " exceed its probability";
                return false;
            }
        return true;
    } );
    if ( bad )
        return bad;
    for ( const auto& tr : traces )
    {
        const auto& d = det.get( s, tr );
        const auto& r = rnd.get( s, tr );
        const Rat m = max_trace_prob( in.pts, s, tr );
        const std::string at = " for trace " + trace_str( in.pts, tr );
        for ( const auto& part : d.parts() )
            if ( part.is_point() && !realized[ tr ].contains( part.lo ) )
                return "det point " + part.lo.str() + " not realized by any resolution" + at;
        if ( auto f = eq( d.max(), m, "max of det set vs Bellman max" + at ) )
            return f;
        if ( auto f = eq( r.max(), m, "max of rand set vs Bellman max" + at ) )
            return f;
        if ( !d.contains( Rat( 0 ) ) )
            return "non-maximal det set lacks 0" + at;
        if ( r != AchievableSet::interval( Rat( 0 ), m ) )
            return "non-maximal rand set " + r.str() + " is not [0, max]" + at;
    }
    return std::nullopt;
}

Fail optimal_values( const Instance& in )
{
    for ( const auto& o : in.suite.tests )
        for ( auto r : in.roots )
        {
            const auto is = build_interaction_system( in.pts, r, o );
            const Rat hi = opt_success_prob( is, Objective::sup ), lo = opt_success_prob( is, Objective::inf );
            const std::string at = " for " + nm( in, r ) + " with " + o.name();
            if ( lo.sign() < 0 || hi > Rat( 1 ) || lo > hi )
                return "inf " + lo.str() + ", sup " + hi.str() + at;
            if ( structure_info( is.pts, is.root() ).acyclic )
                for ( auto obj : { Objective::sup, Objective::inf } )
                    if ( auto f = eq( opt_success_policy_iteration( is, is.root(), obj ), obj == Objective::sup ? hi : lo,
                                      "policy iteration vs recursion" + at ) )
                        return f;
        }
    return std::nullopt;
}

Fail composition( const Instance& in )
{
    const StateId x = in.roots[ 0 ], y = in.roots[ 1 ], z = in.roots[ 2 ];
    const Pts& p = in.pts;
    auto pname = [ & ]( StateId a, StateId b ) { return "(" + p.state_name( a ) + "," + p.state_name( b ) + ")"; };

    const auto xy = parallel_compose( p, p, { { x, y } } );
    const auto yx = parallel_compose( p, p, { { y, x } } );
    for ( const auto& t : xy.pts.transitions() )
    {
        Rat sum = 0;
        for ( const auto& [ _, pr ] : t.target.entries )
            sum += pr;
        if ( !sum.is_one() )
            return "product distribution sums to " + sum.str();
    }
    auto swapped = edges( yx.pts, [ & ]( StateId c ) { return pname( yx.pairs[ c ].second, yx.pairs[ c ].first ); } );
    auto direct = edges( xy.pts, [ & ]( StateId c ) { return pname( xy.pairs[ c ].first, xy.pairs[ c ].second ); } );
    if ( swapped != direct )
        return "composition not commutative up to swapping pairs";

    const auto left = parallel_compose( xy.pts, p, { { *xy.find( x, y ), z } } );
    const auto yz = parallel_compose( p, p, { { y, z } } );
    const auto right = parallel_compose( p, yz.pts, { { x, *yz.find( y, z ) } } );
    auto triple = [ & ]( StateId a, StateId b, StateId c ) {
        return p.state_name( a ) + "|" + p.state_name( b ) + "|" + p.state_name( c );
    };
    auto l = edges( left.pts, [ & ]( StateId c ) {
        const auto [ ab, cc ] = left.pairs[ c ];
        return triple( xy.pairs[ ab ].first, xy.pairs[ ab ].second, cc );
    } );
    auto r = edges( right.pts, [ & ]( StateId c ) {
        const auto [ aa, bc ] = right.pairs[ c ];
        return triple( aa, yz.pairs[ bc ].first, yz.pairs[ bc ].second );
    } );
    if ( l != r )
        return "composition not associative up to regrouping";

    for ( const auto& o : in.suite.tests )
    {
        const auto is = build_interaction_system( p, x, o );
        const auto c = parallel_compose( p, o.base, { { x, o.root() } } );
        if ( is.pts.num_states() != c.pts.num_states() || is.pts.transitions() != c.pts.transitions() ||
             is.configs != c.pairs )
            return "interaction system differs from the product with " + o.name();
        for ( StateId k = 0; k < is.configs.size(); ++k )
            if ( is.success[ k ] != ( is.configs[ k ].second == o.success ) )
                return "success marking differs with " + o.name();
        const auto cp = classify( p ), co = classify( o.base );
        if ( cp.fully_probabilistic && co.fully_probabilistic && !classify( is.pts ).fully_probabilistic )
            return "product of fully probabilistic systems is not fully probabilistic";
    }
    return std::nullopt;
}

Fail depth_monotone( const Instance& in )
{
    const StateId s = in.roots[ 0 ], t = in.roots[ 1 ];
    for ( auto a : trace_approaches )
        for ( auto x : classes )
            for ( unsigned k = 1; k < in.depth; ++k )
            {
                const Rat lo = th( in.pts, s, t, a, x, in.lambda, k );
                const Rat hi = th( in.pts, s, t, a, x, in.lambda, k + 1 );
                const std::string what = label( a, x ) + " from depth " + std::to_string( k ) + " to " + std::to_string( k + 1 );
                if ( auto f = leq( lo, hi, what + " decreases" ) )
                    return f;
                if ( auto f = leq( hi - lo, pow( in.lambda, k ), what + " grows by more than lambda^k" ) )
                    return f;
            }
    return std::nullopt;
}

Fail generator_output( const Instance& in )
{
    try
    {
        validate_pts( in.pts.to_draft() );
    }
    catch ( const ValidationError& e )
    {
        return std::string( "generated system fails validation: " ) + e.what();
    }
    const auto c = classify( in.pts );
    if ( in.cls == SystemClass::fully_nondeterministic && !c.fully_nondeterministic )
        return "class fully-nondeterministic requested but not produced";
    if ( in.cls == SystemClass::fully_probabilistic && !c.fully_probabilistic )
        return "class fully-probabilistic requested but not produced";
    for ( auto r : in.roots )
        if ( !structure_info( in.pts, r ).acyclic )
            return "acyclic system requested but " + nm( in, r ) + " reaches a cycle";
    return std::nullopt;
}

// Harness self-test: the oracle claims dis < tbt strictly, the reverse of the
// true ordering, so it must be refuted and shrunk.
Fail corrupted( const Instance& in )
{
    const StateId s = in.roots[ 0 ], t = in.roots[ 1 ];
    const Rat dis = th( in, s, t, TraceApproach::dis, Class::det );
    const Rat tbt = th( in, s, t, TraceApproach::tbt, Class::det );
    if ( dis < tbt )
        return std::nullopt;
    return "corrupted oracle: expected dis < tbt, got " + dis.str() + " >= " + tbt.str();
}

void small( GenParams& g, unsigned )
{
    g.max_states = std::min( g.max_states, 4u );
}

std::vector< Suite > make_suites()
{
    std::vector< Suite > v;
    v.push_back( { "generator", "generated systems validate and honor class and acyclicity", 2, false, false,
                   []( GenParams& g, unsigned trial ) { g.cls = static_cast< SystemClass >( trial % 3 ); },
                   generator_output } );
    v.push_back( { "axioms-trace", "trace hemimetric axioms, 1-boundedness and metric symmetry on random triples", 3,
                   false, false, nullptr, axioms_trace } );
    v.push_back( { "axioms-testing", "testing hemimetric axioms on random triples and suites", 3, true, false, small,
                   axioms_testing } );
    v.push_back( { "kernel-trace", "trace distance 0 iff the quantifier-form preorder holds", 2, false, false, nullptr,
                   kernel_trace } );
    v.push_back( { "kernel-testing", "testing distance 0 iff the quantifier-form preorder holds", 2, true, false, small,
                   kernel_testing } );
    v.push_back( { "sup-coincidence", "sup det = sup rand = tbt rand trace hemimetrics", 2, false, false, nullptr,
                   sup_coincidence } );
    v.push_back( { "spectrum-trace", "rand <= det and tbt <= dis for trace hemimetrics", 2, false, false, nullptr,
                   spectrum_trace } );
    v.push_back( { "spectrum-testing", "scheduler collapse and the testing spectrum inequalities", 2, true, false, small,
                   spectrum_testing } );
    v.push_back( { "nonexp-trace", "strict non-expansiveness of tbt and sup trace distances", 4, false, false, small,
                   nonexp_trace } );
    v.push_back( { "nonexp-testing", "(strict) non-expansiveness of testing distances", 4, true, false,
                   small, nonexp_testing } );
    v.push_back( { "backward-compat", "sup trace equivalences match trace-set and trace-probability equality", 2, false,
                   false,
                   []( GenParams& g, unsigned trial ) {
                       g.cls = trial % 2 ? SystemClass::fully_probabilistic : SystemClass::fully_nondeterministic;
                   },
                   backward_compat } );
    v.push_back( { "relations", "relations are reflexive, transitive, symmetric where required", 3, true, false, small,
                   relations } );
    v.push_back( { "robustness", "robustness verdicts are monotone in epsilon", 2, false, false, nullptr, robustness } );
    v.push_back( { "resolutions", "enumerated resolutions agree with achievable sets and Bellman maxima", 1, false,
                   false, nullptr, resolution_roundtrip } );
    v.push_back( { "optimal", "optimal success probabilities are ordered and solvers agree", 2, true, false,
                   []( GenParams& g, unsigned trial ) {
                       g.acyclic = trial % 2 == 0;
                       g.min_transitions = 0;
                   },
                   optimal_values } );
    v.push_back( { "composition", "parallel composition is commutative, associative and builds interaction systems", 3,
                   true, false, small, composition } );
    v.push_back( { "depth-monotone", "trace distances grow with depth by at most lambda^k", 2, false, false, nullptr,
                   depth_monotone } );
    v.push_back( { "self-test", "corrupted oracle that the harness must refute", 2, false, true, nullptr, corrupted } );
    return v;
}

const std::vector< Suite >& suites()
{
    static const std::vector< Suite > v = make_suites();
    return v;
}

Instance make_instance( const Suite& su, const PropertyConfig& cfg, unsigned trial )
{
    const std::uint64_t seed = trial_seed( cfg.seed, trial );
    GenParams g = cfg.gen;
    g.seed = seed;
    g.roots = su.roots;
    if ( su.tune )
        su.tune( g, trial );
    auto gen = generate_random_pts( g );

    Instance in;
    in.pts = std::move( gen.pts );
    in.roots = std::move( gen.roots );
    in.depth = cfg.depth;
    in.cls = g.cls;
    in.seed = seed;
    in.lambda = trial % 2 ? Rat( 1, 2 ) : Rat( 1 );
    if ( su.needs_suite )
        for ( unsigned j = 0; j < cfg.suite_size; ++j )
        {
            GenParams tg = g;
            tg.seed = trial_seed( seed, j );
            tg.cls = SystemClass::general;
            tg.max_states = std::min( g.max_states, 4u );
            const Rat w = trial % 3 == 2 && j % 2 == 1 ? Rat( 1, 2 ) : Rat( 1 );
            in.suite.add( generate_random_test( tg, "o" + std::to_string( j + 1 ) ), w );
        }
    return in;
}

} // namespace

std::vector< PropertyInfo > property_suites()
{
    std::vector< PropertyInfo > out;
    for ( const auto& s : suites() )
        out.push_back( { s.name, s.description } );
    return out;
}

PropertyReport run_property_suite( const std::string& name, const PropertyConfig& config )
{
    const auto& all = suites();
    auto it = std::find_if( all.begin(), all.end(), [ & ]( const Suite& s ) { return s.name == name; } );
    if ( it == all.end() )
        throw UsageError( "unknown property suite '" + name + "'" );

    PropertyReport rep;
    rep.name = it->name;
    rep.description = it->description;
    rep.expect_failure = it->expect_failure;
    for ( unsigned trial = 0; trial < config.trials; ++trial )
    {
        ++rep.trials;
        Instance in;
        Fail f;
        try
        {
            in = make_instance( *it, config, trial );
            f = it->check( in );
        }
        catch ( const CapExceeded& )
        {
            ++rep.skipped;
            continue;
        }
        catch ( const std::exception& e )
        {
            f = std::string( "exception: " ) + e.what();
        }
        if ( !f )
        {
            ++rep.passed;
            continue;
        }
        PropertyFailure pf;
        pf.seed = in.seed;
        pf.message = *f;
        pf.shrunk = config.shrink ? shrink_instance( in, it->check ) : in;
        pf.counterexample = emit_instance( pf.shrunk );
        const Fail again = guarded( it->check, pf.shrunk );
        pf.shrunk_still_fails = again.has_value();
        pf.shrunk_message = again.value_or( "" );
        rep.failures.push_back( std::move( pf ) );
        if ( rep.expect_failure )
            break; // one refutation is all the self-test needs
    }
    return rep;
}

} // namespace ptsdist
