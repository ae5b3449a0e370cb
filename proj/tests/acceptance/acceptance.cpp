// Acceptance run: one PASS/FAIL line per criterion.
// Usage: ptsdist_acceptance CORPUS_DIR [--known-failure N]...
// Exits 0 iff the failing criteria are exactly the declared known failures.

#include "ptsdist/compose.hpp"
#include "ptsdist/model_format.hpp"
#include "ptsdist/properties.hpp"
#include "ptsdist/structure.hpp"
#include "ptsdist/testing_metrics.hpp"
#include "ptsdist/trace_metrics.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

using namespace ptsdist;

namespace
{

std::string g_corpus;

struct Criterion
{
    bool pass = true;
    std::vector< std::string > problems;
    unsigned checks = 0;

    void expect( bool ok, const std::string& what )
    {
        ++checks;
        if ( !ok )
        {
            pass = false;
            problems.push_back( what );
        }
    }

    // |got - want| <= tol
    void near( const Rat& got, const Rat& want, const Rat& tol, const std::string& what )
    {
        expect( abs( got - want ) <= tol, what + ": got " + got.str() + ", want " + want.str() +
                                                 ( tol.is_zero() ? "" : " +/- " + tol.str() ) );
    }
};

Model load( const std::string& file, std::map< std::string, Rat > overrides = {} )
{
    ParseOptions o;
    o.overrides = std::move( overrides );
    return load_model( g_corpus + "/" + file, o );
}

struct Pair
{
    DisjointUnion u;
    StateId s, t;
};

Pair pair_of( const Pts& a, const Pts& b )
{
    Pair p{ disjoint_union( { &a, &b } ), 0, 0 };
    p.s = p.u.offsets[ 0 ] + *a.root();
    p.t = p.u.offsets[ 1 ] + *b.root();
    return p;
}

Pair pair_of( const Model& m, const std::string& a, const std::string& b )
{
    return pair_of( *m.find_system( a ), *m.find_system( b ) );
}

constexpr auto det = SchedulerMode::Class::det;
constexpr auto rnd = SchedulerMode::Class::rand;

Rat trace( const Pair& p, TraceApproach a, SchedulerMode::Class c, const Rat& lambda, unsigned depth, Direction d,
           std::optional< unsigned > grid = std::nullopt )
{
    TraceMetricSpec s;
    s.approach = a;
    s.scheduler = c;
    s.lambda = lambda;
    s.depth = depth;
    s.direction = d;
    s.grid = grid;
    return trace_distance( p.u.pts, p.s, p.t, s ).value;
}

Rat testing( const Pair& p, const TestSuite& suite, TestingApproach a, SchedulerMode::Class c, const Rat& lambda,
             Direction d )
{
    TestingMetricSpec s;
    s.approach = a;
    s.scheduler = c;
    s.lambda = lambda;
    s.direction = d;
    return testing_distance( p.u.pts, p.s, p.t, suite, s ).value;
}

TestSuite suite_of( const Model& m, std::vector< std::string > names, std::vector< Rat > omega = {} )
{
    TestSuite s;
    for ( std::size_t i = 0; i < names.size(); ++i )
        s.add( *m.find_test( names[ i ] ), omega.empty() ? Rat( 1 ) : omega[ i ] );
    return s;
}

const Rat zero = 0;

void property( Criterion& c, const std::string& suite, unsigned trials )
{
    PropertyConfig cfg;
    cfg.trials = trials;
    const auto rep = run_property_suite( suite, cfg );
    std::ostringstream what;
    what << suite << ": " << rep.passed << "/" << rep.trials << " passed, " << rep.skipped << " skipped";
    if ( !rep.failures.empty() )
        what << "; first failure (seed " << rep.failures[ 0 ].seed << "): " << rep.failures[ 0 ].message;
    c.expect( rep.ok() && rep.skipped == 0, what.str() );
}

// 1: branching pair, closed forms over p and lambda, depth 2.
void c1( Criterion& c )
{
    const Rat half( 1, 2 );
    for ( const char* ps : { "0", "1/10", "1/4", "1/2", "3/4", "9/10", "1" } )
        for ( const Rat lambda : { Rat( 1 ), half } )
        {
            const Rat p = Rat::parse( ps );
            const Model m = load( "branching.pts", { { "p", p } } );
            const Pair ts = pair_of( m, "t", "sp" );
            const std::string tag = " p=" + p.str() + " lambda=" + lambda.str();
            const Rat near = min( min( p, abs( half - p ) ), 1 - p );
            c.near( trace( ts, TraceApproach::dis, det, lambda, 2, Direction::left ), lambda * half, zero,
                    "dis det h(t,s)" + tag );
            c.near( trace( ts, TraceApproach::dis, det, lambda, 2, Direction::right ), lambda * near, zero,
                    "dis det h(s,t)" + tag );
            c.near( trace( ts, TraceApproach::tbt, det, lambda, 2, Direction::left ), lambda * abs( half - p ), zero,
                    "tbt det h(t,s)" + tag );
            c.near( trace( ts, TraceApproach::tbt, det, lambda, 2, Direction::right ), lambda * near, zero,
                    "tbt det h(s,t)" + tag );
            for ( unsigned grid : { 4u } )
                for ( auto d : { Direction::left, Direction::right } )
                    c.near( trace( ts, TraceApproach::dis, rnd, lambda, 2, d, grid ), zero, zero,
                            "dis rand grid " + std::to_string( grid ) + " " + to_string( d ) + tag );
            c.near( trace( ts, TraceApproach::dis, rnd, lambda, 2, Direction::symmetric ), zero, zero,
                    "dis rand exact" + tag );
        }
}

// 2: perturbed pair. Grid tolerance is one grid step (1/8).
void c2( Criterion& c )
{
    for ( auto [ e1, e2 ] : { std::pair{ Rat( 0 ), Rat( 0 ) }, std::pair{ Rat( 1, 8 ), Rat( 1, 4 ) } } )
        for ( const Rat lambda : { Rat( 1 ), Rat( 1, 2 ) } )
        {
            const Model m = load( "perturbed.pts", { { "e1", e1 }, { "e2", e2 } } );
            const Pair st = pair_of( m, "s", "t" );
            const std::string tag = " e1=" + e1.str() + " e2=" + e2.str() + " lambda=" + lambda.str();
            const Rat eps = max( e1, e2 );
            c.near( trace( st, TraceApproach::tbt, det, lambda, 2, Direction::symmetric ), lambda * eps, zero,
                    "tbt det" + tag );
            c.near( trace( st, TraceApproach::tbt, rnd, lambda, 2, Direction::symmetric ), lambda * eps, zero,
                    "tbt rand" + tag );
            c.near( trace( st, TraceApproach::dis, det, lambda, 2, Direction::symmetric ), lambda / 2, zero,
                    "dis det" + tag );
            const Rat want = lambda * max( Rat( 1, 4 ) + e1, Rat( 1, 4 ) + e2 );
            c.near( trace( st, TraceApproach::dis, rnd, lambda, 2, Direction::symmetric, 8u ), want, Rat( 1, 8 ),
                    "dis rand grid 8" + tag );
        }
}

// 3: spectrum separations and the t/u equivalences.
void c3( Criterion& c )
{
    const Model m = load( "spectrum.pts" );
    for ( const Rat lambda : { Rat( 1 ), Rat( 1, 2 ) } )
    {
        const Pair st = pair_of( m, "s", "t" );
        const std::string tag = " lambda=" + lambda.str();
        c.near( trace( st, TraceApproach::tbt, det, lambda, 2, Direction::symmetric ), lambda / 2, zero,
                "tbt det m(s,t)" + tag );
        for ( auto sc : { det, rnd } )
            c.near( trace( st, TraceApproach::sup, sc, lambda, 2, Direction::symmetric ), zero, zero,
                    "sup " + to_string( sc ) + " m(s,t)" + tag );
        const Pair tu = pair_of( m, "t", "u" );
        for ( auto a : { TraceApproach::dis, TraceApproach::tbt, TraceApproach::sup } )
            for ( auto sc : { det, rnd } )
                c.near( trace( tu, a, sc, lambda, 2, Direction::symmetric ), zero, zero,
                        to_string( a ) + " " + to_string( sc ) + " m(t,u)" + tag );
    }
}

// 4: sup-det = sup-rand = tbt-rand on corpus pairs; random pairs via the property suite.
void c4( Criterion& c )
{
    property( c, "sup-coincidence", 200 );
    unsigned pairs = 0;
    for ( const auto& entry : std::filesystem::directory_iterator( g_corpus ) )
    {
        if ( entry.path().extension() != ".pts" )
            continue;
        const Model m = load_model( entry.path().string() );
        for ( const auto& a : m.systems )
            for ( const auto& b : m.systems )
            {
                const Pair p = pair_of( a, b );
                const auto ia = structure_info( p.u.pts, p.s ), ib = structure_info( p.u.pts, p.t );
                const unsigned depth = ( ia.acyclic && ib.acyclic ) ? std::max( *ia.depth, *ib.depth ) : 3;
                for ( const Rat lambda : { Rat( 1 ), Rat( 1, 2 ) } )
                {
                    const Rat sd = trace( p, TraceApproach::sup, det, lambda, depth, Direction::left );
                    const Rat sr = trace( p, TraceApproach::sup, rnd, lambda, depth, Direction::left );
                    const Rat tr = trace( p, TraceApproach::tbt, rnd, lambda, depth, Direction::left );
                    const std::string tag = entry.path().filename().string() + " " + a.name() + "," + b.name();
                    c.near( sr, sd, zero, "sup rand vs det " + tag );
                    c.near( tr, sd, zero, "tbt rand vs sup det " + tag );
                }
                ++pairs;
            }
    }
    c.expect( pairs >= 20, "corpus pairs: " + std::to_string( pairs ) );
}

// 5: tightness pair, lambda = 1.
void c5( Criterion& c )
{
    const Model m = load( "spectrum.pts" ), o = load( "linear.tests" );
    const Pts &zs = *m.find_system( "zs" ), &zt = *m.find_system( "zt" );
    const auto ss = parallel_compose( zs, zs ), tt = parallel_compose( zt, zt );
    const Pair single = pair_of( zs, zt ), twice = pair_of( ss.pts, tt.pts );
    const TestSuite lin = suite_of( o, { "ab", "ac" } );
    for ( auto sc : { det, rnd } )
    {
        const std::string tag = " " + to_string( sc );
        for ( auto a : { TraceApproach::tbt, TraceApproach::sup } )
        {
            c.near( trace( single, a, sc, 1, 2, Direction::symmetric ), Rat( 1, 2 ), zero,
                    "trace " + to_string( a ) + tag + " d(zs,zt)" );
            c.near( trace( twice, a, sc, 1, 2, Direction::symmetric ), Rat( 3, 4 ), zero,
                    "trace " + to_string( a ) + tag + " d(zs|zs,zt|zt)" );
        }
        for ( auto a : { TestingApproach::tbt, TestingApproach::sup } )
        {
            c.near( testing( single, lin, a, sc, 1, Direction::symmetric ), Rat( 1, 2 ), zero,
                    "testing " + to_string( a ) + tag + " d(zs,zt)" );
            c.near( testing( twice, lin, a, sc, 1, Direction::symmetric ), Rat( 3, 4 ), zero,
                    "testing " + to_string( a ) + tag + " d(zs|zs,zt|zt)" );
        }
    }
}

// 6: testing examples.
void c6( Criterion& c )
{
    const Model sp = load( "spectrum.pts" ), ab = load( "ab.tests" );
    const Pair tu = pair_of( sp, "t", "u" ), st = pair_of( sp, "s", "t" );
    for ( const Rat w : { Rat( 1 ), Rat( 1, 2 ) } )
    {
        const TestSuite o1 = suite_of( ab, { "o1" }, { w } );
        c.near( testing( tu, o1, TestingApproach::must, det, 1, Direction::left ), w, zero,
                "must(t,u) omega=" + w.str() );
        c.near( testing( tu, o1, TestingApproach::may, det, 1, Direction::left ), zero, zero,
                "may(t,u) omega=" + w.str() );
    }
    for ( const Rat lambda : { Rat( 1 ), Rat( 1, 2 ) } )
    {
        const TestSuite o2 = suite_of( ab, { "o2" } );
        c.near( testing( st, o2, TestingApproach::tbt, det, lambda, Direction::symmetric ), lambda / 2, zero,
                "tbt det (s,t) lambda=" + lambda.str() );
        c.near( testing( st, o2, TestingApproach::tbt, rnd, lambda, Direction::symmetric ), zero, zero,
                "tbt rand (s,t) lambda=" + lambda.str() );
        const TestSuite both = suite_of( ab, { "o1", "o2" } );
        c.near( testing( tu, both, TestingApproach::sup, det, lambda, Direction::symmetric ), zero, zero,
                "sup (t,u) lambda=" + lambda.str() );
        c.near( testing( tu, both, TestingApproach::tbt, det, lambda, Direction::symmetric ), lambda, zero,
                "tbt det (t,u) lambda=" + lambda.str() );
    }
    const Model inc = load( "incomparable.pts" );
    const Pair ist = pair_of( inc, "s", "t" );
    for ( const Rat w : { Rat( 1 ), Rat( 1, 2 ) } )
    {
        const TestSuite o2 = suite_of( ab, { "o2" }, { w } );
        c.near( testing( ist, o2, TestingApproach::may, det, 1, Direction::symmetric ), Rat( 7, 10 ) * w, zero,
                "may incomparable omega=" + w.str() );
        c.near( testing( ist, o2, TestingApproach::must, det, 1, Direction::symmetric ), Rat( 3, 10 ) * w, zero,
                "must incomparable omega=" + w.str() );
    }
    c.near( testing( ist, suite_of( ab, { "o1", "o2" } ), TestingApproach::sup, det, 1, Direction::symmetric ),
            Rat( 2, 5 ), zero, "sup incomparable" );
    const Model late = load( "late-choice.pts" ), biased = load( "biased.tests" );
    const Pair lst = pair_of( late, "s", "t" );
    const TestSuite oq = suite_of( biased, { "oq1", "oq2", "oq3" } );
    c.near( testing( lst, oq, TestingApproach::must, det, 1, Direction::symmetric ), Rat( 1, 2 ), zero,
            "must late-choice" );
    c.near( testing( lst, oq, TestingApproach::tbt, det, 1, Direction::symmetric ), zero, zero, "tbt late-choice" );
}

void c7( Criterion& c )
{
    for ( const char* s : { "axioms-trace", "axioms-testing", "kernel-trace", "kernel-testing" } )
        property( c, s, 200 );
}

// 8: spectrum inequalities on random instances plus fixed strictness witnesses.
void c8( Criterion& c )
{
    property( c, "spectrum-trace", 200 );
    property( c, "spectrum-testing", 200 );

    const Model br = load( "branching.pts", { { "p", Rat( 1, 2 ) } } );
    const Pair b = pair_of( br, "t", "sp" );
    c.expect( trace( b, TraceApproach::dis, rnd, 1, 2, Direction::symmetric ) <
                      trace( b, TraceApproach::dis, det, 1, 2, Direction::symmetric ),
              "strict: dis rand < dis det on branching p=1/2" );

    const Model pe = load( "perturbed.pts" );
    const Pair p = pair_of( pe, "s", "t" );
    c.expect( trace( p, TraceApproach::tbt, det, 1, 2, Direction::symmetric ) <
                      trace( p, TraceApproach::dis, det, 1, 2, Direction::symmetric ),
              "strict: tbt det < dis det on perturbed" );

    const Model sp = load( "spectrum.pts" ), ab = load( "ab.tests" );
    const Pair st = pair_of( sp, "s", "t" ), tu = pair_of( sp, "t", "u" );
    c.expect( trace( st, TraceApproach::sup, det, 1, 2, Direction::symmetric ) <
                      trace( st, TraceApproach::tbt, det, 1, 2, Direction::symmetric ),
              "strict: sup < tbt det on spectrum s,t" );
    const TestSuite o2 = suite_of( ab, { "o2" } ), both = suite_of( ab, { "o1", "o2" } );
    c.expect( testing( st, o2, TestingApproach::tbt, rnd, 1, Direction::symmetric ) <
                      testing( st, o2, TestingApproach::tbt, det, 1, Direction::symmetric ),
              "strict: tbt-testing rand < det on spectrum s,t" );
    c.expect( testing( tu, both, TestingApproach::sup, det, 1, Direction::symmetric ) <
                      testing( tu, both, TestingApproach::tbt, rnd, 1, Direction::symmetric ),
              "strict: sup-testing < tbt-testing rand on spectrum t,u" );
    const TestSuite o1 = suite_of( ab, { "o1" } );
    c.expect( testing( tu, o1, TestingApproach::may, det, 1, Direction::left ) <
                      testing( tu, o1, TestingApproach::must, det, 1, Direction::left ),
              "strict: may < must on spectrum t,u" );

    const Model inc = load( "incomparable.pts" );
    const Pair ist = pair_of( inc, "s", "t" );
    c.expect( testing( ist, both, TestingApproach::sup, det, 1, Direction::symmetric ) <
                      testing( ist, both, TestingApproach::may, det, 1, Direction::symmetric ),
              "strict: sup-testing < may on incomparable" );

    const Model late = load( "late-choice.pts" ), biased = load( "biased.tests" );
    const Pair lst = pair_of( late, "s", "t" );
    const TestSuite oq = suite_of( biased, { "oq1", "oq2", "oq3" } );
    c.expect( testing( lst, oq, TestingApproach::tbt, det, 1, Direction::symmetric ) <
                      testing( lst, oq, TestingApproach::must, det, 1, Direction::symmetric ),
              "strict: tbt-testing < must on late-choice" );
}

void c9( Criterion& c )
{
    property( c, "nonexp-trace", 100 );
    property( c, "nonexp-testing", 100 );
}

void c10( Criterion& c ) { property( c, "backward-compat", 100 ); }

} // namespace

int main( int argc, char** argv )
{
    if ( argc < 2 )
    {
        std::cerr << "usage: ptsdist_acceptance CORPUS_DIR [--known-failure N]...\n";
        return 64;
    }
    g_corpus = argv[ 1 ];
    std::set< int > known;
    for ( int i = 2; i + 1 < argc; i += 2 )
        if ( std::string( argv[ i ] ) == "--known-failure" )
            known.insert( std::stoi( argv[ i + 1 ] ) );

    const std::vector< void ( * )( Criterion& ) > all{ c1, c2, c3, c4, c5, c6, c7, c8, c9, c10 };
    std::set< int > failed;
    const auto start = std::chrono::steady_clock::now();
    for ( std::size_t k = 0; k < all.size(); ++k )
    {
        Criterion c;
        const auto t0 = std::chrono::steady_clock::now();
        try
        {
            all[ k ]( c );
        }
        catch ( const std::exception& e )
        {
            c.expect( false, std::string( "exception: " ) + e.what() );
        }
        const auto ms =
                std::chrono::duration_cast< std::chrono::milliseconds >( std::chrono::steady_clock::now() - t0 ).count();
        const int n = static_cast< int >( k + 1 );
        std::cout << "criterion " << n << ": " << ( c.pass ? "PASS" : "FAIL" ) << " (" << c.checks << " checks, "
                  << ms << " ms)" << ( !c.pass && known.contains( n ) ? " [known failure]" : "" ) << '\n';
        for ( const auto& p : c.problems )
            std::cout << "    " << p << '\n';
        if ( !c.pass )
            failed.insert( n );
    }
    const auto total =
            std::chrono::duration_cast< std::chrono::seconds >( std::chrono::steady_clock::now() - start ).count();
    std::cout << "total: " << ( all.size() - failed.size() ) << "/" << all.size() << " criteria pass, " << total
              << " s\n";
    if ( failed != known )
    {
        std::cout << "failing criteria differ from the declared known failures\n";
        return 1;
    }
    return 0;
}
