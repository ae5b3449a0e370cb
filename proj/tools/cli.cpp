#include "cli.hpp"

#include "record.hpp"

#include "ptsdist/compose.hpp"
#include "ptsdist/errors.hpp"
#include "ptsdist/graph.hpp"
#include "ptsdist/model_format.hpp"
#include "ptsdist/properties.hpp"
#include "ptsdist/relations.hpp"
#include "ptsdist/structure.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#ifndef PTSDIST_DEFAULT_CORPUS
#define PTSDIST_DEFAULT_CORPUS "corpus"
#endif

namespace ptsdist::cli
{

namespace
{

namespace fs = std::filesystem;

Rat parse_rat( const std::string& text, const std::string& what )
{
    Rat r;
    if ( !Rat::try_parse( text, r ) )
        throw UsageError( what + ": not a rational number: '" + text + "'" );
    return r;
}

struct Globals
{
    bool json = false;
    std::vector< std::string > params; // NAME=VALUE
    std::string dir;                   // base for relative paths

    std::map< std::string, Rat > overrides() const
    {
        std::map< std::string, Rat > out;
        for ( const auto& p : params )
        {
            auto eq = p.find( '=' );
            if ( eq == std::string::npos || eq == 0 )
                throw UsageError( "--param expects NAME=VALUE, got '" + p + "'" );
            out[ p.substr( 0, eq ) ] = parse_rat( p.substr( eq + 1 ), "--param " + p.substr( 0, eq ) );
        }
        return out;
    }

    std::string path( const std::string& file ) const
    {
        if ( dir.empty() || fs::path( file ).is_absolute() )
            return file;
        return ( fs::path( dir ) / file ).string();
    }
};

// Loads a model applying the --param overrides that it declares.
struct Loader
{
    explicit Loader( const Globals& globals ) : g( globals ), pending( globals.overrides() ) {}

    const Globals& g;
    std::map< std::string, Rat > pending;
    std::set< std::string > used;

    Model load( const std::string& file )
    {
        const std::string p = g.path( file );
        const Model plain = load_model( p );
        ParseOptions opts;
        for ( const auto& [ name, _ ] : plain.params )
            if ( auto it = pending.find( name ); it != pending.end() )
            {
                opts.overrides[ name ] = it->second;
                used.insert( name );
            }
        return opts.overrides.empty() ? plain : load_model( p, opts );
    }

    void finish() const
    {
        for ( const auto& [ name, _ ] : pending )
            if ( !used.contains( name ) )
                throw UsageError( "--param " + name + " matches no declared param" );
    }
};

struct Ref
{
    std::size_t block = 0;
    StateId state = 0;
};

// A process is named by a block (its init state), "block.state", or a state
// name that occurs in exactly one block.
Ref resolve( const Model& m, const std::string& ref )
{
    for ( std::size_t b = 0; b < m.systems.size(); ++b )
        if ( m.systems[ b ].name() == ref )
        {
            if ( !m.systems[ b ].root() )
                throw UsageError( "block '" + ref + "' has no init state" );
            return { b, *m.systems[ b ].root() };
        }
    if ( auto dot = ref.find( '.' ); dot != std::string::npos )
        for ( std::size_t b = 0; b < m.systems.size(); ++b )
            if ( m.systems[ b ].name() == ref.substr( 0, dot ) )
                if ( auto s = m.systems[ b ].find_state( ref.substr( dot + 1 ) ) )
                    return { b, *s };
    std::vector< Ref > hits;
    for ( std::size_t b = 0; b < m.systems.size(); ++b )
        if ( auto s = m.systems[ b ].find_state( ref ) )
            hits.push_back( { b, *s } );
    if ( hits.size() == 1 )
        return hits.front();
    if ( hits.empty() )
        throw UsageError( "no process named '" + ref + "'" );
    throw UsageError( "process name '" + ref + "' is ambiguous; use block.state" );
}

// Two processes in one system: their block, or the union of their blocks.
struct Pair
{
    Pts joined;
    const Pts* p = nullptr;
    StateId s = 0, t = 0;
};

Pair make_pair( const Model& m, const std::string& s, const std::string& t )
{
    const Ref a = resolve( m, s ), b = resolve( m, t );
    Pair out;
    if ( a.block == b.block )
    {
        out.p = &m.systems[ a.block ];
        out.s = a.state;
        out.t = b.state;
        return out;
    }
    auto u = disjoint_union( { &m.systems[ a.block ], &m.systems[ b.block ] } );
    out.joined = std::move( u.pts );
    out.p = &out.joined;
    out.s = u.offsets[ 0 ] + a.state;
    out.t = u.offsets[ 1 ] + b.state;
    return out;
}

unsigned default_depth( const Pts& p, std::initializer_list< StateId > roots )
{
    unsigned d = 1;
    for ( auto r : roots )
    {
        auto info = structure_info( p, r );
        if ( !info.acyclic )
            throw UsageError( "--depth is required for cyclic systems" );
        d = std::max( d, *info.depth );
    }
    return d;
}

SchedulerMode::Class parse_sched( const std::string& s )
{
    return s == "rand" ? SchedulerMode::Class::rand : SchedulerMode::Class::det;
}

TraceApproach parse_trace_approach( const std::string& s )
{
    if ( s == "dis" )
        return TraceApproach::dis;
    if ( s == "sup" )
        return TraceApproach::sup;
    if ( s == "tbt" )
        return TraceApproach::tbt;
    throw UsageError( "trace approach must be dis, tbt or sup" );
}

TestingApproach parse_testing_approach( const std::string& s )
{
    const std::map< std::string, TestingApproach > m{ { "may", TestingApproach::may },
                                                       { "must", TestingApproach::must },
                                                       { "mm", TestingApproach::mm },
                                                       { "tbt", TestingApproach::tbt },
                                                       { "sup", TestingApproach::sup } };
    auto it = m.find( s );
    if ( it == m.end() )
        throw UsageError( "testing approach must be may, must, mm, tbt or sup" );
    return it->second;
}

Direction parse_hemi( const std::string& s )
{
    if ( s.empty() )
        return Direction::symmetric;
    return s == "right" ? Direction::right : Direction::left;
}

Json params_json( const Model& m )
{
    Json j = Json::object();
    for ( const auto& [ name, v ] : m.params )
        j[ name ] = v.str();
    return j;
}

// Options shared by the commands that pick a distance.
struct MetricOpts
{
    std::string approach;
    std::string sched = "det";
    std::string lambda = "1";
    std::optional< unsigned > depth;
    std::string hemi;
    std::optional< unsigned > grid;
    std::string suite;
    std::vector< std::string > tests;
    std::string omega;

    void add_to( CLI::App* app, bool trace, bool testing, bool hemi_flag )
    {
        std::vector< std::string > names;
        if ( trace )
            names = { "dis", "tbt", "sup" };
        if ( testing )
            for ( const char* n : { "may", "must", "mm", "tbt", "sup" } )
                if ( std::find( names.begin(), names.end(), n ) == names.end() )
                    names.push_back( n );
        app->add_option( "--approach", approach, "Distance approach" )->check( CLI::IsMember( names ) );
        app->add_option( "--sched", sched, "Scheduler class" )->check( CLI::IsMember( { "det", "rand" } ) );
        app->add_option( "--lambda", lambda, "Discount per trace step, in (0,1]" );
        app->add_option( "--depth", depth, "Trace length bound (default: full depth of acyclic inputs)" );
        if ( hemi_flag )
            app->add_option( "--hemi", hemi, "One direction only: left is h(s,t), right is h(t,s)" )
                    ->check( CLI::IsMember( { "left", "right" } ) );
        if ( trace )
            app->add_option( "--grid", grid, "dis+rand only: sup over grid resolutions with step 1/N" );
        if ( testing )
        {
            app->add_option( "--suite", suite, "Model file whose npt blocks form the test suite" );
            app->add_option( "--tests", tests, "Use only these tests of the suite" )->delimiter( ',' );
            app->add_option( "--omega", omega, "File of 'test weight' lines" );
        }
    }
};

TestSuite load_suite( Loader& loader, const MetricOpts& o, const Model* fallback )
{
    Model owned;
    const Model* m = fallback;
    if ( !o.suite.empty() )
    {
        owned = loader.load( o.suite );
        m = &owned;
    }
    if ( !m || m->tests.empty() )
        throw UsageError( "no tests: pass --suite with a file containing npt blocks" );

    std::map< std::string, Rat > weights;
    if ( !o.omega.empty() )
    {
        std::ifstream in( loader.g.path( o.omega ) );
        if ( !in )
            throw ParseError( 0, 0, "cannot open '" + o.omega + "'" );
        std::string line;
        std::size_t n = 0;
        while ( std::getline( in, line ) )
        {
            ++n;
            if ( auto h = line.find( '#' ); h != std::string::npos )
                line.resize( h );
            std::istringstream ls( line );
            std::string name, w, extra;
            if ( !( ls >> name ) )
                continue;
            Rat r;
            if ( !( ls >> w ) || ( ls >> extra ) || !Rat::try_parse( w, r ) )
                throw ParseError( n, 1, o.omega + ": expected 'test weight'" );
            weights[ name ] = r;
        }
    }

    TestSuite suite;
    for ( const auto& t : m->tests )
    {
        if ( !o.tests.empty() && std::find( o.tests.begin(), o.tests.end(), t.name() ) == o.tests.end() )
            continue;
        auto it = weights.find( t.name() );
        suite.add( t, it == weights.end() ? Rat( 1 ) : it->second );
    }
    for ( const auto& n : o.tests )
        if ( !m->find_test( n ) )
            throw UsageError( "no test named '" + n + "'" );
    for ( const auto& [ n, _ ] : weights )
        if ( !m->find_test( n ) )
            throw UsageError( "omega names unknown test '" + n + "'" );
    return suite;
}

std::pair< std::string, std::string > split_ref( const std::string& arg )
{
    auto c = arg.rfind( ':' );
    if ( c == std::string::npos || c == 0 || c + 1 == arg.size() )
        throw UsageError( "expected FILE:PROCESS, got '" + arg + "'" );
    return { arg.substr( 0, c ), arg.substr( c + 1 ) };
}

// ---------------------------------------------------------------------------

struct Context
{
    Globals g;
    std::ostream& out;
    std::ostream& err;
    int code = exit_code::ok;
};

void emit( Context& c, Json j, const std::function< void() >& human )
{
    if ( c.g.json )
        c.out << j.dump() << '\n';
    else
        human();
}

struct PairArgs
{
    std::string file, s, t;

    void add_to( CLI::App* app )
    {
        app->add_option( "file", file, "Model file" )->required();
        app->add_option( "s", s, "First process" )->required();
        app->add_option( "t", t, "Second process" )->required();
    }
};

void run_trace( Context& c, const PairArgs& a, const MetricOpts& o )
{
    Loader loader( c.g );
    const Model m = loader.load( a.file );
    loader.finish();
    const Pair pr = make_pair( m, a.s, a.t );
    TraceMetricSpec spec;
    spec.approach = parse_trace_approach( o.approach.empty() ? "tbt" : o.approach );
    spec.scheduler = parse_sched( o.sched );
    spec.lambda = parse_rat( o.lambda, "--lambda" );
    spec.depth = o.depth ? *o.depth : default_depth( *pr.p, { pr.s, pr.t } );
    spec.direction = parse_hemi( o.hemi );
    spec.grid = o.grid;
    const auto r = trace_distance( *pr.p, pr.s, pr.t, spec );

    Json j;
    j[ "command" ] = "trace";
    j[ "file" ] = a.file;
    j[ "s" ] = a.s;
    j[ "t" ] = a.t;
    j[ "params" ] = params_json( m );
    j[ "grid" ] = spec.grid ? Json( *spec.grid ) : Json( nullptr );
    j[ "result" ] = metric_json( r );
    emit( c, std::move( j ), [ & ] { print_metric( c.out, r ); } );
}

void run_test( Context& c, const PairArgs& a, const MetricOpts& o )
{
    Loader loader( c.g );
    const Model m = loader.load( a.file );
    const TestSuite suite = load_suite( loader, o, &m );
    loader.finish();
    const Pair pr = make_pair( m, a.s, a.t );
    TestingMetricSpec spec;
    spec.approach = parse_testing_approach( o.approach.empty() ? "may" : o.approach );
    spec.scheduler = parse_sched( o.sched );
    spec.lambda = parse_rat( o.lambda, "--lambda" );
    spec.depth = o.depth;
    spec.direction = parse_hemi( o.hemi );
    const auto r = testing_distance( *pr.p, pr.s, pr.t, suite, spec );

    Json j;
    j[ "command" ] = "test";
    j[ "file" ] = a.file;
    j[ "s" ] = a.s;
    j[ "t" ] = a.t;
    j[ "params" ] = params_json( m );
    Json tests = Json::array();
    for ( std::size_t k = 0; k < suite.tests.size(); ++k )
        tests.push_back( Json{ { "name", suite.tests[ k ].name() }, { "omega", suite.weight( k ).str() } } );
    j[ "suite" ] = std::move( tests );
    j[ "result" ] = metric_json( r );
    emit( c, std::move( j ), [ & ] { print_metric( c.out, r ); } );
}

struct RobustArgs
{
    std::string spec, impl, epsilon, view = "lower";
};

void run_robust( Context& c, const RobustArgs& a, const MetricOpts& o )
{
    Loader loader( c.g );
    const auto [ sf, sp ] = split_ref( a.spec );
    const auto [ inf, ip ] = split_ref( a.impl );
    const Model ms = loader.load( sf );
    const Model mi = loader.load( inf );
    const Ref rs = resolve( ms, sp ), ri = resolve( mi, ip );
    const Pts& ps = ms.systems[ rs.block ];
    const Pts& pi = mi.systems[ ri.block ];
    const Rat eps = parse_rat( a.epsilon, "--epsilon" );

    MetricSelector sel;
    TestSuite suite;
    if ( !o.suite.empty() )
    {
        suite = load_suite( loader, o, nullptr );
        TestingMetricSpec spec;
        spec.approach = parse_testing_approach( o.approach.empty() ? "may" : o.approach );
        spec.scheduler = parse_sched( o.sched );
        spec.lambda = parse_rat( o.lambda, "--lambda" );
        spec.depth = o.depth;
        sel.spec = spec;
        sel.suite = &suite;
    }
    else
    {
        TraceMetricSpec spec;
        spec.approach = parse_trace_approach( o.approach.empty() ? "tbt" : o.approach );
        spec.scheduler = parse_sched( o.sched );
        spec.lambda = parse_rat( o.lambda, "--lambda" );
        spec.grid = o.grid;
        if ( o.depth )
            spec.depth = *o.depth;
        else
            spec.depth = std::max( default_depth( ps, { rs.state } ), default_depth( pi, { ri.state } ) );
        sel.spec = spec;
    }
    loader.finish();
    const auto v = check_robustness( ps, rs.state, pi, ri.state, eps, sel,
                                     a.view == "upper" ? RobustView::upper : RobustView::lower );

    Json j;
    j[ "command" ] = "robust";
    j[ "spec" ] = a.spec;
    j[ "impl" ] = a.impl;
    j[ "result" ] = verdict_json( v );
    emit( c, std::move( j ), [ & ] {
        c.out << "verdict=" << to_string( v.verdict ) << '\n';
        c.out << "epsilon=" << v.epsilon.str() << '\n';
        c.out << "view=" << to_string( v.view ) << '\n';
        print_metric( c.out, v.measured );
    } );
    c.code = v.verdict == Verdict::holds ? exit_code::ok
                                         : ( v.verdict == Verdict::fails ? exit_code::failure : exit_code::inconclusive );
}

struct RelationArgs
{
    std::string rel;
    bool equiv = false;
};

void run_relation( Context& c, const PairArgs& a, const RelationArgs& ra, const MetricOpts& o )
{
    const auto kind = parse_relation_kind( ra.rel );
    if ( !kind )
        throw UsageError( "unknown relation '" + ra.rel + "'" );
    Loader loader( c.g );
    const Model m = loader.load( a.file );
    TestSuite suite;
    RelationQuery q;
    q.kind = *kind;
    q.equivalence = ra.equiv;
    q.scheduler = parse_sched( o.sched );
    if ( is_testing( *kind ) )
    {
        suite = load_suite( loader, o, &m );
        q.suite = &suite;
    }
    loader.finish();
    const Pair pr = make_pair( m, a.s, a.t );
    if ( !is_testing( *kind ) )
        q.depth = o.depth ? *o.depth : default_depth( *pr.p, { pr.s, pr.t } );
    const auto r = check_relation( *pr.p, pr.s, pr.t, q );

    Json j;
    j[ "command" ] = "relation";
    j[ "file" ] = a.file;
    j[ "s" ] = a.s;
    j[ "t" ] = a.t;
    j[ "params" ] = params_json( m );
    j[ "result" ] = relation_json( r, q );
    emit( c, std::move( j ), [ & ] {
        c.out << "holds=" << ( r.holds ? "true" : "false" ) << '\n';
        c.out << "relation=" << to_string( q.kind ) << ' ' << ( q.equivalence ? "equivalence" : "preorder" ) << '\n';
        print_metric( c.out, r.measured );
    } );
    c.code = r.holds ? exit_code::ok : exit_code::failure;
}

struct ComposeArgs
{
    std::string file, p, q, output;
};

void run_compose( Context& c, const ComposeArgs& a )
{
    Loader loader( c.g );
    const Model m = loader.load( a.file );
    loader.finish();
    const Ref rp = resolve( m, a.p ), rq = resolve( m, a.q );
    const auto comp = parallel_compose( m.systems[ rp.block ], m.systems[ rq.block ], { { rp.state, rq.state } } );
    const std::string text = emit_pts( comp.pts );
    if ( a.output.empty() )
    {
        c.out << text;
        return;
    }
    std::ofstream f( c.g.path( a.output ) );
    if ( !f )
        throw ParseError( 0, 0, "cannot write '" + a.output + "'" );
    f << text;
}

struct PropertyArgs
{
    std::string suite = "all";
    unsigned trials = 200;
    std::uint64_t seed = 1;
    unsigned depth = 3;
    unsigned max_states = 6;
    bool no_shrink = false;
};

void run_properties( Context& c, const PropertyArgs& a )
{
    PropertyConfig cfg;
    cfg.trials = a.trials;
    cfg.seed = a.seed;
    cfg.depth = a.depth;
    cfg.gen.max_states = a.max_states;
    cfg.shrink = !a.no_shrink;
    std::vector< std::string > names;
    if ( a.suite == "all" )
        for ( const auto& info : property_suites() )
            names.push_back( info.name );
    else
        names.push_back( a.suite );

    bool ok = true;
    for ( const auto& n : names )
    {
        const auto rep = run_property_suite( n, cfg );
        ok = ok && rep.ok();
        emit( c, property_json( rep ), [ & ] {
            c.out << "suite=" << rep.name << " trials=" << rep.trials << " passed=" << rep.passed
                  << " skipped=" << rep.skipped << " failures=" << rep.failures.size()
                  << " status=" << ( rep.ok() ? "ok" : "failed" ) << ( rep.expect_failure ? " (self-test)" : "" )
                  << '\n';
            for ( const auto& f : rep.failures )
            {
                c.out << "  seed " << f.seed << ": " << f.message << '\n';
                c.out << "  shrunk: " << ( f.shrunk_still_fails ? f.shrunk_message : "no longer fails" ) << '\n';
                std::istringstream lines( f.counterexample );
                std::string line;
                while ( std::getline( lines, line ) )
                    c.out << "    " << line << '\n';
            }
        } );
    }
    c.code = ok ? exit_code::ok : exit_code::failure;
}

struct ExampleArgs
{
    bool verify = false;
    std::string corpus = PTSDIST_DEFAULT_CORPUS;
    std::string table = "expected.txt";
};

std::vector< std::string > split_ws( const std::string& s )
{
    std::istringstream is( s );
    std::vector< std::string > out;
    std::string w;
    while ( is >> w )
        out.push_back( w );
    return out;
}

std::string trim( const std::string& s )
{
    const auto b = s.find_first_not_of( " \t" );
    if ( b == std::string::npos )
        return "";
    return s.substr( b, s.find_last_not_of( " \t" ) - b + 1 );
}

void run_examples( Context& c, const ExampleArgs& a )
{
    const std::string dir = c.g.path( a.corpus );
    const std::string table = ( fs::path( dir ) / a.table ).string();
    std::ifstream in( table );
    if ( !in )
        throw ParseError( 0, 0, "cannot open '" + table + "'" );

    struct Row
    {
        std::size_t line;
        std::string id, command, expected, origin;
    };
    std::vector< Row > rows;
    std::string line;
    for ( std::size_t n = 1; std::getline( in, line ); ++n )
    {
        if ( trim( line ).empty() || trim( line )[ 0 ] == '#' )
            continue;
        std::vector< std::string > cols;
        std::size_t start = 0, bar;
        while ( ( bar = line.find( '|', start ) ) != std::string::npos )
        {
            cols.push_back( trim( line.substr( start, bar - start ) ) );
            start = bar + 1;
        }
        cols.push_back( trim( line.substr( start ) ) );
        if ( cols.size() != 4 )
            throw ParseError( n, 1, table + ": expected 'id | command | expected | origin'" );
        rows.push_back( { n, cols[ 0 ], cols[ 1 ], cols[ 2 ], cols[ 3 ] } );
    }

    unsigned failed = 0;
    for ( const auto& r : rows )
    {
        if ( !a.verify )
        {
            c.out << r.id << " [" << r.origin << "] ptsdist " << r.command << "  =>  " << r.expected << '\n';
            continue;
        }
        auto args = split_ws( r.command );
        args.insert( args.begin(), { "-C", dir } );
        std::ostringstream o, e;
        const int code = cli_main( args, o, e );
        std::set< std::string > got;
        std::istringstream lines( o.str() );
        while ( std::getline( lines, line ) )
            got.insert( line );
        got.insert( "exit=" + std::to_string( code ) );
        std::vector< std::string > missing;
        for ( const auto& want : split_ws( r.expected ) )
            if ( !got.contains( want ) )
                missing.push_back( want );
        if ( missing.empty() )
        {
            c.out << "PASS " << r.id << '\n';
            continue;
        }
        ++failed;
        c.out << "FAIL " << r.id << ": missing";
        for ( const auto& m : missing )
            c.out << ' ' << m;
        c.out << " (exit " << code << ")";
        if ( !e.str().empty() )
            c.out << ": " << trim( e.str().substr( 0, e.str().find( '\n' ) ) );
        c.out << '\n';
    }
    if ( a.verify )
    {
        c.out << ( failed ? "FAILED " : "OK " ) << rows.size() - failed << "/" << rows.size() << " examples\n";
        c.code = failed ? exit_code::failure : exit_code::ok;
    }
}

struct FileArgs
{
    std::string file, block;
};

void run_dot( Context& c, const FileArgs& a )
{
    Loader loader( c.g );
    const Model m = loader.load( a.file );
    loader.finish();
    if ( a.block.empty() )
    {
        c.out << emit_dot( m );
        return;
    }
    if ( const Pts* p = m.find_system( a.block ) )
        c.out << emit_dot( *p );
    else if ( const Npt* o = m.find_test( a.block ) )
        c.out << emit_dot( *o );
    else
        throw UsageError( "no block named '" + a.block + "'" );
}

void run_validate( Context& c, const FileArgs& a )
{
    Loader loader( c.g );
    const Model m = loader.load( a.file );
    loader.finish();
    const std::string once = emit_model( m );
    if ( emit_model( parse_model( once ) ) != once )
        throw std::logic_error( "emitted model does not reparse identically" );
    Json j;
    j[ "command" ] = "validate";
    j[ "file" ] = a.file;
    j[ "systems" ] = m.systems.size();
    j[ "tests" ] = m.tests.size();
    j[ "params" ] = params_json( m );
    emit( c, std::move( j ), [ & ] {
        c.out << "valid=true\nsystems=" << m.systems.size() << "\ntests=" << m.tests.size() << '\n';
    } );
}

} // namespace

int cli_main( const std::vector< std::string >& args, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Behavioral hemimetrics and pseudometrics for probabilistic transition systems", "ptsdist" };
    app.require_subcommand( 1 );
    app.fallthrough();

    Context c{ {}, out, err };
    app.add_flag( "--json", c.g.json, "One JSON record per result" );
    app.add_option( "--param", c.g.params, "Override a model param, NAME=VALUE (repeatable)" )
            ->multi_option_policy( CLI::MultiOptionPolicy::TakeAll );
    app.add_option( "-C,--dir", c.g.dir, "Resolve relative file names against this directory" );

    std::function< void() > action;

    PairArgs trace_args;
    MetricOpts trace_opts;
    auto* trace = app.add_subcommand( "trace", "Trace distance between two processes" );
    trace_args.add_to( trace );
    trace_opts.add_to( trace, true, false, true );
    trace->callback( [ & ] { action = [ & ] { run_trace( c, trace_args, trace_opts ); }; } );

    PairArgs test_args;
    MetricOpts test_opts;
    auto* test = app.add_subcommand( "test", "Testing distance between two processes" );
    test_args.add_to( test );
    test_opts.add_to( test, false, true, true );
    test->callback( [ & ] { action = [ & ] { run_test( c, test_args, test_opts ); }; } );

    RobustArgs robust_args;
    MetricOpts robust_opts;
    auto* robust = app.add_subcommand( "robust", "Is the implementation epsilon-robust wrt. the specification?" );
    robust->add_option( "spec", robust_args.spec, "FILE:PROCESS of the specification" )->required();
    robust->add_option( "impl", robust_args.impl, "FILE:PROCESS of the implementation" )->required();
    robust->add_option( "--epsilon", robust_args.epsilon, "Tolerance" )->required();
    robust->add_option( "--view", robust_args.view, "lower: h(spec,impl), upper: h(impl,spec)" )
            ->check( CLI::IsMember( { "lower", "upper" } ) );
    robust_opts.add_to( robust, true, true, false );
    robust->callback( [ & ] { action = [ & ] { run_robust( c, robust_args, robust_opts ); }; } );

    PairArgs rel_args;
    RelationArgs rel;
    MetricOpts rel_opts;
    auto* relation = app.add_subcommand( "relation", "Check a preorder or equivalence" );
    rel_args.add_to( relation );
    relation->add_option( "--rel", rel.rel, "tr-dis, tr-tbt, tr-sup, te-may, te-must, te-mm, te-tbt or te-sup" )
            ->required();
    relation->add_flag( "--equiv", rel.equiv, "Equivalence instead of preorder" );
    relation->add_option( "--sched", rel_opts.sched, "Scheduler class" )->check( CLI::IsMember( { "det", "rand" } ) );
    relation->add_option( "--depth", rel_opts.depth, "Trace length bound" );
    relation->add_option( "--suite", rel_opts.suite, "Model file with the test suite" );
    relation->add_option( "--tests", rel_opts.tests, "Use only these tests" )->delimiter( ',' );
    relation->callback( [ & ] { action = [ & ] { run_relation( c, rel_args, rel, rel_opts ); }; } );

    ComposeArgs comp_args;
    auto* compose = app.add_subcommand( "compose", "Synchronous parallel composition of two processes" );
    compose->add_option( "file", comp_args.file, "Model file" )->required();
    compose->add_option( "p", comp_args.p, "First process" )->required();
    compose->add_option( "q", comp_args.q, "Second process" )->required();
    compose->add_option( "-o,--output", comp_args.output, "Write the composed block here" );
    compose->callback( [ & ] { action = [ & ] { run_compose( c, comp_args ); }; } );

    PropertyArgs prop_args;
    auto* props = app.add_subcommand( "properties", "Run property suites on random systems" );
    std::vector< std::string > suite_names{ "all" };
    for ( const auto& info : property_suites() )
        suite_names.push_back( info.name );
    props->add_option( "--suite", prop_args.suite, "Suite name or all" )->check( CLI::IsMember( suite_names ) );
    props->add_option( "--trials", prop_args.trials, "Trials per suite" );
    props->add_option( "--seed", prop_args.seed, "Base seed" );
    props->add_option( "--depth", prop_args.depth, "Trace length bound" )->check( CLI::Range( 1u, 6u ) );
    props->add_option( "--max-states", prop_args.max_states, "States per random system" )->check( CLI::Range( 1u, 12u ) );
    props->add_flag( "--no-shrink", prop_args.no_shrink, "Report counterexamples unshrunk" );
    props->callback( [ & ] { action = [ & ] { run_properties( c, prop_args ); }; } );

    ExampleArgs ex_args;
    auto* examples = app.add_subcommand( "examples", "List or verify the bundled examples" );
    examples->add_flag( "--verify", ex_args.verify, "Recompute every example and compare" );
    examples->add_option( "--corpus", ex_args.corpus, "Corpus directory" );
    examples->add_option( "--table", ex_args.table, "Expected-results table inside the corpus" );
    examples->callback( [ & ] { action = [ & ] { run_examples( c, ex_args ); }; } );

    FileArgs dot_args;
    auto* dot = app.add_subcommand( "dot", "Graphviz rendering of a model or one block" );
    dot->add_option( "file", dot_args.file, "Model file" )->required();
    dot->add_option( "block", dot_args.block, "Block name" );
    dot->callback( [ & ] { action = [ & ] { run_dot( c, dot_args ); }; } );

    FileArgs val_args;
    auto* validate = app.add_subcommand( "validate", "Parse, validate and round-trip a model file" );
    validate->add_option( "file", val_args.file, "Model file" )->required();
    validate->callback( [ & ] { action = [ & ] { run_validate( c, val_args ); }; } );

    try
    {
        std::vector< std::string > reversed( args.rbegin(), args.rend() );
        app.parse( reversed );
    }
    catch ( const CLI::ParseError& e )
    {
        const int code = app.exit( e, out, err );
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try
    {
        action();
        return c.code;
    }
    catch ( const UsageError& e )
    {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    }
    catch ( const ParseError& e )
    {
        err << "error: " << e.what() << '\n';
        return exit_code::data;
    }
    catch ( const ValidationError& e )
    {
        err << "invalid model: " << e.what() << '\n';
        return exit_code::data;
    }
    catch ( const UnsupportedInput& e )
    {
        err << "unsupported input: " << e.what() << '\n';
        return exit_code::data;
    }
    catch ( const CapExceeded& e )
    {
        err << "cap exceeded: " << e.what() << '\n';
        return exit_code::internal;
    }
    catch ( const std::exception& e )
    {
        err << "internal error: " << e.what() << '\n';
        return exit_code::internal;
    }
}

} // namespace ptsdist::cli
