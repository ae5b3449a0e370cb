#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using ptsdist::cli::cli_main;
namespace code = ptsdist::cli::exit_code;

namespace
{

struct Run
{
    int code;
    std::string out, err;
};

Run run( std::vector< std::string > args )
{
    args.insert( args.begin(), { "-C", PTSDIST_CORPUS_DIR } );
    std::ostringstream out, err;
    const int c = cli_main( args, out, err );
    return { c, out.str(), err.str() };
}

} // namespace

TEST( Cli, TraceValueComesFirst )
{
    const auto r = run( { "trace", "branching.pts", "t", "sp", "--approach", "dis", "--hemi", "left" } );
    EXPECT_EQ( r.code, code::ok ) << r.err;
    EXPECT_EQ( r.out.rfind( "value=1/2\n", 0 ), 0u ) << r.out;
}

TEST( Cli, ParamOverrideAndBlockDotState )
{
    const auto r = run( { "--param", "p=1/4", "trace", "branching.pts", "sp.s", "t.t", "--approach", "tbt",
                          "--hemi", "right" } );
    EXPECT_EQ( r.code, code::ok ) << r.err;
    EXPECT_NE( r.out.find( "value=1/4\n" ), std::string::npos ) << r.out;
}

TEST( Cli, ExitCodes )
{
    EXPECT_EQ( run( { "--help" } ).code, code::ok );
    EXPECT_EQ( run( {} ).code, code::usage );
    EXPECT_EQ( run( { "trace", "branching.pts", "t" } ).code, code::usage );
    EXPECT_EQ( run( { "trace", "branching.pts", "t", "sp", "--approach", "xyz" } ).code, code::usage );
    EXPECT_EQ( run( { "trace", "branching.pts", "t", "nope" } ).code, code::usage );
    EXPECT_EQ( run( { "--param", "q=1", "trace", "branching.pts", "t", "sp" } ).code, code::usage );
    EXPECT_EQ( run( { "trace", "branching.pts", "t", "sp", "--lambda", "3/2" } ).code, code::usage );
    EXPECT_EQ( run( { "trace", "missing.pts", "t", "sp" } ).code, code::data );
    EXPECT_EQ( run( { "trace", "retry.pts", "lossy", "reliable" } ).code, code::usage );
    EXPECT_EQ( run( { "relation", "spectrum.pts", "s", "t", "--rel", "tr-tbt", "--equiv" } ).code, code::failure );
    EXPECT_EQ( run( { "relation", "spectrum.pts", "s", "t", "--rel", "tr-sup", "--equiv" } ).code, code::ok );
    EXPECT_EQ( run( { "robust", "spectrum.pts:t", "spectrum.pts:s", "--epsilon", "1" } ).code, code::ok );
    EXPECT_EQ( run( { "robust", "spectrum.pts:t", "spectrum.pts:s", "--epsilon", "1/4" } ).code, code::failure );
    EXPECT_EQ( run( { "robust", "retry.pts:reliable", "retry.pts:lossy", "--epsilon", "1/20", "--depth", "3",
                      "--lambda", "1/2" } )
                       .code,
               code::inconclusive );
    setenv( "PTSDIST_MAX_RESOLUTIONS", "2", 1 );
    EXPECT_EQ( run( { "trace", "branching.pts", "t", "sp", "--approach", "dis" } ).code, code::internal );
    unsetenv( "PTSDIST_MAX_RESOLUTIONS" );
}

TEST( Cli, MalformedModelIsADataError )
{
    const auto dir = std::filesystem::temp_directory_path() / "ptsdist_cli_test";
    std::filesystem::create_directories( dir );
    std::ofstream( dir / "bad.pts" ) << "pts x\n  states a b\n  actions go\n  trans a go -> b: 1/2\nend\n";
    std::ostringstream out, err;
    EXPECT_EQ( cli_main( { "-C", dir.string(), "validate", "bad.pts" }, out, err ), code::data );
    EXPECT_NE( err.str().find( "4:" ), std::string::npos ) << err.str();
}

TEST( Cli, JsonIsByteStable )
{
    const std::vector< std::string > args{ "--json", "test", "incomparable.pts", "s", "t", "--suite", "ab.tests",
                                           "--approach", "sup" };
    const auto a = run( args ), b = run( args );
    EXPECT_EQ( a.code, code::ok ) << a.err;
    EXPECT_EQ( a.out, b.out );
    EXPECT_EQ( std::count( a.out.begin(), a.out.end(), '\n' ), 1 );
    EXPECT_NE( a.out.find( "\"value\":\"2/5\"" ), std::string::npos ) << a.out;

    const std::vector< std::string > props{ "--json", "properties", "--suite", "generator", "--trials", "20" };
    EXPECT_EQ( run( props ).out, run( props ).out );
}

TEST( Cli, ComposeEmitsAParseableBlock )
{
    const auto r = run( { "compose", "spectrum.pts", "zs", "zt" } );
    ASSERT_EQ( r.code, code::ok ) << r.err;
    EXPECT_EQ( r.out.rfind( "pts ", 0 ), 0u );
    EXPECT_NE( r.out.find( "end" ), std::string::npos );
}

TEST( Cli, DotAndValidate )
{
    const auto d = run( { "dot", "spectrum.pts", "u" } );
    EXPECT_EQ( d.code, code::ok );
    EXPECT_EQ( d.out.rfind( "digraph \"u\"", 0 ), 0u );
    const auto v = run( { "validate", "biased.tests" } );
    EXPECT_EQ( v.code, code::ok );
    EXPECT_NE( v.out.find( "tests=3" ), std::string::npos );
}

TEST( Cli, ExamplesVerifyPasses )
{
    std::ostringstream out, err;
    const int c = cli_main( { "examples", "--verify", "--corpus", PTSDIST_CORPUS_DIR }, out, err );
    EXPECT_EQ( c, code::ok ) << out.str() << err.str();
}
