#include "common.hpp"

#include "ptsdist/errors.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace ptsdist;
using namespace ptsdist::testing;

namespace
{

const char* const kSmall = R"(param p = 1/3
pts x
  states x0 x1 x2
  actions a
  init x0
  trans x0 a -> x1: p, x2: 1 - p
end
)";

ParseError parse_error( std::string_view text )
{
    try
    {
        parse_model( text );
    }
    catch ( const ParseError& e )
    {
        return e;
    }
    ADD_FAILURE() << "no ParseError for:\n" << text;
    return ParseError( 0, 0, "" );
}

} // namespace

TEST( ModelFormat, ParamsAndOverrides )
{
    const Model m = parse_model( kSmall );
    const Pts& x = m.systems.at( 0 );
    EXPECT_EQ( x.transition( 0 ).target.prob( x.state( "x1" ) ), Rat( 1, 3 ) );
    ParseOptions o;
    o.overrides[ "p" ] = Rat( 1, 4 );
    const Model m2 = parse_model( kSmall, o );
    EXPECT_EQ( m2.systems.at( 0 ).transition( 0 ).target.prob( m2.systems[ 0 ].state( "x2" ) ), Rat( 3, 4 ) );
}

TEST( ModelFormat, ReportsLineOfInvalidDistribution )
{
    const auto e = parse_error( "pts x\n  states a b\n  actions go\n  trans a go -> b: 1/2\nend\n" );
    EXPECT_NE( std::string( e.what() ).find( "4:" ), std::string::npos ) << e.what();
}

TEST( ModelFormat, RejectsUnknownKeywordAndUnterminatedBlock )
{
    EXPECT_THROW( parse_model( "pts x\n  stats a\nend\n" ), ParseError );
    EXPECT_THROW( parse_model( "pts x\n  states a\n" ), ParseError );
    EXPECT_THROW( parse_model( "npt o\n  states o\n  actions a\n  init o\nend\n" ), ParseError ); // no success
}

TEST( ModelFormat, QuotedNamesSurviveRoundTrip )
{
    EXPECT_EQ( quote_name( "plain_1" ), "plain_1" );
    EXPECT_NE( quote_name( "has space" ), "has space" );
    const std::string text = "pts \"my sys\"\n  states \"s 0\" nil\n  actions \"a-b\"\n  init \"s 0\"\n"
                             "  trans \"s 0\" \"a-b\" -> nil\nend\n";
    const Model m = parse_model( text );
    EXPECT_EQ( m.systems.at( 0 ).name(), "my sys" );
    EXPECT_EQ( emit_model( parse_model( emit_model( m ) ) ), emit_model( m ) );
}

TEST( ModelFormat, EveryCorpusFileRoundTrips )
{
    unsigned files = 0;
    for ( const auto& entry : std::filesystem::directory_iterator( PTSDIST_CORPUS_DIR ) )
    {
        const auto ext = entry.path().extension();
        if ( ext != ".pts" && ext != ".tests" )
            continue;
        ++files;
        const Model m = load_model( entry.path().string() );
        EXPECT_FALSE( m.systems.empty() && m.tests.empty() ) << entry.path();
        const std::string once = emit_model( m );
        const Model again = parse_model( once );
        EXPECT_EQ( emit_model( again ), once ) << entry.path();
        ASSERT_EQ( again.systems.size(), m.systems.size() );
        for ( std::size_t i = 0; i < m.systems.size(); ++i )
            EXPECT_EQ( again.systems[ i ].transitions(), m.systems[ i ].transitions() ) << entry.path();
    }
    EXPECT_GE( files, 8u );
}

TEST( Pts, ValidationListsEveryProblem )
{
    PtsDraft d;
    d.name = "bad";
    d.states = { "a", "b" };
    d.actions = { "x" };
    d.transitions.push_back( { "a", "x", { { "b", Rat( 1, 2 ) } } } );
    d.transitions.push_back( { "a", "y", { { "c", Rat( 1 ) } } } );
    EXPECT_GE( validation_report( d ).size(), 3u );
    EXPECT_THROW( validate_pts( d ), ValidationError );
}

TEST( Pts, DisjointUnionPrefixesAndOffsets )
{
    const Model m = load( "spectrum.pts" );
    const Pts& s = sys( m, "s" );
    const auto u = disjoint_union( { &s, &s } );
    EXPECT_EQ( u.pts.num_states(), 2 * s.num_states() );
    EXPECT_EQ( u.offsets[ 1 ], s.num_states() );
    EXPECT_TRUE( u.pts.find_state( "s.s1" ) );
    EXPECT_TRUE( u.pts.find_state( "s#2.s1" ) );
    EXPECT_EQ( u.pts.transitions().size(), 2 * s.transitions().size() );
}
