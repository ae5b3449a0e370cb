#include "ptsdist/rational.hpp"

#include <gtest/gtest.h>

using ptsdist::Rat;

TEST( Rational, ParsesFractionsAndDecimalsExactly )
{
    EXPECT_EQ( Rat::parse( "1/2" ), Rat( 1, 2 ) );
    EXPECT_EQ( Rat::parse( "0.25" ), Rat( 1, 4 ) );
    EXPECT_EQ( Rat::parse( "-.5" ), Rat( -1, 2 ) );
    EXPECT_EQ( Rat::parse( "6/8" ).str(), "3/4" );
    EXPECT_EQ( Rat::parse( "0.1" ) * 10, Rat( 1 ) );
}

TEST( Rational, RejectsMalformedText )
{
    Rat r;
    for ( const char* bad : { "", "1/0", "1e3", "abc", "1/2/3", "0.5.1", "1 /2" } )
        EXPECT_FALSE( Rat::try_parse( bad, r ) ) << bad;
    EXPECT_THROW( Rat::parse( "x" ), std::invalid_argument );
}

TEST( Rational, ArithmeticHelpers )
{
    EXPECT_EQ( ptsdist::pow( Rat( 1, 2 ), 3 ), Rat( 1, 8 ) );
    EXPECT_EQ( ptsdist::pow( Rat( 3, 7 ), 0 ), Rat( 1 ) );
    EXPECT_EQ( ptsdist::monus( Rat( 1, 4 ), Rat( 1, 2 ) ), Rat( 0 ) );
    EXPECT_EQ( ptsdist::monus( Rat( 3, 4 ), Rat( 1, 2 ) ), Rat( 1, 4 ) );
    EXPECT_EQ( ptsdist::abs( Rat( -2, 3 ) ), Rat( 2, 3 ) );
    EXPECT_EQ( Rat( 1, 3 ).decimal( 4 ), "0.3333" );
    EXPECT_EQ( Rat( 1, 2 ).decimal(), "0.5" );
    EXPECT_EQ( std::hash< Rat >{}( Rat( 2, 4 ) ), std::hash< Rat >{}( Rat( 1, 2 ) ) );
}
