#include "ptsdist/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ptsdist
{

Rat::Rat( long num, long den )
{
    if ( den == 0 )
        throw std::domain_error( "zero denominator" );
    _q = mpq_class( num, den );
    _q.canonicalize();
}

Rat& Rat::operator/=( const Rat& o )
{
    if ( o.is_zero() )
        throw std::domain_error( "division by zero" );
    _q /= o._q;
    return *this;
}

namespace
{

bool all_digits( std::string_view s )
{
    if ( s.empty() )
        return false;
    for ( char c : s )
        if ( !std::isdigit( static_cast< unsigned char >( c ) ) )
            return false;
    return true;
}

} // namespace

bool Rat::try_parse( std::string_view text, Rat& out )
{
    bool negative = false;
    if ( !text.empty() && ( text.front() == '-' || text.front() == '+' ) )
    {
        negative = text.front() == '-';
        text.remove_prefix( 1 );
    }
    if ( text.empty() )
        return false;

    mpq_class q;
    if ( auto slash = text.find( '/' ); slash != std::string_view::npos )
    {
        auto n = text.substr( 0, slash );
        auto d = text.substr( slash + 1 );
        if ( !all_digits( n ) || !all_digits( d ) )
            return false;
        mpz_class den( std::string( d ), 10 );
        if ( den == 0 )
            return false;
        q = mpq_class( mpz_class( std::string( n ), 10 ), den );
    }
    else if ( auto dot = text.find( '.' ); dot != std::string_view::npos )
    {
        auto ip = text.substr( 0, dot );
        auto fp = text.substr( dot + 1 );
        if ( ( ip.empty() && fp.empty() ) || ( !ip.empty() && !all_digits( ip ) ) ||
             ( !fp.empty() && !all_digits( fp ) ) )
            return false;
        std::string digits = std::string( ip ) + std::string( fp );
        if ( digits.empty() )
            return false;
        mpz_class den;
        mpz_ui_pow_ui( den.get_mpz_t(), 10, fp.size() );
        q = mpq_class( mpz_class( digits, 10 ), den );
    }
    else
    {
        if ( !all_digits( text ) )
            return false;
        q = mpq_class( mpz_class( std::string( text ), 10 ) );
    }
    q.canonicalize();
    if ( negative )
        q = -q;
    out = Rat( std::move( q ) );
    return true;
}

Rat Rat::parse( std::string_view text )
{
    Rat r;
    if ( !try_parse( text, r ) )
        throw std::invalid_argument( "not a rational number: '" + std::string( text ) + "'" );
    return r;
}

std::string Rat::decimal( int digits ) const
{
    mpz_class scale;
    mpz_ui_pow_ui( scale.get_mpz_t(), 10, static_cast< unsigned long >( digits ) );
    mpq_class scaled = abs( _q ) * scale;
    // round half up
    mpz_class n = scaled.get_num() * 2 + scaled.get_den();
    mpz_class d = scaled.get_den() * 2;
    mpz_class r;
    mpz_fdiv_q( r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t() );

    std::string s = r.get_str();
    if ( digits > 0 )
    {
        if ( s.size() <= static_cast< std::size_t >( digits ) )
            s.insert( 0, static_cast< std::size_t >( digits ) + 1 - s.size(), '0' );
        s.insert( s.size() - static_cast< std::size_t >( digits ), "." );
        while ( s.back() == '0' )
            s.pop_back();
        if ( s.back() == '.' )
            s.pop_back();
    }
    if ( sgn( _q ) < 0 && s != "0" )
        s.insert( 0, "-" );
    return s;
}

std::size_t Rat::hash() const
{
    auto mix = []( std::size_t h, std::size_t v ) { return h ^ ( v + 0x9e3779b97f4a7c15ULL + ( h << 6 ) + ( h >> 2 ) ); };
    std::size_t h = static_cast< std::size_t >( sgn( _q ) + 1 );
    const auto* num = _q.get_num_mpz_t();
    const auto* den = _q.get_den_mpz_t();
    for ( std::size_t i = 0; i < mpz_size( num ); ++i )
        h = mix( h, static_cast< std::size_t >( mpz_getlimbn( num, static_cast< mp_size_t >( i ) ) ) );
    h = mix( h, 0x51ed27 );
    for ( std::size_t i = 0; i < mpz_size( den ); ++i )
        h = mix( h, static_cast< std::size_t >( mpz_getlimbn( den, static_cast< mp_size_t >( i ) ) ) );
    return h;
}

Rat abs( const Rat& r )
{
    return r.sign() < 0 ? -r : r;
}

Rat pow( const Rat& base, unsigned exp )
{
    Rat result = 1;
    for ( unsigned i = 0; i < exp; ++i )
        result *= base;
    return result;
}

Rat monus( const Rat& a, const Rat& b )
{
    return a > b ? a - b : Rat( 0 );
}

} // namespace ptsdist
