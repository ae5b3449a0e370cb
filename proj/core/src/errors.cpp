#include "ptsdist/errors.hpp"

namespace ptsdist
{

namespace
{

std::string join( const std::vector< std::string >& v )
{
    std::string out;
    for ( const auto& s : v )
    {
        if ( !out.empty() )
            out += "; ";
        out += s;
    }
    return out;
}

} // namespace

ValidationError::ValidationError( std::vector< std::string > violations )
        : std::runtime_error( join( violations ) ), _violations( std::move( violations ) )
{
}

ParseError::ParseError( std::size_t line, std::size_t column, const std::string& message )
        : std::runtime_error( std::to_string( line ) + ":" + std::to_string( column ) + ": " + message ),
          _line( line ), _column( column )
{
}

} // namespace ptsdist
