#include "ptsdist/limits.hpp"

#include <cstdlib>
#include <string>

namespace ptsdist
{

namespace
{

void read_env( const char* name, std::uint64_t& out )
{
    const char* v = std::getenv( name );
    if ( v == nullptr || *v == '\0' )
        return;
    try
    {
        std::size_t pos = 0;
        auto n = std::stoull( v, &pos );
        if ( pos == std::string( v ).size() && n > 0 )
            out = n;
    }
    catch ( const std::exception& )
    {
        // malformed override: keep the default
    }
}

} // namespace

Limits default_limits()
{
    Limits l;
    read_env( "PTSDIST_MAX_RESOLUTIONS", l.max_resolutions );
    read_env( "PTSDIST_MAX_MEMO", l.max_memo );
    return l;
}

} // namespace ptsdist
