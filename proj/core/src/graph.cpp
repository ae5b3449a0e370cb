#include "ptsdist/graph.hpp"

#include <optional>
#include <sstream>

namespace ptsdist
{

namespace
{

std::string quoted( const std::string& s )
{
    std::string out = "\"";
    for ( char c : s )
    {
        if ( c == '"' || c == '\\' )
            out += '\\';
        out += c;
    }
    return out + '"';
}

// Body of one block; ids are prefixed so that blocks of a model do not clash.
void body( std::ostringstream& os, const Pts& p, const std::string& prefix, std::optional< StateId > success,
           const std::string& indent )
{
    auto id = [ & ]( const std::string& local ) { return quoted( prefix + local ); };
    for ( StateId s = 0; s < p.num_states(); ++s )
    {
        os << indent << id( p.state_name( s ) ) << " [label=" << quoted( p.state_name( s ) );
        if ( success && *success == s )
            os << ", shape=doublecircle";
        if ( p.root() && *p.root() == s )
            os << ", style=bold";
        os << "];\n";
    }
    for ( std::size_t i = 0; i < p.transitions().size(); ++i )
    {
        const auto& t = p.transition( i );
        const std::string node = "#" + std::to_string( i );
        os << indent << id( node ) << " [shape=point];\n";
        os << indent << id( p.state_name( t.source ) ) << " -> " << id( node )
           << " [label=" << quoted( p.action_name( t.label ) ) << ", arrowhead=none];\n";
        for ( const auto& [ x, pr ] : t.target.entries )
            os << indent << id( node ) << " -> " << id( p.state_name( x ) ) << " [label=" << quoted( pr.str() )
               << ", style=dotted];\n";
    }
}

std::string single( const Pts& p, std::optional< StateId > success )
{
    std::ostringstream os;
    os << "digraph " << quoted( p.name() ) << " {\n  node [shape=circle];\n";
    body( os, p, "", success, "  " );
    os << "}\n";
    return os.str();
}

} // namespace

std::string emit_dot( const Pts& p )
{
    return single( p, std::nullopt );
}

std::string emit_dot( const Npt& o )
{
    return single( o.base, o.success );
}

std::string emit_dot( const Model& m )
{
    std::ostringstream os;
    os << "digraph model {\n  node [shape=circle];\n";
    std::size_t k = 0;
    auto cluster = [ & ]( const Pts& p, std::optional< StateId > success ) {
        os << "  subgraph " << quoted( "cluster_" + std::to_string( k++ ) ) << " {\n    label=" << quoted( p.name() )
           << ";\n";
        body( os, p, p.name() + ".", success, "    " );
        os << "  }\n";
    };
    for ( const auto& p : m.systems )
        cluster( p, std::nullopt );
    for ( const auto& o : m.tests )
        cluster( o.base, o.success );
    os << "}\n";
    return os.str();
}

} // namespace ptsdist
