#pragma once

#include "ptsdist/model_format.hpp"
#include "ptsdist/pts.hpp"
#include "ptsdist/rational.hpp"

#include <string>

namespace ptsdist::testing
{

inline std::string corpus( const std::string& file )
{
    return std::string( PTSDIST_CORPUS_DIR ) + "/" + file;
}

inline Model load( const std::string& file, std::map< std::string, Rat > overrides = {} )
{
    ParseOptions o;
    o.overrides = std::move( overrides );
    return load_model( corpus( file ), o );
}

inline const Pts& sys( const Model& m, const std::string& name )
{
    const Pts* p = m.find_system( name );
    if ( !p )
        throw std::runtime_error( "no system " + name );
    return *p;
}

inline Trace tr( const Pts& p, std::initializer_list< const char* > labels )
{
    Trace t;
    for ( const char* l : labels )
        t.push_back( p.action( l ) );
    return t;
}

inline Rat R( const char* text ) { return Rat::parse( text ); }

// Two named blocks of a model placed side by side.
struct Joined
{
    DisjointUnion u;
    StateId s, t;
};

inline Joined join( const Pts& a, const Pts& b )
{
    Joined j{ disjoint_union( { &a, &b } ), 0, 0 };
    j.s = j.u.offsets[ 0 ] + *a.root();
    j.t = j.u.offsets[ 1 ] + *b.root();
    return j;
}

} // namespace ptsdist::testing
