#pragma once

#include "ptsdist/pts.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ptsdist
{

// A parsed model file: named `pts` and `npt` blocks plus `param` definitions.
struct Model
{
    std::vector< std::pair< std::string, Rat > > params; // as instantiated
    std::vector< Pts > systems;                          // pts blocks, in file order
    std::vector< Npt > tests;                            // npt blocks, in file order

    [[nodiscard]] const Pts* find_system( const std::string& name ) const;
    [[nodiscard]] const Npt* find_test( const std::string& name ) const;
};

struct ParseOptions
{
    std::map< std::string, Rat > overrides; // replaces the value of a declared param
};

// Throws ParseError with line/column; validation failures are reported at the
// offending line as ParseError too.
Model parse_model( std::string_view text, const ParseOptions& options = {} );
Model load_model( const std::string& path, const ParseOptions& options = {} );

// Emits instantiated values; parse_model(emit_model(m)) yields an identical model.
std::string emit_model( const Model& m );
std::string emit_pts( const Pts& p );
std::string emit_npt( const Npt& o );

// Quotes a name when it would not survive as a bare word.
std::string quote_name( const std::string& name );

} // namespace ptsdist
