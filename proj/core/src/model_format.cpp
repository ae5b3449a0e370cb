#include "ptsdist/model_format.hpp"

#include "ptsdist/errors.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace ptsdist
{

const Pts* Model::find_system( const std::string& name ) const
{
    for ( const auto& p : systems )
        if ( p.name() == name )
            return &p;
    return nullptr;
}

const Npt* Model::find_test( const std::string& name ) const
{
    for ( const auto& o : tests )
        if ( o.name() == name )
            return &o;
    return nullptr;
}

namespace
{

bool word_char( char c )
{
    return !std::isspace( static_cast< unsigned char >( c ) ) && c != ',' && c != ':' && c != '#' && c != '"' &&
           c != '=';
}

bool ident_start( char c )
{
    return std::isalpha( static_cast< unsigned char >( c ) ) || c == '_';
}

bool ident_char( char c )
{
    return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_';
}

struct Value
{
    Rat v;
    bool uses_param = false;
};

class LineCursor
{
    std::string_view _line;
    std::size_t _pos = 0;
    std::size_t _lineno;

public:
    LineCursor( std::string_view line, std::size_t lineno ) : _line( line ), _lineno( lineno ) {}

    [[noreturn]] void fail( const std::string& msg ) const { throw ParseError( _lineno, _pos + 1, msg ); }
    [[noreturn]] void fail_at( std::size_t col, const std::string& msg ) const { throw ParseError( _lineno, col, msg ); }

    std::size_t column() const { return _pos + 1; }
    std::size_t lineno() const { return _lineno; }

    void skip_ws()
    {
        while ( _pos < _line.size() && std::isspace( static_cast< unsigned char >( _line[ _pos ] ) ) )
            ++_pos;
        if ( _pos < _line.size() && _line[ _pos ] == '#' )
            _pos = _line.size();
    }

    bool at_end()
    {
        skip_ws();
        return _pos >= _line.size();
    }

    char peek()
    {
        skip_ws();
        return _pos < _line.size() ? _line[ _pos ] : '\0';
    }

    bool accept( std::string_view tok )
    {
        skip_ws();
        if ( _line.substr( _pos, tok.size() ) == tok )
        {
            _pos += tok.size();
            return true;
        }
        return false;
    }

    void expect( std::string_view tok )
    {
        if ( !accept( tok ) )
            fail( "expected '" + std::string( tok ) + "'" );
    }

    // Bare word or double-quoted string.
    std::string name()
    {
        skip_ws();
        if ( _pos >= _line.size() )
            fail( "expected a name" );
        if ( _line[ _pos ] == '"' )
        {
            std::string out;
            ++_pos;
            while ( _pos < _line.size() && _line[ _pos ] != '"' )
            {
                if ( _line[ _pos ] == '\\' && _pos + 1 < _line.size() )
                    ++_pos;
                out += _line[ _pos++ ];
            }
            if ( _pos >= _line.size() )
                fail( "unterminated quoted name" );
            ++_pos;
            return out;
        }
        std::size_t start = _pos;
        while ( _pos < _line.size() && word_char( _line[ _pos ] ) &&
                !( _line[ _pos ] == '-' && _pos + 1 < _line.size() && _line[ _pos + 1 ] == '>' ) )
            ++_pos;
        if ( start == _pos )
            fail( "expected a name" );
        return std::string( _line.substr( start, _pos - start ) );
    }

    // expr := term { (+|-) term } ; term := factor { (*|/) factor } ; factor := number | param | (expr) | -factor
    Value expr( const std::map< std::string, Rat >& params )
    {
        Value v = term( params );
        while ( true )
        {
            if ( accept( "+" ) )
            {
                auto r = term( params );
                v = Value{ v.v + r.v, v.uses_param || r.uses_param };
            }
            else if ( peek() == '-' && !( _pos + 1 < _line.size() && _line[ _pos + 1 ] == '>' ) )
            {
                ++_pos;
                auto r = term( params );
                v = Value{ v.v - r.v, v.uses_param || r.uses_param };
            }
            else
                return v;
        }
    }

private:
    Value term( const std::map< std::string, Rat >& params )
    {
        Value v = factor( params );
        while ( true )
        {
            if ( accept( "*" ) )
            {
                auto r = factor( params );
                v = Value{ v.v * r.v, v.uses_param || r.uses_param };
            }
            else if ( accept( "/" ) )
            {
                auto col = column();
                auto r = factor( params );
                if ( r.v.is_zero() )
                    fail_at( col, "division by zero" );
                v = Value{ v.v / r.v, v.uses_param || r.uses_param };
            }
            else
                return v;
        }
    }

    Value factor( const std::map< std::string, Rat >& params )
    {
        skip_ws();
        if ( _pos >= _line.size() )
            fail( "expected a number or parameter" );
        char c = _line[ _pos ];
        if ( c == '(' )
        {
            ++_pos;
            auto v = expr( params );
            expect( ")" );
            return v;
        }
        if ( c == '-' )
        {
            ++_pos;
            auto v = factor( params );
            return Value{ -v.v, v.uses_param };
        }
        if ( std::isdigit( static_cast< unsigned char >( c ) ) || c == '.' )
        {
            std::size_t start = _pos;
            while ( _pos < _line.size() &&
                    ( std::isdigit( static_cast< unsigned char >( _line[ _pos ] ) ) || _line[ _pos ] == '.' ) )
                ++_pos;
            Rat r;
            if ( !Rat::try_parse( _line.substr( start, _pos - start ), r ) )
                fail_at( start + 1, "malformed number '" + std::string( _line.substr( start, _pos - start ) ) + "'" );
            return Value{ r, false };
        }
        if ( ident_start( c ) )
        {
            std::size_t start = _pos;
            while ( _pos < _line.size() && ident_char( _line[ _pos ] ) )
                ++_pos;
            std::string id( _line.substr( start, _pos - start ) );
            auto it = params.find( id );
            if ( it == params.end() )
                fail_at( start + 1, "unknown parameter '" + id + "'" );
            return Value{ it->second, true };
        }
        fail( std::string( "unexpected character '" ) + c + "'" );
    }
};

struct BlockState
{
    bool open = false;
    bool is_npt = false;
    std::size_t line = 0;
    PtsDraft draft;
    std::optional< std::string > success;
    std::vector< std::size_t > trans_lines;
};

void check_line_distribution( const LineCursor& cur, const PtsDraft::Trans& t )
{
    Rat sum = 0;
    for ( const auto& [ s, p ] : t.target )
    {
        if ( p.sign() <= 0 || p > Rat( 1 ) )
            throw ParseError( cur.lineno(), 1, "probability " + p.str() + " of '" + s + "' is not in (0,1]" );
        sum += p;
    }
    if ( sum != Rat( 1 ) )
        throw ParseError( cur.lineno(), 1, "distribution sums to " + sum.str() );
}

void finish_block( BlockState& b, Model& m, std::set< std::string >& names )
{
    if ( !names.insert( b.draft.name ).second )
        throw ParseError( b.line, 1, "duplicate block name '" + b.draft.name + "'" );
    try
    {
        if ( b.is_npt )
        {
            if ( !b.success )
                throw ParseError( b.line, 1, "npt '" + b.draft.name + "' has no success line" );
            m.tests.push_back( validate_npt( b.draft, *b.success ) );
        }
        else
        {
            if ( b.success )
                throw ParseError( b.line, 1, "success line in pts block '" + b.draft.name + "'" );
            m.systems.push_back( validate_pts( b.draft ) );
        }
    }
    catch ( const ValidationError& e )
    {
        throw ParseError( b.line, 1, "block '" + b.draft.name + "': " + e.what() );
    }
    b = BlockState{};
}

} // namespace

Model parse_model( std::string_view text, const ParseOptions& options )
{
    Model m;
    std::map< std::string, Rat > params;
    std::set< std::string > used_overrides;
    std::set< std::string > names;
    BlockState block;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while ( pos <= text.size() )
    {
        auto nl = text.find( '\n', pos );
        std::string_view line = text.substr( pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos );
        if ( !line.empty() && line.back() == '\r' )
            line.remove_suffix( 1 );
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;

        LineCursor cur( line, lineno );
        if ( cur.at_end() )
            continue;
        const auto kw_col = cur.column();
        std::string kw = cur.name();

        if ( !block.open )
        {
            if ( kw == "param" )
            {
                std::string id = cur.name();
                if ( id.empty() || !ident_start( id[ 0 ] ) ||
                     id.find_first_of( ".'-" ) != std::string::npos )
                    cur.fail( "malformed parameter name '" + id + "'" );
                cur.expect( "=" );
                auto v = cur.expr( params );
                if ( !cur.at_end() )
                    cur.fail( "trailing input after parameter value" );
                if ( params.count( id ) )
                    cur.fail_at( kw_col, "parameter '" + id + "' defined twice" );
                auto ov = options.overrides.find( id );
                Rat val = ov != options.overrides.end() ? ov->second : v.v;
                if ( ov != options.overrides.end() )
                    used_overrides.insert( id );
                params[ id ] = val;
                m.params.emplace_back( id, val );
            }
            else if ( kw == "pts" || kw == "npt" )
            {
                block.open = true;
                block.is_npt = kw == "npt";
                block.line = lineno;
                block.draft.name = cur.name();
                if ( !cur.at_end() )
                    cur.fail( "trailing input after block name" );
            }
            else
                cur.fail_at( kw_col, "unknown directive '" + kw + "'" );
            continue;
        }

        if ( kw == "end" )
        {
            if ( !cur.at_end() )
                cur.fail( "trailing input after 'end'" );
            finish_block( block, m, names );
        }
        else if ( kw == "states" )
        {
            while ( !cur.at_end() )
                block.draft.states.push_back( cur.name() );
        }
        else if ( kw == "actions" )
        {
            while ( !cur.at_end() )
                block.draft.actions.push_back( cur.name() );
        }
        else if ( kw == "init" )
        {
            if ( block.draft.init )
                cur.fail_at( kw_col, "second init line" );
            block.draft.init = cur.name();
            if ( !cur.at_end() )
                cur.fail( "trailing input after init state" );
        }
        else if ( kw == "success" )
        {
            if ( block.success )
                cur.fail_at( kw_col, "second success line" );
            block.success = cur.name();
            if ( !cur.at_end() )
                cur.fail( "trailing input after success state" );
        }
        else if ( kw == "trans" )
        {
            PtsDraft::Trans t;
            t.source = cur.name();
            t.label = cur.name();
            cur.expect( "->" );
            do
            {
                std::string target = cur.name();
                Value v{ Rat( 1 ), false };
                if ( cur.accept( ":" ) )
                    v = cur.expr( params );
                else if ( cur.peek() == ',' || !t.target.empty() )
                    cur.fail( "missing probability for '" + target + "'" );
                if ( v.v.is_zero() && v.uses_param )
                    continue; // zero instantiated from a parameter: not in the support
                t.target.emplace_back( target, v.v );
            } while ( cur.accept( "," ) );
            if ( !cur.at_end() )
                cur.fail( "unexpected input in transition" );
            if ( t.target.empty() )
                cur.fail_at( kw_col, "every probability of this transition is zero" );
            check_line_distribution( cur, t );
            block.draft.transitions.push_back( std::move( t ) );
        }
        else
            cur.fail_at( kw_col, "unknown directive '" + kw + "'" );
    }
    if ( block.open )
        throw ParseError( block.line, 1, "block '" + block.draft.name + "' is missing 'end'" );
    for ( const auto& [ id, _ ] : options.overrides )
        if ( !used_overrides.count( id ) )
            throw ParseError( 0, 0, "override for undeclared parameter '" + id + "'" );
    return m;
}

Model load_model( const std::string& path, const ParseOptions& options )
{
    std::ifstream in( path );
    if ( !in )
        throw ParseError( 0, 0, "cannot open '" + path + "'" );
    std::stringstream ss;
    ss << in.rdbuf();
    try
    {
        return parse_model( ss.str(), options );
    }
    catch ( const ParseError& e )
    {
        throw ParseError( e.line(), e.column(), path + ": " + std::string( e.what() ) );
    }
}

std::string quote_name( const std::string& name )
{
    bool bare = !name.empty() && name != "end" && name.find( "->" ) == std::string::npos && name[ 0 ] != '-';
    for ( char c : name )
        if ( !word_char( c ) || c == '\\' )
            bare = false;
    if ( bare )
        return name;
    std::string out = "\"";
    for ( char c : name )
    {
        if ( c == '"' || c == '\\' )
            out += '\\';
        out += c;
    }
    return out + "\"";
}

namespace
{

void emit_body( std::ostringstream& os, const Pts& p )
{
    os << "  states";
    for ( const auto& s : p.state_names() )
        os << ' ' << quote_name( s );
    os << "\n  actions";
    for ( const auto& a : p.action_names() )
        os << ' ' << quote_name( a );
    os << '\n';
    if ( p.root() )
        os << "  init " << quote_name( p.state_name( *p.root() ) ) << '\n';
    for ( const auto& t : p.transitions() )
    {
        os << "  trans " << quote_name( p.state_name( t.source ) ) << ' ' << quote_name( p.action_name( t.label ) )
           << " ->";
        if ( t.target.is_dirac() )
            os << ' ' << quote_name( p.state_name( t.target.entries[ 0 ].first ) );
        else
            for ( std::size_t i = 0; i < t.target.entries.size(); ++i )
                os << ( i ? ", " : " " ) << quote_name( p.state_name( t.target.entries[ i ].first ) ) << ": "
                   << t.target.entries[ i ].second.str();
        os << '\n';
    }
}

} // namespace

std::string emit_pts( const Pts& p )
{
    std::ostringstream os;
    os << "pts " << quote_name( p.name() ) << '\n';
    emit_body( os, p );
    os << "end\n";
    return os.str();
}

std::string emit_npt( const Npt& o )
{
    std::ostringstream os;
    os << "npt " << quote_name( o.name() ) << '\n';
    emit_body( os, o.base );
    os << "  success " << quote_name( o.base.state_name( o.success ) ) << '\n';
    os << "end\n";
    return os.str();
}

std::string emit_model( const Model& m )
{
    std::string out;
    for ( const auto& [ id, v ] : m.params )
        out += "param " + id + " = " + v.str() + "\n";
    for ( const auto& p : m.systems )
        out += ( out.empty() ? "" : "\n" ) + emit_pts( p );
    for ( const auto& o : m.tests )
        out += ( out.empty() ? "" : "\n" ) + emit_npt( o );
    return out;
}

} // namespace ptsdist
