#include "ptsdist/pts.hpp"

#include "ptsdist/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace ptsdist
{

Rat Distribution::prob( StateId s ) const
{
    auto it = std::lower_bound( entries.begin(), entries.end(), s,
                                []( const auto& e, StateId v ) { return e.first < v; } );
    if ( it != entries.end() && it->first == s )
        return it->second;
    return Rat( 0 );
}

PtsDraft& PtsDraft::state( const std::string& s )
{
    if ( std::find( states.begin(), states.end(), s ) == states.end() )
        states.push_back( s );
    return *this;
}

PtsDraft& PtsDraft::action( const std::string& a )
{
    if ( std::find( actions.begin(), actions.end(), a ) == actions.end() )
        actions.push_back( a );
    return *this;
}

PtsDraft& PtsDraft::trans( const std::string& source, const std::string& label,
                           std::vector< std::pair< std::string, Rat > > target )
{
    state( source );
    action( label );
    for ( const auto& [ s, _ ] : target )
        state( s );
    transitions.push_back( Trans{ source, label, std::move( target ) } );
    return *this;
}

PtsDraft& PtsDraft::trans( const std::string& source, const std::string& label, const std::string& target )
{
    return trans( source, label, { { target, Rat( 1 ) } } );
}

std::optional< StateId > Pts::find_state( const std::string& name ) const
{
    auto it = _state_index.find( name );
    if ( it == _state_index.end() )
        return std::nullopt;
    return it->second;
}

std::optional< ActionId > Pts::find_action( const std::string& name ) const
{
    auto it = _action_index.find( name );
    if ( it == _action_index.end() )
        return std::nullopt;
    return it->second;
}

StateId Pts::state( const std::string& name ) const
{
    auto s = find_state( name );
    if ( !s )
        throw std::out_of_range( "unknown state '" + name + "' in " + _name );
    return *s;
}

ActionId Pts::action( const std::string& name ) const
{
    auto a = find_action( name );
    if ( !a )
        throw std::out_of_range( "unknown action '" + name + "' in " + _name );
    return *a;
}

PtsDraft Pts::to_draft() const
{
    PtsDraft d;
    d.name = _name;
    d.states = _states;
    d.actions = _actions;
    if ( _root )
        d.init = _states[ *_root ];
    for ( const auto& t : _transitions )
    {
        PtsDraft::Trans dt{ _states[ t.source ], _actions[ t.label ], {} };
        for ( const auto& [ s, p ] : t.target.entries )
            dt.target.emplace_back( _states[ s ], p );
        d.transitions.push_back( std::move( dt ) );
    }
    return d;
}

namespace
{

std::string describe( const std::string& src, const std::string& label )
{
    return "transition " + src + " -" + label + "->";
}

} // namespace

std::vector< std::string > validation_report( const PtsDraft& draft )
{
    std::vector< std::string > report;
    std::set< std::string > states;
    std::set< std::string > actions;
    for ( const auto& s : draft.states )
        if ( !states.insert( s ).second )
            report.push_back( "state '" + s + "' declared twice" );
    for ( const auto& a : draft.actions )
        if ( !actions.insert( a ).second )
            report.push_back( "action '" + a + "' declared twice" );
    if ( draft.init && !states.count( *draft.init ) )
        report.push_back( "init state '" + *draft.init + "' is not declared" );

    std::set< std::tuple< std::string, std::string, std::vector< std::pair< std::string, Rat > > > > seen;
    for ( const auto& t : draft.transitions )
    {
        const auto what = describe( t.source, t.label );
        if ( !states.count( t.source ) )
            report.push_back( what + ": undeclared source state '" + t.source + "'" );
        if ( !actions.count( t.label ) )
            report.push_back( what + ": undeclared action '" + t.label + "'" );
        if ( t.target.empty() )
        {
            report.push_back( what + ": empty distribution" );
            continue;
        }
        Rat sum = 0;
        std::map< std::string, Rat > merged;
        for ( const auto& [ s, p ] : t.target )
        {
            if ( !states.count( s ) )
                report.push_back( what + ": undeclared target state '" + s + "'" );
            if ( p.sign() <= 0 || p > Rat( 1 ) )
                report.push_back( what + ": probability " + p.str() + " of '" + s + "' is not in (0,1]" );
            if ( merged.count( s ) )
                report.push_back( what + ": target state '" + s + "' listed twice" );
            merged[ s ] += p;
            sum += p;
        }
        if ( sum != Rat( 1 ) )
            report.push_back( what + ": distribution sums to " + sum.str() );
        std::vector< std::pair< std::string, Rat > > key( merged.begin(), merged.end() );
        if ( !seen.emplace( t.source, t.label, key ).second )
            report.push_back( what + ": duplicate transition" );
    }
    return report;
}

Pts make_pts( std::string name, std::vector< std::string > states, std::vector< std::string > actions,
              std::vector< Transition > transitions, std::optional< StateId > root )
{
    std::vector< std::string > report;
    Pts p;
    p._name = std::move( name );
    p._states = std::move( states );
    p._actions = std::move( actions );
    for ( StateId i = 0; i < p._states.size(); ++i )
        if ( !p._state_index.emplace( p._states[ i ], i ).second )
            report.push_back( "state '" + p._states[ i ] + "' declared twice" );
    for ( ActionId i = 0; i < p._actions.size(); ++i )
        if ( !p._action_index.emplace( p._actions[ i ], i ).second )
            report.push_back( "action '" + p._actions[ i ] + "' declared twice" );
    if ( root && *root >= p._states.size() )
        report.push_back( "root out of range" );
    p._root = root;
    p._out.assign( p._states.size(), {} );

    std::set< std::tuple< StateId, ActionId, std::vector< std::pair< StateId, Rat > > > > seen;
    for ( auto& t : transitions )
    {
        if ( t.source >= p._states.size() || t.label >= p._actions.size() )
        {
            report.push_back( "transition with out-of-range source or label" );
            continue;
        }
        const auto what = describe( p._states[ t.source ], p._actions[ t.label ] );
        std::sort( t.target.entries.begin(), t.target.entries.end(),
                   []( const auto& a, const auto& b ) { return a.first < b.first; } );
        Rat sum = 0;
        for ( std::size_t i = 0; i < t.target.entries.size(); ++i )
        {
            const auto& [ s, pr ] = t.target.entries[ i ];
            if ( s >= p._states.size() )
                report.push_back( what + ": target out of range" );
            if ( pr.sign() <= 0 || pr > Rat( 1 ) )
                report.push_back( what + ": probability " + pr.str() + " is not in (0,1]" );
            if ( i > 0 && t.target.entries[ i - 1 ].first == s )
                report.push_back( what + ": target listed twice" );
            sum += pr;
        }
        if ( t.target.entries.empty() )
            report.push_back( what + ": empty distribution" );
        else if ( sum != Rat( 1 ) )
            report.push_back( what + ": distribution sums to " + sum.str() );
        if ( !seen.emplace( t.source, t.label, t.target.entries ).second )
            report.push_back( what + ": duplicate transition" );
    }
    if ( !report.empty() )
        throw ValidationError( std::move( report ) );

    p._transitions = std::move( transitions );
    for ( std::size_t i = 0; i < p._transitions.size(); ++i )
        p._out[ p._transitions[ i ].source ].push_back( i );
    return p;
}

Pts validate_pts( const PtsDraft& draft )
{
    auto report = validation_report( draft );
    if ( !report.empty() )
        throw ValidationError( std::move( report ) );

    std::unordered_map< std::string, StateId > sidx;
    std::unordered_map< std::string, ActionId > aidx;
    for ( StateId i = 0; i < draft.states.size(); ++i )
        sidx[ draft.states[ i ] ] = i;
    for ( ActionId i = 0; i < draft.actions.size(); ++i )
        aidx[ draft.actions[ i ] ] = i;

    std::vector< Transition > ts;
    for ( const auto& t : draft.transitions )
    {
        Transition tr{ sidx.at( t.source ), aidx.at( t.label ), {} };
        for ( const auto& [ s, p ] : t.target )
            tr.target.entries.emplace_back( sidx.at( s ), p );
        ts.push_back( std::move( tr ) );
    }
    std::optional< StateId > root;
    if ( draft.init )
        root = sidx.at( *draft.init );
    return make_pts( draft.name, draft.states, draft.actions, std::move( ts ), root );
}

std::vector< std::string > npt_validation_report( const PtsDraft& draft, const std::string& success )
{
    auto report = validation_report( draft );
    if ( std::find( draft.states.begin(), draft.states.end(), success ) == draft.states.end() )
        report.push_back( "success state '" + success + "' is not declared" );
    for ( const auto& t : draft.transitions )
        if ( t.source == success )
            report.push_back( "success state '" + success + "' has an outgoing " + t.label + "-transition" );
    if ( !draft.init )
        report.push_back( "test '" + draft.name + "' has no init state" );
    return report;
}

Npt validate_npt( const PtsDraft& draft, const std::string& success )
{
    auto report = npt_validation_report( draft, success );
    if ( !report.empty() )
        throw ValidationError( std::move( report ) );
    Npt o;
    o.base = validate_pts( draft );
    o.success = o.base.state( success );
    return o;
}

DisjointUnion disjoint_union( const std::vector< const Pts* >& parts, const std::string& name )
{
    DisjointUnion u;
    std::vector< std::string > states;
    std::vector< std::string > actions;
    std::unordered_map< std::string, ActionId > aidx;
    std::vector< Transition > ts;
    std::unordered_map< std::string, unsigned > seen_blocks;
    for ( const Pts* p : parts )
    {
        const auto offset = static_cast< StateId >( states.size() );
        u.offsets.push_back( offset );
        // a block appearing twice gets a numbered prefix the second time
        const unsigned n = ++seen_blocks[ p->name() ];
        const std::string block = n == 1 ? p->name() : p->name() + "#" + std::to_string( n );
        for ( const auto& s : p->state_names() )
            states.push_back( block + "." + s );
        std::vector< ActionId > amap;
        for ( const auto& a : p->action_names() )
        {
            auto [ it, inserted ] = aidx.emplace( a, static_cast< ActionId >( actions.size() ) );
            if ( inserted )
                actions.push_back( a );
            amap.push_back( it->second );
        }
        for ( const auto& t : p->transitions() )
        {
            Transition nt{ t.source + offset, amap[ t.label ], t.target };
            for ( auto& e : nt.target.entries )
                e.first += offset;
            ts.push_back( std::move( nt ) );
        }
    }
    u.pts = make_pts( name, std::move( states ), std::move( actions ), std::move( ts ), std::nullopt );
    return u;
}

std::string trace_str( const Pts& p, const Trace& t )
{
    if ( t.empty() )
        return "eps";
    bool short_labels = std::all_of( t.begin(), t.end(), [ & ]( ActionId a ) { return p.action_name( a ).size() == 1; } );
    std::string out;
    for ( std::size_t i = 0; i < t.size(); ++i )
    {
        if ( i > 0 && !short_labels )
            out += '.';
        out += p.action_name( t[ i ] );
    }
    return out;
}

} // namespace ptsdist
