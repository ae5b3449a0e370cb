#include "ptsdist/achievable.hpp"

#include "ptsdist/errors.hpp"

#include <algorithm>

namespace ptsdist
{

AchievableSet::AchievableSet( std::vector< Interval > parts )
{
    std::sort( parts.begin(), parts.end(), []( const Interval& a, const Interval& b ) {
        return a.lo < b.lo || ( a.lo == b.lo && a.hi < b.hi );
    } );
    for ( auto& iv : parts )
    {
        if ( !_parts.empty() && iv.lo <= _parts.back().hi )
        {
            if ( _parts.back().hi < iv.hi )
                _parts.back().hi = iv.hi;
        }
        else
            _parts.push_back( std::move( iv ) );
    }
}

AchievableSet AchievableSet::points( const std::vector< Rat >& vs )
{
    std::vector< Interval > parts;
    parts.reserve( vs.size() );
    for ( const auto& v : vs )
        parts.push_back( Interval{ v, v } );
    return AchievableSet( std::move( parts ) );
}

bool AchievableSet::discrete() const
{
    return std::all_of( _parts.begin(), _parts.end(), []( const Interval& iv ) { return iv.is_point(); } );
}

bool AchievableSet::contains( const Rat& v ) const
{
    return std::any_of( _parts.begin(), _parts.end(),
                        [ & ]( const Interval& iv ) { return iv.lo <= v && v <= iv.hi; } );
}

Rat AchievableSet::distance( const Rat& v ) const
{
    if ( _parts.empty() )
        throw std::invalid_argument( "distance to an empty set" );
    Rat best = abs( v - _parts.front().lo );
    for ( const auto& iv : _parts )
    {
        if ( iv.lo <= v && v <= iv.hi )
            return Rat( 0 );
        best = ptsdist::min( best, ptsdist::min( abs( v - iv.lo ), abs( v - iv.hi ) ) );
    }
    return best;
}

std::string AchievableSet::str() const
{
    std::string out = "{";
    for ( std::size_t i = 0; i < _parts.size(); ++i )
    {
        if ( i > 0 )
            out += ", ";
        if ( _parts[ i ].is_point() )
            out += _parts[ i ].lo.str();
        else
            out += "[" + _parts[ i ].lo.str() + "," + _parts[ i ].hi.str() + "]";
    }
    return out + "}";
}

AchievableSet AchievableSet::unite( const AchievableSet& o ) const
{
    auto parts = _parts;
    parts.insert( parts.end(), o._parts.begin(), o._parts.end() );
    return AchievableSet( std::move( parts ) );
}

AchievableSet AchievableSet::plus_scaled( const Rat& w, const AchievableSet& o ) const
{
    std::vector< Interval > parts;
    parts.reserve( _parts.size() * o._parts.size() );
    for ( const auto& a : _parts )
        for ( const auto& b : o._parts )
            parts.push_back( Interval{ a.lo + w * b.lo, a.hi + w * b.hi } );
    return AchievableSet( std::move( parts ) );
}

namespace
{

bool next_assignment( std::vector< std::size_t >& pos, const std::vector< const AchievableSet* >& sets )
{
    for ( std::size_t j = sets.size(); j-- > 0; )
    {
        if ( ++pos[ j ] < sets[ j ]->size() )
            return true;
        pos[ j ] = 0;
    }
    return false;
}

} // namespace

std::string to_string( SchedulerMode::Class c )
{
    return c == SchedulerMode::Class::det ? "det" : "rand";
}

AchievableSets::AchievableSets( const Pts& p, SchedulerMode mode, const std::vector< bool >* success, Limits limits )
        : _p( p ), _mode( mode ), _success( success ), _limits( limits )
{
}

const AchievableSet& AchievableSets::compute( StateId s, const Trace& alpha, std::size_t from )
{
    Trace suffix( alpha.begin() + static_cast< std::ptrdiff_t >( from ), alpha.end() );
    auto key = std::make_pair( s, suffix );
    if ( auto it = _memo.find( key ); it != _memo.end() )
        return it->second;

    AchievableSet result;
    if ( from == alpha.size() )
    {
        bool one = _success == nullptr || ( *_success )[ s ];
        result = AchievableSet::point( Rat( one ? 1 : 0 ) );
    }
    else if ( _p.is_deadlock( s ) )
        result = AchievableSet::point( Rat( 0 ) );
    else if ( _mode.cls == SchedulerMode::Class::det )
        result = det_step( s, alpha, from );
    else
        result = rand_step( s, alpha, from );

    if ( result.size() > _limits.max_memo )
        throw CapExceeded( "achievable set with more than " + std::to_string( _limits.max_memo ) + " components" );
    if ( _memo.size() >= _limits.max_memo )
        throw CapExceeded( "achievable-set memo exceeds " + std::to_string( _limits.max_memo ) + " entries" );
    return _memo.emplace( std::move( key ), std::move( result ) ).first->second;
}

AchievableSet AchievableSets::det_step( StateId s, const Trace& alpha, std::size_t from )
{
    const ActionId a = alpha[ from ];
    std::vector< Interval > parts;
    if ( !_mode.maximal )
        parts.push_back( Interval{ Rat( 0 ), Rat( 0 ) } );
    for ( auto i : _p.outgoing( s ) )
    {
        const auto& t = _p.transition( i );
        if ( t.label != a )
        {
            parts.push_back( Interval{ Rat( 0 ), Rat( 0 ) } );
            continue;
        }
        auto acc = AchievableSet::point( Rat( 0 ) );
        for ( const auto& [ c, pr ] : t.target.entries )
        {
            acc = acc.plus_scaled( pr, compute( c, alpha, from + 1 ) );
            if ( acc.size() > _limits.max_memo )
                throw CapExceeded( "achievable set with more than " + std::to_string( _limits.max_memo ) +
                                   " components" );
        }
        parts.insert( parts.end(), acc.parts().begin(), acc.parts().end() );
    }
    return AchievableSet( std::move( parts ) );
}

AchievableSet AchievableSets::rand_step( StateId s, const Trace& alpha, std::size_t from )
{
    const ActionId a = alpha[ from ];
    const auto& outs = _p.outgoing( s );

    // Children of a-transitions, shared per target state.
    std::vector< StateId > children;
    for ( auto i : outs )
    {
        const auto& t = _p.transition( i );
        if ( t.label == a )
            for ( const auto& [ c, _ ] : t.target.entries )
                children.push_back( c );
    }
    std::sort( children.begin(), children.end() );
    children.erase( std::unique( children.begin(), children.end() ), children.end() );

    // Options that contribute the constant 0: halting (non-maximal) and other labels.
    bool zero_option = !_mode.maximal;
    for ( auto i : outs )
        if ( _p.transition( i ).label != a )
            zero_option = true;

    std::vector< const AchievableSet* > sets;
    for ( auto c : children )
        sets.push_back( &compute( c, alpha, from + 1 ) );

    std::vector< Interval > parts;
    std::vector< std::size_t > pos( sets.size(), 0 );
    std::uint64_t combos = 0;
    while ( true )
    {
        if ( ++combos > _limits.max_memo )
            throw CapExceeded( "randomized achievable set: more than " + std::to_string( _limits.max_memo ) +
                               " component assignments" );
        // For a fixed assignment of child components the mixture ranges over
        // [min_i lo_i, max_i hi_i] (connected image of simplex x box).
        bool first = true;
        Rat lo, hi;
        auto take = [ & ]( const Rat& l, const Rat& h ) {
            if ( first || l < lo )
                lo = l;
            if ( first || hi < h )
                hi = h;
            first = false;
        };
        if ( zero_option )
            take( Rat( 0 ), Rat( 0 ) );
        for ( auto i : outs )
        {
            const auto& t = _p.transition( i );
            if ( t.label != a )
                continue;
            Rat l = 0, h = 0;
            for ( const auto& [ c, pr ] : t.target.entries )
            {
                auto j = static_cast< std::size_t >(
                        std::lower_bound( children.begin(), children.end(), c ) - children.begin() );
                const auto& iv = sets[ j ]->parts()[ pos[ j ] ];
                l += pr * iv.lo;
                h += pr * iv.hi;
            }
            take( l, h );
        }
        parts.push_back( Interval{ lo, hi } );

        if ( !next_assignment( pos, sets ) )
            break;
    }
    return AchievableSet( std::move( parts ) );
}

AchievableSet achievable_set( const Pts& p, StateId root, const Trace& alpha, SchedulerMode mode,
                              const std::vector< bool >* success, const Limits& limits )
{
    AchievableSets sets( p, mode, success, limits );
    return sets.get( root, alpha );
}

Rat hausdorff_one_sided( const AchievableSet& a, const AchievableSet& b )
{
    if ( a.empty() || b.empty() )
        throw std::invalid_argument( "hausdorff_one_sided: empty set" );
    Rat best = 0;
    for ( const auto& iv : a.parts() )
    {
        best = ptsdist::max( best, b.distance( iv.lo ) );
        best = ptsdist::max( best, b.distance( iv.hi ) );
    }
    const auto& bp = b.parts();
    for ( std::size_t k = 0; k + 1 < bp.size(); ++k )
    {
        Rat mid = ( bp[ k ].hi + bp[ k + 1 ].lo ) / Rat( 2 );
        if ( a.contains( mid ) )
            best = ptsdist::max( best, b.distance( mid ) );
    }
    return best;
}

} // namespace ptsdist
