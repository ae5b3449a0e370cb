#pragma once

#include "ptsdist/limits.hpp"
#include "ptsdist/pts.hpp"

#include <map>
#include <string>
#include <vector>

namespace ptsdist
{

struct Interval
{
    Rat lo;
    Rat hi;

    [[nodiscard]] bool is_point() const { return lo == hi; }
    friend bool operator==( const Interval&, const Interval& ) = default;
};

// Finite union of closed intervals, kept sorted with touching parts merged.
class AchievableSet
{
    std::vector< Interval > _parts;

public:
    AchievableSet() = default;
    explicit AchievableSet( std::vector< Interval > parts );

    static AchievableSet point( const Rat& v ) { return AchievableSet( { Interval{ v, v } } ); }
    static AchievableSet points( const std::vector< Rat >& vs );
    static AchievableSet interval( const Rat& lo, const Rat& hi ) { return AchievableSet( { Interval{ lo, hi } } ); }

    [[nodiscard]] const std::vector< Interval >& parts() const { return _parts; }
    [[nodiscard]] bool empty() const { return _parts.empty(); }
    [[nodiscard]] std::size_t size() const { return _parts.size(); }
    [[nodiscard]] bool discrete() const;
    [[nodiscard]] bool contains( const Rat& v ) const;
    [[nodiscard]] const Rat& min() const { return _parts.front().lo; }
    [[nodiscard]] const Rat& max() const { return _parts.back().hi; }
    // distance from v to the closest point of the set
    [[nodiscard]] Rat distance( const Rat& v ) const;
    [[nodiscard]] std::string str() const;

    [[nodiscard]] AchievableSet unite( const AchievableSet& o ) const;
    // { a + w * b : a in this, b in o }
    [[nodiscard]] AchievableSet plus_scaled( const Rat& w, const AchievableSet& o ) const;

    friend bool operator==( const AchievableSet&, const AchievableSet& ) = default;
};

struct SchedulerMode
{
    enum class Class
    {
        det,
        rand
    };
    Class cls = Class::det;
    bool maximal = false;

    static SchedulerMode det( bool maximal = false ) { return { Class::det, maximal }; }
    static SchedulerMode rand( bool maximal = false ) { return { Class::rand, maximal }; }
};

std::string to_string( SchedulerMode::Class c );

// Memoized computation of the set of values Pr(C(z, alpha)) over a resolution
// class, or Pr(SC(z, alpha)) when a success marking is given. The memo is kept
// across queries on the same object.
//
// Randomized resolutions mix any enabled transitions; children reached by the
// same label and state share one subtree. Non-maximal randomized resolutions may
// also put weight on halting.
class AchievableSets
{
    const Pts& _p;
    SchedulerMode _mode;
    const std::vector< bool >* _success;
    Limits _limits;
    std::map< std::pair< StateId, Trace >, AchievableSet > _memo;

    const AchievableSet& compute( StateId s, const Trace& alpha, std::size_t from );
    AchievableSet det_step( StateId s, const Trace& alpha, std::size_t from );
    AchievableSet rand_step( StateId s, const Trace& alpha, std::size_t from );

public:
    AchievableSets( const Pts& p, SchedulerMode mode, const std::vector< bool >* success = nullptr,
                    Limits limits = default_limits() );

    const AchievableSet& get( StateId s, const Trace& alpha ) { return compute( s, alpha, 0 ); }
};

AchievableSet achievable_set( const Pts& p, StateId root, const Trace& alpha, SchedulerMode mode,
                              const std::vector< bool >* success = nullptr, const Limits& limits = default_limits() );

// sup over x in a of the distance from x to b. Both sets must be nonempty.
Rat hausdorff_one_sided( const AchievableSet& a, const AchievableSet& b );

} // namespace ptsdist
