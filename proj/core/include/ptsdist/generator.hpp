#pragma once

#include "ptsdist/pts.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace ptsdist
{

enum class SystemClass
{
    general,
    fully_nondeterministic,
    fully_probabilistic
};

std::string to_string( SystemClass c );

struct GenParams
{
    std::uint64_t seed = 1;
    unsigned max_states = 6;      // total, copies included
    unsigned min_transitions = 0; // per state, before dropping duplicates
    unsigned max_transitions = 2; // per state
    unsigned max_support = 2;
    unsigned max_denominator = 4;
    unsigned alphabet = 2;
    unsigned roots = 2;
    bool acyclic = true;
    SystemClass cls = SystemClass::general;
};

// Throws UsageError on bounds below 1 or on unsatisfiable combinations.
void check_params( const GenParams& params );

// Deterministic random source. Integers come from rejection sampling over
// mt19937_64 so that streams do not depend on the standard library.
class Rng
{
    std::mt19937_64 _engine;

public:
    explicit Rng( std::uint64_t seed ) : _engine( seed ) {}

    // Uniform in [lo, hi].
    std::uint64_t uniform( std::uint64_t lo, std::uint64_t hi );
    bool chance( std::uint64_t num, std::uint64_t den ) { return uniform( 1, den ) <= num; }
};

// Seed of trial i under a base seed (splitmix64), so trials are independent of
// the order in which they run.
std::uint64_t trial_seed( std::uint64_t base, std::uint64_t trial );

struct GeneratedPts
{
    Pts pts;
    std::vector< StateId > roots;
};

// Random system with params.roots designated states. Roots after the first are
// another state of the base system, an exact copy of it, or a copy with one
// local change, so that related pairs occur with useful frequency.
GeneratedPts generate_random_pts( const GenParams& params );

// Random acyclic test over the same action names ("a", "b", ...), with a
// success state "top" reachable from the root.
Npt generate_random_test( const GenParams& params, const std::string& name = "o" );

// Action names used by the generators.
std::vector< std::string > generator_alphabet( unsigned size );

} // namespace ptsdist
