#pragma once

#include "ptsdist/generator.hpp"
#include "ptsdist/testing_metrics.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ptsdist
{

// One random input of a property: a system with designated roots, an optional
// test suite and the parameters the property reads.
struct Instance
{
    Pts pts;
    std::vector< StateId > roots;
    TestSuite suite;
    Rat lambda = 1;
    unsigned depth = 3;
    SystemClass cls = SystemClass::general;
    std::uint64_t seed = 0;
};

// Text form of an instance: the system and tests as model blocks, roots and
// parameters as comments.
std::string emit_instance( const Instance& inst );

// Returns a failure message, or nothing when the property holds.
using PropertyCheck = std::function< std::optional< std::string >( const Instance& ) >;

// Greedily simplifies inst while check keeps failing: drops tests and
// transitions, turns distributions into Dirac or uniform ones and removes
// unreachable states.
Instance shrink_instance( Instance inst, const PropertyCheck& check, unsigned max_steps = 200 );

struct PropertyConfig
{
    unsigned trials = 200;
    std::uint64_t seed = 1;
    GenParams gen = [] {
        GenParams g;
        g.max_transitions = 3;
        return g;
    }(); // seed, roots and class are set per trial
    unsigned depth = 3;
    unsigned suite_size = 3;
    bool shrink = true;
};

struct PropertyFailure
{
    std::uint64_t seed = 0; // reproduces the instance with the same config
    std::string message;
    Instance shrunk;
    std::string shrunk_message;
    std::string counterexample; // emit_instance(shrunk)
    bool shrunk_still_fails = false;
};

struct PropertyReport
{
    std::string name;
    std::string description;
    bool expect_failure = false; // harness self-test with a corrupted oracle
    unsigned trials = 0;
    unsigned passed = 0;
    unsigned skipped = 0; // inputs over the enumeration caps
    std::vector< PropertyFailure > failures;
    std::vector< std::string > notes;

    [[nodiscard]] bool ok() const { return expect_failure ? !failures.empty() : failures.empty(); }
};

struct PropertyInfo
{
    std::string name;
    std::string description;
};

std::vector< PropertyInfo > property_suites();

// Runs the named suite. Trials are independent: trial i only depends on
// (config.seed, i). Throws UsageError for an unknown name.
PropertyReport run_property_suite( const std::string& name, const PropertyConfig& config );

} // namespace ptsdist
