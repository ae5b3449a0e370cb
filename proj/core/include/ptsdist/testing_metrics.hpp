#pragma once

#include "ptsdist/achievable.hpp"
#include "ptsdist/compose.hpp"
#include "ptsdist/limits.hpp"
#include "ptsdist/metric_result.hpp"
#include "ptsdist/pts.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ptsdist
{

struct TestSuite
{
    std::vector< Npt > tests;
    std::vector< Rat > omega; // per test, in (0,1]; empty means all 1

    [[nodiscard]] Rat weight( std::size_t i ) const { return omega.empty() ? Rat( 1 ) : omega.at( i ); }
    void add( Npt o, Rat w = 1 );
};

// omega(o) = lambda^depth(o) for every test of the suite. Tests must be acyclic.
std::vector< Rat > depth_discount( const TestSuite& suite, const Rat& lambda );

enum class TestingApproach
{
    may,
    must,
    mm,
    tbt,
    sup
};

std::string to_string( TestingApproach a );

struct TestingMetricSpec
{
    TestingApproach approach = TestingApproach::may;
    SchedulerMode::Class scheduler = SchedulerMode::Class::det;
    Rat lambda = 1;                // tbt and sup only
    std::optional< unsigned > depth; // tbt and sup only; default is the full interaction depth
    Direction direction = Direction::left;
    Limits limits = default_limits();
};

void check_spec( const TestingMetricSpec& spec, const TestSuite& suite );

MetricResult testing_hemimetric( const Pts& p, StateId s, StateId t, const TestSuite& suite,
                                 const TestingMetricSpec& spec );
MetricResult testing_distance( const Pts& p, StateId s, StateId t, const TestSuite& suite,
                               const TestingMetricSpec& spec );
MetricResult testing_pseudometric( const Pts& p, StateId s, StateId t, const TestSuite& suite,
                                   TestingMetricSpec spec );

} // namespace ptsdist
