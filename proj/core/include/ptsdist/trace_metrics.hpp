#pragma once

#include "ptsdist/achievable.hpp"
#include "ptsdist/limits.hpp"
#include "ptsdist/metric_result.hpp"
#include "ptsdist/pts.hpp"

#include <optional>
#include <string>

namespace ptsdist
{

enum class TraceApproach
{
    dis,
    tbt,
    sup
};

std::string to_string( TraceApproach a );

struct TraceMetricSpec
{
    TraceApproach approach = TraceApproach::tbt;
    SchedulerMode::Class scheduler = SchedulerMode::Class::det;
    Rat lambda = 1;
    unsigned depth = 1;
    Direction direction = Direction::left;
    // dis + rand only: take the outer sup over randomized resolutions whose
    // weights are multiples of 1/grid instead of over the vertices.
    std::optional< unsigned > grid;
    Limits limits = default_limits();
};

// Throws UsageError on a malformed spec.
void check_spec( const TraceMetricSpec& spec );

// h(s, t) for the chosen approach, ignoring spec.direction.
MetricResult trace_hemimetric( const Pts& p, StateId s, StateId t, const TraceMetricSpec& spec );

// Honors spec.direction: left is h(s,t), right is h(t,s), symmetric the max of both.
MetricResult trace_distance( const Pts& p, StateId s, StateId t, const TraceMetricSpec& spec );

// Symmetric distance regardless of spec.direction.
MetricResult trace_pseudometric( const Pts& p, StateId s, StateId t, TraceMetricSpec spec );

// lambda^(|alpha| - 1) for nonempty alpha.
Rat trace_weight( const Rat& lambda, std::size_t length );

} // namespace ptsdist
