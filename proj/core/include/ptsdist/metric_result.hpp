#pragma once

#include "ptsdist/rational.hpp"

#include <optional>
#include <string>

namespace ptsdist
{

enum class Direction
{
    left,     // h(s, t)
    right,    // h(t, s)
    symmetric // max of both
};

std::string to_string( Direction d );

struct MetricResult
{
    Rat value;
    // The unbounded quantity lies in [value, value + truncation_bound] when bounded is true.
    Rat truncation_bound;
    bool bounded = true;
    bool exact = true;
    std::optional< Rat > grid_step;
    std::string witness;

    // echo of what was computed
    std::string family; // "trace" or "testing"
    std::string approach;
    std::string scheduler;
    std::optional< Rat > lambda;
    std::optional< unsigned > depth;
    Direction direction = Direction::left;
};

} // namespace ptsdist
