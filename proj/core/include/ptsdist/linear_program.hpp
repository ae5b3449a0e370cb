#pragma once

#include "ptsdist/rational.hpp"

#include <vector>

namespace ptsdist
{

// minimize objective . x  subject to rows, x >= 0. Solved exactly.
struct LinearProgram
{
    enum class Sense
    {
        le,
        eq,
        ge
    };
    struct Row
    {
        std::vector< Rat > coeffs;
        Sense sense = Sense::le;
        Rat rhs;
    };

    std::size_t num_vars = 0;
    std::vector< Rat > objective;
    std::vector< Row > rows;
};

struct LpSolution
{
    enum class Status
    {
        optimal,
        infeasible,
        unbounded
    };
    Status status = Status::infeasible;
    Rat value;
    std::vector< Rat > x;
};

// Two-phase dense tableau simplex with Bland's rule.
LpSolution solve_lp( const LinearProgram& lp );

} // namespace ptsdist
