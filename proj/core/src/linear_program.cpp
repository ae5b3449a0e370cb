#include "ptsdist/linear_program.hpp"

#include <optional>
#include <stdexcept>

namespace ptsdist
{

namespace
{

struct Tableau
{
    // rows 0..m-1 constraints, last column rhs
    std::vector< std::vector< Rat > > t;
    std::vector< std::size_t > basis;
    std::size_t cols = 0; // number of variable columns

    void pivot( std::size_t r, std::size_t c, std::vector< Rat >& obj, Rat& obj_val )
    {
        auto& row = t[ r ];
        const Rat inv = Rat( 1 ) / row[ c ];
        std::vector< std::size_t > nz;
        for ( std::size_t j = 0; j <= cols; ++j )
            if ( !row[ j ].is_zero() )
            {
                row[ j ] *= inv;
                nz.push_back( j );
            }
        for ( std::size_t i = 0; i < t.size(); ++i )
        {
            if ( i == r || t[ i ][ c ].is_zero() )
                continue;
            const Rat f = t[ i ][ c ];
            for ( auto j : nz )
                t[ i ][ j ] -= f * row[ j ];
        }
        if ( !obj[ c ].is_zero() )
        {
            const Rat f = obj[ c ];
            for ( auto j : nz )
            {
                if ( j == cols )
                    obj_val -= f * row[ j ];
                else
                    obj[ j ] -= f * row[ j ];
            }
        }
        basis[ r ] = c;
    }

    // Minimizes with reduced costs `obj` (over columns allowed[]). Returns false if unbounded.
    bool optimize( std::vector< Rat >& obj, Rat& obj_val, const std::vector< bool >& allowed )
    {
        while ( true )
        {
            std::optional< std::size_t > enter;
            for ( std::size_t j = 0; j < cols; ++j )
                if ( allowed[ j ] && obj[ j ].sign() < 0 )
                {
                    enter = j;
                    break;
                }
            if ( !enter )
                return true;
            std::optional< std::size_t > leave;
            Rat best;
            for ( std::size_t i = 0; i < t.size(); ++i )
            {
                if ( t[ i ][ *enter ].sign() <= 0 )
                    continue;
                Rat ratio = t[ i ][ cols ] / t[ i ][ *enter ];
                if ( !leave || ratio < best || ( ratio == best && basis[ i ] < basis[ *leave ] ) )
                {
                    leave = i;
                    best = ratio;
                }
            }
            if ( !leave )
                return false;
            pivot( *leave, *enter, obj, obj_val );
        }
    }
};

} // namespace

LpSolution solve_lp( const LinearProgram& lp )
{
    const std::size_t n = lp.num_vars;
    const std::size_t m = lp.rows.size();

    // Normalize rows to nonnegative rhs.
    std::vector< LinearProgram::Row > rows = lp.rows;
    for ( auto& r : rows )
    {
        if ( r.coeffs.size() != n )
            throw std::invalid_argument( "solve_lp: row width mismatch" );
        if ( r.rhs.sign() < 0 )
        {
            for ( auto& c : r.coeffs )
                c = -c;
            r.rhs = -r.rhs;
            if ( r.sense == LinearProgram::Sense::le )
                r.sense = LinearProgram::Sense::ge;
            else if ( r.sense == LinearProgram::Sense::ge )
                r.sense = LinearProgram::Sense::le;
        }
    }

    std::size_t slacks = 0, artificials = 0;
    for ( const auto& r : rows )
    {
        if ( r.sense != LinearProgram::Sense::eq )
            ++slacks;
        if ( r.sense != LinearProgram::Sense::le )
            ++artificials;
    }
    Tableau tb;
    tb.cols = n + slacks + artificials;
    tb.t.assign( m, std::vector< Rat >( tb.cols + 1, Rat( 0 ) ) );
    tb.basis.assign( m, 0 );
    std::vector< bool > is_art( tb.cols, false );
    std::size_t next_slack = n, next_art = n + slacks;
    for ( std::size_t i = 0; i < m; ++i )
    {
        const auto& r = rows[ i ];
        for ( std::size_t j = 0; j < n; ++j )
            tb.t[ i ][ j ] = r.coeffs[ j ];
        tb.t[ i ][ tb.cols ] = r.rhs;
        if ( r.sense == LinearProgram::Sense::le )
        {
            tb.t[ i ][ next_slack ] = 1;
            tb.basis[ i ] = next_slack++;
        }
        else
        {
            if ( r.sense == LinearProgram::Sense::ge )
                tb.t[ i ][ next_slack++ ] = -1;
            tb.t[ i ][ next_art ] = 1;
            is_art[ next_art ] = true;
            tb.basis[ i ] = next_art++;
        }
    }

    LpSolution sol;
    std::vector< bool > allowed( tb.cols, true );
    if ( artificials > 0 )
    {
        // Phase 1: minimize the sum of artificials, expressed in reduced costs.
        std::vector< Rat > obj( tb.cols, Rat( 0 ) );
        Rat val = 0;
        for ( std::size_t j = 0; j < tb.cols; ++j )
            if ( is_art[ j ] )
                obj[ j ] = 1;
        for ( std::size_t i = 0; i < m; ++i )
            if ( is_art[ tb.basis[ i ] ] )
            {
                for ( std::size_t j = 0; j < tb.cols; ++j )
                    obj[ j ] -= tb.t[ i ][ j ];
                val -= tb.t[ i ][ tb.cols ];
            }
        tb.optimize( obj, val, allowed );
        if ( !val.is_zero() )
            return sol; // infeasible
        // Drive artificials out of the basis; drop redundant rows.
        for ( std::size_t i = 0; i < tb.t.size(); )
        {
            if ( !is_art[ tb.basis[ i ] ] )
            {
                ++i;
                continue;
            }
            std::optional< std::size_t > col;
            for ( std::size_t j = 0; j < tb.cols; ++j )
                if ( !is_art[ j ] && !tb.t[ i ][ j ].is_zero() )
                {
                    col = j;
                    break;
                }
            if ( col )
            {
                tb.pivot( i, *col, obj, val );
                ++i;
            }
            else
            {
                tb.t.erase( tb.t.begin() + static_cast< std::ptrdiff_t >( i ) );
                tb.basis.erase( tb.basis.begin() + static_cast< std::ptrdiff_t >( i ) );
            }
        }
        for ( std::size_t j = 0; j < tb.cols; ++j )
            if ( is_art[ j ] )
                allowed[ j ] = false;
    }

    // Phase 2
    std::vector< Rat > obj( tb.cols, Rat( 0 ) );
    for ( std::size_t j = 0; j < n && j < lp.objective.size(); ++j )
        obj[ j ] = lp.objective[ j ];
    Rat val = 0;
    for ( std::size_t i = 0; i < tb.t.size(); ++i )
    {
        const Rat f = obj[ tb.basis[ i ] ];
        if ( f.is_zero() )
            continue;
        for ( std::size_t j = 0; j < tb.cols; ++j )
            obj[ j ] -= f * tb.t[ i ][ j ];
        val -= f * tb.t[ i ][ tb.cols ];
    }
    if ( !tb.optimize( obj, val, allowed ) )
    {
        sol.status = LpSolution::Status::unbounded;
        return sol;
    }
    sol.status = LpSolution::Status::optimal;
    sol.value = -val;
    sol.x.assign( n, Rat( 0 ) );
    for ( std::size_t i = 0; i < tb.t.size(); ++i )
        if ( tb.basis[ i ] < n )
            sol.x[ tb.basis[ i ] ] = tb.t[ i ][ tb.cols ];
    return sol;
}

} // namespace ptsdist
