#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace ptsdist
{

// Exact rational number. Always kept in canonical form (gcd(num, den) = 1, den > 0).
class Rat
{
    mpq_class _q;

public:
    Rat() = default;
    Rat( long v ) : _q( v ) {} // NOLINT(google-explicit-constructor)
    Rat( int v ) : _q( v ) {} // NOLINT(google-explicit-constructor)
    Rat( long num, long den );
    explicit Rat( mpq_class q ) : _q( std::move( q ) ) { _q.canonicalize(); }

    // Accepts "3", "-3", "1/2", "0.25" and "-.5". Exponent notation is rejected.
    static Rat parse( std::string_view text );
    static bool try_parse( std::string_view text, Rat& out );

    [[nodiscard]] const mpq_class& raw() const { return _q; }
    [[nodiscard]] std::string str() const { return _q.get_str(); }
    [[nodiscard]] std::string decimal( int digits = 6 ) const;
    [[nodiscard]] double to_double() const { return _q.get_d(); }

    [[nodiscard]] mpz_class num() const { return _q.get_num(); }
    [[nodiscard]] mpz_class den() const { return _q.get_den(); }

    [[nodiscard]] bool is_zero() const { return sgn( _q ) == 0; }
    [[nodiscard]] bool is_one() const { return _q == 1; }
    [[nodiscard]] int sign() const { return sgn( _q ); }

    Rat& operator+=( const Rat& o ) { _q += o._q; return *this; }
    Rat& operator-=( const Rat& o ) { _q -= o._q; return *this; }
    Rat& operator*=( const Rat& o ) { _q *= o._q; return *this; }
    Rat& operator/=( const Rat& o );

    friend Rat operator+( Rat a, const Rat& b ) { return a += b; }
    friend Rat operator-( Rat a, const Rat& b ) { return a -= b; }
    friend Rat operator*( Rat a, const Rat& b ) { return a *= b; }
    friend Rat operator/( Rat a, const Rat& b ) { return a /= b; }
    Rat operator-() const { return Rat( mpq_class( -_q ) ); }

    friend bool operator==( const Rat& a, const Rat& b ) { return a._q == b._q; }
    friend bool operator!=( const Rat& a, const Rat& b ) { return a._q != b._q; }
    friend bool operator<( const Rat& a, const Rat& b ) { return a._q < b._q; }
    friend bool operator<=( const Rat& a, const Rat& b ) { return a._q <= b._q; }
    friend bool operator>( const Rat& a, const Rat& b ) { return a._q > b._q; }
    friend bool operator>=( const Rat& a, const Rat& b ) { return a._q >= b._q; }

    [[nodiscard]] std::size_t hash() const;

    friend std::ostream& operator<<( std::ostream& os, const Rat& r ) { return os << r.str(); }
};

Rat abs( const Rat& r );
Rat pow( const Rat& base, unsigned exp );
inline const Rat& max( const Rat& a, const Rat& b ) { return a < b ? b : a; }
inline const Rat& min( const Rat& a, const Rat& b ) { return b < a ? b : a; }
// max(0, a - b)
Rat monus( const Rat& a, const Rat& b );

} // namespace ptsdist

template <>
struct std::hash< ptsdist::Rat >
{
    std::size_t operator()( const ptsdist::Rat& r ) const noexcept { return r.hash(); }
};
