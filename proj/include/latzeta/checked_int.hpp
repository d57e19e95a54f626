#ifndef LATZETA_CHECKED_INT_HPP
#define LATZETA_CHECKED_INT_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace latzeta {

/// Signed 128-bit integer used for every form coefficient.
using integer = __int128;

/// Thrown when a checked operation would leave the range of `integer`.
/// Seeing this means the requested discriminant or index bound is too large.
struct overflow_error : std::overflow_error {
    using std::overflow_error::overflow_error;
};

/// Domain violations: non-definite forms, non-fundamental discriminants,
/// composite "primes", mismatched truncation bounds and the like.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

namespace checked {

inline integer add(integer a, integer b)
{
    integer r;
    if (__builtin_add_overflow(a, b, &r))
        throw overflow_error("integer overflow in addition");
    return r;
}

inline integer sub(integer a, integer b)
{
    integer r;
    if (__builtin_sub_overflow(a, b, &r))
        throw overflow_error("integer overflow in subtraction");
    return r;
}

inline integer mul(integer a, integer b)
{
    integer r;
    if (__builtin_mul_overflow(a, b, &r))
        throw overflow_error("integer overflow in multiplication");
    return r;
}

inline integer neg(integer a)
{
    return sub(0, a);
}

} // namespace checked

inline integer abs(integer a)
{
    return a < 0 ? checked::neg(a) : a;
}

/// Floor division (rounds toward negative infinity); b != 0.
inline integer floor_div(integer a, integer b)
{
    integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

/// Non-negative remainder for b > 0.
inline integer floor_mod(integer a, integer b)
{
    integer r = a % b;
    return r < 0 ? r + b : r;
}

inline integer gcd(integer a, integer b)
{
    a = abs(a);
    b = abs(b);
    while (b != 0) {
        integer t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::string to_string(integer v)
{
    if (v == 0)
        return "0";
    bool negative = v < 0;
    // unsigned magnitude handles the minimum value as well
    unsigned __int128 m = negative ? (unsigned __int128)0 - (unsigned __int128)v
                                   : (unsigned __int128)v;
    std::string s;
    while (m != 0) {
        s.push_back(char('0' + int(m % 10)));
        m /= 10;
    }
    if (negative)
        s.push_back('-');
    return {s.rbegin(), s.rend()};
}

/// Narrowing with a range check; used at output boundaries.
inline std::int64_t to_int64(integer v)
{
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
        throw overflow_error("value does not fit in 64 bits: " + to_string(v));
    return static_cast<std::int64_t>(v);
}

} // namespace latzeta

#endif // LATZETA_CHECKED_INT_HPP
