#ifndef LATZETA_QUAD_FIELD_HPP
#define LATZETA_QUAD_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qform.hpp"

namespace latzeta {

inline bool is_prime(integer n)
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (integer k = 3; k * k <= n; k += 2)
        if (n % k == 0)
            return false;
    return true;
}

inline bool is_squarefree(integer n)
{
    n = abs(n);
    for (integer k = 2; k * k <= n; ++k) {
        if (n % (k * k) == 0)
            return false;
        while (n % k == 0)
            n /= k;
    }
    return true;
}

/// Sieve of Eratosthenes; primes p <= n in increasing order.
inline std::vector<std::int64_t> primes_up_to(std::int64_t n)
{
    std::vector<std::int64_t> out;
    if (n < 2)
        return out;
    std::vector<bool> composite(std::size_t(n) + 1, false);
    for (std::int64_t p = 2; p <= n; ++p) {
        if (composite[std::size_t(p)])
            continue;
        out.push_back(p);
        for (std::int64_t k = p * p; k <= n; k += p)
            composite[std::size_t(k)] = true;
    }
    return out;
}

/// Distinct prime divisors of |n| in increasing order.
inline std::vector<integer> prime_divisors(integer n)
{
    std::vector<integer> out;
    n = abs(n);
    for (integer k = 2; k * k <= n; ++k) {
        if (n % k)
            continue;
        out.push_back(k);
        while (n % k == 0)
            n /= k;
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

enum class ring_kind { half_integer, sqrt_d };

/// Data of the imaginary quadratic field with fundamental discriminant D.
/// The ring of integers is Z[tau], tau = (1 + sqrt d)/2 or sqrt d.
struct field_data {
    integer D = -4;
    integer d = -1;
    int w = 4;
    ring_kind kind = ring_kind::sqrt_d;

    field_data() = default;

    explicit field_data(integer disc) : D(disc)
    {
        auto fail = [&](std::string const & why) {
            throw domain_error("discriminant " + to_string(disc) + " is not a negative fundamental discriminant: " + why);
        };
        if (disc >= 0)
            fail("it is not negative");
        integer r = floor_mod(disc, 4);
        if (r == 1) {
            if (!is_squarefree(disc))
                fail("D = 1 mod 4 but D is not square-free");
            d = disc;
            kind = ring_kind::half_integer;
        } else if (r == 0) {
            d = disc / 4;
            integer dr = floor_mod(d, 4);
            if (dr == 1)
                fail("D/4 = 1 mod 4");
            if (dr == 0)
                fail("D/4 is divisible by 4");
            if (!is_squarefree(d))
                fail("D/4 is not square-free");
            kind = ring_kind::sqrt_d;
        } else {
            fail("D = " + to_string(r) + " mod 4");
        }
        w = disc == -3 ? 6 : disc == -4 ? 4 : 2;
    }

    /// d mod 4, one of 1, 2, 3.
    int d_mod_4() const { return int(floor_mod(d, 4)); }

    /// The principal form: norm form of the ring of integers.
    bqf principal_form() const
    {
        if (kind == ring_kind::half_integer)
            return {1, 1, (1 - D) / 4};
        return {1, 0, -D / 4};
    }

    std::vector<integer> ramified_primes() const { return prime_divisors(D); }
};

enum class split_kind { split, inert, ramified };

inline char const * to_string(split_kind k)
{
    switch (k) {
    case split_kind::split: return "split";
    case split_kind::inert: return "inert";
    case split_kind::ramified: return "ramified";
    }
    return "?";
}

struct prime_split_info {
    integer p = 2;
    split_kind kind = split_kind::ramified;
};

inline integer pow_mod(integer base, integer e, integer m)
{
    integer r = 1 % m;
    base = floor_mod(base, m);
    while (e > 0) {
        if (e & 1)
            r = checked::mul(r, base) % m;
        base = checked::mul(base, base) % m;
        e >>= 1;
    }
    return r;
}

/// Kronecker symbol (D/p) for a prime p.
inline int kronecker(integer D, integer p)
{
    if (p == 2) {
        if (D % 2 == 0)
            return 0;
        return floor_mod(D, 8) == 1 || floor_mod(D, 8) == 7 ? 1 : -1;
    }
    integer r = floor_mod(D, p);
    if (r == 0)
        return 0;
    return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Splitting of a rational prime in the field; also accepts a bare
/// discriminant, which is validated first.
inline prime_split_info split_type(field_data const & F, integer p)
{
    if (!is_prime(p))
        throw domain_error("split_type: " + to_string(p) + " is not prime");
    int k = kronecker(F.D, p);
    return {p, k > 0 ? split_kind::split : k < 0 ? split_kind::inert : split_kind::ramified};
}

inline prime_split_info split_type(integer D, integer p)
{
    return split_type(field_data(D), p);
}

/// The form (p, b, (b^2 - D)/4p) of the prime ideal Zp + Z(b - sqrt D)/2
/// above a split or ramified p, with |b| minimal and ties broken toward
/// positive b. The conjugate prime has form (p, -b, c). Not reduced.
inline bqf prime_ideal_form(field_data const & F, integer p)
{
    auto info = split_type(F, p);
    if (info.kind == split_kind::inert)
        throw domain_error("prime_ideal_form: " + to_string(p) + " is inert");
    integer four_p = checked::mul(4, p);
    integer parity = floor_mod(F.D, 2);
    // b and -b satisfy the same congruence, so scanning b >= 0 upward
    // finds the minimal |b| with the positive sign
    for (integer b = parity; b <= p; b += 2)
        if (floor_mod(checked::sub(checked::mul(b, b), F.D), four_p) == 0)
            return {p, b, (b * b - F.D) / four_p};
    throw domain_error("prime_ideal_form: no square root of D modulo 4p");
}

/// Reduced form of the class of the ramified prime ideal above r.
inline bqf ramified_factor_form(field_data const & F, integer r)
{
    if (r < 2 || F.D % r != 0 || !is_prime(r))
        throw domain_error("ramified_factor_form: " + to_string(r) + " is not a prime dividing " + to_string(F.D));
    return reduce(prime_ideal_form(F, r));
}

inline bqf ramified_factor_form(integer D, integer r)
{
    return ramified_factor_form(field_data(D), r);
}

struct split_density {
    std::int64_t total = 0, split = 0, inert = 0, ramified = 0;
};

/// Splitting statistics for primes below `bound` (diagnostic only).
inline split_density density_of_splitting(field_data const & F, std::int64_t bound)
{
    split_density s;
    for (auto p : primes_up_to(bound - 1)) {
        ++s.total;
        switch (split_type(F, p).kind) {
        case split_kind::split: ++s.split; break;
        case split_kind::inert: ++s.inert; break;
        case split_kind::ramified: ++s.ramified; break;
        }
    }
    return s;
}

} // namespace latzeta

#endif // LATZETA_QUAD_FIELD_HPP
