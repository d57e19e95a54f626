#ifndef LATZETA_DIRICHLET_HPP
#define LATZETA_DIRICHLET_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "quad_field.hpp"

namespace latzeta {

using rational = boost::multiprecision::cpp_rational;

/// Dirichlet series sum c_n n^{-s} truncated at n <= N, exact rational
/// coefficients. Slot 0 is unused and always zero.
class truncated_series {
  public:
    truncated_series() = default;
    explicit truncated_series(std::size_t N) : c_(N + 1) {}

    static truncated_series from_integers(std::span<const std::int64_t> v)
    {
        truncated_series s(v.empty() ? 0 : v.size() - 1);
        for (std::size_t n = 1; n < v.size(); ++n)
            s.c_[n] = v[n];
        return s;
    }

    std::size_t N() const { return c_.empty() ? 0 : c_.size() - 1; }

    rational const & operator[](std::size_t n) const { return c_.at(n); }
    rational & operator[](std::size_t n) { return c_.at(n); }

    friend bool operator==(truncated_series const &, truncated_series const &) = default;

    bool is_integral() const
    {
        for (std::size_t n = 1; n < c_.size(); ++n)
            if (denominator(c_[n]) != 1)
                return false;
        return true;
    }

    /// Coefficients as integers (slot 0 = 0); throws if any is fractional.
    std::vector<std::int64_t> to_integers() const
    {
        std::vector<std::int64_t> out(c_.size(), 0);
        for (std::size_t n = 1; n < c_.size(); ++n) {
            if (denominator(c_[n]) != 1)
                throw domain_error("coefficient " + std::to_string(n) + " is not an integer: " + c_[n].str());
            out[n] = numerator(c_[n]).convert_to<std::int64_t>();
        }
        return out;
    }

  private:
    std::vector<rational> c_;
};

namespace detail {

inline void require_same_bound(truncated_series const & A, truncated_series const & B, char const * op)
{
    if (A.N() != B.N())
        throw domain_error(std::string(op) + ": truncation bounds " + std::to_string(A.N()) + " and " +
                           std::to_string(B.N()) + " differ");
}

/// Smallest prime factor table for 0..N.
inline std::vector<std::size_t> smallest_prime_factors(std::size_t N)
{
    std::vector<std::size_t> spf(N + 1, 0);
    for (std::size_t i = 2; i <= N; ++i) {
        if (spf[i])
            continue;
        for (std::size_t k = i; k <= N; k += i)
            if (!spf[k])
                spf[k] = i;
    }
    return spf;
}

} // namespace detail

/// n = prod p^e, in increasing p.
struct prime_power {
    std::size_t p;
    int e;
};

inline std::vector<prime_power> factorize(std::size_t n, std::vector<std::size_t> const & spf)
{
    std::vector<prime_power> out;
    while (n > 1) {
        std::size_t p = spf[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    return out;
}

inline truncated_series add(truncated_series const & A, truncated_series const & B)
{
    detail::require_same_bound(A, B, "add");
    truncated_series C(A.N());
    for (std::size_t n = 1; n <= A.N(); ++n)
        C[n] = A[n] + B[n];
    return C;
}

inline truncated_series sub(truncated_series const & A, truncated_series const & B)
{
    detail::require_same_bound(A, B, "sub");
    truncated_series C(A.N());
    for (std::size_t n = 1; n <= A.N(); ++n)
        C[n] = A[n] - B[n];
    return C;
}

inline truncated_series scale(truncated_series const & A, rational const & q)
{
    truncated_series C(A.N());
    for (std::size_t n = 1; n <= A.N(); ++n)
        C[n] = A[n] * q;
    return C;
}

/// Dirichlet convolution.
inline truncated_series mul(truncated_series const & A, truncated_series const & B)
{
    detail::require_same_bound(A, B, "mul");
    std::size_t N = A.N();
    truncated_series C(N);
    for (std::size_t i = 1; i <= N; ++i) {
        if (A[i] == 0)
            continue;
        for (std::size_t j = 1; i * j <= N; ++j)
            if (B[j] != 0)
                C[i * j] += A[i] * B[j];
    }
    return C;
}

/// The C with mul(C, B) = A, solved index by index.
inline truncated_series div(truncated_series const & A, truncated_series const & B)
{
    detail::require_same_bound(A, B, "div");
    if (B.N() == 0 || B[1] == 0)
        throw domain_error("div: leading coefficient of the divisor is zero");
    std::size_t N = A.N();
    truncated_series C(N);
    // accumulate the known part of (C*B)_n as C fills in
    std::vector<rational> acc(N + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        C[n] = (A[n] - acc[n]) / B[1];
        if (C[n] == 0)
            continue;
        for (std::size_t j = 2; n * j <= N; ++j)
            if (B[j] != 0)
                acc[n * j] += C[n] * B[j];
    }
    return C;
}

inline truncated_series operator+(truncated_series const & A, truncated_series const & B) { return add(A, B); }
inline truncated_series operator-(truncated_series const & A, truncated_series const & B) { return sub(A, B); }
inline truncated_series operator*(truncated_series const & A, truncated_series const & B) { return mul(A, B); }
inline truncated_series operator*(rational const & q, truncated_series const & A) { return scale(A, q); }

/// The unit series 1.
inline truncated_series one(std::size_t N)
{
    truncated_series s(N);
    if (N >= 1)
        s[1] = 1;
    return s;
}

/// k^{-s}: a single coefficient 1 at n = k (zero series if k > N).
inline truncated_series monomial(std::size_t k, std::size_t N)
{
    truncated_series s(N);
    if (k >= 1 && k <= N)
        s[k] = 1;
    return s;
}

/// zeta(s).
inline truncated_series zeta(std::size_t N)
{
    truncated_series s(N);
    for (std::size_t n = 1; n <= N; ++n)
        s[n] = 1;
    return s;
}

/// zeta(s - 1).
inline truncated_series zeta_shift(std::size_t N)
{
    truncated_series s(N);
    for (std::size_t n = 1; n <= N; ++n)
        s[n] = rational(std::int64_t(n));
    return s;
}

/// zeta(2s).
inline truncated_series zeta_double(std::size_t N)
{
    truncated_series s(N);
    for (std::size_t k = 1; k * k <= N; ++k)
        s[k * k] = 1;
    return s;
}

/// Series with c_n = prod over p^e || n of local(p, e).
inline truncated_series multiplicative(std::size_t N, std::function<rational(std::size_t, int)> const & local)
{
    truncated_series s(N);
    auto spf = detail::smallest_prime_factors(N);
    for (std::size_t n = 1; n <= N; ++n) {
        rational v = 1;
        for (auto [p, e] : factorize(n, spf)) {
            v *= local(p, e);
            if (v == 0)
                break;
        }
        s[n] = v;
    }
    return s;
}

/// prod over p in `primes` of (1 + sign p^{-k s})^{power}, sign and power
/// each +1 or -1. Primes above N contribute nothing to the truncation.
inline truncated_series prime_product(std::span<const std::int64_t> primes, int sign, int power, std::size_t N,
                                      int k = 1)
{
    if ((sign != 1 && sign != -1) || (power != 1 && power != -1) || k < 1)
        throw domain_error("prime_product: sign and power must be +1 or -1, k positive");
    std::vector<bool> in(N + 1, false);
    for (auto p : primes)
        if (p >= 2 && std::size_t(p) <= N)
            in[std::size_t(p)] = true;
    return multiplicative(N, [&](std::size_t p, int e) -> rational {
        if (!in[p] || e % k)
            return 0;
        int j = e / k;
        if (power == 1)
            return j == 0 ? 1 : j == 1 ? sign : 0;
        // (1 + sign x)^{-1} = sum (-sign)^j x^j
        return (j % 2 == 1 && sign == 1) ? -1 : 1;
    });
}

inline truncated_series prime_product(std::vector<std::int64_t> const & primes, int sign, int power, std::size_t N,
                                      int k = 1)
{
    return prime_product(std::span<const std::int64_t>(primes), sign, power, N, k);
}

/// Primes p <= N with the given splitting type in the field.
inline std::vector<std::int64_t> primes_of_kind(field_data const & F, split_kind kind, std::size_t N)
{
    std::vector<std::int64_t> out;
    for (auto p : primes_up_to(std::int64_t(N)))
        if (split_type(F, p).kind == kind)
            out.push_back(p);
    return out;
}

/// Dedekind zeta function: c_n = number of ideals of norm n.
inline truncated_series zeta_F(field_data const & F, std::size_t N)
{
    return multiplicative(N, [&](std::size_t p, int e) -> rational {
        switch (split_type(F, integer(p)).kind) {
        case split_kind::split: return e + 1;
        case split_kind::inert: return e % 2 == 0 ? 1 : 0;
        case split_kind::ramified: return 1;
        }
        return 0;
    });
}

inline truncated_series zeta_F(integer D, std::size_t N)
{
    return zeta_F(field_data(D), N);
}

} // namespace latzeta

#endif // LATZETA_DIRICHLET_HPP
