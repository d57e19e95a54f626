#ifndef LATZETA_SUBLATTICE_HPP
#define LATZETA_SUBLATTICE_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <thread>
#include <vector>

#include "qform.hpp"

namespace latzeta {

/// Sublattice of Z^2 with basis (x e1, y e1 + z e2), x, z >= 1, 0 <= y < x.
struct hnf_basis {
    integer x = 1, y = 0, z = 1;

    friend constexpr auto operator<=>(hnf_basis const &, hnf_basis const &) = default;

    integer index() const { return checked::mul(x, z); }

    mat2 matrix() const { return {x, y, 0, z}; }
};

/// All sublattices of index m, lexicographic in (x, y, z). There are sigma(m).
inline std::vector<hnf_basis> enumerate_hnf(std::int64_t m)
{
    if (m < 1)
        throw domain_error("enumerate_hnf: index must be positive");
    std::vector<hnf_basis> out;
    for (std::int64_t x = 1; x <= m; ++x) {
        if (m % x)
            continue;
        for (std::int64_t y = 0; y < x; ++y)
            out.push_back({x, y, m / x});
    }
    return out;
}

enum class count_mode { sl, gl };

/// a_m^+ (proper classes) and a_m (classes) for 1 <= m <= N; index 0 unused.
struct coefficient_table {
    std::size_t N = 0;
    std::vector<std::int64_t> proper;
    std::vector<std::int64_t> improper;

    std::vector<std::int64_t> const & get(count_mode mode) const
    {
        return mode == count_mode::sl ? proper : improper;
    }
};

namespace detail {

inline std::pair<std::int64_t, std::int64_t> count_classes_at(bqf const & f, std::int64_t m)
{
    std::vector<bqf> sl;
    for (auto const & h : enumerate_hnf(m))
        sl.push_back(canonical_sl(transform(f, h.matrix())));
    std::sort(sl.begin(), sl.end());
    sl.erase(std::unique(sl.begin(), sl.end()), sl.end());
    std::vector<bqf> gl;
    gl.reserve(sl.size());
    for (auto g : sl) {
        g.b = abs(g.b);
        gl.push_back(g);
    }
    std::sort(gl.begin(), gl.end());
    gl.erase(std::unique(gl.begin(), gl.end()), gl.end());
    return {std::int64_t(sl.size()), std::int64_t(gl.size())};
}

} // namespace detail

/// Brute-force ground truth: reduce every index-m subform of f and count
/// distinct SL and GL canonical forms. With threads > 1 the indices are
/// distributed over worker threads; results are stored by index.
inline coefficient_table brute_coefficients(bqf const & f, std::size_t N, unsigned threads = 1)
{
    if (!f.is_positive_definite())
        throw domain_error("brute_coefficients: form " + f.str() + " is not positive definite");
    coefficient_table t;
    t.N = N;
    t.proper.assign(N + 1, 0);
    t.improper.assign(N + 1, 0);
    if (threads <= 1) {
        for (std::size_t m = 1; m <= N; ++m)
            std::tie(t.proper[m], t.improper[m]) = detail::count_classes_at(f, std::int64_t(m));
        return t;
    }
    // indices are claimed from the top down so the expensive ones start first
    std::atomic<std::size_t> next{N};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (;;) {
            std::size_t m = next.fetch_sub(1);
            if (m == 0 || m > N || failed.load())
                return;
            try {
                std::tie(t.proper[m], t.improper[m]) = detail::count_classes_at(f, std::int64_t(m));
            } catch (...) {
                if (!failed.exchange(true))
                    failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i)
        pool.emplace_back(work);
    for (auto & th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
    return t;
}

inline std::vector<std::int64_t> brute_coefficients(bqf const & f, std::size_t N, count_mode mode,
                                                    unsigned threads = 1)
{
    auto t = brute_coefficients(f, N, threads);
    return mode == count_mode::sl ? std::move(t.proper) : std::move(t.improper);
}

/// s_m = a_1 + ... + a_m; index 0 holds 0.
inline std::vector<std::int64_t> partial_sums(std::span<const std::int64_t> a)
{
    std::vector<std::int64_t> s(a.size(), 0);
    for (std::size_t m = 1; m < a.size(); ++m)
        s[m] = s[m - 1] + a[m];
    return s;
}

// ---------------------------------------------------------------------------
// Submodule machinery for the ring-closure checks. Everything here works in
// coordinates of a fixed Z-basis of an order lattice and never touches the
// class group.

struct vec2 {
    integer u = 0, v = 0;
    friend constexpr bool operator==(vec2 const &, vec2 const &) = default;
};

inline vec2 operator*(mat2 const & m, vec2 const & w)
{
    using namespace checked;
    return {add(mul(m.p, w.u), mul(m.q, w.v)), add(mul(m.r, w.u), mul(m.s, w.v))};
}

namespace detail {

// g = gcd(a, b) >= 0 with s a + t b = g
inline void extended_gcd(integer a, integer b, integer & g, integer & s, integer & t)
{
    integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        integer q = floor_div(r0, r1);
        integer r2 = checked::sub(r0, checked::mul(q, r1));
        integer s2 = checked::sub(s0, checked::mul(q, s1));
        integer t2 = checked::sub(t0, checked::mul(q, t1));
        r0 = r1, r1 = r2, s0 = s1, s1 = s2, t0 = t1, t1 = t2;
    }
    if (r0 < 0)
        r0 = -r0, s0 = -s0, t0 = -t0;
    g = r0, s = s0, t = t0;
}

} // namespace detail

/// Hermite normal form of the Z-span of a full-rank generating set.
inline hnf_basis hnf_of(std::vector<vec2> const & gens)
{
    // generators are folded in one at a time; y is kept reduced mod x once
    // x is known, so entries stay bounded by the index
    integer x = 0, y = 0, z = 0;
    for (auto const & w : gens) {
        if (w.v == 0) {
            x = gcd(x, w.u);
        } else if (z == 0) {
            y = w.v > 0 ? w.u : checked::neg(w.u);
            z = abs(w.v);
        } else {
            integer g, s, t;
            detail::extended_gcd(z, w.v, g, s, t);
            // the unimodular combination also yields a vector with v = 0
            integer rest = checked::sub(checked::mul(w.v / g, y), checked::mul(z / g, w.u));
            y = checked::add(checked::mul(s, y), checked::mul(t, w.u));
            z = g;
            x = gcd(x, rest);
        }
        if (x != 0)
            y = floor_mod(y, x);
    }
    if (x == 0 || z == 0)
        throw domain_error("hnf_of: generators do not span a rank-2 lattice");
    return {x, y, z};
}

/// A rank-2 lattice that is a module over the ring of integers of an
/// imaginary quadratic field: `action` is multiplication by the ring
/// generator tau in the lattice basis, `norm_form` is the field norm
/// restricted to the lattice.
struct order_lattice {
    integer D = 0;
    mat2 action;
    bqf norm_form;
};

/// The maximal order Z + Z tau with tau = (1 + sqrt d)/2 or sqrt d.
inline order_lattice ring_of_integers(integer D)
{
    if (D >= 0 || (floor_mod(D, 4) != 0 && floor_mod(D, 4) != 1))
        throw domain_error("ring_of_integers: " + to_string(D) + " is not a negative discriminant");
    if (floor_mod(D, 4) == 1) {
        // tau^2 = tau + (D - 1)/4, N(x + y tau) = x^2 + xy + (1 - D)/4 y^2
        return {D, {0, (D - 1) / 4, 1, 1}, {1, 1, (1 - D) / 4}};
    }
    integer d = D / 4;
    return {D, {0, d, 1, 0}, {1, 0, -d}};
}

/// The ideal Z a + Z (b - sqrt D)/2 attached to a primitive form (a, b, c)
/// of discriminant D, as a lattice in its own basis.
inline order_lattice ideal_lattice(bqf const & f)
{
    integer D = f.discriminant();
    order_lattice R = ring_of_integers(D);
    // (b - sqrt D)/2 in tau coordinates
    vec2 second = floor_mod(D, 4) == 1 ? vec2{(f.b + 1) / 2, -1} : vec2{f.b / 2, -1};
    mat2 basis{f.a, second.u, 0, second.v};
    integer det = basis.det();
    mat2 adj{basis.s, checked::neg(basis.q), checked::neg(basis.r), basis.p};
    mat2 num = adj * R.action * basis;
    if (num.p % det || num.q % det || num.r % det || num.s % det)
        throw domain_error("ideal_lattice: " + f.str() + " does not define an ideal");
    return {D, {num.p / det, num.q / det, num.r / det, num.s / det}, transform(R.norm_form, basis)};
}

/// HNF of R K, obtained by adjoining tau-multiples until the span is stable.
inline hnf_basis ring_closure(order_lattice const & L, hnf_basis const & K)
{
    hnf_basis cur = K;
    for (;;) {
        vec2 k1{cur.x, 0}, k2{cur.y, cur.z};
        hnf_basis next = hnf_of({k1, k2, L.action * k1, L.action * k2});
        if (next == cur)
            return cur;
        cur = next;
    }
}

/// Coefficients c_m = #{K of index m in L : R K = L and pred(K)} for m <= N.
inline std::vector<std::int64_t>
generating_submodule_counts(order_lattice const & L, std::size_t N,
                            std::function<bool(hnf_basis const &)> const & pred = {})
{
    std::vector<std::int64_t> c(N + 1, 0);
    for (std::size_t m = 1; m <= N; ++m)
        for (auto const & K : enumerate_hnf(std::int64_t(m)))
            if (ring_closure(L, K).index() == 1 && (!pred || pred(K)))
                ++c[m];
    return c;
}

} // namespace latzeta

#endif // LATZETA_SUBLATTICE_HPP
