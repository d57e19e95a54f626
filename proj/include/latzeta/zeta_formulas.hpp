#ifndef LATZETA_ZETA_FORMULAS_HPP
#define LATZETA_ZETA_FORMULAS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "class_group.hpp"
#include "dirichlet.hpp"
#include "sublattice.hpp"

namespace latzeta {

/// An assembled series violated a property that holds for every valid
/// input (integrality, gl <= sl <= 2 gl). Indicates a bug.
struct internal_consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// Field, class group and distinguished subgroups for one discriminant.
class field_context {
  public:
    explicit field_context(integer D) : group_(D), subs_(subgroups(group_)) {}

    field_data const & field() const { return group_.field(); }
    form_class_group const & group() const { return group_; }
    class_subgroups const & subs() const { return subs_; }

  private:
    form_class_group group_;
    class_subgroups subs_;
};

/// S(n) for n <= N: the classes of integral ideals of norm n, each a
/// sorted list of class indices. Empty when no ideal has norm n.
struct class_set_table {
    std::size_t N = 0;
    std::vector<std::vector<std::size_t>> sets;

    std::vector<std::size_t> const & at(std::size_t n) const { return sets.at(n); }
};

inline class_set_table class_sets(field_context const & ctx, std::size_t N)
{
    auto const & G = ctx.group();
    std::size_t h = G.order();
    auto spf = detail::smallest_prime_factors(N);
    std::map<std::size_t, std::pair<split_kind, std::size_t>> prime_data;
    class_set_table t;
    t.N = N;
    t.sets.resize(N + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        std::vector<bool> cur(h, false);
        cur[G.identity()] = true;
        for (auto [p, e] : factorize(n, spf)) {
            auto it = prime_data.find(p);
            if (it == prime_data.end()) {
                auto kind = split_type(G.field(), integer(p)).kind;
                std::size_t cls = kind == split_kind::inert ? G.identity() : G.prime_class(integer(p));
                it = prime_data.emplace(p, std::make_pair(kind, cls)).first;
            }
            auto [kind, P] = it->second;
            std::vector<std::size_t> local;
            switch (kind) {
            case split_kind::split:
                // P^a Pbar^b with a + b = e has class P^(a - b)
                for (int j = -e; j <= e; j += 2)
                    local.push_back(G.pow(P, j));
                break;
            case split_kind::inert:
                if (e % 2 == 0)
                    local.push_back(G.identity());
                break;
            case split_kind::ramified:
                local.push_back(G.pow(P, e));
                break;
            }
            std::vector<bool> next(h, false);
            for (std::size_t x = 0; x < h; ++x)
                if (cur[x])
                    for (auto l : local)
                        next[G.mul(x, l)] = true;
            cur.swap(next);
        }
        for (std::size_t x = 0; x < h; ++x)
            if (cur[x])
                t.sets[n].push_back(x);
    }
    return t;
}

/// Bundle of the series attached to one class g = [I].
struct zeta_bundle {
    integer D = 0;
    bqf form;
    truncated_series sl, rot, refl, gl;
};

/// Euler-product check outcome. `witness` is the least m where a_m^+
/// differs from the product of its prime-power coefficients.
struct euler_report {
    bool multiplicative = true;
    std::optional<std::size_t> witness;
    bool elementary_2 = true;
    std::vector<std::size_t> invariant_factors;
};

/// Diagnostic only: truncated residue at s = 2 and partial-sum growth.
struct residue_report {
    integer D = 0;
    std::size_t N = 0;
    rational class_sum;  // sum_{n <= N} |S(n)| / n^2
    double L2 = 0;       // L(2, chi_D) from an Euler product
    double residue = 0;  // (2 / w) class_sum / L(2, chi_D)
    double ratio_sl = 0; // s^+_N / s^+_{N/2} from the oracle
    double ratio_gl = 0; // s_N / s_{N/2} from the oracle
};

/// Evaluates the closed formulas for one discriminant at truncation N.
/// Shared ingredients (class sets, zeta quotients) are computed once.
class zeta_assembler {
  public:
    zeta_assembler(field_context const & ctx, std::size_t N)
        : ctx_(ctx), N_(N), sets_(latzeta::class_sets(ctx, N)), zF_(zeta_F(ctx.field(), N)),
          split_(primes_of_kind(ctx.field(), split_kind::split, N))
    {
        auto Z = zeta(N);
        ratio_ = div(mul(Z, zeta_shift(N)), zF_);
        zeta_sq_ = mul(Z, Z);
        std::vector<std::int64_t> ram;
        for (integer r : ctx.field().ramified_primes())
            ram.push_back(to_int64(r));
        P_ = div(zeta_sq_, mul(zeta_double(N), prime_product(ram, 1, 1, N)));
    }

    field_context const & context() const { return ctx_; }
    std::size_t N() const { return N_; }
    class_set_table const & class_sets() const { return sets_; }

    /// c_0 + c_1 2^{-s} + c_2 4^{-s}.
    truncated_series two_poly(rational c0, rational c1, rational c2) const
    {
        truncated_series s(N_);
        if (N_ >= 1)
            s[1] = c0;
        if (N_ >= 2)
            s[2] += c1;
        if (N_ >= 4)
            s[4] += c2;
        return s;
    }

    /// sum_n #{h in g S(n) : pred(h)} n^{-s}.
    template <class Pred> truncated_series translated_count(std::size_t g, Pred pred) const
    {
        auto const & G = ctx_.group();
        truncated_series s(N_);
        for (std::size_t n = 1; n <= N_; ++n) {
            std::int64_t k = 0;
            for (auto x : sets_.at(n))
                if (pred(G.mul(g, x)))
                    ++k;
            s[n] = k;
        }
        return s;
    }

    truncated_series sl() const
    {
        auto const & G = ctx_.group();
        int w = ctx_.field().w;
        auto counts = translated_count(G.identity(), [](std::size_t) { return true; });
        auto main = scale(mul(ratio_, counts), rational(2, w));
        if (w == 2)
            return main;
        auto unit = mul(prime_product(split_, -1, 1, N_), zF_);
        return add(main, scale(unit, rational(w - 2, w)));
    }

    /// #(g S(n) \ g^{-1} S(n)) as a series.
    truncated_series rot_correction(std::size_t g) const
    {
        auto const & G = ctx_.group();
        truncated_series s(N_);
        std::size_t gi = G.inverse(g);
        for (std::size_t n = 1; n <= N_; ++n) {
            auto const & S = sets_.at(n);
            std::vector<bool> other(G.order(), false);
            for (auto x : S)
                other[G.mul(gi, x)] = true;
            std::int64_t k = 0;
            for (auto x : S)
                if (!other[G.mul(g, x)])
                    ++k;
            s[n] = k;
        }
        return s;
    }

    truncated_series rot(std::size_t g) const
    {
        return add(scale(sl(), rational(1, 2)), scale(mul(ratio_, rot_correction(g)), rational(1, 2)));
    }

    truncated_series refl(std::size_t g) const
    {
        auto const & F = ctx_.field();
        auto const & G = ctx_.group();
        auto const & subs = ctx_.subs();
        if (F.D == -4 || F.D == -3) {
            auto base = mul(zeta_sq_, prime_product(split_, 1, 1, N_));
            auto poly = F.D == -4 ? two_poly(1, 0, 1) : two_poly(1, -1, 2);
            return scale(mul(poly, base), rational(1, 2));
        }
        auto self_conj = translated_count(g, [&](std::size_t h) { return G.mul(h, h) == G.identity(); });
        auto out = scale(mul(two_poly(1, -1, 2), mul(P_, self_conj)), rational(1, 2));
        switch (F.d_mod_4()) {
        case 1:
            break;
        case 2: {
            auto in_ram = translated_count(g, [&](std::size_t h) { return subgroup_contains(subs.ram, h); });
            out = add(out, mul(two_poly(0, 1, -1), mul(P_, in_ram)));
            break;
        }
        case 3: {
            auto const & ortho = subs.ortho.value();
            auto in_ortho = translated_count(g, [&](std::size_t h) { return subgroup_contains(ortho, h); });
            auto ram_only = translated_count(g, [&](std::size_t h) {
                return subgroup_contains(subs.ram, h) && !subgroup_contains(ortho, h);
            });
            out = add(out, mul(two_poly(0, 1, 0), mul(P_, in_ortho)));
            out = sub(out, mul(two_poly(0, 0, 1), mul(P_, ram_only)));
            break;
        }
        }
        return out;
    }

    zeta_bundle bundle(std::size_t g) const
    {
        zeta_bundle b;
        b.D = ctx_.field().D;
        b.form = ctx_.group().element(g);
        b.sl = sl();
        b.rot = rot(g);
        b.refl = refl(g);
        b.gl = add(b.rot, b.refl);
        check_bundle(b);
        return b;
    }

    /// Psi(g) for a 2-torsion class g; general fields only.
    truncated_series psi(std::size_t g) const
    {
        auto const & F = ctx_.field();
        auto const & G = ctx_.group();
        auto const & subs = ctx_.subs();
        if (F.w != 2)
            throw domain_error("psi_series: not defined for D = " + to_string(F.D));
        if (!subgroup_contains(subs.refl, g))
            throw domain_error("psi_series: class " + G.element(g).str() + " is not 2-torsion");
        rational e1 = 0, e2 = 0;
        bool in_ram = subgroup_contains(subs.ram, g);
        if (F.d_mod_4() == 2 && in_ram) {
            e1 = 2;
            e2 = -2;
        } else if (F.d_mod_4() == 3 && in_ram) {
            if (subgroup_contains(*subs.ortho, g))
                e1 = 2;
            else
                e2 = -2;
        }
        return mul(two_poly(1, -1 + e1, 2 + e2), P_);
    }

    /// Checks sum over squarefree products a of ramified primes of
    /// N(a)^{-s} Psi(g[a]) against zeta^2/zeta(2s) times the ortho-dependent
    /// polynomial, for every 2-torsion g.
    bool psi_equation_holds() const
    {
        auto const & F = ctx_.field();
        auto const & G = ctx_.group();
        auto const & subs = ctx_.subs();
        auto ram = F.ramified_primes();
        auto base = div(zeta_sq_, zeta_double(N_));
        for (auto g : subs.refl) {
            truncated_series lhs(N_);
            for (std::size_t mask = 0; mask < (std::size_t(1) << ram.size()); ++mask) {
                integer norm = 1;
                std::size_t cls = g;
                for (std::size_t i = 0; i < ram.size(); ++i) {
                    if (!(mask >> i & 1))
                        continue;
                    norm = checked::mul(norm, ram[i]);
                    cls = G.mul(cls, G.prime_class(ram[i]));
                }
                if (norm > integer(N_))
                    continue;
                lhs = add(lhs, mul(monomial(std::size_t(norm), N_), psi(cls)));
            }
            bool in_ortho = subs.ortho && subgroup_contains(*subs.ortho, g);
            auto rhs = mul(in_ortho ? two_poly(1, 1, 0) : two_poly(1, -1, 2), base);
            if (lhs != rhs)
                return false;
        }
        return true;
    }

  private:
    static void check_bundle(zeta_bundle const & b)
    {
        auto where = [&](std::size_t n) {
            return " at n=" + std::to_string(n) + " for D=" + to_string(b.D) + ", class " + b.form.str();
        };
        for (std::size_t n = 1; n <= b.sl.N(); ++n) {
            auto const & s = b.sl[n];
            auto const & g = b.gl[n];
            if (denominator(s) != 1 || denominator(g) != 1)
                throw internal_consistency_error("non-integral coefficient" + where(n));
            if (g < 0 || s < g || s > 2 * g)
                throw internal_consistency_error("gl <= sl <= 2 gl violated" + where(n));
        }
    }

    field_context const & ctx_;
    std::size_t N_;
    class_set_table sets_;
    truncated_series zF_;
    std::vector<std::int64_t> split_;
    truncated_series ratio_;   // zeta(s) zeta(s-1) / zeta_F(s)
    truncated_series zeta_sq_; // zeta(s)^2
    truncated_series P_;       // zeta(s)^2 / (zeta(2s) prod_r (1 + r^{-s}))
};

inline truncated_series sl_zeta(integer D, std::size_t N)
{
    field_context ctx(D);
    return zeta_assembler(ctx, N).sl();
}

inline truncated_series rot_term(integer D, bqf const & g, std::size_t N)
{
    field_context ctx(D);
    return zeta_assembler(ctx, N).rot(ctx.group().index_of(g));
}

inline truncated_series refl_term(integer D, bqf const & g, std::size_t N)
{
    field_context ctx(D);
    return zeta_assembler(ctx, N).refl(ctx.group().index_of(g));
}

inline zeta_bundle gl_zeta(integer D, bqf const & g, std::size_t N)
{
    field_context ctx(D);
    return zeta_assembler(ctx, N).bundle(ctx.group().index_of(g));
}

inline truncated_series psi_series(integer D, bqf const & g, std::size_t N)
{
    field_context ctx(D);
    return zeta_assembler(ctx, N).psi(ctx.group().index_of(g));
}

inline bool psi_equation_check(integer D, std::size_t N)
{
    field_context ctx(D);
    if (ctx.field().w != 2)
        throw domain_error("psi_equation_check: not defined for D = " + to_string(D));
    return zeta_assembler(ctx, N).psi_equation_holds();
}

/// Formula coefficients a_m^+ and a_m for the class of f, m <= N.
inline coefficient_table formula_coefficients(field_context const & ctx, bqf const & f, std::size_t N)
{
    auto b = zeta_assembler(ctx, N).bundle(ctx.group().index_of(f));
    coefficient_table t;
    t.N = N;
    t.proper = b.sl.to_integers();
    t.improper = b.gl.to_integers();
    return t;
}

/// k_p: the order of [P]^2 for a prime P above the split prime p.
inline std::size_t k_p(field_context const & ctx, integer p)
{
    auto const & G = ctx.group();
    std::size_t P = G.prime_class(p);
    return G.element_order(G.mul(P, P));
}

/// a^+_{p^i} for 0 <= i <= K. Closed form for w = 2; for D = -3, -4 the
/// values are read off the assembled zeta^SL.
inline std::vector<std::int64_t> local_factor(field_context const & ctx, integer p, int K)
{
    auto info = split_type(ctx.field(), p);
    std::vector<std::int64_t> out(std::size_t(K) + 1, 0);
    if (ctx.field().w != 2) {
        integer top = 1;
        for (int i = 0; i < K; ++i)
            top = checked::mul(top, p);
        auto sl = zeta_assembler(ctx, std::size_t(top)).sl().to_integers();
        integer q = 1;
        for (int i = 0; i <= K; ++i, q *= p)
            out[std::size_t(i)] = sl[std::size_t(q)];
        return out;
    }
    std::int64_t kp = info.kind == split_kind::split ? std::int64_t(k_p(ctx, p)) : std::int64_t(K) + 2;
    for (int i = 0; i <= K; ++i) {
        integer hi = 1;
        for (int j = 0; j <= i; ++j)
            hi = checked::mul(hi, p);
        integer lo = 1;
        for (std::int64_t j = 0; j < std::max<std::int64_t>(i - kp + 1, 0); ++j)
            lo = checked::mul(lo, p);
        out[std::size_t(i)] = to_int64((hi - lo) / (p - 1));
    }
    return out;
}

inline std::vector<std::int64_t> local_factor(integer D, integer p, int K)
{
    return local_factor(field_context(D), p, K);
}

/// Compares a_m^+ with prod_p a^+_{p^e} for m <= N and reports whether
/// the class group is elementary abelian of exponent 2.
inline euler_report euler_product_holds(field_context const & ctx, std::size_t N)
{
    euler_report r;
    auto const & G = ctx.group();
    r.elementary_2 = G.is_elementary_2();
    r.invariant_factors = G.invariant_factors();
    auto sl = zeta_assembler(ctx, N).sl().to_integers();
    auto spf = detail::smallest_prime_factors(N);
    std::map<std::size_t, std::vector<std::int64_t>> locals;
    for (std::size_t m = 1; m <= N; ++m) {
        integer prod = 1;
        for (auto [p, e] : factorize(m, spf)) {
            auto it = locals.find(p);
            if (it == locals.end()) {
                int K = 0;
                for (std::size_t q = p; q <= N; q *= p)
                    ++K;
                it = locals.emplace(p, local_factor(ctx, integer(p), K)).first;
            }
            prod = checked::mul(prod, it->second.at(std::size_t(e)));
        }
        if (prod != sl[m]) {
            r.multiplicative = false;
            r.witness = m;
            break;
        }
    }
    return r;
}

inline euler_report euler_product_holds(integer D, std::size_t N)
{
    return euler_product_holds(field_context(D), N);
}

/// L(2, chi_D) from the Euler product over primes below `bound`.
inline double l_value_at_2(field_data const & F, std::int64_t bound = 1000000)
{
    double v = 1.0;
    for (auto p : primes_up_to(bound)) {
        int chi = kronecker(F.D, p);
        if (chi != 0)
            v /= 1.0 - double(chi) / (double(p) * double(p));
    }
    return v;
}

inline double doubling_ratio(std::vector<std::int64_t> const & partial, std::size_t N)
{
    if (N < 2 || partial.size() <= N || partial[N / 2] == 0)
        return 0.0;
    return double(partial[N]) / double(partial[N / 2]);
}

/// Residue estimate and growth of oracle partial sums. `oracle` must hold
/// brute-force coefficients to N for some form of discriminant D; when
/// omitted the principal form is enumerated.
inline residue_report residue_diagnostic(field_context const & ctx, std::size_t N,
                                         coefficient_table const * oracle = nullptr)
{
    residue_report r;
    auto const & F = ctx.field();
    r.D = F.D;
    r.N = N;
    auto sets = class_sets(ctx, N);
    for (std::size_t n = 1; n <= N; ++n)
        r.class_sum += rational(std::int64_t(sets.at(n).size()), std::int64_t(n) * std::int64_t(n));
    r.L2 = l_value_at_2(F);
    r.residue = 2.0 / F.w * r.class_sum.convert_to<double>() / r.L2;
    coefficient_table own;
    if (!oracle) {
        own = brute_coefficients(F.principal_form(), N);
        oracle = &own;
    }
    r.ratio_sl = doubling_ratio(partial_sums(oracle->proper), N);
    r.ratio_gl = doubling_ratio(partial_sums(oracle->improper), N);
    return r;
}

} // namespace latzeta

#endif // LATZETA_ZETA_FORMULAS_HPP
