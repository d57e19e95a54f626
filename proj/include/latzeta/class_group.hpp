#ifndef LATZETA_CLASS_GROUP_HPP
#define LATZETA_CLASS_GROUP_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "quad_field.hpp"
#include "sublattice.hpp"

namespace latzeta {

/// A form class is keyed by its reduced primitive representative.
using form_class = bqf;

/// All reduced primitive forms of discriminant D, lexicographic in (a, b, c).
inline std::vector<bqf> reduced_forms(integer D)
{
    std::vector<bqf> out;
    // a reduced form has 3a^2 <= |D|
    for (integer a = 1; checked::mul(3, checked::mul(a, a)) <= -D; ++a) {
        for (integer b = -a + 1; b <= a; ++b) {
            integer num = checked::sub(checked::mul(b, b), D);
            if (num % (4 * a))
                continue;
            bqf f{a, b, num / (4 * a)};
            if (is_reduced(f) && f.is_primitive())
                out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Gauss composition computed through the ideal dictionary
/// (a, b, c) <-> Z a + Z (b - sqrt D)/2. Ideals are written in the basis
/// {1, omega}, omega = (D + sqrt D)/2, omega^2 = D omega - (D^2 - D)/4.
inline bqf compose_forms(bqf const & f, bqf const & g)
{
    integer D = f.discriminant();
    if (g.discriminant() != D)
        throw domain_error("compose: discriminants " + to_string(D) + " and " + to_string(g.discriminant()) + " differ");
    using namespace checked;
    integer n = sub(mul(D, D), D) / 4;
    auto times = [&](vec2 x, vec2 y) -> vec2 {
        return {sub(mul(x.u, y.u), mul(mul(x.v, y.v), n)),
                add(add(mul(x.u, y.v), mul(x.v, y.u)), mul(D, mul(x.v, y.v)))};
    };
    vec2 f1{f.a, 0}, f2{add(f.b, D) / 2, -1};
    vec2 g1{g.a, 0}, g2{add(g.b, D) / 2, -1};
    hnf_basis h = hnf_of({times(f1, g1), times(f1, g2), times(f2, g1), times(f2, g2)});
    // h spans C (Z A' + Z (B' + omega)) with C the content of the product
    integer C = h.z;
    if (h.x % C || h.y % C)
        throw domain_error("compose: product module is not an ideal");
    integer a = h.x / C;
    integer b = sub(neg(mul(2, h.y / C)), D);
    integer num = sub(mul(b, b), D);
    if (num % mul(4, a))
        throw domain_error("compose: product does not give an integral form");
    return reduce(bqf{a, b, num / mul(4, a)});
}

/// Cl_F as the group of reduced primitive forms of discriminant D.
/// Immutable after construction; the full product table is precomputed.
class form_class_group {
  public:
    explicit form_class_group(integer D) : field_(D), elements_(reduced_forms(D))
    {
        for (std::size_t i = 0; i < elements_.size(); ++i)
            index_.emplace(elements_[i], i);
        identity_ = index_of(field_.principal_form());
        std::size_t h = elements_.size();
        table_.assign(h * h, 0);
        inverse_.assign(h, 0);
        for (std::size_t i = 0; i < h; ++i) {
            inverse_[i] = index_of(elements_[i].mirror());
            for (std::size_t j = 0; j < h; ++j)
                table_[i * h + j] = index_of(compose_forms(elements_[i], elements_[j]));
        }
    }

    field_data const & field() const { return field_; }
    integer discriminant() const { return field_.D; }
    std::size_t order() const { return elements_.size(); }
    std::vector<bqf> const & elements() const { return elements_; }
    bqf const & element(std::size_t i) const { return elements_.at(i); }
    std::size_t identity() const { return identity_; }

    bool contains(bqf const & f) const
    {
        return f.discriminant() == field_.D && f.is_positive_definite() && f.is_primitive() &&
               index_.count(reduce(f)) > 0;
    }

    /// Index of the class of an arbitrary primitive form of discriminant D.
    std::size_t index_of(bqf const & f) const
    {
        if (f.discriminant() != field_.D)
            throw domain_error("form " + f.str() + " has discriminant " + to_string(f.discriminant()) +
                               ", expected " + to_string(field_.D));
        if (!f.is_primitive())
            throw domain_error("form " + f.str() + " is not primitive");
        auto it = index_.find(reduce(f));
        if (it == index_.end())
            throw domain_error("form " + f.str() + " is not in the class group");
        return it->second;
    }

    std::size_t mul(std::size_t i, std::size_t j) const { return table_.at(i * order() + j); }
    std::size_t inverse(std::size_t i) const { return inverse_.at(i); }
    std::size_t conjugate(std::size_t i) const { return inverse(i); }

    std::size_t pow(std::size_t i, long long e) const
    {
        if (e < 0)
            return pow(inverse(i), -e);
        std::size_t r = identity_;
        for (long long k = 0; k < e; ++k)
            r = mul(r, i);
        return r;
    }

    std::size_t element_order(std::size_t i) const
    {
        std::size_t k = 1, g = i;
        while (g != identity_) {
            g = mul(g, i);
            ++k;
        }
        return k;
    }

    bqf compose(bqf const & f, bqf const & g) const
    {
        return element(mul(index_of(f), index_of(g)));
    }

    bqf inverse(bqf const & f) const { return element(inverse(index_of(f))); }
    bqf conjugate(bqf const & f) const { return inverse(f); }

    /// True when every class squares to the identity, i.e. Cl_F = (Z/2)^e.
    bool is_elementary_2() const
    {
        for (std::size_t i = 0; i < order(); ++i)
            if (mul(i, i) != identity_)
                return false;
        return true;
    }

    /// Subgroup generated by the given classes, as a sorted index list.
    std::vector<std::size_t> closure(std::vector<std::size_t> const & gens) const
    {
        std::vector<bool> in(order(), false);
        std::vector<std::size_t> stack{identity_};
        in[identity_] = true;
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t g : gens) {
                std::size_t y = mul(x, g);
                if (!in[y]) {
                    in[y] = true;
                    stack.push_back(y);
                }
            }
        }
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < order(); ++i)
            if (in[i])
                out.push_back(i);
        return out;
    }

    /// Class of the prime ideal above a split or ramified prime (see
    /// prime_ideal_form for the choice between a prime and its conjugate).
    std::size_t prime_class(integer p) const { return index_of(prime_ideal_form(field_, p)); }

    /// Isomorphism type as a list of invariant factors, from element orders.
    std::vector<std::size_t> invariant_factors() const;

  private:
    field_data field_;
    std::vector<bqf> elements_;
    std::map<bqf, std::size_t> index_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> table_;
    std::vector<std::size_t> inverse_;
};

inline std::vector<std::size_t> form_class_group::invariant_factors() const
{
    // Peel off a cyclic factor of maximal order and recurse on the quotient,
    // tracked as cosets of the subgroup generated so far.
    std::vector<std::size_t> factors;
    std::vector<std::size_t> gens;
    std::vector<std::size_t> sub = closure(gens);
    while (sub.size() < order()) {
        std::vector<bool> in(order(), false);
        for (auto s : sub)
            in[s] = true;
        std::size_t best = 0, best_order = 0;
        for (std::size_t i = 0; i < order(); ++i) {
            // order of i modulo the current subgroup
            std::size_t k = 1, g = i;
            while (!in[g]) {
                g = mul(g, i);
                ++k;
            }
            if (k > best_order) {
                best_order = k;
                best = i;
            }
        }
        factors.push_back(best_order);
        gens.push_back(best);
        sub = closure(gens);
    }
    // the greedy quotient orders come out largest first; report as
    // n_1 | n_2 | ... with the largest last
    std::reverse(factors.begin(), factors.end());
    return factors;
}

/// The distinguished subgroups used by the reflection terms. `ortho` is
/// absent (not merely trivial) when d = 1 mod 4.
struct class_subgroups {
    std::vector<std::size_t> refl;
    std::vector<std::size_t> ram;
    std::optional<std::vector<std::size_t>> ortho;
};

inline bool subgroup_contains(std::vector<std::size_t> const & s, std::size_t g)
{
    return std::binary_search(s.begin(), s.end(), g);
}

inline class_subgroups subgroups(form_class_group const & G)
{
    class_subgroups out;
    for (std::size_t i = 0; i < G.order(); ++i)
        if (G.mul(i, i) == G.identity())
            out.refl.push_back(i);
    auto const & F = G.field();
    std::vector<std::size_t> ram_gens, ortho_gens;
    for (integer r : F.ramified_primes()) {
        std::size_t c = G.prime_class(r);
        ram_gens.push_back(c);
        // for d = 3 mod 4 the factor above 2 is (2, 1 + sqrt d), which has
        // no orthogonal basis
        if (!(F.d_mod_4() == 3 && r == 2))
            ortho_gens.push_back(c);
    }
    out.ram = G.closure(ram_gens);
    if (F.d_mod_4() != 1)
        out.ortho = G.closure(ortho_gens);
    return out;
}

} // namespace latzeta

#endif // LATZETA_CLASS_GROUP_HPP
