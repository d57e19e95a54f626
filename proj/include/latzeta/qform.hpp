#ifndef LATZETA_QFORM_HPP
#define LATZETA_QFORM_HPP

#include <compare>
#include <ostream>
#include <string>

#include "checked_int.hpp"

namespace latzeta {

/// Binary quadratic form a x^2 + b xy + c y^2. No primitivity is assumed;
/// positive definiteness is checked by the operations that need it.
struct bqf {
    integer a = 1;
    integer b = 0;
    integer c = 1;

    friend constexpr auto operator<=>(bqf const &, bqf const &) = default;

    integer discriminant() const
    {
        return checked::sub(checked::mul(b, b), checked::mul(4, checked::mul(a, c)));
    }

    integer content() const { return gcd(gcd(a, b), c); }

    bool is_primitive() const { return content() == 1; }

    bool is_positive_definite() const { return a > 0 && discriminant() < 0; }

    /// (a, -b, c): the form obtained by the orientation-reversing swap y -> -y.
    bqf mirror() const { return {a, checked::neg(b), c}; }

    std::string str() const
    {
        return "(" + to_string(a) + "," + to_string(b) + "," + to_string(c) + ")";
    }
};

inline std::ostream & operator<<(std::ostream & os, bqf const & f)
{
    return os << f.str();
}

inline integer discriminant(bqf const & f)
{
    return f.discriminant();
}

/// Integer 2x2 matrix [[p, q], [r, s]] acting on column vectors.
/// The columns are the images of the two basis vectors.
struct mat2 {
    integer p = 1, q = 0, r = 0, s = 1;

    friend constexpr bool operator==(mat2 const &, mat2 const &) = default;

    integer det() const
    {
        return checked::sub(checked::mul(p, s), checked::mul(q, r));
    }

    mat2 operator*(mat2 const & o) const
    {
        using namespace checked;
        return {add(mul(p, o.p), mul(q, o.r)), add(mul(p, o.q), mul(q, o.s)),
                add(mul(r, o.p), mul(s, o.r)), add(mul(r, o.q), mul(s, o.s))};
    }

    static mat2 identity() { return {}; }
};

/// A basis change in GL_2(Z).
class unimodular_matrix {
  public:
    unimodular_matrix() = default;

    unimodular_matrix(integer p, integer q, integer r, integer s) : m_{p, q, r, s}
    {
        integer d = m_.det();
        if (d != 1 && d != -1)
            throw domain_error("matrix determinant is " + to_string(d) + ", expected +1 or -1");
    }

    explicit unimodular_matrix(mat2 const & m) : unimodular_matrix(m.p, m.q, m.r, m.s) {}

    mat2 const & matrix() const { return m_; }
    integer det() const { return m_.det(); }

    unimodular_matrix operator*(unimodular_matrix const & o) const
    {
        return unimodular_matrix(m_ * o.m_);
    }

    /// Generators of SL_2(Z).
    static unimodular_matrix S() { return {0, -1, 1, 0}; }
    static unimodular_matrix T() { return {1, 1, 0, 1}; }
    static unimodular_matrix T_inverse() { return {1, -1, 0, 1}; }
    static unimodular_matrix reflection() { return {1, 0, 0, -1}; }

  private:
    mat2 m_{};
};

/// f o T, i.e. the form g(x, y) = f(p x + q y, r x + s y).
/// disc(f o T) = det(T)^2 disc(f).
inline bqf transform(bqf const & f, mat2 const & t)
{
    using namespace checked;
    // f(p,r), f(q,s) and the cross term 2B((p,r),(q,s))
    integer a = add(add(mul(f.a, mul(t.p, t.p)), mul(f.b, mul(t.p, t.r))), mul(f.c, mul(t.r, t.r)));
    integer c = add(add(mul(f.a, mul(t.q, t.q)), mul(f.b, mul(t.q, t.s))), mul(f.c, mul(t.s, t.s)));
    integer b = add(add(mul(2, mul(f.a, mul(t.p, t.q))),
                        mul(f.b, add(mul(t.p, t.s), mul(t.q, t.r)))),
                    mul(2, mul(f.c, mul(t.r, t.s))));
    return {a, b, c};
}

inline bqf transform(bqf const & f, unimodular_matrix const & t)
{
    return transform(f, t.matrix());
}

/// True when f satisfies |b| <= a <= c with b >= 0 whenever |b| = a or a = c.
inline bool is_reduced(bqf const & f)
{
    if (!(abs(f.b) <= f.a && f.a <= f.c))
        return false;
    if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0)
        return false;
    return true;
}

/// Gauss reduction of a positive definite form to the unique reduced
/// representative of its SL_2(Z) class. Content and discriminant are preserved.
inline bqf reduce(bqf f)
{
    if (!f.is_positive_definite())
        throw domain_error("reduce: form " + f.str() + " is not positive definite");
    using namespace checked;
    for (;;) {
        // translate x -> x - k y so that b lands in (-a, a]
        if (f.b > f.a || f.b <= -f.a) {
            integer two_a = mul(2, f.a);
            integer r = floor_mod(f.b, two_a);
            if (r > f.a)
                r -= two_a;
            integer k = (f.b - r) / two_a;
            f.c = add(sub(mul(f.a, mul(k, k)), mul(f.b, k)), f.c);
            f.b = r;
        }
        if (f.a > f.c) {
            f = {f.c, neg(f.b), f.a};
            continue;
        }
        break;
    }
    if (f.b < 0 && (f.b == -f.a || f.a == f.c))
        f.b = -f.b;
    return f;
}

inline bqf canonical_sl(bqf const & f)
{
    return reduce(f);
}

/// Canonical representative of the GL_2(Z) class: mirror images are merged.
inline bqf canonical_gl(bqf const & f)
{
    bqf r = reduce(f);
    r.b = abs(r.b);
    return r;
}

inline bool sl_equivalent(bqf const & f, bqf const & g)
{
    return canonical_sl(f) == canonical_sl(g);
}

inline bool gl_equivalent(bqf const & f, bqf const & g)
{
    return canonical_gl(f) == canonical_gl(g);
}

/// A lattice carrying f admits an improper automorphism (a reflection)
/// exactly when f is properly equivalent to its mirror.
inline bool has_improper_automorph(bqf const & f)
{
    bqf r = reduce(f);
    return r.b == 0 || r.b == r.a || r.a == r.c;
}

} // namespace latzeta

#endif // LATZETA_QFORM_HPP
