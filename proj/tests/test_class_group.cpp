#include <gtest/gtest.h>

#include "latzeta/class_group.hpp"

using namespace latzeta;

namespace {

std::vector<integer> fundamental_discriminants(integer lo)
{
    std::vector<integer> out;
    for (integer D = -3; D >= lo; --D) {
        try {
            field_data F(D);
            out.push_back(D);
        } catch (domain_error const &) {
        }
    }
    return out;
}

// Count reduced primitive forms directly from the inequalities, with a
// bound on c taken from |D| rather than from a.
std::size_t class_number_by_search(integer D)
{
    std::size_t h = 0;
    for (integer a = 1; a <= -D; ++a)
        for (integer b = -a; b <= a; ++b)
            for (integer c = a; 4 * a * c <= -D + b * b && c <= -D; ++c) {
                bqf f{a, b, c};
                if (f.discriminant() == D && is_reduced(f) && f.is_primitive())
                    ++h;
            }
    return h;
}

} // namespace

TEST(EnumerateClasses, Examples)
{
    EXPECT_EQ(form_class_group(-23).elements(), (std::vector<bqf>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}}));
    EXPECT_EQ(form_class_group(-20).elements(), (std::vector<bqf>{{1, 0, 5}, {2, 2, 3}}));
    EXPECT_EQ(form_class_group(-4).elements(), (std::vector<bqf>{{1, 0, 1}}));
}

TEST(EnumerateClasses, KnownClassNumbers)
{
    std::vector<std::pair<int, std::size_t>> known{{-3, 1}, {-4, 1}, {-7, 1}, {-8, 1}, {-20, 2}, {-23, 3}};
    for (auto [D, h] : known)
        EXPECT_EQ(form_class_group(D).order(), h) << D;
    EXPECT_EQ(form_class_group(-24).order(), class_number_by_search(-24));
    EXPECT_EQ(form_class_group(-40).order(), class_number_by_search(-40));
    EXPECT_EQ(form_class_group(-24).order(), 2u);
    EXPECT_EQ(form_class_group(-40).order(), 2u);
}

TEST(EnumerateClasses, MatchesSearchForAllSmallDiscriminants)
{
    for (integer D : fundamental_discriminants(-200))
        EXPECT_EQ(form_class_group(D).order(), class_number_by_search(D)) << to_string(D);
}

TEST(EnumerateClasses, RejectsNonFundamental)
{
    EXPECT_THROW(form_class_group(-12), domain_error);
}

TEST(Compose, Examples)
{
    form_class_group G20(-20);
    EXPECT_EQ(G20.compose({2, 2, 3}, {2, 2, 3}), (bqf{1, 0, 5}));
    form_class_group G23(-23);
    EXPECT_EQ(G23.compose({2, 1, 3}, {2, -1, 3}), (bqf{1, 1, 6}));
    for (auto const & g : G23.elements())
        EXPECT_EQ(G23.compose(g, {1, 1, 6}), g);
    EXPECT_THROW(compose_forms({2, 1, 3}, {1, 0, 5}), domain_error);
}

TEST(Compose, AcceptsNonReducedRepresentatives)
{
    form_class_group G(-23);
    // (2,5,6) is properly equivalent to (2,1,3)
    EXPECT_EQ(G.compose({2, 5, 6}, {2, 1, 3}), G.compose({2, 1, 3}, {2, 1, 3}));
}

TEST(GroupAxioms, ExhaustiveForTestDiscriminants)
{
    for (integer D : {-3, -4, -7, -8, -20, -23, -24, -40, -84, -420, -47, -71, -199}) {
        form_class_group G(D);
        std::size_t h = G.order(), e = G.identity();
        EXPECT_EQ(G.element(e), G.field().principal_form());
        for (std::size_t a = 0; a < h; ++a) {
            EXPECT_EQ(G.mul(a, e), a);
            EXPECT_EQ(G.mul(a, G.inverse(a)), e);
            EXPECT_EQ(G.inverse(a), G.conjugate(a));
            EXPECT_EQ(G.element(G.inverse(a)), reduce(G.element(a).mirror()));
            for (std::size_t b = 0; b < h; ++b) {
                EXPECT_EQ(G.mul(a, b), G.mul(b, a));
                for (std::size_t c = 0; c < h; ++c)
                    ASSERT_EQ(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c)));
            }
        }
    }
}

TEST(GroupStructure, InvariantFactors)
{
    EXPECT_TRUE(form_class_group(-7).invariant_factors().empty());
    EXPECT_EQ(form_class_group(-23).invariant_factors(), (std::vector<std::size_t>{3}));
    EXPECT_EQ(form_class_group(-84).invariant_factors(), (std::vector<std::size_t>{2, 2}));
    EXPECT_EQ(form_class_group(-420).invariant_factors(), (std::vector<std::size_t>{2, 2, 2}));
    EXPECT_TRUE(form_class_group(-420).is_elementary_2());
    EXPECT_FALSE(form_class_group(-23).is_elementary_2());
    // h(-56) = 4 with a class of order 4
    EXPECT_EQ(form_class_group(-56).invariant_factors(), (std::vector<std::size_t>{4}));
}

TEST(Conjugate, Examples)
{
    form_class_group G23(-23);
    EXPECT_EQ(G23.conjugate(bqf{2, 1, 3}), (bqf{2, -1, 3}));
    EXPECT_EQ(G23.conjugate(bqf{1, 1, 6}), (bqf{1, 1, 6}));
    form_class_group G20(-20);
    EXPECT_EQ(G20.conjugate(bqf{2, 2, 3}), (bqf{2, 2, 3}));
}

TEST(Subgroups, Examples)
{
    form_class_group G20(-20);
    auto s20 = subgroups(G20);
    EXPECT_EQ(s20.ram.size(), 2u);
    ASSERT_TRUE(s20.ortho.has_value());
    EXPECT_EQ(*s20.ortho, (std::vector<std::size_t>{G20.identity()}));

    form_class_group G7(-7);
    auto s7 = subgroups(G7);
    EXPECT_FALSE(s7.ortho.has_value());
    EXPECT_EQ(s7.ram.size(), 1u);

    form_class_group G8(-8);
    auto s8 = subgroups(G8);
    ASSERT_TRUE(s8.ortho.has_value());
    EXPECT_EQ(*s8.ortho, s8.ram);
}

TEST(Subgroups, NestingForAllSmallDiscriminants)
{
    for (integer D : fundamental_discriminants(-200)) {
        form_class_group G(D);
        auto s = subgroups(G);
        auto subset = [](auto const & a, auto const & b) {
            return std::includes(b.begin(), b.end(), a.begin(), a.end());
        };
        EXPECT_TRUE(subset(s.ram, s.refl)) << to_string(D);
        int dm = G.field().d_mod_4();
        EXPECT_EQ(s.ortho.has_value(), dm != 1) << to_string(D);
        if (s.ortho) {
            EXPECT_TRUE(subset(*s.ortho, s.ram)) << to_string(D);
            if (dm == 2) {
                EXPECT_EQ(*s.ortho, s.ram) << to_string(D);
            }
            if (dm == 3) {
                // index 1 or 2, quotient generated by the class above 2
                EXPECT_TRUE(s.ram.size() == s.ortho->size() || s.ram.size() == 2 * s.ortho->size());
                auto with2 = s.ortho.value();
                with2.push_back(G.prime_class(2));
                EXPECT_EQ(G.closure(with2), s.ram) << to_string(D);
            }
        }
    }
}
