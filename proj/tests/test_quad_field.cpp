#include <gtest/gtest.h>

#include "latzeta/class_group.hpp"
#include "latzeta/quad_field.hpp"

using namespace latzeta;

TEST(FieldData, Examples)
{
    field_data f20(-20);
    EXPECT_EQ(f20.d, -5);
    EXPECT_EQ(f20.w, 2);
    EXPECT_EQ(f20.kind, ring_kind::sqrt_d);

    field_data f3(-3);
    EXPECT_EQ(f3.d, -3);
    EXPECT_EQ(f3.w, 6);
    EXPECT_EQ(f3.kind, ring_kind::half_integer);

    EXPECT_EQ(field_data(-4).w, 4);
    EXPECT_EQ(field_data(-7).w, 2);
}

TEST(FieldData, RejectsNonFundamental)
{
    for (integer D : {-12, -16, -27, -28, 0, 5, -1, -2, -36, -9})
        EXPECT_THROW(field_data{D}, domain_error) << to_string(D);
    try {
        field_data bad(-12);
    } catch (domain_error const & e) {
        EXPECT_NE(std::string(e.what()).find("D/4 = 1 mod 4"), std::string::npos);
    }
}

TEST(FieldData, DiscriminantRelation)
{
    for (integer D = -1; D >= -400; --D) {
        field_data F;
        try {
            F = field_data(D);
        } catch (domain_error const &) {
            continue;
        }
        if (F.d_mod_4() == 1)
            EXPECT_EQ(F.D, F.d);
        else
            EXPECT_EQ(F.D, 4 * F.d);
        EXPECT_EQ(F.principal_form().discriminant(), D);
    }
}

TEST(SplitType, Examples)
{
    EXPECT_EQ(split_type(-20, 3).kind, split_kind::split);
    EXPECT_EQ(split_type(-20, 11).kind, split_kind::inert);
    EXPECT_EQ(split_type(-7, 2).kind, split_kind::split);
    EXPECT_EQ(split_type(-23, 2).kind, split_kind::split);
    EXPECT_EQ(split_type(-3, 2).kind, split_kind::inert);
    EXPECT_THROW(split_type(-20, 9), domain_error);
}

TEST(SplitType, RamifiedExactlyAtDivisorsOfD)
{
    for (integer D : {-3, -4, -7, -8, -20, -23, -24, -40, -84, -420}) {
        field_data F(D);
        for (auto p : primes_up_to(500)) {
            bool ram = split_type(F, p).kind == split_kind::ramified;
            EXPECT_EQ(ram, D % p == 0) << to_string(D) << " " << p;
        }
    }
}

TEST(SplitType, MatchesCongruenceLists)
{
    for (auto p : primes_up_to(1000)) {
        if (p == 2 || p == 5)
            continue;
        auto r = p % 20;
        bool split = r == 1 || r == 3 || r == 7 || r == 9;
        EXPECT_EQ(split_type(-20, p).kind, split ? split_kind::split : split_kind::inert) << p;
    }
    for (auto p : primes_up_to(1000)) {
        if (p == 7)
            continue;
        auto r = p % 7;
        bool split = r == 1 || r == 2 || r == 4;
        EXPECT_EQ(split_type(-7, p).kind, split ? split_kind::split : split_kind::inert) << p;
    }
}

TEST(RamifiedFactor, Examples)
{
    EXPECT_EQ(ramified_factor_form(-20, 2), (bqf{2, 2, 3}));
    EXPECT_EQ(ramified_factor_form(-20, 5), (bqf{1, 0, 5}));
    EXPECT_EQ(ramified_factor_form(-23, 23), (bqf{1, 1, 6}));
    EXPECT_EQ(ramified_factor_form(-4, 2), (bqf{1, 0, 1}));
    EXPECT_THROW(ramified_factor_form(-20, 3), domain_error);
}

TEST(RamifiedFactor, SquaresToIdentity)
{
    for (integer D = -3; D >= -300; --D) {
        try {
            field_data F(D);
        } catch (domain_error const &) {
            continue;
        }
        form_class_group G(D);
        for (integer r : G.field().ramified_primes()) {
            auto g = G.index_of(ramified_factor_form(D, r));
            EXPECT_EQ(G.mul(g, g), G.identity()) << to_string(D) << " r=" << to_string(r);
        }
    }
}

TEST(PrimeIdealForm, NormIsThePrime)
{
    field_data F(-23);
    for (auto p : primes_up_to(200)) {
        if (split_type(F, p).kind == split_kind::inert)
            continue;
        bqf f = prime_ideal_form(F, p);
        EXPECT_EQ(f.a, p);
        EXPECT_EQ(f.discriminant(), -23);
        EXPECT_GE(f.b, 0);
    }
}

TEST(Density, SplitAndInertNearHalf)
{
    // diagnostic bound: each within 10% of half the primes below 10^4
    for (integer D : {-3, -4, -7, -20, -23, -40}) {
        auto s = density_of_splitting(field_data(D), 10000);
        double half = s.total / 2.0;
        EXPECT_NEAR(s.split, half, 0.1 * half) << to_string(D);
        EXPECT_NEAR(s.inert, half, 0.1 * half) << to_string(D);
    }
}
