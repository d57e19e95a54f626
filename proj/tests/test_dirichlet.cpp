#include <random>

#include <gtest/gtest.h>

#include "latzeta/dirichlet.hpp"

using namespace latzeta;

namespace {

truncated_series random_series(std::mt19937_64 & rng, std::size_t N, bool unit_leading)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    truncated_series s(N);
    for (std::size_t n = 1; n <= N; ++n)
        s[n] = rational(num(rng), den(rng));
    if (unit_leading)
        s[1] = 1;
    return s;
}

std::vector<int> moebius_sieve(std::size_t N)
{
    std::vector<int> mu(N + 1, 1);
    std::vector<bool> composite(N + 1, false);
    for (std::size_t p = 2; p <= N; ++p) {
        if (composite[p])
            continue;
        for (std::size_t k = p; k <= N; k += p) {
            if (k > p)
                composite[k] = true;
            mu[k] = -mu[k];
        }
        for (std::size_t k = p * p; k <= N; k += p * p)
            mu[k] = 0;
    }
    return mu;
}

} // namespace

TEST(Mul, Examples)
{
    EXPECT_EQ(mul(zeta(12), zeta_shift(12))[6], 12);
    std::mt19937_64 rng(1);
    auto A = random_series(rng, 50, false);
    EXPECT_EQ(mul(A, one(50)), A);
    std::vector<std::int64_t> two{2};
    EXPECT_EQ(mul(prime_product(two, -1, 1, 64), prime_product(two, -1, -1, 64)), one(64));
}

TEST(Mul, SigmaCoefficients)
{
    auto s = mul(zeta(300), zeta_shift(300));
    for (std::size_t m = 1; m <= 300; ++m) {
        std::int64_t sig = 0;
        for (std::size_t d = 1; d <= m; ++d)
            if (m % d == 0)
                sig += std::int64_t(d);
        ASSERT_EQ(s[m], sig);
    }
}

TEST(Mul, CommutativeAssociativeExact)
{
    std::mt19937_64 rng(2);
    for (int i = 0; i < 5; ++i) {
        auto A = random_series(rng, 80, false), B = random_series(rng, 80, false), C = random_series(rng, 80, false);
        EXPECT_EQ(mul(A, B), mul(B, A));
        EXPECT_EQ(mul(mul(A, B), C), mul(A, mul(B, C)));
        EXPECT_EQ(add(A, B), add(B, A));
        EXPECT_EQ(sub(add(A, B), B), A);
    }
}

TEST(Mul, MismatchedBoundsRejected)
{
    EXPECT_THROW(mul(zeta(10), zeta(11)), domain_error);
    EXPECT_THROW(add(zeta(10), zeta(11)), domain_error);
    EXPECT_THROW(div(zeta(10), zeta(11)), domain_error);
}

TEST(Scale, Rational)
{
    auto s = scale(zeta(5), rational(2, 3));
    EXPECT_EQ(s[4], rational(2, 3));
    EXPECT_FALSE(s.is_integral());
    EXPECT_THROW(s.to_integers(), domain_error);
}

TEST(Div, InverseOfMul)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 5; ++i) {
        auto A = random_series(rng, 100, false), B = random_series(rng, 100, true);
        EXPECT_EQ(div(mul(A, B), B), A);
    }
}

TEST(Div, MoebiusFromSieve)
{
    auto inv = div(one(500), zeta(500));
    auto mu = moebius_sieve(500);
    for (std::size_t n = 1; n <= 500; ++n)
        ASSERT_EQ(inv[n], mu[n]) << n;
}

TEST(Div, LeadingZeroRejected)
{
    truncated_series B(10);
    B[2] = 1;
    EXPECT_THROW(div(one(10), B), domain_error);
}

TEST(Div, ZetaQuotientLeadingCoefficient)
{
    EXPECT_EQ(div(mul(zeta(30), zeta_shift(30)), zeta_F(-7, 30))[1], 1);
}

TEST(StandardSeries, Examples)
{
    auto zF = zeta_F(-20, 20);
    EXPECT_EQ(zF[3], 2);
    EXPECT_EQ(zF[11], 0);
    auto z2 = zeta_double(20);
    EXPECT_EQ(z2[9], 1);
    EXPECT_EQ(z2[8], 0);
    EXPECT_EQ(zeta(7)[7], 1);
    EXPECT_EQ(zeta_shift(7)[7], 7);
}

TEST(StandardSeries, ZetaFCountsIdealsByNorm)
{
    // ideals of norm n in Z[i] correspond to Gaussian integers of norm n up to units
    std::size_t N = 200;
    auto zF = zeta_F(-4, N);
    for (std::size_t n = 1; n <= N; ++n) {
        std::int64_t reps = 0;
        for (std::int64_t x = -15; x <= 15; ++x)
            for (std::int64_t y = -15; y <= 15; ++y)
                if (std::size_t(x * x + y * y) == n)
                    ++reps;
        ASSERT_EQ(zF[n] * 4, reps) << n;
    }
}

TEST(EulerProducts, InverseZeta)
{
    auto primes = primes_up_to(400);
    EXPECT_EQ(mul(zeta(400), prime_product(primes, -1, 1, 400)), one(400));
}

TEST(EulerProducts, ZetaFFactorsBySplittingType)
{
    for (integer D : {-3, -4, -7, -8, -20, -23, -24, -40}) {
        std::size_t N = 300;
        field_data F(D);
        auto split = primes_of_kind(F, split_kind::split, N);
        auto inert = primes_of_kind(F, split_kind::inert, N);
        auto ram = primes_of_kind(F, split_kind::ramified, N);
        auto product = mul(mul(mul(prime_product(split, -1, -1, N), prime_product(split, -1, -1, N)),
                               prime_product(inert, -1, -1, N, 2)),
                           prime_product(ram, -1, -1, N));
        EXPECT_EQ(zeta_F(F, N), product) << to_string(D);
    }
}

TEST(EulerProducts, OperandOrderDoesNotMatter)
{
    std::size_t N = 200;
    auto a = prime_product(primes_up_to(200), 1, 1, N);
    auto b = zeta_F(-23, N);
    auto c = zeta_double(N);
    EXPECT_EQ(mul(mul(a, b), c), mul(c, mul(b, a)));
    EXPECT_EQ(div(mul(a, b), c), mul(b, div(a, c)));
}
