#include <gtest/gtest.h>

#include "support.hpp"

using namespace harmpadic;
using hp_test::Gen;

TEST(HarmonicExact, SmallValues) {
    EXPECT_EQ(harmonic_exact(0), Rational(0));
    EXPECT_EQ(harmonic_exact(1), Rational(1));
    EXPECT_EQ(harmonic_exact(4), Rational(Integer(25), Integer(12)));
    EXPECT_EQ(val_rational(harmonic_exact(24), 5), Valuation(1));
    EXPECT_THROW(harmonic_exact(2'000'000), CapacityError);
    EXPECT_THROW(harmonic_exact(101, 100), CapacityError);
}

TEST(HarmonicExact, StreamMatchesDirectSummation) {
    HarmonicStream s;
    Rational direct = 0;
    for (u64 n = 1; n <= 300; ++n) {
        direct += Rational(Integer(1), to_integer(n));
        s.advance();
        ASSERT_EQ(s.value(), direct) << n;
    }
}

TEST(HarmonicExact, ValuationStreamTableRows) {
    auto v = valuation_stream(5, 130);
    EXPECT_TRUE(v[0].is_infinite());
    EXPECT_EQ(v[1], Valuation(0));
    EXPECT_EQ(v[4], Valuation(2));
    for (u64 n = 100; n <= 104; ++n) EXPECT_EQ(v[n], Valuation(0)) << n;
    EXPECT_EQ(v[125], Valuation(-3));
}

TEST(PowerSums, Examples) {
    EXPECT_EQ(power_sum_mod(1, 10, 7, 4), 55);
    EXPECT_EQ(power_sum_mod(2, 10, 7, 4), 385);
    EXPECT_EQ(power_sum_mod(3, 7, 5, 3), 34);
}

TEST(PowerSums, MatchBruteForce) {
    Gen g(31);
    for (int i = 0; i < 400; ++i) {
        u64 p = g.prime_from({3, 5, 7, 11, 13});
        long K = g.signed_uniform(1, 6);
        std::size_t e = g.uniform(1, 14);
        u64 x = g.uniform(0, 300);
        Integer mod = pow_p(p, K);
        Integer brute = 0;
        for (u64 k = 1; k <= x; ++k) {
            Integer t;
            mpz_ui_pow_ui(t.get_mpz_t(), k, e);
            brute += t;
        }
        EXPECT_EQ(power_sum_mod(e, x, p, K), mod_floor(brute, mod)) << "e=" << e << " x=" << x << " p=" << p;
    }
}

TEST(BlockCoefficients, MatchExactSums) {
    // c_t = (-1)^t sum_{i<p} i^-(t+1)
    for (u64 p : {5ULL, 7ULL, 11ULL}) {
        const long K = 6;
        auto bc = block_coefficients(p, K);
        for (long t = 0; t < 6; ++t) {
            Rational s = 0;
            for (u64 i = 1; i < p; ++i) s += pow(Rational(Integer(1), to_integer(i)), static_cast<unsigned long>(t + 1));
            if (t % 2 == 1) s = -s;
            // c_t multiplies (lp)^t, so only its residue mod p^(K - t) matters.
            Integer mod = pow_p(p, K - t);
            Integer got = mod_floor(bc->c[static_cast<std::size_t>(t)], mod);
            Integer want = mod_floor(s.numerator() * mod_inverse(s.denominator(), mod), mod);
            EXPECT_EQ(got, want) << "p=" << p << " t=" << t;
        }
    }
    auto bc5 = block_coefficients(5, 4);
    EXPECT_EQ(valuation_of(bc5->c[0], 5), 2);
    EXPECT_EQ(mod_floor(bc5->c[3], 5), 1);  // -sum i^-4 = -4
}

TEST(BlockSum, PolynomialMatchesPowerSumRoute) {
    Gen g(32);
    for (int i = 0; i < 200; ++i) {
        u64 p = g.prime_from({3, 5, 7, 11, 13, 17});
        long W = g.signed_uniform(2, 10);
        Integer m = g.big(g.uniform(1, 25));
        auto poly = block_sum_polynomial(p, W);
        EXPECT_EQ((*poly)(m), block_sum_via_power_sums(m, p, W)) << "p=" << p << " W=" << W << " m=" << m;
    }
}

TEST(HarmonicModPk, Examples) {
    auto h4 = harmonic_mod_pk(4, 5, 12);
    EXPECT_EQ(h4.valuation(), 2);
    EXPECT_TRUE(consistent_with(h4, Rational(Integer(25), Integer(12))));
    EXPECT_EQ(harmonic_mod_pk(848, 11).valuation(), 3);
    EXPECT_EQ(harmonic_mod_pk(Integer("3546471722268916272", 10), 11).valuation(), 3);
    EXPECT_TRUE(harmonic_mod_pk(0, 7).is_zero_to_precision());
    EXPECT_THROW(harmonic_mod_pk(4, 5, 0), DomainError);
}

TEST(HarmonicModPk, AgreesWithExactProjection) {
    HarmonicStream s;
    const std::vector<u64> primes{2, 3, 5, 7, 11, 13};
    while (s.n() < 1500) {
        s.advance();
        for (u64 p : primes) {
            for (long K : {2L, 6L}) {
                auto fast = harmonic_mod_pk(to_integer(s.n()), p, K);
                ASSERT_TRUE(agree_to(fast, s.project(p, fast.absolute_precision()), fast.absolute_precision()))
                    << "n=" << s.n() << " p=" << p << " K=" << K;
                if (!fast.is_zero_to_precision()) {
                    ASSERT_GE(fast.precision(), K);
                }
            }
        }
    }
}

TEST(HarmonicModPk, RandomLargeInputsAgreeAcrossPrecisions) {
    // Raising K only appends digits: the lower-precision result is a truncation.
    Gen g(33);
    for (int i = 0; i < 150; ++i) {
        u64 p = g.prime_from({5, 7, 11, 13, 101});
        Integer n = g.big(g.uniform(5, 40));
        auto lo = harmonic_mod_pk(n, p, 4);
        auto hi = harmonic_mod_pk(n, p, 10);
        long abs = std::min(lo.absolute_precision(), hi.absolute_precision());
        EXPECT_TRUE(agree_to(lo, hi, abs)) << n << " p=" << p;
    }
}

TEST(NuHarmonic, KnownValues) {
    EXPECT_EQ(nu_p_harmonic(4, 5).valuation, Valuation(2));
    EXPECT_EQ(nu_p_harmonic(9338, 11).valuation, Valuation(3));
    EXPECT_EQ(nu_p_harmonic(10583, 11).valuation, Valuation(3));
    auto w = nu_p_harmonic(16842, 16843);
    EXPECT_TRUE(w.exact);
    EXPECT_EQ(w.valuation, Valuation(3));
    EXPECT_TRUE(nu_p_harmonic(0, 7).valuation.is_infinite());
}

TEST(NuHarmonic, MinimalCeilingStillResolvesSmallValuations) {
    // K = 1 carries K + 3 digits of absolute precision through the recursion.
    for (auto [n, p, v] : {std::tuple{4, 5u, 2}, {848, 11u, 3}, {16842, 16843u, 3}}) {
        auto r = nu_p_harmonic(n, p, 1, 1);
        EXPECT_TRUE(r.exact) << n;
        EXPECT_EQ(r.valuation, Valuation(v)) << n;
        EXPECT_EQ(r.precision_used, 1);
    }
}

TEST(Digits, RoundTrip) {
    Gen g(34);
    for (int i = 0; i < 100; ++i) {
        Integer n = g.big(g.uniform(1, 50));
        u64 p = g.prime_from({2, 3, 5, 7, 16843});
        auto d = DigitsBaseP::of(n, p);
        EXPECT_EQ(d.value(), n);
        EXPECT_EQ(d.times_power(3).value(), n * pow_p(p, 3));
    }
    EXPECT_TRUE(DigitsBaseP::of(0, 5).is_zero());
}
