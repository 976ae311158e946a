#pragma once

#include <random>
#include <string>
#include <vector>

#include "harmpadic/harmpadic.hpp"

namespace hp_test {

using namespace harmpadic;

/// Seeded generator so failures reproduce; the seed is part of each test.
class Gen {
public:
    explicit Gen(u64 seed) : rng_(seed) {}

    u64 uniform(u64 lo, u64 hi) { return std::uniform_int_distribution<u64>(lo, hi)(rng_); }
    long signed_uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return uniform(0, 1) == 1; }

    /// Random integer with `digits` decimal digits (leading digit non-zero).
    Integer big(std::size_t digits) {
        std::string s(1, static_cast<char>('1' + uniform(0, 8)));
        while (s.size() < digits) s.push_back(static_cast<char>('0' + uniform(0, 9)));
        return Integer(s, 10);
    }

    u64 prime_from(const std::vector<u64>& pool) { return pool[uniform(0, pool.size() - 1)]; }

    /// Non-zero rational whose numerator and denominator carry random powers of p.
    Rational rational_with_p_powers(u64 p, long max_power = 3) {
        Integer num = to_integer(uniform(1, 100000));
        Integer den = to_integer(uniform(1, 100000));
        long e = signed_uniform(-max_power, max_power);
        if (e > 0) num *= pow_p(p, e);
        if (e < 0) den *= pow_p(p, -e);
        Rational q(coin() ? num : Integer(-num), den);
        return q;
    }

private:
    std::mt19937_64 rng_;
};

// Frozen results of an independent exact computation (direct rational
// summation of H(n), reduced fractions, p-adic valuation of the numerator).

inline const std::vector<u64> kJ5{4, 20, 24};
inline const std::vector<u64> kJ7{6, 42, 48, 295, 299, 337, 341, 2096, 2390, 14675, 16731, 16735, 102728};
inline const std::vector<u64> kJ11Below1e5{3,    7,    10,   77,   80,    84,    87,    110,   113,   117,   120,
                                           848,  852,  856,  882,  888,   958,   962,   966,   1291,  1293,  9328,
                                           9331, 9335, 9338, 9376, 9378,  10583, 10587, 10591, 14205, 14207};
inline const std::vector<u64> kJ13{12, 156, 168};

} // namespace hp_test
