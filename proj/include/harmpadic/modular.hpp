#pragma once

// Integer and modular helpers shared by every module: 64-bit mulmod,
// deterministic primality, prime sieving, and GMP-backed residues modulo p^k.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace harmpadic {

using Integer = mpz_class;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Deterministic Miller-Rabin for the full 64-bit range.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline void require_prime(u64 p) {
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

inline void require_prime_at_least(u64 p, u64 lower) {
    require_prime(p);
    if (p < lower) {
        throw DomainError("prime " + std::to_string(p) + " is below " + std::to_string(lower) +
                          " (Wolstenholme-based lemmas need p >= 5)");
    }
}

/// Primes in [lo, hi], ascending (segmented sieve).
inline std::vector<u64> primes_in_range(u64 lo, u64 hi) {
    std::vector<u64> out;
    if (hi < 2 || lo > hi) return out;
    lo = std::max<u64>(lo, 2);
    u64 root = static_cast<u64>(std::sqrt(static_cast<long double>(hi))) + 1;
    while (root * root > hi) --root;
    std::vector<bool> small_composite(root + 1, false);
    std::vector<u64> base;
    for (u64 i = 2; i <= root; ++i) {
        if (small_composite[i]) continue;
        base.push_back(i);
        for (u64 j = i * i; j <= root; j += i) small_composite[j] = true;
    }
    constexpr u64 segment = 1 << 18;
    std::vector<bool> composite;
    for (u64 start = lo; start <= hi; start += segment) {
        u64 stop = std::min(hi, start + segment - 1);
        composite.assign(stop - start + 1, false);
        for (u64 q : base) {
            u64 first = std::max(q * q, (start + q - 1) / q * q);
            for (u64 j = first; j <= stop; j += q) composite[j - start] = true;
        }
        for (u64 i = start; i <= stop; ++i) {
            if (!composite[i - start]) out.push_back(i);
        }
        if (stop == hi) break;
    }
    return out;
}

inline Integer pow_p(u64 p, long k) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(std::max(0L, k)));
    return r;
}

/// Non-negative representative of a mod m.
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Integer mod_inverse(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw DomainError("value is not invertible modulo " + m.get_str());
    }
    return r;
}

/// Exponent of p in a non-zero integer.
inline long valuation_of(const Integer& a, u64 p) {
    if (a == 0) throw DomainError("valuation_of(0) is infinite");
    Integer pz(static_cast<unsigned long>(p));
    Integer rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), pz.get_mpz_t()));
}

/// Strip the p-part of a non-zero integer; returns the valuation.
inline long split_p_part(Integer& a, u64 p) {
    Integer pz(static_cast<unsigned long>(p));
    Integer rest;
    long v = static_cast<long>(mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), pz.get_mpz_t()));
    a = rest;
    return v;
}

/// Montgomery's trick: replaces every element by its inverse modulo m using a
/// single modular inversion. All inputs must be units.
inline void batch_invert(std::span<Integer> values, const Integer& m) {
    if (values.empty()) return;
    std::vector<Integer> prefix(values.size());
    prefix[0] = mod_floor(values[0], m);
    for (std::size_t i = 1; i < values.size(); ++i) prefix[i] = prefix[i - 1] * values[i] % m;
    Integer running = mod_inverse(prefix.back(), m);
    for (std::size_t i = values.size(); i-- > 1;) {
        Integer inv_i = running * prefix[i - 1] % m;
        running = running * values[i] % m;
        values[i] = inv_i;
    }
    values[0] = running;
}

/// 64-bit variant, modulus below 2^64.
inline void batch_invert(std::span<u64> values, u64 m) {
    if (values.empty()) return;
    std::vector<u64> prefix(values.size());
    prefix[0] = values[0] % m;
    for (std::size_t i = 1; i < values.size(); ++i) prefix[i] = mulmod(prefix[i - 1], values[i], m);
    Integer inv_total = mod_inverse(Integer(static_cast<unsigned long>(prefix.back())),
                                    Integer(static_cast<unsigned long>(m)));
    u64 running = inv_total.get_ui();
    for (std::size_t i = values.size(); i-- > 1;) {
        u64 inv_i = mulmod(running, prefix[i - 1], m);
        running = mulmod(running, values[i], m);
        values[i] = inv_i;
    }
    values[0] = running;
}

inline Integer parse_integer(const std::string& text) {
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw DomainError("not a non-negative decimal integer: '" + text + "'");
    }
    return Integer(text, 10);
}

inline Integer to_integer(u64 v) { return Integer(static_cast<unsigned long>(v)); }

/// H(p-1) = sum_{i<p} 1/i modulo p^e, as a residue in [0, p^e). Accumulates the
/// sum as a single fraction so only one inversion is needed.
inline Integer reciprocal_sum_below_prime(u64 p, long e) {
    Integer mod = pow_p(p, e);
    if (mod.fits_ulong_p()) {
        const u64 m = mod.get_ui();
        u64 num = 0, den = 1;
        for (u64 i = 1; i < p; ++i) {
            num = static_cast<u64>((static_cast<u128>(mulmod(num, i, m)) + den) % m);
            den = mulmod(den, i, m);
        }
        Integer inv = mod_inverse(to_integer(den), mod);
        return to_integer(mulmod(num, inv.get_ui(), m));
    }
    Integer num = 0, den = 1;
    for (u64 i = 1; i < p; ++i) {
        num = (num * static_cast<unsigned long>(i) + den) % mod;
        den = den * static_cast<unsigned long>(i) % mod;
    }
    return num * mod_inverse(den, mod) % mod;
}

} // namespace harmpadic
