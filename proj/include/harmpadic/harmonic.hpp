#pragma once

// Harmonic numbers H(n) = 1 + 1/2 + ... + 1/n: exact evaluation, an exact
// streaming accumulator, and a p-adic evaluator whose cost is polynomial in the
// number of base-p digits of n.
//
// The p-adic evaluator walks the digits of n from the most significant end
// using
//
//     H(pm + k) = H(m)/p + W(m) + D(m, k),
//     W(m)      = sum_{l<m} sum_{i=1}^{p-1} 1/(lp + i),
//     D(m, k)   = sum_{i=1}^{k} 1/(pm + i).
//
// W(m) is a polynomial in m modulo p^W: expanding 1/(lp + i) geometrically
// gives sum_i 1/(lp+i) = sum_t c_t (lp)^t with c_t = (-1)^t sum_i i^-(t+1),
// and the power sums over l are Faulhaber polynomials.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "bernoulli.hpp"

namespace harmpadic {

inline constexpr u64 kExactModeBound = 1'000'000;

/// Little-endian base-p digits of a non-negative integer. Zero has no digits.
struct DigitsBaseP {
    u64 prime = 2;
    std::vector<u64> digits;

    static DigitsBaseP of(const Integer& n, u64 p) {
        if (n < 0) throw DomainError("negative integer has no base-p digits");
        DigitsBaseP d{p, {}};
        Integer rest = n;
        while (rest != 0) d.digits.push_back(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), p));
        return d;
    }

    Integer value() const {
        Integer n = 0;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) n = n * static_cast<unsigned long>(prime) + static_cast<unsigned long>(*it);
        return n;
    }

    bool is_zero() const { return digits.empty(); }
    std::size_t length() const { return digits.size(); }

    /// Digits of n * p^m.
    DigitsBaseP times_power(std::size_t m) const {
        if (is_zero()) return *this;
        DigitsBaseP out{prime, std::vector<u64>(m, 0)};
        out.digits.insert(out.digits.end(), digits.begin(), digits.end());
        return out;
    }
};

// ---------------------------------------------------------------------------
// Exact evaluation

/// H(n) accumulated exactly as A / L with L = lcm(1..n); reduction is deferred
/// until value() so each step costs one big-by-small division.
class HarmonicStream {
public:
    u64 n() const { return n_; }

    void advance() {
        ++n_;
        Integer step = to_integer(n_);
        Integer g;
        mpz_gcd_ui(g.get_mpz_t(), lcm_.get_mpz_t(), n_);
        if (g != step) {
            Integer factor = step / g;
            sum_ *= factor;
            lcm_ *= factor;
        }
        Integer share;
        mpz_divexact_ui(share.get_mpz_t(), lcm_.get_mpz_t(), n_);
        sum_ += share;
    }

    void advance_to(u64 target) {
        while (n_ < target) advance();
    }

    Rational value() const { return Rational(sum_, lcm_); }

    Valuation valuation(u64 p) const {
        if (n_ == 0) return Valuation::infinity();
        long v_lcm = floor_log(p);
        long probe = v_lcm + 8;
        Integer r = mod_floor(sum_, pow_p(p, probe));
        long v_sum = r == 0 ? valuation_of(sum_, p) : valuation_of(r, p);
        return v_sum - v_lcm;
    }

    /// H(n) certified modulo p^abs_precision.
    PadicApprox project(u64 p, long abs_precision) const {
        if (n_ == 0) return PadicApprox::zero_to(p, abs_precision);
        long v_lcm = floor_log(p);
        long width = abs_precision + v_lcm;
        if (width <= 0) return PadicApprox::zero_to(p, abs_precision);
        Integer mod = pow_p(p, width);
        Integer r = mod_floor(sum_, mod);
        if (r == 0) return PadicApprox::zero_to(p, abs_precision);
        long a = split_p_part(r, p);
        Integer lcm_unit;
        mpz_divexact(lcm_unit.get_mpz_t(), lcm_.get_mpz_t(), pow_p(p, v_lcm).get_mpz_t());
        long precision = width - a;
        Integer m2 = pow_p(p, precision);
        return PadicApprox::from_unit(p, a - v_lcm, r * mod_inverse(lcm_unit % m2, m2), precision);
    }

private:
    long floor_log(u64 p) const {
        long k = 0;
        u128 pk = p;
        while (pk <= n_) {
            ++k;
            pk *= p;
        }
        return k;
    }

    u64 n_ = 0;
    Integer sum_{0};
    Integer lcm_{1};
};

inline void require_exact_mode(u64 n, u64 bound) {
    if (n > bound) {
        throw CapacityError("n = " + std::to_string(n) + " exceeds the exact-mode bound " + std::to_string(bound) +
                            "; use harmonic_mod_pk for large n");
    }
}

inline Rational harmonic_exact(u64 n, u64 bound = kExactModeBound) {
    require_exact_mode(n, bound);
    HarmonicStream s;
    s.advance_to(n);
    return s.value();
}

/// nu_p(H(n)) for every n in [0, n_max]; entry 0 is +infinity.
inline std::vector<Valuation> valuation_stream(u64 p, u64 n_max, u64 bound = kExactModeBound) {
    require_prime(p);
    require_exact_mode(n_max, bound);
    std::vector<Valuation> out;
    out.reserve(n_max + 1);
    HarmonicStream s;
    out.push_back(Valuation::infinity());
    while (s.n() < n_max) {
        s.advance();
        out.push_back(s.valuation(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Faulhaber power sums

/// Exact coefficients f_d of F_t(x) = sum_{l=0}^{x-1} l^t = sum_d f_d x^d.
inline const std::vector<Rational>& faulhaber_coefficients(std::size_t t,
                                                           const BernoulliTable& table = default_bernoulli_table()) {
    static std::mutex mu;
    static std::map<std::pair<const BernoulliTable*, std::size_t>, std::unique_ptr<std::vector<Rational>>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{&table, t}];
    if (!slot) {
        // F_t(x) = 1/(t+1) sum_{j=0}^{t} C(t+1, j) B_j x^{t+1-j}, with B_1 = -1/2
        auto coeffs = std::make_unique<std::vector<Rational>>(t + 2, Rational(0));
        for (std::size_t j = 0; j <= t; ++j) {
            (*coeffs)[t + 1 - j] = Rational(binomial(t + 1, j)) * table[j] / Rational(static_cast<long>(t + 1));
        }
        slot = std::move(coeffs);
    }
    return *slot;
}

/// Residue modulo p^K of sum_d coeffs[d] x^d, which must be p-integral at
/// every integer x. Coefficients may carry p in their denominators; x is
/// used modulo p^(K + E) where p^E clears them.
inline Integer eval_integer_valued_poly(const std::vector<Rational>& coeffs, const Integer& x, u64 p, long K) {
    long e = 0;
    for (const auto& c : coeffs) {
        if (!c.is_zero()) e = std::max(e, -val_rational(c, p).value());
    }
    Integer wide = pow_p(p, K + e);
    Integer scale = pow_p(p, e);
    Integer xr = mod_floor(x, wide);
    Integer acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        Rational scaled = *it * Rational(scale);
        Integer c = scaled.numerator() * mod_inverse(scaled.denominator(), wide);
        acc = (acc * xr + c) % wide;
    }
    acc = mod_floor(acc, wide);
    if (!mpz_divisible_p(acc.get_mpz_t(), scale.get_mpz_t())) {
        throw std::logic_error("polynomial is not integer-valued at the evaluation point");
    }
    return acc / scale;
}

/// sum_{k=1}^{x} k^e modulo p^K via Faulhaber's formula.
inline Integer power_sum_mod(std::size_t e, const Integer& x, u64 p, long K,
                             const BernoulliTable& table = default_bernoulli_table()) {
    if (e < 1) throw DomainError("power_sum_mod needs exponent >= 1");
    if (K < 1) throw DomainError("precision must be at least 1");
    if (x < 0) throw DomainError("power sums need x >= 0");
    require_prime(p);
    return eval_integer_valued_poly(faulhaber_coefficients(e, table), x + 1, p, K);
}

// ---------------------------------------------------------------------------
// Block coefficients

/// c_t = (-1)^t sum_{i=1}^{p-1} i^-(t+1) modulo p^(K-t), t = 0..K-1, so that
/// sum_{i=1}^{p-1} 1/(lp + i) = sum_t c_t (lp)^t modulo p^K.
struct BlockCoefficients {
    u64 prime;
    long precision;
    std::vector<Integer> c;

    /// sum_{i<p} 1/(lp + i) modulo p^K from the coefficients.
    Integer block(const Integer& l) const {
        Integer mod = pow_p(prime, precision);
        Integer lp = mod_floor(l * static_cast<unsigned long>(prime), mod);
        Integer acc = 0, power = 1;
        for (long t = 0; t < precision; ++t) {
            acc = (acc + c[t] * power) % mod;
            power = power * lp % mod;
        }
        return mod_floor(acc, mod);
    }
};

inline BlockCoefficients compute_block_coefficients(u64 p, long K) {
    require_prime(p);
    if (K < 1) throw DomainError("precision must be at least 1");
    const Integer mod = pow_p(p, K);
    std::vector<Integer> sums(K, Integer(0));
    constexpr u64 chunk = 4096;
    std::vector<Integer> inv;
    for (u64 start = 1; start < p; start += chunk) {
        u64 stop = std::min<u64>(p, start + chunk);
        inv.clear();
        for (u64 i = start; i < stop; ++i) inv.push_back(to_integer(i));
        batch_invert(std::span<Integer>(inv), mod);
        for (auto& x : inv) {
            Integer power = x;
            for (long t = 0; t < K; ++t) {
                sums[t] += power;
                power = power * x % mod;
            }
        }
    }
    BlockCoefficients bc{p, K, {}};
    for (long t = 0; t < K; ++t) {
        Integer m = pow_p(p, K - t);
        Integer v = mod_floor(sums[t], m);
        if (t % 2 == 1) v = mod_floor(-v, m);
        bc.c.push_back(v);
    }
    return bc;
}

inline std::shared_ptr<const BlockCoefficients> block_coefficients(u64 p, long K) {
    static std::mutex mu;
    static std::map<std::pair<u64, long>, std::shared_ptr<const BlockCoefficients>> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({p, K});
        if (it != cache.end()) return it->second;
    }
    auto bc = std::make_shared<const BlockCoefficients>(compute_block_coefficients(p, K));
    std::lock_guard lock(mu);
    return cache.emplace(std::make_pair(p, K), bc).first->second;
}

/// W(m) = sum_{l<m} sum_{i<p} 1/(lp + i) modulo p^W as a single polynomial in m:
/// the Faulhaber polynomials of every power t < W folded with c_t p^t.
class BlockSumPolynomial {
public:
    BlockSumPolynomial(u64 p, long W, const BernoulliTable& table = default_bernoulli_table()) : prime_(p), width_(W) {
        auto bc = block_coefficients(p, W);
        std::vector<Rational> folded(W + 1, Rational(0));
        for (long t = 0; t < W; ++t) {
            Rational weight(Integer(bc->c[t] * pow_p(p, t)));
            if (weight.is_zero()) continue;
            const auto& f = faulhaber_coefficients(static_cast<std::size_t>(t), table);
            for (std::size_t d = 0; d < f.size(); ++d) {
                if (!f[d].is_zero()) folded[d] += weight * f[d];
            }
        }
        long e = 0;
        for (const auto& g : folded) {
            if (!g.is_zero()) e = std::max(e, -val_rational(g, p).value());
        }
        scale_exp_ = e;
        wide_ = pow_p(p, W + e);
        Rational scale(pow_p(p, e));
        for (const auto& g : folded) {
            Rational s = g * scale;
            coeffs_.push_back(mod_floor(s.numerator() * mod_inverse(s.denominator(), wide_), wide_));
        }
    }

    long width() const { return width_; }

    Integer operator()(const Integer& m) const {
        Integer x = mod_floor(m, wide_);
        Integer acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (acc * x + *it) % wide_;
        acc = mod_floor(acc, wide_);
        Integer result;
        mpz_divexact(result.get_mpz_t(), acc.get_mpz_t(), pow_p(prime_, scale_exp_).get_mpz_t());
        return result;
    }

private:
    u64 prime_;
    long width_;
    long scale_exp_ = 0;
    Integer wide_;
    std::vector<Integer> coeffs_;
};

inline std::shared_ptr<const BlockSumPolynomial> block_sum_polynomial(u64 p, long W) {
    static std::mutex mu;
    static std::map<std::pair<u64, long>, std::shared_ptr<const BlockSumPolynomial>> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({p, W});
        if (it != cache.end()) return it->second;
    }
    auto poly = std::make_shared<const BlockSumPolynomial>(p, W);
    std::lock_guard lock(mu);
    return cache.emplace(std::make_pair(p, W), poly).first->second;
}

/// W(m) modulo p^W term by term: sum_t c_t p^t S_t(m-1), with the power sums
/// taken from power_sum_mod. Slower than the folded polynomial; kept as an
/// independent route.
inline Integer block_sum_via_power_sums(const Integer& m, u64 p, long W) {
    if (m == 0) return 0;
    auto bc = block_coefficients(p, W);
    Integer mod = pow_p(p, W);
    Integer acc = bc->c[0] * m;  // t = 0 counts l = 0 as well
    for (long t = 1; t < W; ++t) {
        Integer s = power_sum_mod(static_cast<std::size_t>(t), m - 1, p, W - t);
        acc += bc->c[t] * pow_p(p, t) * s;
    }
    return mod_floor(acc, mod);
}

/// D(m, k) = sum_{i=1}^{k} 1/(pm + i) modulo `mod` (one inversion).
inline Integer tail_sum(const Integer& m, u64 p, u64 k, const Integer& mod) {
    Integer base = mod_floor(m * static_cast<unsigned long>(p), mod);
    Integer num = 0, den = 1;
    for (u64 i = 1; i <= k; ++i) {
        Integer term = base + static_cast<unsigned long>(i);
        num = (num * term + den) % mod;
        den = den * term % mod;
    }
    return mod_floor(num * mod_inverse(den, mod), mod);
}

// ---------------------------------------------------------------------------
// p-adic evaluation

/// H(n) as a p-adic approximation, certified modulo p^(valuation + K') where
/// K' is reported in the result. A result that vanished at the working
/// precision comes back as zero-to-precision with the achieved bound.
inline PadicApprox harmonic_mod_pk(const DigitsBaseP& n, long K = kDefaultPrecision) {
    if (K < 1) throw DomainError("precision must be at least 1");
    const u64 p = n.prime;
    require_prime(p);
    if (n.is_zero()) return PadicApprox::zero_to(p, K);

    const long L = static_cast<long>(n.length());
    const long W = K + L + 2;
    const Integer mod = pow_p(p, W);
    auto poly = block_sum_polynomial(p, W);

    auto digit = n.digits.rbegin();
    Integer m = to_integer(*digit);
    PadicApprox h = PadicApprox::from_residue(p, tail_sum(0, p, *digit, mod), W);
    for (++digit; digit != n.digits.rend(); ++digit) {
        const u64 k = *digit;
        Integer integral = (*poly)(m);
        if (k != 0) integral += tail_sum(m, p, k, mod);
        h = padd(h.shifted(-1), PadicApprox::from_residue(p, integral, W));
        m = m * static_cast<unsigned long>(p) + static_cast<unsigned long>(k);
    }
    return h;
}

inline PadicApprox harmonic_mod_pk(const Integer& n, u64 p, long K = kDefaultPrecision) {
    return harmonic_mod_pk(DigitsBaseP::of(n, p), K);
}

inline constexpr long kDefaultPrecisionCeiling = 96;

/// Valuation of H(n); `exact` is false only when the precision ceiling was
/// reached, in which case `valuation` is a lower bound.
struct HarmonicValuation {
    Valuation valuation;
    bool exact;
    long precision_used;
};

inline HarmonicValuation nu_p_harmonic(const DigitsBaseP& n, long K = kDefaultPrecision,
                                       long ceiling = kDefaultPrecisionCeiling) {
    require_prime(n.prime);
    if (n.is_zero()) return {Valuation::infinity(), true, 0};
    K = std::max<long>(1, std::min(K, ceiling));
    while (true) {
        PadicApprox h = harmonic_mod_pk(n, K);
        if (!h.is_zero_to_precision()) return {h.valuation(), true, K};
        if (K >= ceiling) return {h.valuation(), false, K};
        K = std::min(2 * K, ceiling);
    }
}

inline HarmonicValuation nu_p_harmonic(const Integer& n, u64 p, long K = kDefaultPrecision,
                                       long ceiling = kDefaultPrecisionCeiling) {
    return nu_p_harmonic(DigitsBaseP::of(n, p), K, ceiling);
}

} // namespace harmpadic
