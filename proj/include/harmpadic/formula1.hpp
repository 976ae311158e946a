#pragma once

// Modulo-p expansion of H(p^m n) for p >= 5 and p not dividing n:
//
//   H(p^m n) = H(n)/p^m
//            + sum_{h=2}^{m-1} sum_{k=1}^{h} B_{p^h(p-1)-2k} / (2k p^h)
//                * C(p^h(p-1)-1, 2k-1) * p^{2k(m-h)} * n^{2k}  + O(p).
//
// Only congruence modulo p is claimed; the evaluator never certifies more.

#include <optional>
#include <string>
#include <vector>

#include "harmonic.hpp"

namespace harmpadic {

enum class TermGroup { Pivot, PMinusOneDividesTwoK, Remaining };

inline std::string to_string(TermGroup g) {
    switch (g) {
    case TermGroup::Pivot: return "pivot";
    case TermGroup::PMinusOneDividesTwoK: return "p-1|2k";
    case TermGroup::Remaining: return "remaining";
    }
    return "?";
}

struct Formula1Term {
    long h = 0;
    long k = 0;
    long valuation = 0;         ///< exact when `kept`, otherwise a certified lower bound
    long valuation_bound = 0;   ///< bound from Clausen-von Staudt and the binomial valuation alone
    bool kept = false;          ///< valuation <= 0, contributes modulo p
    std::optional<u64> unit_mod_p;
    TermGroup group = TermGroup::Remaining;
};

struct Formula1Result {
    u64 prime = 0;
    long level = 0;
    PadicApprox rhs = PadicApprox::zero_to(2, 0);  ///< certified modulo p^1
    std::vector<Formula1Term> terms;
};

/// nu_p(C(N, r)) via Legendre's formula.
inline long binomial_valuation(const Integer& N, const Integer& r, u64 p) {
    auto legendre = [p](Integer x) {
        long s = 0;
        while (x > 0) {
            mpz_fdiv_q_ui(x.get_mpz_t(), x.get_mpz_t(), p);
            s += x.get_si();
        }
        return s;
    };
    return legendre(N) - legendre(r) - legendre(N - r);
}

/// Exact value of one (h, k) summand for level m.
inline Rational formula1_term_exact(const Integer& n, long m, long h, long k, u64 p,
                                    const BernoulliTable& table = default_bernoulli_table()) {
    const Integer ph = pow_p(p, h);
    const Integer idx = ph * static_cast<unsigned long>(p - 1) - 2 * k;
    if (!idx.fits_ulong_p() || idx.get_ui() > table.cap()) {
        throw CapacityError("Bernoulli index " + idx.get_str() + " exceeds the configured cap " + std::to_string(table.cap()));
    }
    Rational b = table[idx.get_ui()];
    Integer top = ph * static_cast<unsigned long>(p - 1) - 1;
    Integer binom = binomial(top.get_ui(), static_cast<unsigned long>(2 * k - 1));
    Integer n2k;
    mpz_pow_ui(n2k.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(2 * k));
    Rational numerator = b * Rational(Integer(binom * pow_p(p, 2 * k * (m - h)) * n2k));
    return numerator / Rational(Integer(ph * (2 * k)));
}

/// Right-hand side of the expansion modulo p, with a per-term report.
/// H(n)/p^m comes from harmonic_mod_pk at precision m + K.
inline Formula1Result formula1_rhs(const Integer& n, long m, u64 p, long K = kDefaultPrecision,
                                   const BernoulliTable& table = default_bernoulli_table()) {
    require_prime_at_least(p, 5);
    if (m < 1) throw DomainError("level m must be at least 1");
    if (n <= 0) throw DomainError("n must be positive");
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) throw DomainError("p divides n");
    if (m >= 3) {
        Integer max_index = pow_p(p, m - 1) * static_cast<unsigned long>(p - 1) - 2;
        if (!max_index.fits_ulong_p() || max_index.get_ui() > table.cap()) {
            throw CapacityError("level " + std::to_string(m) + " needs B_" + max_index.get_str() +
                                ", beyond the Bernoulli cap " + std::to_string(table.cap()));
        }
    }

    Formula1Result out;
    out.prime = p;
    out.level = m;
    PadicApprox h_n = harmonic_mod_pk(n, p, m + K);
    if (h_n.is_zero_to_precision()) throw PrecisionExhausted("H(n) vanished at the working precision");
    PadicApprox sum = h_n.shifted(-m);

    for (long h = 2; h <= m - 1; ++h) {
        for (long k = 1; k <= h; ++k) {
            Formula1Term term;
            term.h = h;
            term.k = k;
            bool bern_pole = (2 * k) % static_cast<long>(p - 1) == 0;
            if (h == m - 1 && k == 1) term.group = TermGroup::Pivot;
            else if (bern_pole) term.group = TermGroup::PMinusOneDividesTwoK;

            // Lower bound: nu(B) >= -1 with equality iff (p-1) | 2k; the
            // binomial is congruent to -1 mod p^h whenever 2k - 1 < p.
            Integer ph = pow_p(p, h);
            long binom_v = static_cast<u64>(2 * k - 1) < p
                               ? 0
                               : binomial_valuation(ph * static_cast<unsigned long>(p - 1) - 1, Integer(2 * k - 1), p);
            long bound = (bern_pole ? -1 : 0) + binom_v + 2 * k * (m - h) - h - valuation_of(Integer(2 * k), p);
            term.valuation_bound = bound;
            if (bound >= 1) {
                term.valuation = bound;
                out.terms.push_back(term);
                continue;
            }
            Rational exact = formula1_term_exact(n, m, h, k, p, table);
            if (exact.is_zero()) {
                term.valuation = std::max<long>(bound, 1);
                out.terms.push_back(term);
                continue;
            }
            term.valuation = val_rational(exact, p).value();
            if (term.valuation <= 0) {
                term.kept = true;
                PadicApprox a = approx_from_rational(exact, p, 1 - term.valuation);
                term.unit_mod_p = a.unit_mod_p();
                sum = padd(sum, a);
            }
            out.terms.push_back(term);
        }
    }
    out.rhs = sum.truncated(1);
    return out;
}

/// chi_m(n) = p^-m sum_{l<n} sum_{k<p} 1/(lp + k) against its Bernoulli closed
/// form sum_{k=1}^{m} B_{p^m(p-1)-2k}/(2k p^m) C(p^m(p-1)-1, 2k-1) (np)^{2k};
/// both exact, compared modulo p.
inline bool chi_direct_vs_closed(u64 n, long m, u64 p, const BernoulliTable& table = default_bernoulli_table()) {
    require_prime_at_least(p, 5);
    if (m < 1) throw DomainError("level m must be at least 1");
    const Integer pm = pow_p(p, m);
    const Integer top_index = pm * static_cast<unsigned long>(p - 1);
    if (!top_index.fits_ulong_p() || top_index.get_ui() - 2 > table.cap()) {
        throw CapacityError("chi check needs B_" + Integer(top_index - 2).get_str() + ", beyond the Bernoulli cap");
    }

    Rational direct = 0;
    for (u64 l = 0; l < n; ++l) {
        for (u64 k = 1; k < p; ++k) direct += Rational(Integer(1), to_integer(l * p + k));
    }
    direct /= Rational(pm);

    Rational closed = 0;
    const Integer np = to_integer(n) * static_cast<unsigned long>(p);
    for (long k = 1; k <= m; ++k) {
        Rational b = table[top_index.get_ui() - 2 * k];
        Integer binom = binomial(top_index.get_ui() - 1, static_cast<unsigned long>(2 * k - 1));
        Integer np2k;
        mpz_pow_ui(np2k.get_mpz_t(), np.get_mpz_t(), static_cast<unsigned long>(2 * k));
        closed += b * Rational(Integer(binom * np2k)) / Rational(Integer(pm * (2 * k)));
    }
    return val_rational(direct - closed, p) >= Valuation(1);
}

} // namespace harmpadic
