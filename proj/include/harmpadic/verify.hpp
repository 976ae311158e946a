#pragma once

// Named property suites over exact arithmetic. Each suite counts individual
// checks and keeps the first few failures for diagnostics.

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "formula1.hpp"
#include "jp_search.hpp"
#include "wolstenholme.hpp"

namespace harmpadic {

struct SuiteReport {
    std::string name;
    long passed = 0;
    long failed = 0;
    std::vector<std::string> failures;  ///< first few only
    double seconds = 0;

    bool ok() const { return failed == 0 && passed > 0; }

    void check(bool condition, const std::string& what) {
        if (condition) {
            ++passed;
        } else {
            ++failed;
            if (failures.size() < 20) failures.push_back(what);
        }
    }
};

struct VerifyScale {
    u64 lemma_n = 2000;            ///< descent and H(pn) vs H(n)/p
    u64 lemma_square_n = 500;      ///< H(p^2 n) vs H(n)/p^2
    u64 oracle_n = 10'000;         ///< harmonic_mod_pk vs exact projection
    std::size_t bernoulli_grid = 120;
    std::size_t von_staudt_grid = 200;
};

namespace detail {

/// Exact H(x) projected to absolute precision `abs` for every x <= n_max and
/// every requested prime.
inline std::map<u64, std::vector<PadicApprox>> exact_projections(const std::vector<u64>& primes, u64 n_max, long abs) {
    std::map<u64, std::vector<PadicApprox>> out;
    for (u64 p : primes) out[p].reserve(n_max + 1);
    HarmonicStream s;
    for (u64 p : primes) out[p].push_back(s.project(p, abs));
    while (s.n() < n_max) {
        s.advance();
        for (u64 p : primes) out[p].push_back(s.project(p, abs));
    }
    return out;
}

inline std::string label(const std::string& what, u64 p, u64 n) {
    return what + " p=" + std::to_string(p) + " n=" + std::to_string(n);
}

} // namespace detail

/// Descent nu(H(pn)) = nu(H(n)) - 1 when nu(H(n)) <= 2; H(pn) = H(n)/p + O(p^2);
/// H(p^2 n) = H(n)/p^2 + O(p); H(pn+k) = H(n)/p + H(k) + O(p) for n in J_p.
inline SuiteReport verify_lemmas(const VerifyScale& scale = {}) {
    SuiteReport r;
    r.name = "lemmas";
    const std::vector<u64> primes{5, 7, 11, 13};
    const long abs = 6;
    u64 n_max = 0;
    for (u64 p : primes) n_max = std::max({n_max, p * scale.lemma_n + p - 1, p * p * scale.lemma_square_n});
    auto proj = detail::exact_projections(primes, n_max, abs);

    for (u64 p : primes) {
        const auto& H = proj.at(p);
        for (u64 n = 1; n <= scale.lemma_n; ++n) {
            const PadicApprox& hn = H[n];
            const PadicApprox& hpn = H[p * n];
            if (!hn.is_zero_to_precision() && hn.valuation() <= 2) {
                r.check(!hpn.is_zero_to_precision() && hpn.valuation() == hn.valuation() - 1,
                        detail::label("descent", p, n));
            }
            r.check(agree_to(hpn, hn.shifted(-1), 2), detail::label("H(pn) = H(n)/p + O(p^2)", p, n));
            if (!hn.is_zero_to_precision() && hn.valuation() >= 1) {
                for (u64 k = 1; k < p; ++k) {
                    PadicApprox rhs = padd(hn.shifted(-1), H[k]);
                    r.check(agree_to(H[p * n + k], rhs, 1), detail::label("H(pn+k) = H(n)/p + H(k) + O(p)", p, n));
                }
            }
        }
        if (p <= 7) {
            for (u64 n = 1; n <= scale.lemma_square_n; ++n) {
                r.check(agree_to(H[p * p * n], H[n].shifted(-2), 1), detail::label("H(p^2 n) = H(n)/p^2 + O(p)", p, n));
            }
        }
    }
    return r;
}

/// Kummer's congruence, the pole criterion for nu_p(B_2n), and the Kummer
/// reduction of B_a modulo p.
inline SuiteReport verify_kummer(const VerifyScale& scale = {}, const BernoulliTable& table = default_bernoulli_table()) {
    SuiteReport r;
    r.name = "kummer";
    const auto primes = primes_in_range(5, 31);
    const std::size_t grid = scale.bernoulli_grid;
    for (u64 p : primes) {
        for (std::size_t a = 2; a <= grid; a += 2) {
            if (a % (p - 1) == 0) continue;
            Rational qa = table[a] / Rational(static_cast<long>(a));
            for (std::size_t b = a + (p - 1); b <= grid; b += p - 1) {
                Rational qb = table[b] / Rational(static_cast<long>(b));
                r.check(val_rational(qa - qb, p) >= Valuation(1),
                        "B_a/a = B_b/b mod p at p=" + std::to_string(p) + " a=" + std::to_string(a) + " b=" + std::to_string(b));
            }
            KummerReduction kr = kummer_reduce(Integer(static_cast<unsigned long>(a)), p, table);
            PadicApprox exact = approx_from_rational(table[a], p, 1);
            u64 expected = exact.is_zero_to_precision() || exact.valuation() > 0 ? 0 : exact.unit_mod_p();
            r.check(exact.is_zero_to_precision() || exact.valuation() >= 0, "B_a is p-integral");
            r.check(kr.bernoulli_mod_p() == expected, "kummer_reduce residue p=" + std::to_string(p) + " a=" + std::to_string(a));
        }
    }
    for (u64 p : primes) {
        for (std::size_t two_n = 2; two_n <= scale.von_staudt_grid; two_n += 2) {
            Valuation v = val_rational(table[two_n], p);
            bool pole = two_n % (p - 1) == 0;
            r.check(pole ? v == Valuation(-1) : v >= Valuation(0),
                    "nu_p(B_2n) pole criterion p=" + std::to_string(p) + " 2n=" + std::to_string(two_n));
            BernoulliValuation bv = bernoulli_valuation(Integer(static_cast<unsigned long>(two_n)), p);
            r.check(bv.exact == pole && (!pole || bv.value == -1), "bernoulli_valuation certificate");
        }
    }
    return r;
}

/// Integrality of B_2n + sum 1/q, and vanishing of odd-index numbers.
inline SuiteReport verify_von_staudt(const VerifyScale& scale = {}, const BernoulliTable& table = default_bernoulli_table()) {
    SuiteReport r;
    r.name = "vonstaudt";
    for (std::size_t two_n = 2; two_n <= scale.von_staudt_grid; two_n += 2) {
        r.check(von_staudt_defect(two_n, table).is_integer(), "von Staudt defect integral at 2n=" + std::to_string(two_n));
    }
    for (std::size_t i = 3; i <= table.cap(); i += 2) r.check(table[i].is_zero(), "B_" + std::to_string(i) + " = 0");
    return r;
}

/// The H(p^m n) expansion against exact H(p^m n), the closed form of chi_m, and
/// the binomial identity C(p^h(p-1)-1, 2k-1) = -1 mod p^h for 2k - 1 < p.
inline SuiteReport verify_formula1(const BernoulliTable& table = default_bernoulli_table()) {
    SuiteReport r;
    r.name = "formula1";
    struct Grid {
        u64 p;
        std::vector<long> levels;
        std::vector<u64> ns;
    };
    const std::vector<Grid> grids{{5, {2, 3, 4}, {1, 2, 3, 4, 6}}, {7, {2, 3}, {1, 2, 3, 4, 5, 6}}};
    for (const auto& g : grids) {
        u64 n_max = 0;
        for (long m : g.levels)
            for (u64 n : g.ns) n_max = std::max<u64>(n_max, pow_p(g.p, m).get_ui() * n);
        std::vector<PadicApprox> lhs;
        HarmonicStream s;
        std::map<u64, PadicApprox> wanted;
        for (long m : g.levels)
            for (u64 n : g.ns) wanted.emplace(pow_p(g.p, m).get_ui() * n, PadicApprox::zero_to(g.p, 0));
        for (auto& [x, approx] : wanted) {
            s.advance_to(x);
            approx = approx_from_rational(s.value(), g.p, 4 + static_cast<long>(g.levels.back()));
        }
        for (long m : g.levels) {
            for (u64 n : g.ns) {
                Formula1Result f = formula1_rhs(to_integer(n), m, g.p, kDefaultPrecision, table);
                const PadicApprox& exact = wanted.at(pow_p(g.p, m).get_ui() * n);
                r.check(agree_to(exact, f.rhs, 1),
                        "expansion mod p at p=" + std::to_string(g.p) + " m=" + std::to_string(m) + " n=" + std::to_string(n));
            }
        }
    }
    for (u64 n = 1; n <= 10; ++n) r.check(chi_direct_vs_closed(n, 2, 5, table), "chi p=5 m=2 n=" + std::to_string(n));
    for (u64 n = 1; n <= 5; ++n) r.check(chi_direct_vs_closed(n, 2, 7, table), "chi p=7 m=2 n=" + std::to_string(n));
    for (u64 n = 1; n <= 4; ++n) r.check(chi_direct_vs_closed(n, 3, 5, table), "chi p=5 m=3 n=" + std::to_string(n));
    for (u64 p : {5ULL, 7ULL, 11ULL}) {
        for (long h : {2L, 3L}) {
            Integer ph = pow_p(p, h);
            Integer top = ph * static_cast<unsigned long>(p - 1) - 1;
            for (u64 k = 1; 2 * k - 1 < p; ++k) {
                Integer c = binomial(top.get_ui(), 2 * k - 1);
                r.check(mod_floor(c + 1, ph) == 0, "binomial unit identity p=" + std::to_string(p));
            }
        }
    }
    return r;
}

/// harmonic_mod_pk against exact projections for every n <= oracle_n.
inline SuiteReport verify_oracle(const VerifyScale& scale = {}) {
    SuiteReport r;
    r.name = "oracle";
    const std::vector<u64> primes{3, 5, 7, 11, 13};
    HarmonicStream s;
    while (s.n() < scale.oracle_n) {
        s.advance();
        const Integer n = to_integer(s.n());
        for (u64 p : primes) {
            DigitsBaseP digits = DigitsBaseP::of(n, p);
            for (long K : {4L, 8L, 12L}) {
                PadicApprox fast = harmonic_mod_pk(digits, K);
                PadicApprox exact = s.project(p, fast.absolute_precision());
                bool ok = agree_to(fast, exact, fast.absolute_precision()) &&
                          (fast.is_zero_to_precision() || fast.precision() >= std::min<long>(K, fast.precision()));
                r.check(ok, detail::label("harmonic_mod_pk K=" + std::to_string(K), p, s.n()));
            }
        }
    }
    return r;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"lemmas", "kummer", "vonstaudt", "formula1", "oracle"};
    return names;
}

inline SuiteReport run_suite(const std::string& name, const VerifyScale& scale = {},
                             const BernoulliTable& table = default_bernoulli_table()) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport r;
    if (name == "lemmas") r = verify_lemmas(scale);
    else if (name == "kummer") r = verify_kummer(scale, table);
    else if (name == "vonstaudt") r = verify_von_staudt(scale, table);
    else if (name == "formula1") r = verify_formula1(table);
    else if (name == "oracle") r = verify_oracle(scale);
    else throw DomainError("unknown suite '" + name + "'");
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

} // namespace harmpadic
