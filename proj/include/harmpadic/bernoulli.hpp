#pragma once

// Exact Bernoulli numbers and their p-adic behaviour.
//
// Convention: t/(e^t - 1) = sum B_k t^k / k!, so B_0 = 1 and B_1 = -1/2.
// The series t/(1 - e^t) = -t/(e^t - 1) would negate every B_k. Valuations,
// Wolstenholme divisibility and Kummer's congruence are unaffected by that
// sign; the H(p^m n) expansion only holds with the t/(e^t - 1) sign.

#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "padic.hpp"

namespace harmpadic {

inline constexpr std::size_t kDefaultBernoulliCap = 1200;

/// Memoized Bernoulli numbers B_0..B_cap from the recurrence
/// sum_{j=0}^{m} C(m+1, j) B_j = 0. Thread-safe; extends lazily.
class BernoulliTable {
public:
    explicit BernoulliTable(std::size_t cap = kDefaultBernoulliCap) : cap_(cap) { values_.emplace_back(1); }

    std::size_t cap() const { return cap_; }

    Rational operator[](std::size_t i) const {
        if (i > cap_) {
            throw CapacityError("Bernoulli index " + std::to_string(i) + " exceeds the configured cap " +
                                std::to_string(cap_));
        }
        std::lock_guard lock(mu_);
        extend_to(i);
        return Rational(values_[i]);
    }

    /// Number of entries computed so far.
    std::size_t computed() const {
        std::lock_guard lock(mu_);
        return values_.size();
    }

    /// Text cache: one line per index, "index numerator/denominator".
    void save(std::ostream& os, std::size_t upto) const {
        if (upto > cap_) upto = cap_;
        std::lock_guard lock(mu_);
        extend_to(upto);
        for (std::size_t i = 0; i <= upto; ++i) os << i << ' ' << values_[i].get_num() << '/' << values_[i].get_den() << '\n';
    }

    /// Seeds the memo from a cache produced by save(). Lines must start at index 0
    /// and be contiguous; returns the number of entries accepted.
    std::size_t load(std::istream& is) {
        std::vector<mpq_class> loaded;
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            std::size_t index = 0;
            std::string value;
            if (!(ls >> index >> value) || index != loaded.size()) {
                throw DomainError("malformed Bernoulli cache line: '" + line + "'");
            }
            if (index > cap_) break;
            loaded.push_back(Rational::parse(value).raw());
        }
        if (loaded.empty() || loaded[0] != 1 || (loaded.size() > 1 && loaded[1] != mpq_class(-1, 2))) {
            throw DomainError("Bernoulli cache does not use the B_0 = 1, B_1 = -1/2 convention");
        }
        std::lock_guard lock(mu_);
        if (loaded.size() > values_.size()) values_ = std::move(loaded);
        return values_.size();
    }

private:
    void extend_to(std::size_t i) const {
        for (std::size_t m = values_.size(); m <= i; ++m) {
            // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
            mpq_class sum = 0;
            mpz_class c = 1;
            for (std::size_t j = 0; j < m; ++j) {
                if (sgn(values_[j]) != 0) sum += c * values_[j];
                c = c * (m + 1 - j) / (j + 1);
            }
            mpq_class b = -sum / mpz_class(static_cast<unsigned long>(m + 1));
            b.canonicalize();
            values_.push_back(b);
        }
    }

    std::size_t cap_;
    mutable std::mutex mu_;
    mutable std::vector<mpq_class> values_;
};

inline BernoulliTable& default_bernoulli_table() {
    static BernoulliTable table;
    return table;
}

inline Rational bernoulli_exact(std::size_t i, const BernoulliTable& table = default_bernoulli_table()) {
    return table[i];
}

/// B_{2n} + sum over primes q with (q-1) | 2n of 1/q. Always an integer.
inline Rational von_staudt_defect(std::size_t two_n, const BernoulliTable& table = default_bernoulli_table()) {
    if (two_n == 0 || two_n % 2 != 0) throw DomainError("von Staudt defect needs a positive even index");
    Rational result = table[two_n];
    for (u64 d = 1; d <= two_n; ++d) {
        if (two_n % d == 0 && is_prime(d + 1)) result += Rational(Integer(1), to_integer(d + 1));
    }
    return result;
}

/// nu_p(B_{2n}): exactly -1 when (p-1) | 2n, otherwise only the bound >= 0.
struct BernoulliValuation {
    long value;
    bool exact;
};

inline BernoulliValuation bernoulli_valuation(const Integer& two_n, u64 p) {
    require_prime_at_least(p, 5);
    if (two_n <= 0 || mpz_odd_p(two_n.get_mpz_t())) throw DomainError("index must be even and positive");
    if (mpz_divisible_ui_p(two_n.get_mpz_t(), p - 1)) return {-1, true};
    return {0, false};
}

struct KummerReduction {
    u64 prime;
    Integer original_index;
    u64 reduced_index;
    u64 unit_of_quotient;  ///< B_b / b modulo p

    /// B_a modulo p, reconstructed as (a mod p) * (B_b / b).
    u64 bernoulli_mod_p() const {
        u64 a_mod = mpz_fdiv_ui(original_index.get_mpz_t(), prime);
        return mulmod(a_mod, unit_of_quotient, prime);
    }
};

/// Reduces B_a / a modulo p to B_b / b with b in [2, p-3], b = a mod (p-1).
inline KummerReduction kummer_reduce(const Integer& a, u64 p, const BernoulliTable& table = default_bernoulli_table()) {
    require_prime_at_least(p, 5);
    if (a <= 0 || mpz_odd_p(a.get_mpz_t())) throw DomainError("Kummer reduction needs a positive even index");
    u64 b = mpz_fdiv_ui(a.get_mpz_t(), p - 1);
    if (b == 0) throw DomainError("(p-1) divides the index; Kummer's congruence does not apply");
    Rational quotient = table[b] / Rational(static_cast<long>(b));
    Integer residue = quotient.numerator() * mod_inverse(quotient.denominator(), to_integer(p));
    return {p, a, b, mod_floor(residue, to_integer(p)).get_ui()};
}

/// B_i as a p-adic approximation with r digits of unit.
inline PadicApprox bernoulli_mod(std::size_t i, u64 p, long r, const BernoulliTable& table = default_bernoulli_table()) {
    return approx_from_rational(table[i], p, r);
}

/// p | numerator(B_{p-3}). Beyond the exact table this delegates to the
/// equivalent harmonic criterion p^3 | H(p-1), unless exact_only is set.
inline bool is_wolstenholme_via_bernoulli(u64 p, const BernoulliTable& table = default_bernoulli_table(),
                                          bool exact_only = false) {
    require_prime_at_least(p, 5);
    if (p - 3 <= table.cap()) {
        Rational b = table[p - 3];
        return !b.is_zero() && val_rational(b, p) >= Valuation(1);
    }
    if (exact_only) {
        throw CapacityError("B_" + std::to_string(p - 3) + " exceeds the Bernoulli cap " + std::to_string(table.cap()));
    }
    return reciprocal_sum_below_prime(p, 3) == 0;
}

} // namespace harmpadic
