#pragma once

// Fixed-precision p-adic numbers with certified precision tracking.
//
// A non-zero PadicApprox stands for p^valuation * unit where the unit is known
// modulo p^precision, i.e. the value is known modulo p^(valuation + precision).
// A value that vanished modulo the available precision is kept as a
// "zero to precision" state carrying only the bound nu >= valuation.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "rational.hpp"

namespace harmpadic {

inline constexpr long kDefaultPrecision = 12;

class PadicApprox {
public:
    /// p^valuation * unit, unit known modulo p^precision. The unit must be coprime to p.
    static PadicApprox from_unit(u64 p, long valuation, const Integer& unit, long precision) {
        if (precision < 1) throw DomainError("precision must be at least 1");
        PadicApprox x;
        x.prime_ = p;
        x.valuation_ = valuation;
        x.precision_ = precision;
        x.unit_ = mod_floor(unit, pow_p(p, precision));
        if (mpz_divisible_ui_p(x.unit_.get_mpz_t(), p)) throw DomainError("unit is divisible by p");
        return x;
    }

    /// Only "nu >= bound" is known.
    static PadicApprox zero_to(u64 p, long bound) {
        PadicApprox x;
        x.prime_ = p;
        x.valuation_ = bound;
        x.precision_ = 0;
        x.zero_ = true;
        return x;
    }

    /// An integer (or p-integral) residue known modulo p^abs_precision.
    static PadicApprox from_residue(u64 p, const Integer& residue, long abs_precision) {
        Integer r = mod_floor(residue, pow_p(p, abs_precision));
        if (r == 0) return zero_to(p, abs_precision);
        long v = split_p_part(r, p);
        return from_unit(p, v, r, abs_precision - v);
    }

    u64 prime() const { return prime_; }
    long valuation() const { return valuation_; }
    const Integer& unit() const { return unit_; }
    long precision() const { return precision_; }
    bool is_zero_to_precision() const { return zero_; }

    /// Largest A such that the value is certified modulo p^A.
    long absolute_precision() const { return zero_ ? valuation_ : valuation_ + precision_; }

    u64 unit_mod_p() const { return zero_ ? 0 : mpz_fdiv_ui(unit_.get_mpz_t(), prime_); }

    /// Multiplies by p^k.
    PadicApprox shifted(long k) const {
        PadicApprox r = *this;
        r.valuation_ += k;
        return r;
    }

    /// Forgets everything beyond p^abs.
    PadicApprox truncated(long abs) const {
        if (abs >= absolute_precision()) return *this;
        if (zero_ || valuation_ >= abs) return zero_to(prime_, abs);
        return from_unit(prime_, valuation_, unit_, abs - valuation_);
    }

    /// Base-p digits of the unit, least significant first.
    std::vector<u64> unit_digits() const {
        std::vector<u64> out;
        Integer u = unit_;
        for (long i = 0; i < precision_; ++i) {
            out.push_back(mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), prime_));
        }
        return out;
    }

    std::string str() const {
        std::ostringstream os;
        if (zero_) {
            os << "O(" << prime_ << "^" << valuation_ << ")";
        } else {
            os << prime_ << "^" << valuation_ << " * " << unit_.get_str() << " + O(" << prime_ << "^"
               << absolute_precision() << ")";
        }
        return os.str();
    }

    friend bool operator==(const PadicApprox& a, const PadicApprox& b) {
        return a.prime_ == b.prime_ && a.zero_ == b.zero_ && a.valuation_ == b.valuation_ &&
               a.precision_ == b.precision_ && a.unit_ == b.unit_;
    }

private:
    PadicApprox() = default;

    u64 prime_ = 2;
    long valuation_ = 0;
    Integer unit_{0};
    long precision_ = 0;
    bool zero_ = false;
};

inline void require_same_prime(const PadicApprox& x, const PadicApprox& y) {
    if (x.prime() != y.prime()) throw DomainError("p-adic operands over different primes");
}

inline PadicApprox approx_from_rational(const Rational& q, u64 p, long precision = kDefaultPrecision) {
    if (precision < 1) throw DomainError("precision must be at least 1");
    require_prime(p);
    if (q.is_zero()) return PadicApprox::zero_to(p, precision);
    Integer num = q.numerator();
    Integer den = q.denominator();
    long v = split_p_part(num, p) - split_p_part(den, p);
    Integer mod = pow_p(p, precision);
    return PadicApprox::from_unit(p, v, num * mod_inverse(den, mod), precision);
}

inline PadicApprox pneg(const PadicApprox& x) {
    if (x.is_zero_to_precision()) return x;
    return PadicApprox::from_unit(x.prime(), x.valuation(), -x.unit(), x.precision());
}

/// Sum with certified precision: the result never claims digits that were
/// cancelled away.
inline PadicApprox padd(const PadicApprox& x, const PadicApprox& y) {
    require_same_prime(x, y);
    const u64 p = x.prime();
    const long abs = std::min(x.absolute_precision(), y.absolute_precision());
    if (x.is_zero_to_precision() && y.is_zero_to_precision()) return PadicApprox::zero_to(p, abs);
    if (x.is_zero_to_precision()) return y.truncated(abs);
    if (y.is_zero_to_precision()) return x.truncated(abs);

    const long v0 = std::min(x.valuation(), y.valuation());
    if (v0 >= abs) return PadicApprox::zero_to(p, abs);
    Integer sum = x.unit() * pow_p(p, x.valuation() - v0) + y.unit() * pow_p(p, y.valuation() - v0);
    sum = mod_floor(sum, pow_p(p, abs - v0));
    if (sum == 0) return PadicApprox::zero_to(p, abs);
    long t = split_p_part(sum, p);
    return PadicApprox::from_unit(p, v0 + t, sum, abs - v0 - t);
}

inline PadicApprox psub(const PadicApprox& x, const PadicApprox& y) { return padd(x, pneg(y)); }

inline PadicApprox pmul(const PadicApprox& x, const PadicApprox& y) {
    require_same_prime(x, y);
    const u64 p = x.prime();
    if (x.is_zero_to_precision() && y.is_zero_to_precision()) {
        return PadicApprox::zero_to(p, x.valuation() + y.valuation());
    }
    if (x.is_zero_to_precision()) return PadicApprox::zero_to(p, x.valuation() + y.valuation());
    if (y.is_zero_to_precision()) return PadicApprox::zero_to(p, x.valuation() + y.valuation());
    long k = std::min(x.precision(), y.precision());
    return PadicApprox::from_unit(p, x.valuation() + y.valuation(), x.unit() * y.unit(), k);
}

inline PadicApprox pdiv(const PadicApprox& x, const PadicApprox& y) {
    require_same_prime(x, y);
    if (y.is_zero_to_precision()) {
        throw PrecisionExhausted("division by a value only known to be O(" + std::to_string(y.prime()) + "^" +
                                 std::to_string(y.valuation()) + ")");
    }
    const u64 p = x.prime();
    if (x.is_zero_to_precision()) return PadicApprox::zero_to(p, x.valuation() - y.valuation());
    long k = std::min(x.precision(), y.precision());
    Integer mod = pow_p(p, k);
    return PadicApprox::from_unit(p, x.valuation() - y.valuation(), x.unit() * mod_inverse(y.unit(), mod), k);
}

/// Whether x == y modulo p^abs. Both operands must be known at least that far.
inline bool agree_to(const PadicApprox& x, const PadicApprox& y, long abs) {
    if (std::min(x.absolute_precision(), y.absolute_precision()) < abs) {
        throw PrecisionExhausted("operands are not known modulo p^" + std::to_string(abs));
    }
    PadicApprox d = psub(x.truncated(abs), y.truncated(abs));
    return d.is_zero_to_precision() || d.valuation() >= abs;
}

/// Whether the p-adic approximation is consistent with the exact rational q
/// at every digit the approximation certifies.
inline bool consistent_with(const PadicApprox& x, const Rational& q) {
    long abs = x.absolute_precision();
    Valuation vq = val_rational(q, x.prime());
    if (vq >= Valuation(abs)) return x.is_zero_to_precision() || x.valuation() >= abs;
    long needed = std::max<long>(1, abs - vq.value());
    return agree_to(x, approx_from_rational(q, x.prime(), needed), abs);
}

} // namespace harmpadic
