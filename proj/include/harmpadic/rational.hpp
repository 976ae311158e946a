#pragma once

#include <gmpxx.h>

#include <compare>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

#include "modular.hpp"

namespace harmpadic {

/// Exact fraction, always reduced, denominator positive, zero stored as 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
    explicit Rational(const Integer& n) : q_(n) {}
    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw DomainError("zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "a" or "a/b".
    static Rational parse(const std::string& text) {
        auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(Integer(text, 10));
        return Rational(Integer(text.substr(0, slash), 10), Integer(text.substr(slash + 1), 10));
    }

    Integer numerator() const { return q_.get_num(); }
    Integer denominator() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    std::string str() const { return q_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw DomainError("division by zero rational");
        return Rational(mpq_class(a.q_ / b.q_));
    }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DomainError("division by zero rational");
        q_ /= o.q_;
        return *this;
    }
    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

/// An integer valuation or +infinity (the valuation of exactly zero).
class Valuation {
public:
    constexpr Valuation(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    static constexpr Valuation infinity() { return Valuation(); }

    constexpr bool is_infinite() const { return !value_.has_value(); }
    long value() const {
        if (!value_) throw DomainError("valuation is +infinity");
        return *value_;
    }
    std::string str() const { return value_ ? std::to_string(*value_) : std::string("inf"); }

    friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
    friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.is_infinite() || b.is_infinite()) {
            return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
        }
        return *a.value_ <=> *b.value_;
    }
    friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.str(); }

private:
    constexpr Valuation() = default;
    std::optional<long> value_;
};

/// nu_p(q) = nu_p(numerator) - nu_p(denominator); +infinity for q = 0.
inline Valuation val_rational(const Rational& q, u64 p) {
    require_prime(p);
    if (q.is_zero()) return Valuation::infinity();
    return valuation_of(q.numerator(), p) - valuation_of(q.denominator(), p);
}

inline Rational pow(const Rational& base, unsigned long e) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), e);
    return Rational(num, den);
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace harmpadic
