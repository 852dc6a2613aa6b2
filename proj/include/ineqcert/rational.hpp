// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ineqcert/errors.hpp"

namespace ineqcert {

using Integer = mpz_class;

// Three-way comparison outcome of an exact decision.
enum class Ordering { Less, Equal, Greater };

inline Ordering ordering_of(int cmp) {
    return cmp < 0 ? Ordering::Less : (cmp > 0 ? Ordering::Greater : Ordering::Equal);
}
inline Ordering flip(Ordering o) {
    return o == Ordering::Less ? Ordering::Greater
                               : (o == Ordering::Greater ? Ordering::Less : Ordering::Equal);
}
std::string to_string(Ordering o);

// Arbitrary-precision rational in canonical reduced form: denominator > 0,
// gcd(|num|, den) = 1. Equality is therefore structural.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
    explicit Rational(const Integer& n) : q_(n) {}
    Rational(const Integer& num, const Integer& den);
    Rational(long num, long den);

    const Integer num() const { return q_.get_num(); }
    const Integer den() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational operator-() const;
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    // Canonical "numerator/denominator" serialization, e.g. "3/2", "-1/3", "0/1".
    std::string to_string() const;

    // Strict parse of "n" or "n/d"; position-less (the instance parser adds
    // line/column context).
    static Rational parse(std::string_view text);

    const mpq_class& raw() const { return q_; }

private:
    mpq_class q_;  // kept canonical
};

inline Ordering compare(const Rational& a, const Rational& b) {
    return ordering_of(cmp(a.raw(), b.raw()));
}

// Strictly positive rational, used for exponents.
class PosRational {
public:
    explicit PosRational(Rational v) : v_(std::move(v)) {
        if (v_.sign() <= 0) throw DomainError("PosRational: value must be > 0, got " + v_.to_string());
    }
    PosRational(long num, long den) : PosRational(Rational(num, den)) {}
    const Rational& value() const { return v_; }

    friend bool operator==(const PosRational& a, const PosRational& b) { return a.v_ == b.v_; }

private:
    Rational v_;
};

// n/d with d != 0, reduced with positive denominator.
Rational rational_of(const Integer& num, const Integer& den);

// Exact x^e. Requires x != 0 when e < 0.
Rational pow_int(const Rational& x, long e);
Rational pow_int(const Rational& x, const Integer& e);

// Orders A^(1/u) against B^(1/v) exactly by clearing to the integer powers
// A^v versus B^u (valid since u, v > 0 and both bases are positive).
Ordering cmp_root_pow(const PosRational& A, unsigned long u, const PosRational& B, unsigned long v);

// Exact k-th root of a nonnegative rational, if the root is itself rational.
std::optional<Rational> nth_root_exact(const Rational& x, unsigned long k);

// Exact x^e for nonnegative x and rational e, when representable
// (x must be a perfect den(e)-th power; 0^e = 0 requires e > 0).
std::optional<Rational> pow_exact(const Rational& x, const Rational& e);

// Total bit size of the canonical representation, used to estimate whether a
// cleared comparison is affordable.
size_t bit_size(const Rational& x);
size_t bit_size(const Integer& x);

}  // namespace ineqcert
