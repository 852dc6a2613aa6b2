// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "ineqcert/rational.hpp"

namespace ineqcert {

enum class RoundDir { Down, Up };  // toward -inf / toward +inf

// Dyadic rational mant * 2^exp2. Canonical form: mant odd, or mant = 0 with
// exp2 = 0, so equality is structural. Dyadic endpoints keep outward rounding
// cheap under refinement (no denominator blow-up).
class Dyadic {
public:
    Dyadic() : mant_(0), exp2_(0) {}
    explicit Dyadic(Integer mant, long exp2 = 0) : mant_(std::move(mant)), exp2_(exp2) {
        canonicalize();
    }

    static Dyadic zero() { return Dyadic(); }
    static Dyadic one() { return Dyadic(Integer(1), 0); }

    // Nearest dyadic with granularity 2^-prec in the given direction.
    // Exact when the input denominator is a power of two dividing 2^prec.
    static Dyadic from_rational(const Rational& q, unsigned prec, RoundDir dir);

    const Integer& mant() const { return mant_; }
    long exp2() const { return exp2_; }
    bool is_zero() const { return mant_ == 0; }
    int sign() const { return sgn(mant_); }

    Rational to_rational() const;

    // floor(log2 |value|); requires a nonzero value.
    long floor_log2_abs() const;

    // Directed rounding to absolute granularity 2^-prec.
    Dyadic rounded(unsigned prec, RoundDir dir) const;

    Dyadic operator-() const;
    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);  // exact
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);  // exact
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);  // exact

    Dyadic abs() const { return mant_ < 0 ? -*this : *this; }
    Dyadic mul_pow2(long k) const;  // exact value * 2^k

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exp2_ == b.exp2_ && a.mant_ == b.mant_;
    }

    // "mantissa*2^exponent", e.g. "3*2^-2", "0*2^0".
    std::string to_string() const;

private:
    void canonicalize();

    Integer mant_;
    long exp2_;
};

Ordering compare(const Dyadic& a, const Dyadic& b);

inline bool operator<(const Dyadic& a, const Dyadic& b) { return compare(a, b) == Ordering::Less; }
inline bool operator<=(const Dyadic& a, const Dyadic& b) { return compare(a, b) != Ordering::Greater; }
inline bool operator>(const Dyadic& a, const Dyadic& b) { return compare(a, b) == Ordering::Greater; }
inline bool operator>=(const Dyadic& a, const Dyadic& b) { return compare(a, b) != Ordering::Less; }

}  // namespace ineqcert
