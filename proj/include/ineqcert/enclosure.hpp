// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ineqcert/dyadic.hpp"

namespace ineqcert {

// Width guard: every producer guarantees width <= 2^(-precision + kWidthGuardBits).
inline constexpr unsigned kWidthGuardBits = 4;

// Precision schedule for decision loops: start, double, stop at the cap.
inline constexpr unsigned kPrecisionStart = 64;
inline constexpr unsigned kPrecisionCap = 4096;

// Bit budget for exact integer-power routes (exact pow results, cleared
// root comparisons). Beyond this, callers fall back to enclosures.
inline constexpr long kExactBitBudget = 1L << 22;

// Outward-rounded interval [lower, upper] guaranteed to contain the real
// value it was computed for. `precision` is the absolute precision the
// enclosure was produced at: endpoints have granularity 2^-precision.
class Enclosure {
public:
    Enclosure(Dyadic lower, Dyadic upper, unsigned precision);

    static Enclosure point(const Dyadic& d, unsigned precision) {
        return Enclosure(d, d, precision);
    }
    // Tightest enclosure of an exact rational (a point when q is dyadic
    // at this precision).
    static Enclosure of_rational(const Rational& q, unsigned precision);

    const Dyadic& lower() const { return lo_; }
    const Dyadic& upper() const { return hi_; }
    unsigned precision() const { return prec_; }

    Dyadic width() const { return hi_ - lo_; }
    bool is_point() const { return lo_ == hi_; }
    bool contains(const Rational& q) const;
    bool strictly_positive() const { return lo_.sign() > 0; }
    bool strictly_negative() const { return hi_.sign() < 0; }

    // Largest absolute endpoint; an upper bound on |value|.
    Dyadic mag() const;

    // Outward rounding to a coarser absolute precision.
    Enclosure rounded(unsigned precision) const;

    // "[lower, upper]@precision" with dyadic endpoints.
    std::string to_string() const;

private:
    Dyadic lo_, hi_;
    unsigned prec_;
};

// If the two enclosures are disjoint, the order of the underlying values.
std::optional<Ordering> compare_disjoint(const Enclosure& a, const Enclosure& b);

// Interval arithmetic with outward rounding at the given working precision.
Enclosure enc_neg(const Enclosure& a);
Enclosure enc_add(const Enclosure& a, const Enclosure& b, unsigned prec);
Enclosure enc_sub(const Enclosure& a, const Enclosure& b, unsigned prec);
Enclosure enc_mul(const Enclosure& a, const Enclosure& b, unsigned prec);
Enclosure enc_mul_rational(const Rational& q, const Enclosure& a, unsigned prec);
// a / b for b strictly positive.
Enclosure enc_div(const Enclosure& a, const Enclosure& b, unsigned prec);
// a^n for a nonnegative interval, n >= 0.
Enclosure enc_pow_uint(const Enclosure& a, unsigned long n, unsigned prec);
// a^e for a nonnegative interval and rational e (negative e needs a > 0).
Enclosure enc_pow_rational(const Enclosure& a, const Rational& e, unsigned prec);

// Enclosure of x^e for x > 0. Point enclosures for e = 0, x = 1 and exactly
// representable powers; otherwise exp(e ln x) with adaptive working precision.
Enclosure pow_enclosure(const PosRational& x, const Rational& e, unsigned precision);

// As above with x >= 0 allowed; 0^e = 0 requires e > 0.
Enclosure pow_enclosure_nonneg(const Rational& x, const Rational& e, unsigned precision);

// Enclosure of ln x for x > 0, exact [0,0] at x = 1.
Enclosure ln_enclosure(const PosRational& x, unsigned precision);

// Re-evaluates the same quantity at doubled precision and returns the result
// clamped into `prior` (nested by construction). A producer result that does
// not overlap `prior` signals an arithmetic bug and throws InternalError.
Enclosure refine(const Enclosure& prior, const std::function<Enclosure(unsigned)>& producer);

}  // namespace ineqcert
