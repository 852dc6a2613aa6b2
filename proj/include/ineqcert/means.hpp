// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ineqcert/enclosure.hpp"

namespace ineqcert {

// Ordered weights λ_1..λ_n with every λ_k >= 0 and Σ λ_k = 1 exactly.
// No silent normalization: a vector that does not sum to 1 is rejected
// (the harness offers an explicit normalize step).
class WeightVector {
public:
    explicit WeightVector(std::vector<Rational> weights);

    size_t size() const { return w_.size(); }
    const Rational& operator[](size_t k) const { return w_[k]; }
    const std::vector<Rational>& values() const { return w_; }

    // lcm of the weight denominators; the L of the geometric-mean clearing.
    Integer denominator_lcm() const;

private:
    std::vector<Rational> w_;
};

// Ordered nonnegative samples c_1..c_n.
class SampleVector {
public:
    explicit SampleVector(std::vector<Rational> values);

    size_t size() const { return c_.size(); }
    const Rational& operator[](size_t k) const { return c_[k]; }
    const std::vector<Rational>& values() const { return c_; }

private:
    std::vector<Rational> c_;
};

// Hölder exponents: p > 1 with q = p/(p-1), so 1/p + 1/q = 1 exactly.
class ConjugatePair {
public:
    explicit ConjugatePair(PosRational p);

    const PosRational& p() const { return p_; }
    const PosRational& q() const { return q_; }

private:
    PosRational p_;
    PosRational q_;
};

// Power-mean exponents 0 < r <= s.
class ExponentPair {
public:
    ExponentPair(PosRational r, PosRational s);

    const PosRational& r() const { return r_; }
    const PosRational& s() const { return s_; }

private:
    PosRational r_;
    PosRational s_;
};

// Symbolic S^(1/t) for exact rational S >= 0 and rational t > 0, kept
// unevaluated so comparisons can clear roots to integer powers instead of
// rounding. With t = a/b the value is (S^b)^(1/a).
class RootPower {
public:
    RootPower(Rational base, PosRational inner_exponent);

    const Rational& base() const { return base_; }
    const PosRational& inner() const { return t_; }

    bool is_zero() const { return base_.is_zero(); }

    // Exact value when S^(1/t) is rational and fits the exact bit budget
    // (always available for zero base or t = 1 at desk scale).
    std::optional<Rational> as_rational() const;

    // Rigorous enclosure of the value at the given precision.
    Enclosure enclosure(unsigned precision) const;

    // Bit size of the integer comparison that clearing against `other`
    // would perform; used to route between exact and enclosure mode.
    Integer clearing_cost(const RootPower& other) const;
    Integer clearing_cost(const Rational& other) const;

    // "root(S,t)" with both in canonical rational form.
    std::string to_string() const;

private:
    Rational base_;
    PosRational t_;
};

// Exact ordering of the represented real values, by clearing to integer
// powers. The cleared exponents must fit a machine word.
Ordering compare(const RootPower& A, const RootPower& B);
Ordering compare(const RootPower& A, const Rational& q);

// Exact product of two RootPowers as a RootPower over the lcm root.
RootPower root_power_product(const RootPower& A, const RootPower& B);

// The two factor vectors and exponents of a Hölder instance.
class HolderInstance {
public:
    HolderInstance(SampleVector a, SampleVector b, ConjugatePair exponents);

    const SampleVector& a() const { return a_; }
    const SampleVector& b() const { return b_; }
    const ConjugatePair& exponents() const { return pq_; }
    size_t size() const { return a_.size(); }

private:
    SampleVector a_;
    SampleVector b_;
    ConjugatePair pq_;
};

// Σ λ_k c_k, exact.
Rational arithmetic_mean(const WeightVector& w, const SampleVector& c);

// Π c_k^{λ_k} as RootPower(Π c_k^{λ_k L}, L) with L = lcm of weight
// denominators; c_k^0 = 1 when λ_k = 0 (including c_k = 0).
RootPower geometric_mean_repr(const WeightVector& w, const SampleVector& c);

// Estimated bits of the exact geometric-mean base Π c_k^{λ_k L}; callers
// route to geometric_mean_enclosure when this exceeds the exact budget.
Integer geometric_mean_clearing_bits(const WeightVector& w, const SampleVector& c);

// Enclosure of Π c_k^{λ_k} computed termwise, never materializing the
// cleared base.
Enclosure geometric_mean_enclosure(const WeightVector& w, const SampleVector& c,
                                   unsigned precision);

// M_r(w, c) = (Σ λ_k c_k^r)^{1/r} as RootPower(Σ λ_k c_k^r, r).
// Exact mode: when r = a/b is non-integer, every sample with positive weight
// must be a perfect b-th power; otherwise RepresentabilityError directs the
// caller to power_mean_enclosure.
RootPower power_mean_repr(const WeightVector& w, const SampleVector& c, const PosRational& r);

// Enclosure of M_r(w, c), any nonnegative samples.
Enclosure power_mean_enclosure(const WeightVector& w, const SampleVector& c, const PosRational& r,
                               unsigned precision);

struct HolderSides {
    Rational lhs;      // Σ a_k b_k
    RootPower rhs_a;   // (Σ a_k^p)^{1/p}
    RootPower rhs_b;   // (Σ b_k^q)^{1/q}
};

// Exact evaluation of both sides of a Hölder instance; representability
// error when an entry is not an exact power compatible with the exponent
// denominators.
HolderSides holder_sides(const HolderInstance& inst);

// Enclosure of Σ x_k^e over entries of a sample vector (0^e = 0, e > 0).
Enclosure power_sum_enclosure(const SampleVector& x, const Rational& e, unsigned precision);

// Canonical comma-separated rendering, e.g. "1/2,1/2".
std::string to_csv(const std::vector<Rational>& v);

// Strict parse of a comma-separated rational list.
std::vector<Rational> parse_csv(std::string_view text);

// True when every entry is an exact d-th power of a rational (d >= 1).
bool power_closed(const SampleVector& v, const Integer& d);

}  // namespace ineqcert
