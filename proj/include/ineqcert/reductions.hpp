// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "ineqcert/verdicts.hpp"

namespace ineqcert {

// ---------------------------------------------------------------------------
// Certificate traces
//
// A trace is an ordered list of independently re-checkable steps. Each step
// names a proof rule, carries its serialized inputs ("k=2;a=1/1,2/1;..."),
// the canonical claim the rule derives from those inputs, and the verdict the
// shared checker produced for that claim. Re-running step_verdict on the
// serialized instance must reproduce the evidence verdict byte for byte.
// ---------------------------------------------------------------------------

inline constexpr const char* kTraceFormatVersion = "ineqcert-trace/1";

// Rule identifiers (fixed vocabulary, rule set version 1):
//   two_term_amgm    l1 c1 + l2 c2 >= c1^l1 c2^l2 for two samples
//   holder_term      per-index step of the Hölder derivation:
//                    (1/p) a_k^p S_b + (1/q) b_k^q S_a >= a_k b_k S_b^{1/p} S_a^{1/q}
//   holder_sum       summed form: S_a S_b >= (Σ a_k b_k) S_b^{1/p} S_a^{1/q}
//   holder_conclude  Σ a_k b_k <= (Σ a_k^p)^{1/p} (Σ b_k^q)^{1/q}
//   power_term       per-index two-term AM-GM with samples
//                    (λ_k c_k^s / U, λ_k) and weights (r/s, 1 - r/s)
//   power_sum        Σ λ_k c_k^r U^{-r/s} <= 1
//   power_conclude   M_r <= M_s

struct TraceStep {
    std::string rule_id;
    std::string instance;  // rule-specific "key=value;..." fields, canonical
    std::string claim;     // claim_of(rule_id, instance)
    Verdict evidence;
};

struct CertificateTrace {
    std::string conclusion;  // equals the final step's claim
    std::vector<TraceStep> steps;
};

// Canonical claim text a rule derives from its serialized instance.
std::string claim_of(const std::string& rule_id, const std::string& instance);

// Shared step checker used both when building and when verifying traces.
// Deterministic: equal inputs give byte-identical verdict lines.
Verdict step_verdict(const std::string& rule_id, const std::string& instance);

// ---------------------------------------------------------------------------
// Sharpening sequences: chains of power means descending from the arithmetic
// mean toward the geometric mean
// ---------------------------------------------------------------------------

struct SequenceTerm {
    Rational exponent;                 // the term equals M_exponent(w, c)
    std::optional<Rational> exact;     // exact value on power-closed instances
    std::optional<Enclosure> value;    // enclosure otherwise
};

struct SharpeningSequence {
    std::vector<SequenceTerm> terms;
    // monotonic[i] evidences terms[i] >= terms[i+1] (HOLDS strict, EQUALITY tie).
    std::vector<Verdict> monotonic;
    // Per-term ordering against the geometric mean: Greater or Equal.
    std::vector<Ordering> above_gm;
    RootPower limit;  // the geometric mean the chain approaches
};

// Terms A_m = (Σ λ_k c_k^{1/p^m})^{p^m} for m = 0..m_max; A_0 is the
// arithmetic mean. Exact where the instance is power-closed for p^m, else
// enclosures at `precision`.
SharpeningSequence sharpening_sequence(const WeightVector& w, const SampleVector& c, long p,
                                       unsigned m_max, unsigned precision = kPrecisionStart);

// Terms B_n = (Σ λ_k c_k^{1/n})^n for n = 1..n_max; B_1 is the arithmetic mean.
SharpeningSequence power_mean_to_amgm_sequence(const WeightVector& w, const SampleVector& c,
                                               unsigned n_max,
                                               unsigned precision = kPrecisionStart);

// ---------------------------------------------------------------------------
// Substitutions: specializing Hölder's inequality downward to sharpened
// AM-GM bounds and to power-mean monotonicity
// ---------------------------------------------------------------------------

// Substitution a_k = (λ_k c_k)^{1/p}, b_k = λ_k^{1/q} into Hölder, yielding
// the derived claim Σ λ_k c_k >= (Σ λ_k c_k^{1/p})^p. p is an integer >= 2.
struct HolderSubstitution {
    std::vector<RootPower> a;   // (λ_k c_k)^{1/p}
    std::vector<RootPower> b;   // λ_k^{1/q} = (λ_k^{p-1})^{1/p}
    long p;
    std::string derived_claim;  // the sharpened bound in claim grammar
    Verdict evidence;           // decided via the power-mean machinery
};
HolderSubstitution holder_to_amgm_substitution(const WeightVector& w, const SampleVector& c,
                                               long p);

// Substitution p = s/r, x_k = c_k^s into the derived bound, yielding
// Σ λ_k c_k^s >= (Σ λ_k c_k^r)^{s/r}, restated as M_r <= M_s. Requires r < s.
struct PowerMeanSubstitution {
    PosRational p;              // s/r
    std::vector<RootPower> x;   // c_k^s
    std::string derived_claim;
    std::string restated_claim;
    Verdict evidence;
};
PowerMeanSubstitution holder_to_power_mean_substitution(const WeightVector& w,
                                                        const SampleVector& c,
                                                        const ExponentPair& ex);

// ---------------------------------------------------------------------------
// Limit procedure and two-term special case
// ---------------------------------------------------------------------------

// Exact two-term AM-GM verdict via clearing: l1 c1 + l2 c2 vs c1^l1 c2^l2.
Verdict amgm_two_term(const Rational& l1, const Rational& l2, const Rational& c1,
                      const Rational& c2);

// (Σ λ_k c_k^x)^{1/x} evaluated on the grid x = 2^-j, j = 1..j_max, against
// the directly computed geometric mean, demonstrating the x -> 0+ limit.
struct LimitReport {
    Enclosure direct;  // enclosure of Π c_k^{λ_k} (a zero point when degenerate)
    bool degenerate;   // some support sample is zero: limit is 0, grid skipped
    struct GridPoint {
        Rational x;
        Enclosure value;
    };
    std::vector<GridPoint> grid;
};
LimitReport geometric_limit(const WeightVector& w, const SampleVector& c, unsigned precision,
                            unsigned j_max = 20);

// ---------------------------------------------------------------------------
// Trace builders (the converse directions)
// ---------------------------------------------------------------------------

// Hölder from AM-GM: two-term AM-GM per index, a summation step, and the
// Hölder conclusion. Throws PrecisionCapError if a step cannot be decided at
// the precision cap; never returns a trace with a failing step.
CertificateTrace amgm_to_holder_trace(const HolderInstance& inst);

// Power-mean monotonicity from AM-GM: per-index two-term AM-GM against the
// normalizer U = Σ λ_k c_k^s, the exact summation step
// Σ λ_k c_k^r U^{-r/s} <= 1, and the M_r <= M_s conclusion. Requires r < s.
CertificateTrace amgm_to_power_mean_trace(const WeightVector& w, const SampleVector& c,
                                          const ExponentPair& ex);

}  // namespace ineqcert
