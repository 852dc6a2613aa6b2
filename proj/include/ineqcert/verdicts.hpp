// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ineqcert/means.hpp"

namespace ineqcert {

// Proof-grade outcome of an inequality check. The margin is RHS - LHS in the
// inequality's canonical orientation (so HOLDS comes with a positive margin),
// reported exactly when representable and as a strictly positive enclosure
// otherwise. precision_used is the enclosure precision the decision was made
// at, or 0 for an exact decision.
struct Verdict {
    enum class Outcome { Holds, Equality, Fails, Undecided };

    Outcome outcome;
    std::optional<Rational> margin_exact;
    std::optional<Enclosure> margin_enclosure;
    std::optional<std::string> witness;  // FAILS only: re-checkable instance data
    unsigned precision_used = 0;

    bool decided() const { return outcome != Outcome::Undecided; }

    // "OUTCOME;margin=<rational|enclosure|none>;precision=<n>"
    std::string to_line() const;
};

std::string to_string(Verdict::Outcome o);

// Weighted AM-GM: Π c_k^{λ_k} <= Σ λ_k c_k.
Verdict check_amgm(const WeightVector& w, const SampleVector& c);

// Hölder: Σ a_k b_k <= (Σ a_k^p)^{1/p} (Σ b_k^q)^{1/q}.
Verdict check_holder(const HolderInstance& inst);

// Power-mean monotonicity: M_r <= M_s for r <= s.
Verdict check_power_mean(const WeightVector& w, const SampleVector& c, const ExponentPair& ex);

// Equality holds in AM-GM iff the samples are constant on the support of w.
// When they are not, `witness` is a 1-based pair of support indices with
// differing samples.
struct EqualityCharacterization {
    bool equal;
    std::optional<std::pair<size_t, size_t>> witness;
};
EqualityCharacterization equality_characterization(const WeightVector& w, const SampleVector& c);

// Exact test of the Hölder equality pattern: are (a_k^p) and (b_k^q)
// proportional? nullopt when the cross powers exceed the exact bit budget.
std::optional<bool> holder_proportional(const HolderInstance& inst);

}  // namespace ineqcert
