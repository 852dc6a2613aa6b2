// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ineqcert/instance.hpp"

namespace ineqcert {

// Non-certified comparison report, computed with plain high-precision
// floating point (round to nearest, no outward rounding). Used only to
// cross-check certified verdicts; never a verdict source.
struct OracleReport {
    Ordering apparent;   // left side vs right side of the inequality
    Dyadic gap;          // approximate (right side - left side)
    unsigned precision;  // working bits

    // Noise floor 2^(-precision+4): gaps at or below it are indistinguishable
    // from equality at this precision.
    Dyadic tolerance() const;

    // True when the apparent ordering disagrees with a certified outcome by
    // more than the noise floor.
    bool contradicts(const Verdict& v) const;

    std::string to_string() const;  // "apparent=Less;gap=..;precision=.."
};

OracleReport brute_oracle(const InstanceSpec& inst, unsigned precision = 128);

}  // namespace ineqcert
