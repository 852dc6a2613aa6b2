// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "ineqcert/instance.hpp"

namespace ineqcert {

// Deterministic 64-bit generator (the SplitMix64 recurrence), fixed and
// documented so corpora are reproducible across implementations:
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   output z ^ (z >> 31)
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}
    uint64_t next();
    // Draw in [lo, hi] by modulo reduction. The reduction bias is far below
    // anything observable at the 2^16 ranges used here, and keeping the map
    // this simple makes the sequence easy to reproduce elsewhere.
    uint64_t next_in(uint64_t lo, uint64_t hi);

private:
    uint64_t state_;
};

struct GeneratorMode {
    enum class Kind { General, PowerClosed };
    Kind kind = Kind::General;
    unsigned long order = 1;  // the L of power_closed(L)

    static GeneratorMode general() { return GeneratorMode{Kind::General, 1}; }
    static GeneratorMode power_closed(unsigned long order);

    std::string to_string() const;                         // "general" / "power_closed(6)"
    static GeneratorMode parse(const std::string& text);   // throws InputError
};

// Divide each raw weight by the exact sum; the result sums to exactly 1.
WeightVector normalize_weights(const std::vector<Rational>& raw);

// Deterministic: identical arguments produce byte-identical instances.
// Weights are positive rationals summing to exactly 1. In general mode the
// sample numerators and denominators are drawn within `bound`; power-closed
// mode draws base rationals and raises them to the order-th power, so every
// sample is an exact order-th power.
InstanceSpec gen_instance(uint64_t seed, InstanceKind kind, size_t n, const GeneratorMode& mode,
                          unsigned long bound = 1UL << 16);

}  // namespace ineqcert
