// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ineqcert/verdicts.hpp"

namespace ineqcert {

enum class InstanceKind { Amgm, Holder, PowerMean };

std::string to_string(InstanceKind kind);
InstanceKind instance_kind_of(const std::string& name);  // throws InputError

// One checkable problem instance, as read from or written to an instance
// file. Field use by kind:
//   amgm:      w, c            (claim: Π c_k^{λ_k} <= Σ λ_k c_k)
//   holder:    a, b, p         (claim: Σ a_k b_k <= (Σ a_k^p)^{1/p} (Σ b_k^q)^{1/q})
//   powermean: w, c, r, s      (claim: M_r <= M_s)
// parse_instance and validate_instance enforce the preconditions of the
// matching check operation.
struct InstanceSpec {
    InstanceKind kind = InstanceKind::Amgm;
    std::vector<Rational> w, c;             // amgm, powermean
    std::vector<Rational> a, b;             // holder
    std::optional<Rational> p;              // holder: p > 1
    std::optional<Rational> r, s;           // powermean: 0 < r <= s
    std::optional<std::string> provenance;  // "seed=..;mode=..;n=..;bound=.."

    size_t size() const;
    WeightVector weights() const;    // amgm, powermean
    SampleVector samples() const;    // amgm, powermean
    HolderInstance holder() const;   // holder
    ExponentPair exponents() const;  // powermean
};

// Kind-specific invariants; throws InputError / DomainError / DimensionError.
// parse_instance reports the same violations with line/column positions.
void validate_instance(const InstanceSpec& inst);

// Line-oriented "key=value" text; ';' also separates statements within a
// line, '#' starts a comment line, and a "# provenance: ..." comment is
// read back into the provenance field. parse(emit(x)) == x byte-exactly;
// emit(parse(text)) canonicalizes whitespace and rationals.
InstanceSpec parse_instance(const std::string& text);
std::string emit_instance(const InstanceSpec& inst);

// Dispatch to check_amgm / check_holder / check_power_mean by kind.
Verdict check_instance(const InstanceSpec& inst);

}  // namespace ineqcert
