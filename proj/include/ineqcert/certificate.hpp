// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ineqcert/reductions.hpp"

namespace ineqcert {

// Line-oriented, tab-separated certificate text:
//   <format-version> TAB conclusion=<claim>
//   <rule_id> TAB <instance> TAB <claim> TAB <verdict-line>   (one per step)
// Canonical: emit(parse(text)) == text for any certificate this library
// emitted.
std::string emit_certificate(const CertificateTrace& trace);
CertificateTrace parse_certificate(const std::string& text);  // throws ParseError

struct StepReport {
    size_t index;  // 1-based step number
    std::string rule_id;
    bool ok;
    std::string detail;  // failure reason when !ok
};

struct VerifyReport {
    bool ok;
    std::vector<StepReport> steps;  // ends at the first failing step
    std::string trace_error;        // trace-level failure (bad conclusion, no steps)
    std::string to_string() const;
};

// Re-derives every step's claim and verdict from its serialized instance and
// compares byte for byte; only HOLDS/EQUALITY steps are accepted, and the
// conclusion must equal the final step's claim. Malformed text throws
// ParseError; a well-formed certificate that fails re-checking is reported
// with its first failing step.
VerifyReport verify_certificate(const std::string& text);

}  // namespace ineqcert
