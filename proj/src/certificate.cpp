// SPDX-License-Identifier: Apache-2.0
#include "ineqcert/certificate.hpp"

#include <string_view>
#include <vector>

namespace ineqcert {
namespace {

// --- emission ---------------------------------------------------------------

std::string step_line(const TraceStep& step) {
    return step.rule_id + "\t" + step.instance + "\t" + step.claim + "\t" +
           step.evidence.to_line();
}

// --- low-level parsing ------------------------------------------------------

struct Cursor {
    size_t line;  // 1-based, for error positions
    std::string_view text;
};

std::vector<Cursor> split_lines(const std::string& text) {
    std::vector<Cursor> lines;
    size_t line_no = 1;
    size_t start = 0;
    std::string_view sv(text);
    while (start <= sv.size()) {
        size_t nl = sv.find('\n', start);
        size_t end = (nl == std::string_view::npos) ? sv.size() : nl;
        std::string_view body = sv.substr(start, end - start);
        if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
        if (!body.empty()) lines.push_back({line_no, body});
        if (nl == std::string_view::npos) break;
        start = nl + 1;
        ++line_no;
    }
    return lines;
}

std::vector<std::string_view> split_tabs(std::string_view body) {
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
        size_t tab = body.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(body.substr(start));
            return fields;
        }
        fields.push_back(body.substr(start, tab - start));
        start = tab + 1;
    }
}

[[noreturn]] void fail_at(size_t line, size_t col, const std::string& what) {
    throw ParseError(line, col, what);
}

unsigned parse_unsigned(size_t line, std::string_view text, const std::string& what) {
    if (text.empty()) fail_at(line, 1, what + ": empty number");
    unsigned long value = 0;
    for (char ch : text) {
        if (ch < '0' || ch > '9') fail_at(line, 1, what + ": expected digits, got '" + std::string(text) + "'");
        value = value * 10 + static_cast<unsigned long>(ch - '0');
        if (value > 0xFFFFFFFFUL) fail_at(line, 1, what + ": value out of range");
    }
    return static_cast<unsigned>(value);
}

long parse_long(size_t line, std::string_view text, const std::string& what) {
    bool negative = false;
    std::string_view digits = text;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        negative = digits.front() == '-';
        digits.remove_prefix(1);
    }
    if (digits.empty()) fail_at(line, 1, what + ": empty number");
    long value = 0;
    for (char ch : digits) {
        if (ch < '0' || ch > '9') fail_at(line, 1, what + ": expected digits, got '" + std::string(text) + "'");
        if (value > (0x7FFFFFFFFFFFFFFFL - 9) / 10) fail_at(line, 1, what + ": value out of range");
        value = value * 10 + (ch - '0');
    }
    return negative ? -value : value;
}

Integer parse_integer(size_t line, std::string_view text, const std::string& what) {
    std::string_view digits = text;
    if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
    if (digits.empty()) fail_at(line, 1, what + ": empty integer");
    for (char ch : digits)
        if (ch < '0' || ch > '9')
            fail_at(line, 1, what + ": expected an integer, got '" + std::string(text) + "'");
    return Integer(std::string(text), 10);
}

// "mant*2^exp", the form Dyadic::to_string emits.
Dyadic parse_dyadic(size_t line, std::string_view text, const std::string& what) {
    size_t sep = text.find("*2^");
    if (sep == std::string_view::npos)
        fail_at(line, 1, what + ": expected 'mant*2^exp', got '" + std::string(text) + "'");
    Integer mant = parse_integer(line, text.substr(0, sep), what + " mantissa");
    long exp2 = parse_long(line, text.substr(sep + 3), what + " exponent");
    return Dyadic(std::move(mant), exp2);
}

// "[lo, hi]@prec", the form Enclosure::to_string emits.
Enclosure parse_enclosure(size_t line, std::string_view text) {
    if (text.empty() || text.front() != '[')
        fail_at(line, 1, "margin enclosure: expected '[', got '" + std::string(text) + "'");
    size_t close = text.find(']');
    if (close == std::string_view::npos) fail_at(line, 1, "margin enclosure: missing ']'");
    std::string_view inner = text.substr(1, close - 1);
    std::string_view tail = text.substr(close + 1);
    if (tail.empty() || tail.front() != '@')
        fail_at(line, 1, "margin enclosure: expected '@precision' after ']'");
    size_t comma = inner.find(", ");
    if (comma == std::string_view::npos)
        fail_at(line, 1, "margin enclosure: expected ', ' between endpoints");
    Dyadic lo = parse_dyadic(line, inner.substr(0, comma), "margin lower endpoint");
    Dyadic hi = parse_dyadic(line, inner.substr(comma + 2), "margin upper endpoint");
    unsigned prec = parse_unsigned(line, tail.substr(1), "margin enclosure precision");
    if (lo.to_rational() > hi.to_rational())
        fail_at(line, 1, "margin enclosure: endpoints out of order");
    return Enclosure(lo, hi, prec);
}

Verdict::Outcome parse_outcome(size_t line, std::string_view text) {
    if (text == "HOLDS") return Verdict::Outcome::Holds;
    if (text == "EQUALITY") return Verdict::Outcome::Equality;
    if (text == "FAILS") return Verdict::Outcome::Fails;
    if (text == "UNDECIDED") return Verdict::Outcome::Undecided;
    fail_at(line, 1, "unknown verdict outcome '" + std::string(text) + "'");
}

// "OUTCOME;margin=<rational|enclosure|none>;precision=<n>", as Verdict::to_line
// emits. The witness field is intentionally not part of the wire format:
// certificates only carry steps that held, so there is nothing to witness.
Verdict parse_verdict_line(size_t line, std::string_view text) {
    size_t first = text.find(';');
    if (first == std::string_view::npos)
        fail_at(line, 1, "verdict: expected 'OUTCOME;margin=...;precision=...'");
    size_t second = text.find(';', first + 1);
    if (second == std::string_view::npos || text.find(';', second + 1) != std::string_view::npos)
        fail_at(line, 1, "verdict: expected exactly three ';'-separated fields");

    Verdict v;
    v.outcome = parse_outcome(line, text.substr(0, first));

    std::string_view margin = text.substr(first + 1, second - first - 1);
    if (!margin.starts_with("margin="))
        fail_at(line, 1, "verdict: second field must start with 'margin='");
    margin.remove_prefix(7);
    if (margin == "none") {
        // no margin recorded
    } else if (!margin.empty() && margin.front() == '[') {
        v.margin_enclosure = parse_enclosure(line, margin);
    } else {
        try {
            v.margin_exact = Rational::parse(margin);
        } catch (const Error& e) {
            fail_at(line, 1, std::string("verdict margin: ") + e.what());
        }
    }

    std::string_view precision = text.substr(second + 1);
    if (!precision.starts_with("precision="))
        fail_at(line, 1, "verdict: third field must start with 'precision='");
    v.precision_used = parse_unsigned(line, precision.substr(10), "verdict precision");
    return v;
}

bool known_rule(const std::string& rule_id) {
    static const char* kRules[] = {"two_term_amgm", "holder_term",    "holder_sum",
                                   "holder_conclude", "power_term",   "power_sum",
                                   "power_conclude"};
    for (const char* r : kRules)
        if (rule_id == r) return true;
    return false;
}

}  // namespace

std::string emit_certificate(const CertificateTrace& trace) {
    std::string out = std::string(kTraceFormatVersion) + "\tconclusion=" + trace.conclusion + "\n";
    for (const TraceStep& step : trace.steps) out += step_line(step) + "\n";
    return out;
}

CertificateTrace parse_certificate(const std::string& text) {
    std::vector<Cursor> lines = split_lines(text);
    if (lines.empty()) fail_at(1, 1, "empty certificate");

    std::vector<std::string_view> header = split_tabs(lines[0].text);
    if (header[0] != kTraceFormatVersion)
        fail_at(lines[0].line, 1,
                "unsupported certificate format '" + std::string(header[0]) + "', expected '" +
                    std::string(kTraceFormatVersion) + "'");
    if (header.size() != 2 || !header[1].starts_with("conclusion="))
        fail_at(lines[0].line, 1, "header must be '<format>\\tconclusion=<claim>'");

    CertificateTrace trace;
    trace.conclusion = std::string(header[1].substr(11));
    if (trace.conclusion.empty()) fail_at(lines[0].line, 1, "header conclusion is empty");

    for (size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string_view> fields = split_tabs(lines[i].text);
        if (fields.size() != 4)
            fail_at(lines[i].line, 1,
                    "step: expected 4 tab-separated fields, got " + std::to_string(fields.size()));
        TraceStep step;
        step.rule_id = std::string(fields[0]);
        if (!known_rule(step.rule_id))
            fail_at(lines[i].line, 1, "unknown rule id '" + step.rule_id + "'");
        step.instance = std::string(fields[1]);
        step.claim = std::string(fields[2]);
        if (step.instance.empty() || step.claim.empty())
            fail_at(lines[i].line, 1, "step: empty instance or claim field");
        step.evidence = parse_verdict_line(lines[i].line, fields[3]);
        trace.steps.push_back(std::move(step));
    }
    if (trace.steps.empty()) fail_at(lines[0].line, 1, "certificate has no steps");
    return trace;
}

std::string VerifyReport::to_string() const {
    std::string out;
    for (const StepReport& s : steps) {
        out += "step " + std::to_string(s.index) + " " + s.rule_id + ": ";
        out += s.ok ? "ok" : ("FAIL " + s.detail);
        out += "\n";
    }
    if (!trace_error.empty()) out += "trace: FAIL " + trace_error + "\n";
    out += ok ? "certificate: ok\n" : "certificate: FAIL\n";
    return out;
}

VerifyReport verify_certificate(const std::string& text) {
    CertificateTrace trace = parse_certificate(text);

    VerifyReport report;
    report.ok = true;
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const TraceStep& step = trace.steps[i];
        StepReport sr{i + 1, step.rule_id, true, ""};
        auto fail = [&](std::string detail) {
            sr.ok = false;
            sr.detail = std::move(detail);
            report.ok = false;
        };

        try {
            std::string expected_claim = claim_of(step.rule_id, step.instance);
            if (step.claim != expected_claim) {
                fail("claim mismatch: instance derives '" + expected_claim + "'");
            } else {
                Verdict rerun = step_verdict(step.rule_id, step.instance);
                if (rerun.to_line() != step.evidence.to_line()) {
                    fail("evidence mismatch: re-derivation gives '" + rerun.to_line() + "'");
                } else if (rerun.outcome != Verdict::Outcome::Holds &&
                           rerun.outcome != Verdict::Outcome::Equality) {
                    fail("step outcome is " + ineqcert::to_string(rerun.outcome) +
                         "; only HOLDS/EQUALITY steps certify");
                }
            }
        } catch (const Error& e) {
            fail(std::string("re-derivation error: ") + e.what());
        }

        report.steps.push_back(std::move(sr));
        if (!report.ok) return report;
    }

    if (trace.conclusion != trace.steps.back().claim) {
        report.ok = false;
        report.trace_error = "conclusion '" + trace.conclusion + "' does not match final step claim '" +
                             trace.steps.back().claim + "'";
    }
    return report;
}

}  // namespace ineqcert
