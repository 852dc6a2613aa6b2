// SPDX-License-Identifier: Apache-2.0
#include "ineqcert/instance.hpp"

#include <algorithm>
#include <map>

#include "ineqcert/errors.hpp"

namespace ineqcert {

std::string to_string(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::Amgm: return "amgm";
        case InstanceKind::Holder: return "holder";
        case InstanceKind::PowerMean: return "powermean";
    }
    throw InternalError("to_string(InstanceKind): invalid enum value");
}

InstanceKind instance_kind_of(const std::string& name) {
    if (name == "amgm") return InstanceKind::Amgm;
    if (name == "holder") return InstanceKind::Holder;
    if (name == "powermean") return InstanceKind::PowerMean;
    throw InputError("unknown kind '" + name + "' (expected amgm, holder, or powermean)");
}

size_t InstanceSpec::size() const {
    return kind == InstanceKind::Holder ? a.size() : w.size();
}

WeightVector InstanceSpec::weights() const {
    if (kind == InstanceKind::Holder)
        throw InputError("holder instances carry no weight vector");
    return WeightVector(w);
}

SampleVector InstanceSpec::samples() const {
    if (kind == InstanceKind::Holder)
        throw InputError("holder instances carry no sample vector");
    return SampleVector(c);
}

HolderInstance InstanceSpec::holder() const {
    if (kind != InstanceKind::Holder)
        throw InputError(to_string(kind) + " instances are not holder instances");
    return HolderInstance(SampleVector(a), SampleVector(b), ConjugatePair(PosRational(*p)));
}

ExponentPair InstanceSpec::exponents() const {
    if (kind != InstanceKind::PowerMean)
        throw InputError(to_string(kind) + " instances carry no exponent pair");
    return ExponentPair(PosRational(*r), PosRational(*s));
}

void validate_instance(const InstanceSpec& inst) {
    switch (inst.kind) {
        case InstanceKind::Amgm: {
            if (inst.w.size() != inst.c.size())
                throw DimensionError("expected " + std::to_string(inst.w.size()) +
                                     " samples to match w, got " + std::to_string(inst.c.size()));
            WeightVector wv(inst.w);
            SampleVector cv(inst.c);
            return;
        }
        case InstanceKind::Holder: {
            if (inst.a.size() != inst.b.size())
                throw DimensionError("expected " + std::to_string(inst.a.size()) +
                                     " entries to match a, got " + std::to_string(inst.b.size()));
            if (!inst.p) throw InputError("missing field 'p' for kind holder");
            HolderInstance hi(SampleVector(inst.a), SampleVector(inst.b),
                              ConjugatePair(PosRational(*inst.p)));
            return;
        }
        case InstanceKind::PowerMean: {
            if (inst.w.size() != inst.c.size())
                throw DimensionError("expected " + std::to_string(inst.w.size()) +
                                     " samples to match w, got " + std::to_string(inst.c.size()));
            if (!inst.r || !inst.s) throw InputError("missing exponent field for kind powermean");
            WeightVector wv(inst.w);
            SampleVector cv(inst.c);
            ExponentPair ex(PosRational(*inst.r), PosRational(*inst.s));
            return;
        }
    }
    throw InternalError("validate_instance: invalid kind enum value");
}

Verdict check_instance(const InstanceSpec& inst) {
    validate_instance(inst);
    switch (inst.kind) {
        case InstanceKind::Amgm: return check_amgm(inst.weights(), inst.samples());
        case InstanceKind::Holder: return check_holder(inst.holder());
        case InstanceKind::PowerMean:
            return check_power_mean(inst.weights(), inst.samples(), inst.exponents());
    }
    throw InternalError("check_instance: invalid kind enum value");
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

struct Statement {
    int line;
    int col;        // of the key, 1-based
    int value_col;  // of the value, 1-based
    std::string key;
    std::string value;
};

bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

struct Tokenized {
    std::vector<Statement> statements;
    std::optional<std::string> provenance;
    int provenance_line = 0;
};

Tokenized tokenize(const std::string& text) {
    Tokenized out;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line(text.data() + pos,
                              (nl == std::string::npos ? text.size() : nl) - pos);
        ++line_no;

        std::string_view body = trim(line);
        if (!body.empty() && body.front() == '#') {
            std::string_view rest = trim(body.substr(1));
            constexpr std::string_view kProvenance = "provenance:";
            if (rest.substr(0, kProvenance.size()) == kProvenance) {
                if (out.provenance)
                    throw ParseError(line_no, 1, "duplicate provenance comment (first at line " +
                                                     std::to_string(out.provenance_line) + ")");
                out.provenance = std::string(trim(rest.substr(kProvenance.size())));
                out.provenance_line = line_no;
            }
        } else if (!body.empty()) {
            size_t stmt_start = 0;
            while (stmt_start <= line.size()) {
                size_t semi = line.find(';', stmt_start);
                size_t stmt_end = semi == std::string_view::npos ? line.size() : semi;
                std::string_view raw = line.substr(stmt_start, stmt_end - stmt_start);
                std::string_view stmt = trim(raw);
                if (!stmt.empty()) {
                    size_t lead = 0;
                    while (lead < raw.size() && is_space(raw[lead])) ++lead;
                    int col = static_cast<int>(stmt_start + lead) + 1;
                    size_t eq = stmt.find('=');
                    if (eq == std::string_view::npos || eq == 0)
                        throw ParseError(line_no, col,
                                         "expected key=value, got '" + std::string(stmt) + "'");
                    std::string_view key = trim(stmt.substr(0, eq));
                    std::string_view value = trim(stmt.substr(eq + 1));
                    size_t value_off = stmt.find_first_not_of(" \t", eq + 1);
                    int value_col = value_off == std::string_view::npos
                                        ? col + static_cast<int>(eq) + 1
                                        : col + static_cast<int>(value_off);
                    out.statements.push_back(Statement{line_no, col, value_col, std::string(key),
                                                       std::string(value)});
                }
                if (semi == std::string_view::npos) break;
                stmt_start = semi + 1;
            }
        }
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    return out;
}

Rational parse_rational_at(const std::string& token, int line, int col) {
    try {
        return Rational::parse(token);
    } catch (const Error& e) {
        throw ParseError(line, col, e.what());
    }
}

std::vector<Rational> parse_vector_at(const Statement& st) {
    std::vector<Rational> out;
    const std::string& v = st.value;
    if (trim(v).empty()) throw ParseError(st.line, st.value_col, "empty value list");
    size_t pos = 0;
    for (;;) {
        size_t comma = v.find(',', pos);
        std::string_view raw(v.data() + pos, (comma == std::string::npos ? v.size() : comma) - pos);
        std::string_view token = trim(raw);
        size_t lead = 0;
        while (lead < raw.size() && is_space(raw[lead])) ++lead;
        int col = st.value_col + static_cast<int>(pos + lead);
        if (token.empty()) throw ParseError(st.line, col, "empty entry in value list");
        out.push_back(parse_rational_at(std::string(token), st.line, col));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

InstanceSpec parse_instance(const std::string& text) {
    Tokenized tok = tokenize(text);
    if (tok.statements.empty()) throw ParseError(1, 1, "empty instance: missing 'kind' field");
    const Statement& kind_stmt = tok.statements.front();
    if (kind_stmt.key != "kind")
        throw ParseError(kind_stmt.line, kind_stmt.col,
                         "first field must be 'kind', got '" + kind_stmt.key + "'");

    InstanceSpec inst;
    try {
        inst.kind = instance_kind_of(kind_stmt.value);
    } catch (const Error& e) {
        throw ParseError(kind_stmt.line, kind_stmt.value_col, e.what());
    }
    inst.provenance = tok.provenance;

    std::vector<std::string> allowed;
    switch (inst.kind) {
        case InstanceKind::Amgm: allowed = {"w", "c"}; break;
        case InstanceKind::Holder: allowed = {"a", "b", "p"}; break;
        case InstanceKind::PowerMean: allowed = {"w", "c", "r", "s"}; break;
    }

    std::map<std::string, const Statement*> seen;
    for (size_t i = 1; i < tok.statements.size(); ++i) {
        const Statement& st = tok.statements[i];
        if (st.key == "kind")
            throw ParseError(st.line, st.col, "duplicate field 'kind'");
        if (std::find(allowed.begin(), allowed.end(), st.key) == allowed.end())
            throw ParseError(st.line, st.col,
                             "unexpected field '" + st.key + "' for kind " + to_string(inst.kind));
        if (seen.count(st.key))
            throw ParseError(st.line, st.col, "duplicate field '" + st.key + "'");
        seen[st.key] = &st;

        if (st.key == "w") inst.w = parse_vector_at(st);
        else if (st.key == "c") inst.c = parse_vector_at(st);
        else if (st.key == "a") inst.a = parse_vector_at(st);
        else if (st.key == "b") inst.b = parse_vector_at(st);
        else if (st.key == "p") inst.p = parse_rational_at(st.value, st.line, st.value_col);
        else if (st.key == "r") inst.r = parse_rational_at(st.value, st.line, st.value_col);
        else if (st.key == "s") inst.s = parse_rational_at(st.value, st.line, st.value_col);
    }

    for (const std::string& key : allowed)
        if (!seen.count(key))
            throw ParseError(kind_stmt.line, kind_stmt.col,
                             "missing field '" + key + "' for kind " + to_string(inst.kind));

    // Report invariant violations at the position of the offending field.
    auto checked = [&](const char* key, auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            const Statement& st = *seen.at(key);
            throw ParseError(st.line, st.value_col, e.what());
        }
    };
    auto matched_lengths = [&](const char* key, size_t want, size_t got) {
        if (want != got) {
            const Statement& st = *seen.at(key);
            throw ParseError(st.line, st.value_col,
                             "expected " + std::to_string(want) + " entries, got " +
                                 std::to_string(got));
        }
    };
    switch (inst.kind) {
        case InstanceKind::Amgm:
            checked("w", [&] { WeightVector wv(inst.w); });
            checked("c", [&] { SampleVector cv(inst.c); });
            matched_lengths("c", inst.w.size(), inst.c.size());
            break;
        case InstanceKind::Holder:
            checked("a", [&] { SampleVector av(inst.a); });
            checked("b", [&] { SampleVector bv(inst.b); });
            matched_lengths("b", inst.a.size(), inst.b.size());
            checked("p", [&] { ConjugatePair pq{PosRational(*inst.p)}; });
            break;
        case InstanceKind::PowerMean:
            checked("w", [&] { WeightVector wv(inst.w); });
            checked("c", [&] { SampleVector cv(inst.c); });
            matched_lengths("c", inst.w.size(), inst.c.size());
            checked("r", [&] { PosRational rr(*inst.r); });
            checked("s", [&] { ExponentPair ex{PosRational(*inst.r), PosRational(*inst.s)}; });
            break;
    }
    return inst;
}

std::string emit_instance(const InstanceSpec& inst) {
    validate_instance(inst);
    std::string out;
    if (inst.provenance) out += "# provenance: " + *inst.provenance + "\n";
    out += "kind=" + to_string(inst.kind) + "\n";
    switch (inst.kind) {
        case InstanceKind::Amgm:
            out += "w=" + to_csv(inst.w) + "\n";
            out += "c=" + to_csv(inst.c) + "\n";
            break;
        case InstanceKind::Holder:
            out += "a=" + to_csv(inst.a) + "\n";
            out += "b=" + to_csv(inst.b) + "\n";
            out += "p=" + inst.p->to_string() + "\n";
            break;
        case InstanceKind::PowerMean:
            out += "w=" + to_csv(inst.w) + "\n";
            out += "c=" + to_csv(inst.c) + "\n";
            out += "r=" + inst.r->to_string() + "\n";
            out += "s=" + inst.s->to_string() + "\n";
            break;
    }
    return out;
}

}  // namespace ineqcert
