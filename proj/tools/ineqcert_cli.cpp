// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: evaluate, check, reduce to certificates, print
// convergence tables, fuzz with a brute-force cross-check, and re-verify
// certificates. All commands are deterministic functions of their arguments
// and input bytes.
//
// Exit codes: 0 = HOLDS/EQUALITY/verified, 1 = FAILS or verification failure,
//             2 = UNDECIDED at the precision cap, 64 = usage or parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ineqcert/certificate.hpp"
#include "ineqcert/generator.hpp"
#include "ineqcert/instance.hpp"
#include "ineqcert/oracle.hpp"
#include "ineqcert/reductions.hpp"

namespace {

using namespace ineqcert;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitUsage = 64;

int exit_for(Verdict::Outcome o) {
    switch (o) {
        case Verdict::Outcome::Holds:
        case Verdict::Outcome::Equality: return kExitHolds;
        case Verdict::Outcome::Fails: return kExitFails;
        case Verdict::Outcome::Undecided: return kExitUndecided;
    }
    return kExitFails;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open output file '" + path + "'");
    out << text;
}

InstanceSpec load_instance(const std::string& path) { return parse_instance(read_input(path)); }

InstanceSpec require_kind(InstanceSpec inst, InstanceKind kind, const std::string& what) {
    if (inst.kind != kind)
        throw InputError(what + " requires a " + to_string(kind) + " instance, got " +
                         to_string(inst.kind));
    return inst;
}

// Exact rational when affordable, else an enclosure at `precision`.
std::string render_root_power(const RootPower& rp, unsigned precision) {
    if (auto q = rp.as_rational()) return q->to_string();
    return rp.enclosure(precision).to_string();
}

// --- eval --------------------------------------------------------------

int cmd_eval(const InstanceSpec& inst, unsigned precision) {
    switch (inst.kind) {
        case InstanceKind::Amgm: {
            WeightVector w = inst.weights();
            SampleVector c = inst.samples();
            std::cout << "arithmetic_mean=" << arithmetic_mean(w, c).to_string() << "\n";
            std::string gm;
            if (geometric_mean_clearing_bits(w, c) <= kExactBitBudget)
                gm = render_root_power(geometric_mean_repr(w, c), precision);
            else
                gm = geometric_mean_enclosure(w, c, precision).to_string();
            std::cout << "geometric_mean=" << gm << "\n";
            return 0;
        }
        case InstanceKind::Holder: {
            HolderInstance h = inst.holder();
            Rational lhs(0);
            for (size_t k = 0; k < h.size(); ++k) lhs += h.a()[k] * h.b()[k];
            std::cout << "lhs=" << lhs.to_string() << "\n";
            std::string rhs;
            try {
                HolderSides sides = holder_sides(h);
                rhs = render_root_power(root_power_product(sides.rhs_a, sides.rhs_b), precision);
            } catch (const Error&) {
                const Rational& p = h.exponents().p().value();
                const Rational& q = h.exponents().q().value();
                Enclosure sum_a = power_sum_enclosure(h.a(), p, precision);
                Enclosure sum_b = power_sum_enclosure(h.b(), q, precision);
                rhs = enc_mul(enc_pow_rational(sum_a, Rational(1) / p, precision),
                              enc_pow_rational(sum_b, Rational(1) / q, precision), precision)
                          .to_string();
            }
            std::cout << "rhs=" << rhs << "\n";
            return 0;
        }
        case InstanceKind::PowerMean: {
            WeightVector w = inst.weights();
            SampleVector c = inst.samples();
            ExponentPair ex = inst.exponents();
            auto mean_string = [&](const PosRational& e) {
                try {
                    return render_root_power(power_mean_repr(w, c, e), precision);
                } catch (const Error&) {
                    return power_mean_enclosure(w, c, e, precision).to_string();
                }
            };
            std::cout << "M_r=" << mean_string(ex.r()) << "\n";
            std::cout << "M_s=" << mean_string(ex.s()) << "\n";
            return 0;
        }
    }
    throw InternalError("eval: invalid instance kind");
}

// --- reduce ------------------------------------------------------------

TraceStep make_step(const std::string& rule_id, const std::string& instance) {
    Verdict v = step_verdict(rule_id, instance);
    if (v.outcome == Verdict::Outcome::Undecided)
        throw PrecisionCapError("step " + rule_id + " is undecidable at the precision cap [" +
                                instance + "]");
    return TraceStep{rule_id, instance, claim_of(rule_id, instance), std::move(v)};
}

std::string power_fields(const WeightVector& w, const SampleVector& c, const Rational& r,
                         const Rational& s) {
    return "w=" + to_csv(w.values()) + ";c=" + to_csv(c.values()) + ";r=" + r.to_string() +
           ";s=" + s.to_string();
}

int cmd_reduce(const InstanceSpec& inst, const std::string& rule, long p, unsigned depth,
               const std::string& out_path) {
    CertificateTrace trace;
    if (rule == "t1-converse") {
        trace = amgm_to_holder_trace(
            require_kind(inst, InstanceKind::Holder, "rule t1-converse").holder());
    } else if (rule == "t3-forward") {
        InstanceSpec pm = require_kind(inst, InstanceKind::PowerMean, "rule t3-forward");
        trace = amgm_to_power_mean_trace(pm.weights(), pm.samples(), pm.exponents());
    } else if (rule == "t1-forward") {
        InstanceSpec am = require_kind(inst, InstanceKind::Amgm, "rule t1-forward");
        WeightVector w = am.weights();
        SampleVector c = am.samples();
        HolderSubstitution sub = holder_to_amgm_substitution(w, c, p);
        // The substituted Hölder application is the power-mean comparison
        // M_{1/p} <= M_1; certify it as the one canonical step it is.
        trace.steps.push_back(make_step("power_conclude",
                                        power_fields(w, c, Rational(1, p), Rational(1))));
        trace.conclusion = trace.steps.back().claim;
        (void)sub;  // construction validates p and the substituted vectors
    } else if (rule == "t2-forward") {
        InstanceSpec pm = require_kind(inst, InstanceKind::PowerMean, "rule t2-forward");
        WeightVector w = pm.weights();
        SampleVector c = pm.samples();
        ExponentPair ex = pm.exponents();
        PowerMeanSubstitution sub = holder_to_power_mean_substitution(w, c, ex);
        trace.steps.push_back(make_step(
            "power_conclude", power_fields(w, c, ex.r().value(), ex.s().value())));
        trace.conclusion = trace.steps.back().claim;
        (void)sub;
    } else if (rule == "t2-converse") {
        InstanceSpec am = require_kind(inst, InstanceKind::Amgm, "rule t2-converse");
        WeightVector w = am.weights();
        SampleVector c = am.samples();
        // Chain M_{1/(n+1)} <= M_{1/n} for n = 1..depth-1, then collapse to
        // the composite claim M_{1/depth} <= M_1.
        for (unsigned n = 1; n + 1 <= depth; ++n)
            trace.steps.push_back(make_step(
                "power_conclude",
                power_fields(w, c, Rational(1, static_cast<long>(n) + 1),
                             Rational(1, static_cast<long>(n)))));
        trace.steps.push_back(make_step(
            "power_conclude",
            power_fields(w, c, Rational(1, static_cast<long>(depth)), Rational(1))));
        trace.conclusion = trace.steps.back().claim;
    } else {
        throw InputError("unknown reduce rule '" + rule + "'");
    }
    write_output(out_path, emit_certificate(trace));
    return 0;
}

// --- converge ----------------------------------------------------------

void print_aligned(const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    for (const auto& row : rows) {
        std::string line;
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) line += "  ";
            line += row[i];
            if (i + 1 < row.size()) line += std::string(width[i] - row[i].size(), ' ');
        }
        std::cout << line << "\n";
    }
}

int cmd_converge(const InstanceSpec& inst, long p, unsigned m_max, bool integers,
                 unsigned precision, unsigned limit_grid) {
    InstanceSpec am = require_kind(inst, InstanceKind::Amgm, "converge");
    WeightVector w = am.weights();
    SampleVector c = am.samples();

    SharpeningSequence seq = integers
                                 ? power_mean_to_amgm_sequence(w, c, m_max, precision)
                                 : sharpening_sequence(w, c, p, m_max, precision);

    std::vector<std::vector<std::string>> rows;
    rows.push_back({integers ? "n" : "m", "exponent", "term", "vs_next", "vs_gm"});
    for (size_t i = 0; i < seq.terms.size(); ++i) {
        const SequenceTerm& t = seq.terms[i];
        std::string value = t.exact ? t.exact->to_string() : t.value->to_string();
        std::string vs_next =
            i < seq.monotonic.size() ? to_string(seq.monotonic[i].outcome) : "-";
        rows.push_back({std::to_string(integers ? i + 1 : i), t.exponent.to_string(), value,
                        vs_next, to_string(seq.above_gm[i])});
    }
    print_aligned(rows);

    std::string limit_line = "limit=" + seq.limit.to_string();
    if (auto q = seq.limit.as_rational()) limit_line += " = " + q->to_string();
    std::cout << limit_line << "\n";

    if (limit_grid > 0) {
        LimitReport report = geometric_limit(w, c, precision, limit_grid);
        std::cout << "\ngeometric_mean=" << report.direct.to_string() << "\n";
        if (report.degenerate) {
            std::cout << "grid skipped: a support sample is zero, the limit is 0\n";
            return 0;
        }
        std::vector<std::vector<std::string>> grid_rows;
        grid_rows.push_back({"x", "M_x"});
        for (const auto& pt : report.grid)
            grid_rows.push_back({pt.x.to_string(), pt.value.to_string()});
        print_aligned(grid_rows);
    }
    return 0;
}

// --- fuzz --------------------------------------------------------------

// Per-seed instance size: drawn from a SplitMix64 stream seeded with the
// bitwise complement of the instance seed, so it is independent of the
// entry stream that gen_instance draws from the seed itself.
size_t fuzz_size(uint64_t seed, size_t n_max) {
    SplitMix64 g(~seed);
    return static_cast<size_t>(g.next_in(1, static_cast<uint64_t>(n_max)));
}

int cmd_fuzz(uint64_t seed0, uint64_t count, InstanceKind kind, const GeneratorMode& mode,
             unsigned long bound, size_t n_max, unsigned oracle_precision) {
    uint64_t holds = 0, equality = 0, fails = 0, undecided = 0, disagreements = 0;
    for (uint64_t i = 0; i < count; ++i) {
        uint64_t seed = seed0 + i;
        InstanceSpec inst = gen_instance(seed, kind, fuzz_size(seed, n_max), mode, bound);
        Verdict v = check_instance(inst);
        OracleReport oracle = brute_oracle(inst, oracle_precision);
        bool contra = oracle.contradicts(v);
        switch (v.outcome) {
            case Verdict::Outcome::Holds: ++holds; break;
            case Verdict::Outcome::Equality: ++equality; break;
            case Verdict::Outcome::Fails: ++fails; break;
            case Verdict::Outcome::Undecided: ++undecided; break;
        }
        if (contra) ++disagreements;
        std::cout << "seed=" << seed << " n=" << inst.size() << " verdict=" << v.to_line()
                  << " oracle=" << oracle.to_string() << " agree=" << (contra ? "no" : "yes")
                  << "\n";
    }
    std::cout << "instances=" << count << " holds=" << holds << " equality=" << equality
              << " fails=" << fails << " undecided=" << undecided
              << " oracle_disagreements=" << disagreements << "\n";
    if (fails > 0 || disagreements > 0) return kExitFails;
    if (undecided > 0) return kExitUndecided;
    return kExitHolds;
}

// --- main --------------------------------------------------------------

int run(int argc, char** argv) {
    CLI::App app{"Certified checks for weighted AM-GM, Hölder, and power-mean inequalities"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string output = "-";
    unsigned precision = kPrecisionStart;

    auto* eval = app.add_subcommand("eval", "Evaluate both sides of an instance");
    eval->add_option("input", input, "Instance file, '-' for stdin");
    eval->add_option("--precision", precision, "Enclosure precision in bits")
        ->check(CLI::Range(8u, kPrecisionCap));

    auto* check = app.add_subcommand("check", "Print the certified verdict line");
    check->add_option("input", input, "Instance file, '-' for stdin");

    auto* reduce = app.add_subcommand("reduce", "Emit a certificate for a reduction rule");
    std::string rule;
    long sub_p = 2;
    unsigned depth = 4;
    reduce->add_option("input", input, "Instance file, '-' for stdin");
    reduce
        ->add_option("--rule", rule,
                     "t1-forward | t1-converse | t2-forward | t2-converse | t3-forward")
        ->required()
        ->check(CLI::IsMember(
            {"t1-forward", "t1-converse", "t2-forward", "t2-converse", "t3-forward"}));
    reduce->add_option("--p", sub_p, "Integer exponent for t1-forward (>= 2)")
        ->check(CLI::Range(2L, 64L));
    reduce->add_option("--depth", depth, "Chain length for t2-converse (>= 2)")
        ->check(CLI::Range(2u, 64u));
    reduce->add_option("-o,--output", output, "Certificate file, '-' for stdout");

    auto* converge = app.add_subcommand("converge", "Print a sharpening-chain table");
    long conv_p = 2;
    unsigned m_max = 8;
    bool integers = false;
    unsigned limit_grid = 0;
    converge->add_option("input", input, "Instance file, '-' for stdin");
    converge->add_option("--p", conv_p, "Chain exponent base (>= 2)")->check(CLI::Range(2L, 64L));
    converge->add_option("--m-max", m_max, "Last chain index");
    converge->add_flag("--integers", integers,
                       "Use the integer-exponent chain (Σ λ c^{1/n})^n instead of p^m");
    converge->add_option("--precision", precision, "Enclosure precision in bits")
        ->check(CLI::Range(8u, kPrecisionCap));
    converge->add_option("--limit-grid", limit_grid,
                         "Also tabulate M_x at x = 2^-1..2^-J against the geometric mean");

    auto* fuzz = app.add_subcommand("fuzz", "Check seeded random instances against the oracle");
    uint64_t seed = 0, count = 100;
    std::string kind_name = "amgm";
    std::string mode_name = "general";
    unsigned long bound = 1UL << 16;
    size_t n_max = 8;
    unsigned oracle_precision = 128;
    fuzz->add_option("--seed", seed, "First seed");
    fuzz->add_option("--count", count, "Number of instances")->check(CLI::Range(1ULL, 1000000ULL));
    fuzz->add_option("--kind", kind_name, "amgm | holder | powermean")
        ->check(CLI::IsMember({"amgm", "holder", "powermean"}));
    fuzz->add_option("--mode", mode_name, "general | power_closed(L)");
    fuzz->add_option("--bound", bound, "Magnitude bound for entries")->check(CLI::Range(1UL, 1UL << 30));
    fuzz->add_option("--n-max", n_max, "Largest instance size")->check(CLI::Range(size_t{1}, size_t{64}));
    fuzz->add_option("--oracle-precision", oracle_precision, "Oracle working precision in bits")
        ->check(CLI::Range(8u, 4096u));

    auto* verify = app.add_subcommand("verify-cert", "Re-check every step of a certificate");
    verify->add_option("input", input, "Certificate file, '-' for stdin");

    auto* gen = app.add_subcommand("gen", "Emit a seeded random instance");
    size_t gen_n = 2;
    gen->add_option("--seed", seed, "Generator seed");
    gen->add_option("--kind", kind_name, "amgm | holder | powermean")
        ->check(CLI::IsMember({"amgm", "holder", "powermean"}));
    gen->add_option("--n", gen_n, "Instance size")->check(CLI::Range(size_t{1}, size_t{64}));
    gen->add_option("--mode", mode_name, "general | power_closed(L)");
    gen->add_option("--bound", bound, "Magnitude bound for entries")->check(CLI::Range(1UL, 1UL << 30));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (eval->parsed()) return cmd_eval(load_instance(input), precision);
    if (check->parsed()) {
        Verdict v = check_instance(load_instance(input));
        std::cout << v.to_line() << "\n";
        return exit_for(v.outcome);
    }
    if (reduce->parsed()) return cmd_reduce(load_instance(input), rule, sub_p, depth, output);
    if (converge->parsed())
        return cmd_converge(load_instance(input), conv_p, m_max, integers, precision, limit_grid);
    if (fuzz->parsed())
        return cmd_fuzz(seed, count, instance_kind_of(kind_name), GeneratorMode::parse(mode_name),
                        bound, n_max, oracle_precision);
    if (verify->parsed()) {
        VerifyReport report = verify_certificate(read_input(input));
        std::cout << report.to_string();
        return report.ok ? kExitHolds : kExitFails;
    }
    if (gen->parsed()) {
        std::cout << emit_instance(gen_instance(seed, instance_kind_of(kind_name), gen_n,
                                                GeneratorMode::parse(mode_name), bound));
        return 0;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ineqcert::PrecisionCapError& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return kExitUndecided;
    } catch (const ineqcert::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ineqcert::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ineqcert::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ineqcert::DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ineqcert::RepresentabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ineqcert::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFails;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFails;
    }
}
