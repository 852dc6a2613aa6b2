// SPDX-License-Identifier: Apache-2.0
#include "ineqcert/reductions.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <utility>

#include "ineqcert/errors.hpp"

namespace ineqcert {

namespace {

// ---------------------------------------------------------------------------
// Verdict factories (same shapes the top-level checkers produce)
// ---------------------------------------------------------------------------

Verdict equality_verdict() {
    Verdict v;
    v.outcome = Verdict::Outcome::Equality;
    v.margin_exact = Rational(0);
    return v;
}

Verdict holds_exact(Rational margin) {
    Verdict v;
    v.outcome = Verdict::Outcome::Holds;
    v.margin_exact = std::move(margin);
    return v;
}

// Decide the sign of a quantity known only through enclosures. `diff_at`
// returns an enclosure of (arithmetic side - geometric side) at the given
// working precision, or nullopt when a prerequisite (for example strict
// positivity of a normalizer) is not yet visible at that precision.
Verdict decide_diff(const std::function<std::optional<Enclosure>(unsigned)>& diff_at,
                    const std::function<std::string()>& witness) {
    for (unsigned p = kPrecisionStart;;) {
        std::optional<Enclosure> d = diff_at(p);
        if (d) {
            if (d->strictly_positive()) {
                Verdict v;
                v.outcome = Verdict::Outcome::Holds;
                v.margin_enclosure = *d;
                v.precision_used = p;
                return v;
            }
            if (d->strictly_negative()) {
                Verdict v;
                v.outcome = Verdict::Outcome::Fails;
                v.margin_enclosure = *d;
                v.witness = witness();
                v.precision_used = p;
                return v;
            }
        }
        if (p >= kPrecisionCap) {
            Verdict v;
            v.outcome = Verdict::Outcome::Undecided;
            if (d) v.margin_enclosure = *d;
            v.precision_used = p;
            return v;
        }
        p = (p > kPrecisionCap / 2) ? kPrecisionCap : p * 2;
    }
}

// Positive margin of an exactly-positive quantity, as an enclosure.
std::optional<Enclosure> positive_enclosure(
    const std::function<Enclosure(unsigned)>& value_at) {
    for (unsigned p = kPrecisionStart;;) {
        Enclosure e = value_at(p);
        if (e.strictly_positive()) return e;
        if (p >= kPrecisionCap) return std::nullopt;
        p = (p > kPrecisionCap / 2) ? kPrecisionCap : p * 2;
    }
}

// ---------------------------------------------------------------------------
// Step instance parsing: canonical "key=value;key=value" fields
// ---------------------------------------------------------------------------

struct Field {
    std::string key;
    std::string value;
};

std::vector<Field> split_fields(const std::string& instance) {
    std::vector<Field> out;
    size_t pos = 0;
    for (;;) {
        size_t semi = instance.find(';', pos);
        std::string item = semi == std::string::npos ? instance.substr(pos)
                                                     : instance.substr(pos, semi - pos);
        size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw InputError("step instance: expected key=value, got '" + item + "'");
        out.push_back({item.substr(0, eq), item.substr(eq + 1)});
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    return out;
}

// Canonical field order is part of the format: a reordered instance is
// rejected rather than silently re-serialized differently.
void expect_keys(const std::vector<Field>& fields, std::initializer_list<const char*> keys,
                 const std::string& rule) {
    if (fields.size() != keys.size())
        throw InputError("step " + rule + ": expected " + std::to_string(keys.size()) +
                         " fields, got " + std::to_string(fields.size()));
    size_t i = 0;
    for (const char* key : keys) {
        if (fields[i].key != key)
            throw InputError("step " + rule + ": expected field '" + key + "' in position " +
                             std::to_string(i + 1) + ", got '" + fields[i].key + "'");
        ++i;
    }
}

Rational parse_rational_field(const std::string& value, const std::string& rule,
                              const char* key) {
    try {
        return Rational::parse(value);
    } catch (const Error& e) {
        throw InputError("step " + rule + ", field '" + std::string(key) + "': " + e.what());
    }
}

std::vector<Rational> parse_csv_field(const std::string& value, const std::string& rule,
                                      const char* key) {
    try {
        return parse_csv(value);
    } catch (const Error& e) {
        throw InputError("step " + rule + ", field '" + std::string(key) + "': " + e.what());
    }
}

size_t parse_index_field(const std::string& value, const std::string& rule, size_t n) {
    if (value.empty() || value.size() > 9 ||
        !std::all_of(value.begin(), value.end(), [](unsigned char ch) { return std::isdigit(ch); }))
        throw InputError("step " + rule + ": index k must be a decimal integer, got '" + value +
                         "'");
    size_t k = 0;
    for (char ch : value) k = k * 10 + static_cast<size_t>(ch - '0');
    if (k < 1 || k > n)
        throw InputError("step " + rule + ": index k=" + value + " out of range 1.." +
                         std::to_string(n));
    return k;
}

// ---------------------------------------------------------------------------
// Hölder step inputs and the exact (power-closed) route
// ---------------------------------------------------------------------------

struct HolderStep {
    HolderInstance inst;
    std::optional<size_t> k;  // 1-based, present for holder_term
};

HolderStep parse_holder_step(const std::string& rule, const std::string& instance,
                             bool with_index) {
    std::vector<Field> fields = split_fields(instance);
    std::optional<size_t> k;
    size_t base = 0;
    if (with_index) {
        expect_keys(fields, {"k", "a", "b", "p"}, rule);
        base = 1;
    } else {
        expect_keys(fields, {"a", "b", "p"}, rule);
    }
    std::vector<Rational> av = parse_csv_field(fields[base].value, rule, "a");
    std::vector<Rational> bv = parse_csv_field(fields[base + 1].value, rule, "b");
    Rational p = parse_rational_field(fields[base + 2].value, rule, "p");
    try {
        HolderInstance inst(SampleVector(std::move(av)), SampleVector(std::move(bv)),
                            ConjugatePair(PosRational(p)));
        if (with_index) k = parse_index_field(fields[0].value, rule, inst.size());
        return HolderStep{std::move(inst), k};
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InputError("step " + rule + ": " + e.what());
    }
}

// Exact per-term powers a_k^p and b_k^q when every sample is power-closed for
// its exponent and the cleared sizes fit the exact budget.
struct HolderExact {
    bool closed = false;
    std::vector<Rational> ap, bq;
    Rational sum_a, sum_b;
};

HolderExact holder_exact_powers(const HolderInstance& inst) {
    HolderExact ex;
    const Rational& p = inst.exponents().p().value();
    const Rational& q = inst.exponents().q().value();
    size_t max_bits = 1;
    for (size_t k = 0; k < inst.size(); ++k)
        max_bits = std::max({max_bits, bit_size(inst.a()[k]), bit_size(inst.b()[k])});
    if (Integer(max_bits) * p.num() > kExactBitBudget ||
        Integer(max_bits) * q.num() > kExactBitBudget)
        return ex;
    for (size_t k = 0; k < inst.size(); ++k) {
        std::optional<Rational> pa = pow_exact(inst.a()[k], p);
        std::optional<Rational> pb = pow_exact(inst.b()[k], q);
        if (!pa || !pb) return ex;
        ex.ap.push_back(std::move(*pa));
        ex.bq.push_back(std::move(*pb));
    }
    for (size_t k = 0; k < inst.size(); ++k) {
        ex.sum_a += ex.ap[k];
        ex.sum_b += ex.bq[k];
    }
    ex.closed = true;
    return ex;
}

std::string holder_witness(const HolderInstance& inst) {
    return "a=" + to_csv(inst.a().values()) + ";b=" + to_csv(inst.b().values()) +
           ";p=" + inst.exponents().p().value().to_string();
}

// Per-index step: (1/p) a_k^p S_b + (1/q) b_k^q S_a >= a_k b_k S_b^{1/p} S_a^{1/q},
// the two-term AM-GM on samples (a_k^p S_b, b_k^q S_a) with weights (1/p, 1/q).
Verdict holder_term_verdict(const HolderInstance& inst, size_t k) {
    const Rational& ak = inst.a()[k - 1];
    const Rational& bk = inst.b()[k - 1];
    const Rational& p = inst.exponents().p().value();
    const Rational& q = inst.exponents().q().value();
    Rational wp = Rational(1) / p;
    Rational wq = Rational(1) / q;

    HolderExact ex = holder_exact_powers(inst);
    if (ex.closed)
        return check_amgm(WeightVector({wp, wq}),
                          SampleVector({ex.ap[k - 1] * ex.sum_b, ex.bq[k - 1] * ex.sum_a}));

    bool sa_zero = true, sb_zero = true;
    for (size_t j = 0; j < inst.size(); ++j) {
        if (!inst.a()[j].is_zero()) sa_zero = false;
        if (!inst.b()[j].is_zero()) sb_zero = false;
    }
    bool c1_zero = ak.is_zero() || sb_zero;  // a_k^p S_b
    bool c2_zero = bk.is_zero() || sa_zero;  // b_k^q S_a
    if (c1_zero && c2_zero) return equality_verdict();
    if (c1_zero || c2_zero) {
        // One sample vanishes exactly: the geometric side is 0 and the
        // arithmetic side is strictly positive.
        auto arith = [&](unsigned prec) -> Enclosure {
            if (c1_zero) {
                Enclosure t = enc_mul(pow_enclosure_nonneg(bk, q, prec),
                                      power_sum_enclosure(inst.a(), p, prec), prec);
                return enc_mul_rational(wq, t, prec);
            }
            Enclosure t = enc_mul(pow_enclosure_nonneg(ak, p, prec),
                                  power_sum_enclosure(inst.b(), q, prec), prec);
            return enc_mul_rational(wp, t, prec);
        };
        if (std::optional<Enclosure> m = positive_enclosure(arith)) {
            // The outcome is exact (the geometric side is identically 0);
            // only the margin needed an enclosure.
            Verdict v;
            v.outcome = Verdict::Outcome::Holds;
            v.margin_enclosure = *m;
            return v;
        }
        Verdict v;
        v.outcome = Verdict::Outcome::Undecided;
        v.precision_used = kPrecisionCap;
        return v;
    }

    std::optional<bool> prop = holder_proportional(inst);
    if (prop && *prop) return equality_verdict();

    auto diff_at = [&](unsigned prec) -> std::optional<Enclosure> {
        Enclosure sum_a = power_sum_enclosure(inst.a(), p, prec);
        Enclosure sum_b = power_sum_enclosure(inst.b(), q, prec);
        if (!sum_a.strictly_positive() || !sum_b.strictly_positive()) return std::nullopt;
        Enclosure term_a = pow_enclosure(PosRational(ak), p, prec);
        Enclosure term_b = pow_enclosure(PosRational(bk), q, prec);
        Enclosure arith = enc_add(enc_mul_rational(wp, enc_mul(term_a, sum_b, prec), prec),
                                  enc_mul_rational(wq, enc_mul(term_b, sum_a, prec), prec), prec);
        Enclosure geom = enc_mul_rational(ak * bk,
                                          enc_mul(enc_pow_rational(sum_b, wp, prec),
                                                  enc_pow_rational(sum_a, wq, prec), prec),
                                          prec);
        return enc_sub(arith, geom, prec);
    };
    return decide_diff(diff_at, [&] { return "k=" + std::to_string(k) + ";" + holder_witness(inst); });
}

// Summed step: S_a S_b >= (Σ a_k b_k) S_b^{1/p} S_a^{1/q}.
Verdict holder_sum_verdict(const HolderInstance& inst) {
    const PosRational& p = inst.exponents().p();
    const PosRational& q = inst.exponents().q();
    Rational lhs;
    for (size_t k = 0; k < inst.size(); ++k) lhs += inst.a()[k] * inst.b()[k];

    bool sa_zero = true, sb_zero = true;
    for (size_t j = 0; j < inst.size(); ++j) {
        if (!inst.a()[j].is_zero()) sa_zero = false;
        if (!inst.b()[j].is_zero()) sb_zero = false;
    }
    if (sa_zero || sb_zero) return equality_verdict();  // both sides are exactly 0

    HolderExact ex = holder_exact_powers(inst);
    if (ex.closed) {
        Rational rhs = ex.sum_a * ex.sum_b;
        if (lhs.is_zero()) return holds_exact(rhs);
        RootPower geom_root =
            root_power_product(RootPower(ex.sum_b, p), RootPower(ex.sum_a, q));
        Rational ratio = rhs / lhs;
        if (geom_root.clearing_cost(ratio) <= kExactBitBudget) {
            Ordering ord = compare(geom_root, ratio);
            if (ord == Ordering::Equal) return equality_verdict();
            auto margin_at = [&](unsigned prec) {
                return enc_sub(Enclosure::of_rational(rhs, prec),
                               enc_mul_rational(lhs, geom_root.enclosure(prec), prec), prec);
            };
            if (std::optional<Rational> g = geom_root.as_rational()) {
                Rational margin = rhs - lhs * *g;
                if (ord == Ordering::Less) return holds_exact(margin);
                Verdict v;
                v.outcome = Verdict::Outcome::Fails;
                v.margin_exact = margin;
                v.witness = holder_witness(inst);
                return v;
            }
            std::optional<Enclosure> m = positive_enclosure(
                [&](unsigned prec) { return ord == Ordering::Less ? margin_at(prec)
                                                                  : enc_neg(margin_at(prec)); });
            Verdict v;
            if (!m) {
                v.outcome = Verdict::Outcome::Undecided;
                v.precision_used = kPrecisionCap;
                return v;
            }
            // The ordering was decided exactly; precision_used stays 0.
            if (ord == Ordering::Less) {
                v.outcome = Verdict::Outcome::Holds;
                v.margin_enclosure = *m;
            } else {
                v.outcome = Verdict::Outcome::Fails;
                v.margin_enclosure = enc_neg(*m);
                v.witness = holder_witness(inst);
            }
            return v;
        }
    }

    std::optional<bool> prop = holder_proportional(inst);
    if (prop && *prop) return equality_verdict();

    auto diff_at = [&](unsigned prec) -> std::optional<Enclosure> {
        Enclosure sum_a = power_sum_enclosure(inst.a(), p.value(), prec);
        Enclosure sum_b = power_sum_enclosure(inst.b(), q.value(), prec);
        if (!sum_a.strictly_positive() || !sum_b.strictly_positive()) return std::nullopt;
        Enclosure arith = enc_mul(sum_a, sum_b, prec);
        Enclosure geom =
            enc_mul_rational(lhs,
                             enc_mul(enc_pow_rational(sum_b, Rational(1) / p.value(), prec),
                                     enc_pow_rational(sum_a, Rational(1) / q.value(), prec), prec),
                             prec);
        return enc_sub(arith, geom, prec);
    };
    return decide_diff(diff_at, [&] { return holder_witness(inst); });
}

// ---------------------------------------------------------------------------
// Power-mean step inputs and the exact route
// ---------------------------------------------------------------------------

struct PowerStep {
    WeightVector w;
    SampleVector c;
    PosRational r, s;
    std::optional<size_t> k;  // 1-based, present for power_term
};

PowerStep parse_power_step(const std::string& rule, const std::string& instance,
                           bool with_index) {
    std::vector<Field> fields = split_fields(instance);
    size_t base = 0;
    if (with_index) {
        expect_keys(fields, {"k", "w", "c", "r", "s"}, rule);
        base = 1;
    } else {
        expect_keys(fields, {"w", "c", "r", "s"}, rule);
    }
    std::vector<Rational> wv = parse_csv_field(fields[base].value, rule, "w");
    std::vector<Rational> cv = parse_csv_field(fields[base + 1].value, rule, "c");
    Rational r = parse_rational_field(fields[base + 2].value, rule, "r");
    Rational s = parse_rational_field(fields[base + 3].value, rule, "s");
    try {
        PowerStep step{WeightVector(std::move(wv)), SampleVector(std::move(cv)), PosRational(r),
                       PosRational(s), std::nullopt};
        if (step.w.size() != step.c.size())
            throw DimensionError("weights and samples differ in length");
        if (with_index) step.k = parse_index_field(fields[0].value, rule, step.w.size());
        return step;
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InputError("step " + rule + ": " + e.what());
    }
}

void require_strict_exponents(const PowerStep& st, const std::string& rule) {
    if (!(compare(st.r.value(), st.s.value()) == Ordering::Less))
        throw InputError("step " + rule + ": requires r < s, got r=" + st.r.value().to_string() +
                         ", s=" + st.s.value().to_string());
}

// Exact per-term powers c_k^e over the support, when affordable.
struct PowerExact {
    bool closed = false;
    std::vector<Rational> ce;  // c_k^e (0 where λ_k = 0)
    Rational weighted_sum;     // Σ λ_k c_k^e over the support
};

PowerExact power_exact_powers(const WeightVector& w, const SampleVector& c, const Rational& e) {
    PowerExact ex;
    size_t max_bits = 1;
    for (size_t k = 0; k < c.size(); ++k)
        if (!w[k].is_zero()) max_bits = std::max(max_bits, bit_size(c[k]));
    if (Integer(max_bits) * e.num() > kExactBitBudget) return ex;
    for (size_t k = 0; k < c.size(); ++k) {
        if (w[k].is_zero()) {
            ex.ce.emplace_back(0);
            continue;
        }
        std::optional<Rational> pc = pow_exact(c[k], e);
        if (!pc) return ex;
        ex.weighted_sum += w[k] * *pc;
        ex.ce.push_back(std::move(*pc));
    }
    ex.closed = true;
    return ex;
}

// Σ λ_k c_k^e over the support, as an enclosure (e > 0; zero samples drop out).
Enclosure weighted_power_sum_enclosure(const WeightVector& w, const SampleVector& c,
                                       const Rational& e, unsigned prec) {
    Enclosure sum = Enclosure::point(Dyadic::zero(), prec);
    for (size_t k = 0; k < c.size(); ++k) {
        if (w[k].is_zero() || c[k].is_zero()) continue;
        sum = enc_add(sum, enc_mul_rational(w[k], pow_enclosure(PosRational(c[k]), e, prec), prec),
                      prec);
    }
    return sum;
}

bool normalizer_is_zero(const WeightVector& w, const SampleVector& c) {
    for (size_t k = 0; k < c.size(); ++k)
        if (!w[k].is_zero() && !c[k].is_zero()) return false;
    return true;
}

std::string power_witness(const PowerStep& st) {
    return "w=" + to_csv(st.w.values()) + ";c=" + to_csv(st.c.values()) +
           ";r=" + st.r.value().to_string() + ";s=" + st.s.value().to_string();
}

// Per-index step: the two-term AM-GM with samples (λ_k c_k^s / U, λ_k) and
// weights (r/s, 1 - r/s), whose geometric side is λ_k c_k^r U^{-r/s}.
Verdict power_term_verdict(const PowerStep& st, size_t k) {
    const Rational& lambda = st.w[k - 1];
    if (lambda.is_zero()) return equality_verdict();  // both samples are 0

    if (normalizer_is_zero(st.w, st.c))
        throw InputError("step power_term: normalizer U = Σ λ_k c_k^s is zero (all support "
                         "samples vanish); the reduction is degenerate");

    Rational rho = st.r.value() / st.s.value();
    Rational co_rho = Rational(1) - rho;

    if (equality_characterization(st.w, st.c).equal) return equality_verdict();
    if (st.c[k - 1].is_zero()) return holds_exact(co_rho * lambda);

    PowerExact ex = power_exact_powers(st.w, st.c, st.s.value());
    if (ex.closed)
        return check_amgm(WeightVector({rho, co_rho}),
                          SampleVector({lambda * ex.ce[k - 1] / ex.weighted_sum, lambda}));

    auto diff_at = [&](unsigned prec) -> std::optional<Enclosure> {
        Enclosure u = weighted_power_sum_enclosure(st.w, st.c, st.s.value(), prec);
        if (!u.strictly_positive()) return std::nullopt;
        Enclosure c1 = enc_div(enc_mul_rational(lambda, pow_enclosure(PosRational(st.c[k - 1]),
                                                                      st.s.value(), prec),
                                                prec),
                               u, prec);
        if (!c1.strictly_positive()) return std::nullopt;
        Enclosure arith = enc_add(enc_mul_rational(rho, c1, prec),
                                  Enclosure::of_rational(co_rho * lambda, prec), prec);
        Enclosure geom = enc_mul(enc_pow_rational(c1, rho, prec),
                                 pow_enclosure(PosRational(lambda), co_rho, prec), prec);
        return enc_sub(arith, geom, prec);
    };
    return decide_diff(diff_at, [&] { return "k=" + std::to_string(k) + ";" + power_witness(st); });
}

// Summed step: Σ λ_k c_k^r U^{-r/s} <= 1, with U = Σ λ_k c_k^s.
Verdict power_sum_verdict(const PowerStep& st) {
    if (normalizer_is_zero(st.w, st.c))
        throw InputError("step power_sum: normalizer U = Σ λ_k c_k^s is zero (all support "
                         "samples vanish); the reduction is degenerate");
    if (equality_characterization(st.w, st.c).equal) return equality_verdict();

    Rational rho = st.r.value() / st.s.value();

    PowerExact ex_s = power_exact_powers(st.w, st.c, st.s.value());
    PowerExact ex_r = power_exact_powers(st.w, st.c, st.r.value());
    if (ex_s.closed && ex_r.closed &&
        Integer(bit_size(ex_s.weighted_sum)) * rho.num() <= kExactBitBudget) {
        const Rational& big_u = ex_s.weighted_sum;
        const Rational& q_sum = ex_r.weighted_sum;
        // Q U^{-r/s} <= 1  <=>  Q <= U^{r/s}; clear the root exactly.
        RootPower u_pow(pow_int(big_u, rho.num()), PosRational(Rational(rho.den())));
        if (u_pow.clearing_cost(q_sum) <= kExactBitBudget) {
            Ordering ord = compare(u_pow, q_sum);
            if (ord == Ordering::Equal) return equality_verdict();
            bool holds = ord == Ordering::Greater;  // Q < U^{r/s}
            if (std::optional<Rational> u_rat = u_pow.as_rational()) {
                Rational margin = Rational(1) - q_sum / *u_rat;
                if (holds) return holds_exact(margin);
                Verdict v;
                v.outcome = Verdict::Outcome::Fails;
                v.margin_exact = margin;
                v.witness = power_witness(st);
                return v;
            }
            auto margin_at = [&](unsigned prec) {
                // U is an exact positive rational, so power it with the
                // adaptive producer: rounding U to a fixed absolute precision
                // first would zero out tiny values and lose the sign needed
                // for the negative exponent.
                Enclosure value =
                    enc_mul_rational(q_sum, pow_enclosure(PosRational(big_u), -rho, prec), prec);
                Enclosure diff = enc_sub(Enclosure::of_rational(Rational(1), prec), value, prec);
                return holds ? diff : enc_neg(diff);
            };
            std::optional<Enclosure> m = positive_enclosure(margin_at);
            Verdict v;
            if (!m) {
                v.outcome = Verdict::Outcome::Undecided;
                v.precision_used = kPrecisionCap;
                return v;
            }
            // The ordering was decided exactly; precision_used stays 0.
            if (holds) {
                v.outcome = Verdict::Outcome::Holds;
                v.margin_enclosure = *m;
            } else {
                v.outcome = Verdict::Outcome::Fails;
                v.margin_enclosure = enc_neg(*m);
                v.witness = power_witness(st);
            }
            return v;
        }
    }

    auto diff_at = [&](unsigned prec) -> std::optional<Enclosure> {
        Enclosure u = weighted_power_sum_enclosure(st.w, st.c, st.s.value(), prec);
        if (!u.strictly_positive()) return std::nullopt;
        Enclosure q_sum = weighted_power_sum_enclosure(st.w, st.c, st.r.value(), prec);
        Enclosure value = enc_mul(q_sum, enc_pow_rational(u, -rho, prec), prec);
        return enc_sub(Enclosure::of_rational(Rational(1), prec), value, prec);
    };
    return decide_diff(diff_at, [&] { return power_witness(st); });
}

// ---------------------------------------------------------------------------
// Claim rendering
// ---------------------------------------------------------------------------

struct RuleSymbols {
    const char* lhs;
    const char* rhs;
};

RuleSymbols rule_symbols(const std::string& rule_id) {
    if (rule_id == "two_term_amgm") return {"gm2", "am2"};
    if (rule_id == "holder_term") return {"hterm_gm", "hterm_am"};
    if (rule_id == "holder_sum") return {"hsum_gm", "hsum_am"};
    if (rule_id == "holder_conclude") return {"holder_lhs", "holder_rhs"};
    if (rule_id == "power_term") return {"pterm_gm", "pterm_am"};
    if (rule_id == "power_sum") return {"psum", "1/1"};
    if (rule_id == "power_conclude") return {"powermean_r", "powermean_s"};
    throw InputError("unknown rule id '" + rule_id + "'");
}

}  // namespace

std::string claim_of(const std::string& rule_id, const std::string& instance) {
    RuleSymbols sym = rule_symbols(rule_id);
    return std::string(sym.lhs) + " <= " + sym.rhs + " [" + instance + "]";
}

Verdict step_verdict(const std::string& rule_id, const std::string& instance) {
    if (rule_id == "two_term_amgm") {
        std::vector<Field> fields = split_fields(instance);
        expect_keys(fields, {"l1", "l2", "c1", "c2"}, rule_id);
        Rational l1 = parse_rational_field(fields[0].value, rule_id, "l1");
        Rational l2 = parse_rational_field(fields[1].value, rule_id, "l2");
        Rational c1 = parse_rational_field(fields[2].value, rule_id, "c1");
        Rational c2 = parse_rational_field(fields[3].value, rule_id, "c2");
        return amgm_two_term(l1, l2, c1, c2);
    }
    if (rule_id == "holder_term") {
        HolderStep st = parse_holder_step(rule_id, instance, true);
        return holder_term_verdict(st.inst, *st.k);
    }
    if (rule_id == "holder_sum") {
        HolderStep st = parse_holder_step(rule_id, instance, false);
        return holder_sum_verdict(st.inst);
    }
    if (rule_id == "holder_conclude") {
        HolderStep st = parse_holder_step(rule_id, instance, false);
        return check_holder(st.inst);
    }
    if (rule_id == "power_term") {
        PowerStep st = parse_power_step(rule_id, instance, true);
        require_strict_exponents(st, rule_id);
        return power_term_verdict(st, *st.k);
    }
    if (rule_id == "power_sum") {
        PowerStep st = parse_power_step(rule_id, instance, false);
        require_strict_exponents(st, rule_id);
        return power_sum_verdict(st);
    }
    if (rule_id == "power_conclude") {
        PowerStep st = parse_power_step(rule_id, instance, false);
        return check_power_mean(st.w, st.c, ExponentPair(st.r, st.s));
    }
    throw InputError("unknown rule id '" + rule_id + "'");
}

Verdict amgm_two_term(const Rational& l1, const Rational& l2, const Rational& c1,
                      const Rational& c2) {
    if (l1.sign() < 0 || l2.sign() < 0)
        throw InputError("two-term AM-GM: weights must be nonnegative, got l1=" + l1.to_string() +
                         ", l2=" + l2.to_string());
    if (!(l1 + l2 == Rational(1)))
        throw InputError("two-term AM-GM: weights must sum to 1, got " + (l1 + l2).to_string());
    if (c1.sign() < 0 || c2.sign() < 0)
        throw InputError("two-term AM-GM: samples must be nonnegative, got c1=" + c1.to_string() +
                         ", c2=" + c2.to_string());
    return check_amgm(WeightVector({l1, l2}), SampleVector({c1, c2}));
}

// ---------------------------------------------------------------------------
// Trace builders
// ---------------------------------------------------------------------------

namespace {

void append_step(CertificateTrace& trace, const std::string& rule_id,
                 const std::string& instance) {
    Verdict v = step_verdict(rule_id, instance);
    if (v.outcome == Verdict::Outcome::Undecided)
        throw PrecisionCapError("trace step " + rule_id + " is undecidable at the precision cap [" +
                                instance + "]");
    if (v.outcome == Verdict::Outcome::Fails)
        throw InternalError("trace step " + rule_id + " failed; the derivation is unsound [" +
                            instance + "]");
    trace.steps.push_back(TraceStep{rule_id, instance, claim_of(rule_id, instance), std::move(v)});
}

}  // namespace

CertificateTrace amgm_to_holder_trace(const HolderInstance& inst) {
    std::string fields = "a=" + to_csv(inst.a().values()) + ";b=" + to_csv(inst.b().values()) +
                         ";p=" + inst.exponents().p().value().to_string();
    CertificateTrace trace;
    trace.conclusion = claim_of("holder_conclude", fields);

    bool sa_zero = true, sb_zero = true;
    for (size_t k = 0; k < inst.size(); ++k) {
        if (!inst.a()[k].is_zero()) sa_zero = false;
        if (!inst.b()[k].is_zero()) sb_zero = false;
    }
    if (!sa_zero && !sb_zero) {
        for (size_t k = 1; k <= inst.size(); ++k)
            append_step(trace, "holder_term", "k=" + std::to_string(k) + ";" + fields);
        append_step(trace, "holder_sum", fields);
    }
    // With Σ a_k^p = 0 or Σ b_k^q = 0 both sides vanish and the conclusion
    // holds with equality on its own; the trace records just that step.
    append_step(trace, "holder_conclude", fields);
    return trace;
}

CertificateTrace amgm_to_power_mean_trace(const WeightVector& w, const SampleVector& c,
                                          const ExponentPair& ex) {
    if (w.size() != c.size())
        throw DimensionError("amgm_to_power_mean_trace: weights and samples differ in length (" +
                             std::to_string(w.size()) + " vs " + std::to_string(c.size()) + ")");
    if (ex.r() == ex.s())
        throw DomainError("amgm_to_power_mean_trace: requires r < s, got r = s = " +
                          ex.r().value().to_string());
    std::string fields = "w=" + to_csv(w.values()) + ";c=" + to_csv(c.values()) +
                         ";r=" + ex.r().value().to_string() + ";s=" + ex.s().value().to_string();
    CertificateTrace trace;
    trace.conclusion = claim_of("power_conclude", fields);

    if (!normalizer_is_zero(w, c)) {
        for (size_t k = 1; k <= w.size(); ++k)
            append_step(trace, "power_term", "k=" + std::to_string(k) + ";" + fields);
        append_step(trace, "power_sum", fields);
    }
    // U = 0 forces every support sample to 0, so both means are exactly 0 and
    // the conclusion holds with equality on its own.
    append_step(trace, "power_conclude", fields);
    return trace;
}

// ---------------------------------------------------------------------------
// Sharpening sequences
// ---------------------------------------------------------------------------

namespace {

SequenceTerm eval_sequence_term(const WeightVector& w, const SampleVector& c,
                                const Rational& exponent, unsigned precision,
                                const std::optional<Rational>& support_constant) {
    SequenceTerm term;
    term.exponent = exponent;
    if (exponent == Rational(1)) {
        term.exact = arithmetic_mean(w, c);
        return term;
    }
    if (support_constant) {
        term.exact = *support_constant;
        return term;
    }
    PosRational r{exponent};
    try {
        if (std::optional<Rational> v = power_mean_repr(w, c, r).as_rational()) {
            term.exact = *v;
            return term;
        }
    } catch (const RepresentabilityError&) {
    }
    term.value = power_mean_enclosure(w, c, r, precision);
    return term;
}

Ordering term_vs_limit(const WeightVector& w, const SampleVector& c, const SequenceTerm& term,
                       const RootPower& limit, unsigned precision) {
    if (term.exact) {
        if (std::optional<Rational> g = limit.as_rational())
            return compare(*term.exact, *g);
        if (limit.clearing_cost(*term.exact) <= kExactBitBudget)
            return flip(compare(limit, *term.exact));
    }
    for (unsigned p = precision;;) {
        Enclosure t = term.exact ? Enclosure::of_rational(*term.exact, p)
                                 : power_mean_enclosure(w, c, PosRational(term.exponent), p);
        Enclosure g = limit.enclosure(p);
        if (std::optional<Ordering> ord = compare_disjoint(t, g)) return *ord;
        if (p >= kPrecisionCap)
            throw PrecisionCapError(
                "sequence term vs geometric mean is undecidable at the precision cap "
                "(exponent " + term.exponent.to_string() + ")");
        p = (p > kPrecisionCap / 2) ? kPrecisionCap : p * 2;
    }
}

SharpeningSequence build_sequence(const WeightVector& w, const SampleVector& c,
                                  const std::vector<Rational>& exponents, unsigned precision,
                                  const char* op_name) {
    if (w.size() != c.size())
        throw DimensionError(std::string(op_name) + ": weights and samples differ in length (" +
                             std::to_string(w.size()) + " vs " + std::to_string(c.size()) + ")");
    if (geometric_mean_clearing_bits(w, c) > kExactBitBudget)
        throw DomainError(std::string(op_name) +
                          ": the geometric-mean limit exceeds the exact bit budget");

    std::optional<Rational> support_constant;
    if (equality_characterization(w, c).equal) {
        for (size_t k = 0; k < w.size(); ++k)
            if (!w[k].is_zero()) {
                support_constant = c[k];
                break;
            }
    }

    SharpeningSequence seq{{}, {}, {}, geometric_mean_repr(w, c)};
    for (const Rational& e : exponents)
        seq.terms.push_back(eval_sequence_term(w, c, e, precision, support_constant));

    for (size_t i = 0; i + 1 < exponents.size(); ++i) {
        Verdict v = check_power_mean(w, c,
                                     ExponentPair(PosRational(exponents[i + 1]),
                                                  PosRational(exponents[i])));
        if (v.outcome == Verdict::Outcome::Undecided)
            throw PrecisionCapError(std::string(op_name) + ": the ordering of terms " +
                                    std::to_string(i) + " and " + std::to_string(i + 1) +
                                    " is undecidable at the precision cap");
        if (v.outcome == Verdict::Outcome::Fails)
            throw InternalError(std::string(op_name) + ": term " + std::to_string(i + 1) +
                                " exceeds term " + std::to_string(i) +
                                "; the chain is unsound");
        seq.monotonic.push_back(std::move(v));
    }

    for (const SequenceTerm& term : seq.terms) {
        Ordering ord = term_vs_limit(w, c, term, seq.limit, precision);
        if (ord == Ordering::Less)
            throw InternalError(std::string(op_name) +
                                ": a term fell below the geometric-mean limit; the chain is "
                                "unsound");
        seq.above_gm.push_back(ord);
    }
    return seq;
}

}  // namespace

SharpeningSequence sharpening_sequence(const WeightVector& w, const SampleVector& c, long p,
                                       unsigned m_max, unsigned precision) {
    if (p < 2)
        throw DomainError("sharpening_sequence: p must be an integer >= 2, got " +
                          std::to_string(p));
    std::vector<Rational> exponents;
    Integer power(1);
    for (unsigned m = 0; m <= m_max; ++m) {
        exponents.emplace_back(Integer(1), power);
        power *= p;
    }
    return build_sequence(w, c, exponents, precision, "sharpening_sequence");
}

SharpeningSequence power_mean_to_amgm_sequence(const WeightVector& w, const SampleVector& c,
                                               unsigned n_max, unsigned precision) {
    if (n_max < 1)
        throw DomainError("power_mean_to_amgm_sequence: n_max must be >= 1, got " +
                          std::to_string(n_max));
    std::vector<Rational> exponents;
    for (unsigned n = 1; n <= n_max; ++n) exponents.emplace_back(1L, static_cast<long>(n));
    return build_sequence(w, c, exponents, precision, "power_mean_to_amgm_sequence");
}

// ---------------------------------------------------------------------------
// Substitutions
// ---------------------------------------------------------------------------

HolderSubstitution holder_to_amgm_substitution(const WeightVector& w, const SampleVector& c,
                                               long p) {
    if (p < 2)
        throw DomainError("holder_to_amgm_substitution: p must be an integer >= 2, got " +
                          std::to_string(p));
    if (w.size() != c.size())
        throw DimensionError("holder_to_amgm_substitution: weights and samples differ in length (" +
                             std::to_string(w.size()) + " vs " + std::to_string(c.size()) + ")");
    PosRational root(p, 1);
    std::vector<RootPower> a, b;
    for (size_t k = 0; k < w.size(); ++k) {
        a.emplace_back(w[k] * c[k], root);
        b.emplace_back(pow_int(w[k], p - 1), root);
    }
    std::string fields = "w=" + to_csv(w.values()) + ";c=" + to_csv(c.values()) +
                         ";p=" + Rational(p).to_string();
    Verdict evidence =
        check_power_mean(w, c, ExponentPair(PosRational(1, p), PosRational(1, 1)));
    return HolderSubstitution{std::move(a), std::move(b), p,
                              "sharpened_am <= am [" + fields + "]", std::move(evidence)};
}

PowerMeanSubstitution holder_to_power_mean_substitution(const WeightVector& w,
                                                        const SampleVector& c,
                                                        const ExponentPair& ex) {
    if (w.size() != c.size())
        throw DimensionError(
            "holder_to_power_mean_substitution: weights and samples differ in length (" +
            std::to_string(w.size()) + " vs " + std::to_string(c.size()) + ")");
    if (ex.r() == ex.s())
        throw DomainError("holder_to_power_mean_substitution: requires r < s, got r = s = " +
                          ex.r().value().to_string());
    const Rational& s = ex.s().value();
    size_t max_bits = 1;
    for (size_t k = 0; k < c.size(); ++k) max_bits = std::max(max_bits, bit_size(c[k]));
    if (Integer(max_bits) * s.num() > kExactBitBudget)
        throw DomainError(
            "holder_to_power_mean_substitution: substituted samples exceed the exact bit budget");

    PosRational p_sub{s / ex.r().value()};
    std::vector<RootPower> x;
    for (size_t k = 0; k < c.size(); ++k)
        x.emplace_back(pow_int(c[k], s.num()), PosRational(Rational(s.den())));

    std::string fields = "w=" + to_csv(w.values()) + ";c=" + to_csv(c.values()) +
                         ";r=" + ex.r().value().to_string() + ";s=" + s.to_string();
    return PowerMeanSubstitution{std::move(p_sub), std::move(x),
                                 "cleared_power_r <= cleared_power_s [" + fields + "]",
                                 claim_of("power_conclude", fields),
                                 check_power_mean(w, c, ex)};
}

// ---------------------------------------------------------------------------
// Limit procedure
// ---------------------------------------------------------------------------

LimitReport geometric_limit(const WeightVector& w, const SampleVector& c, unsigned precision,
                            unsigned j_max) {
    if (w.size() != c.size())
        throw DimensionError("geometric_limit: weights and samples differ in length (" +
                             std::to_string(w.size()) + " vs " + std::to_string(c.size()) + ")");
    bool degenerate = false;
    for (size_t k = 0; k < w.size(); ++k)
        if (!w[k].is_zero() && c[k].is_zero()) degenerate = true;

    LimitReport report{Enclosure::point(Dyadic::zero(), precision), degenerate, {}};
    if (degenerate) return report;

    report.direct = geometric_mean_enclosure(w, c, precision);
    Integer den(1);
    for (unsigned j = 1; j <= j_max; ++j) {
        den *= 2;
        Rational x(Integer(1), den);
        report.grid.push_back(
            LimitReport::GridPoint{x, power_mean_enclosure(w, c, PosRational(x), precision)});
    }
    return report;
}

}  // namespace ineqcert
