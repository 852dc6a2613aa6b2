// SPDX-License-Identifier: Apache-2.0
#include "ineqcert/verdicts.hpp"

#include <functional>
#include <sstream>

namespace ineqcert {

namespace {

Verdict verdict_equality() {
    Verdict v;
    v.outcome = Verdict::Outcome::Equality;
    v.margin_exact = Rational(0);
    return v;
}

Verdict verdict_holds_exact(Rational margin) {
    Verdict v;
    v.outcome = Verdict::Outcome::Holds;
    v.margin_exact = std::move(margin);
    return v;
}

Verdict verdict_fails_exact(Rational margin, std::string witness) {
    Verdict v;
    v.outcome = Verdict::Outcome::Fails;
    v.margin_exact = std::move(margin);
    v.witness = std::move(witness);
    return v;
}

// Margin enclosure for an inequality already decided exactly: refine until
// the enclosure is strictly positive; on the (unreachable in practice) cap,
// report no margin rather than a sign-straddling one.
std::optional<Enclosure> positive_margin(const std::function<Enclosure(unsigned)>& diff) {
    for (unsigned p = kPrecisionStart;; p *= 2) {
        Enclosure m = diff(p);
        if (m.strictly_positive()) return m;
        if (p >= kPrecisionCap) return std::nullopt;
    }
}

Verdict verdict_holds_cleared(const std::function<Enclosure(unsigned)>& diff) {
    Verdict v;
    v.outcome = Verdict::Outcome::Holds;
    v.margin_enclosure = positive_margin(diff);
    return v;
}

// Shared enclosure decision loop: `diff` evaluates RHS - LHS at a precision;
// the loop doubles precision until the sign is decided or the cap is hit.
Verdict decide_by_enclosure(const std::function<Enclosure(unsigned)>& diff,
                            const std::function<std::string()>& witness) {
    for (unsigned p = kPrecisionStart;; p *= 2) {
        Enclosure m = diff(p);
        if (m.strictly_positive()) {
            Verdict v;
            v.outcome = Verdict::Outcome::Holds;
            v.margin_enclosure = m;
            v.precision_used = p;
            return v;
        }
        if (m.strictly_negative()) {
            Verdict v;
            v.outcome = Verdict::Outcome::Fails;
            v.margin_enclosure = m;
            v.precision_used = p;
            v.witness = witness();
            return v;
        }
        if (p >= kPrecisionCap) {
            Verdict v;
            v.outcome = Verdict::Outcome::Undecided;
            v.margin_enclosure = m;
            v.precision_used = p;
            return v;
        }
    }
}

}  // namespace

std::string to_string(Verdict::Outcome o) {
    switch (o) {
        case Verdict::Outcome::Holds: return "HOLDS";
        case Verdict::Outcome::Equality: return "EQUALITY";
        case Verdict::Outcome::Fails: return "FAILS";
        case Verdict::Outcome::Undecided: return "UNDECIDED";
    }
    throw InternalError("to_string(Outcome): invalid enum value");
}

std::string Verdict::to_line() const {
    std::string m = "none";
    if (margin_exact)
        m = margin_exact->to_string();
    else if (margin_enclosure)
        m = margin_enclosure->to_string();
    return to_string(outcome) + ";margin=" + m + ";precision=" + std::to_string(precision_used);
}

EqualityCharacterization equality_characterization(const WeightVector& w, const SampleVector& c) {
    if (w.size() != c.size())
        throw DimensionError("equality_characterization: length mismatch (" +
                             std::to_string(w.size()) + " vs " + std::to_string(c.size()) + ")");
    std::optional<size_t> pivot;
    for (size_t k = 0; k < w.size(); ++k) {
        if (w[k].is_zero()) continue;
        if (!pivot) {
            pivot = k;
        } else if (!(c[k] == c[*pivot])) {
            return {false, std::make_pair(*pivot + 1, k + 1)};
        }
    }
    return {true, std::nullopt};
}

Verdict check_amgm(const WeightVector& w, const SampleVector& c) {
    if (w.size() != c.size())
        throw DimensionError("check_amgm: length mismatch (" + std::to_string(w.size()) + " vs " +
                             std::to_string(c.size()) + ")");
    if (equality_characterization(w, c).equal) return verdict_equality();

    Rational am = arithmetic_mean(w, c);
    auto witness = [&] { return "w=" + to_csv(w.values()) + ";c=" + to_csv(c.values()); };

    if (geometric_mean_clearing_bits(w, c) <= kExactBitBudget) {
        RootPower gm = geometric_mean_repr(w, c);
        if (auto gm_rat = gm.as_rational()) {
            Rational margin = am - *gm_rat;
            if (margin.sign() > 0) return verdict_holds_exact(margin);
            if (margin.is_zero()) return verdict_equality();
            return verdict_fails_exact(margin, witness());
        }
        if (gm.clearing_cost(am) <= kExactBitBudget) {
            Ordering ord = compare(gm, am);
            auto diff = [&](unsigned p) {
                return enc_sub(Enclosure::of_rational(am, p), gm.enclosure(p), p);
            };
            if (ord == Ordering::Less) return verdict_holds_cleared(diff);
            if (ord == Ordering::Equal) return verdict_equality();
            Verdict v;
            v.outcome = Verdict::Outcome::Fails;
            v.margin_enclosure = positive_margin([&](unsigned p) { return enc_neg(diff(p)); });
            if (v.margin_enclosure) v.margin_enclosure = enc_neg(*v.margin_enclosure);
            v.witness = witness();
            return v;
        }
    }
    auto diff = [&](unsigned p) {
        return enc_sub(Enclosure::of_rational(am, p), geometric_mean_enclosure(w, c, p), p);
    };
    return decide_by_enclosure(diff, witness);
}

// Hölder equality characterization, exact: Σ a_k b_k equals the product RHS
// iff the vectors (a_k^p) and (b_k^q) are proportional. With p = u/v that is:
// matching zero patterns and a_k^(u-v) b_j^v = a_j^(u-v) b_k^v against a
// support pivot j. Returns nullopt when the cross powers exceed the exact
// budget (the instance is then decided, or not, by enclosures alone).
std::optional<bool> holder_proportional(const HolderInstance& inst) {
    const SampleVector& a = inst.a();
    const SampleVector& b = inst.b();
    const Integer& u = inst.exponents().p().value().num();
    const Integer& v = inst.exponents().p().value().den();
    Integer uv = u - v;

    bool a_all_zero = true, b_all_zero = true;
    for (size_t k = 0; k < a.size(); ++k) {
        if (!a[k].is_zero()) a_all_zero = false;
        if (!b[k].is_zero()) b_all_zero = false;
    }
    if (a_all_zero || b_all_zero) return true;
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k].is_zero() != b[k].is_zero()) return false;

    size_t max_bits = 1;
    for (size_t k = 0; k < a.size(); ++k)
        max_bits = std::max({max_bits, bit_size(a[k]), bit_size(b[k])});
    if (Integer(max_bits) * (uv > v ? uv : v) > kExactBitBudget) return std::nullopt;

    size_t j = 0;
    while (a[j].is_zero()) ++j;
    Rational aj_uv = pow_int(a[j], uv);
    Rational bj_v = pow_int(b[j], v);
    for (size_t k = j + 1; k < a.size(); ++k) {
        if (a[k].is_zero()) continue;
        if (!(pow_int(a[k], uv) * bj_v == aj_uv * pow_int(b[k], v))) return false;
    }
    return true;
}

Verdict check_holder(const HolderInstance& inst) {
    const ConjugatePair& pq = inst.exponents();
    Rational lhs;
    for (size_t k = 0; k < inst.size(); ++k) lhs += inst.a()[k] * inst.b()[k];

    auto witness = [&] {
        return "a=" + to_csv(inst.a().values()) + ";b=" + to_csv(inst.b().values()) +
               ";p=" + pq.p().value().to_string();
    };

    std::optional<bool> eq = holder_proportional(inst);
    if (eq && *eq) return verdict_equality();

    bool exact_tried = false;
    if (eq) {
        try {
            HolderSides sides = holder_sides(inst);
            RootPower rhs = root_power_product(sides.rhs_a, sides.rhs_b);
            exact_tried = true;
            if (auto rhs_rat = rhs.as_rational()) {
                Rational margin = *rhs_rat - lhs;
                if (margin.sign() > 0) return verdict_holds_exact(margin);
                if (margin.is_zero()) return verdict_equality();
                return verdict_fails_exact(margin, witness());
            }
            if (rhs.clearing_cost(lhs) <= kExactBitBudget) {
                Ordering ord = compare(rhs, lhs);
                auto diff = [&](unsigned p) {
                    return enc_sub(rhs.enclosure(p), Enclosure::of_rational(lhs, p), p);
                };
                if (ord == Ordering::Greater) return verdict_holds_cleared(diff);
                if (ord == Ordering::Equal) return verdict_equality();
                Verdict v;
                v.outcome = Verdict::Outcome::Fails;
                v.margin_enclosure = positive_margin([&](unsigned p) { return enc_neg(diff(p)); });
                if (v.margin_enclosure) v.margin_enclosure = enc_neg(*v.margin_enclosure);
                v.witness = witness();
                return v;
            }
        } catch (const RepresentabilityError&) {
            // fall through to enclosure mode
        }
    }
    (void)exact_tried;

    Rational inv_p = Rational(1) / pq.p().value();
    Rational inv_q = Rational(1) / pq.q().value();
    auto diff = [&](unsigned p) {
        Enclosure sa = power_sum_enclosure(inst.a(), pq.p().value(), p);
        Enclosure sb = power_sum_enclosure(inst.b(), pq.q().value(), p);
        Enclosure rhs = enc_mul(enc_pow_rational(sa, inv_p, p), enc_pow_rational(sb, inv_q, p), p);
        return enc_sub(rhs, Enclosure::of_rational(lhs, p), p);
    };
    return decide_by_enclosure(diff, witness);
}

Verdict check_power_mean(const WeightVector& w, const SampleVector& c, const ExponentPair& ex) {
    if (w.size() != c.size())
        throw DimensionError("check_power_mean: length mismatch (" + std::to_string(w.size()) +
                             " vs " + std::to_string(c.size()) + ")");
    if (ex.r().value() == ex.s().value()) return verdict_equality();
    if (equality_characterization(w, c).equal) return verdict_equality();

    auto witness = [&] {
        return "w=" + to_csv(w.values()) + ";c=" + to_csv(c.values()) +
               ";r=" + ex.r().value().to_string() + ";s=" + ex.s().value().to_string();
    };

    try {
        RootPower mr = power_mean_repr(w, c, ex.r());
        RootPower ms = power_mean_repr(w, c, ex.s());
        auto mr_rat = mr.as_rational();
        auto ms_rat = ms.as_rational();
        if (mr_rat && ms_rat) {
            Rational margin = *ms_rat - *mr_rat;
            if (margin.sign() > 0) return verdict_holds_exact(margin);
            if (margin.is_zero()) return verdict_equality();
            return verdict_fails_exact(margin, witness());
        }
        if (mr.clearing_cost(ms) <= kExactBitBudget) {
            Ordering ord = compare(mr, ms);
            auto diff = [&](unsigned p) { return enc_sub(ms.enclosure(p), mr.enclosure(p), p); };
            if (ord == Ordering::Less) return verdict_holds_cleared(diff);
            if (ord == Ordering::Equal) return verdict_equality();
            Verdict v;
            v.outcome = Verdict::Outcome::Fails;
            v.margin_enclosure = positive_margin([&](unsigned p) { return enc_neg(diff(p)); });
            if (v.margin_enclosure) v.margin_enclosure = enc_neg(*v.margin_enclosure);
            v.witness = witness();
            return v;
        }
    } catch (const RepresentabilityError&) {
        // fall through to enclosure mode
    }

    auto diff = [&](unsigned p) {
        return enc_sub(power_mean_enclosure(w, c, ex.s(), p), power_mean_enclosure(w, c, ex.r(), p),
                       p);
    };
    return decide_by_enclosure(diff, witness);
}

}  // namespace ineqcert
