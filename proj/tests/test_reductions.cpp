// SPDX-License-Identifier: Apache-2.0
//
// Reduction-layer tests: claim grammar, the shared step checker, the two
// trace builders, the substitution constructions, sharpening sequences, and
// the grid evidence for the geometric-mean limit.

#include "doctest.h"

#include <string>

#include "ineqcert/reductions.hpp"
#include "ineqcert/verdicts.hpp"

using namespace ineqcert;

namespace {

WeightVector half_half() { return WeightVector({Rational(1, 2), Rational(1, 2)}); }

}  // namespace

TEST_CASE("claim_of derives canonical claim text from rule and instance") {
    CHECK(claim_of("two_term_amgm", "l1=1/2;l2=1/2;c1=1/1;c2=4/1") ==
          "gm2 <= am2 [l1=1/2;l2=1/2;c1=1/1;c2=4/1]");
    CHECK(claim_of("holder_term", "k=1;a=1/1,2/1;b=1/1,2/1;p=2/1") ==
          "hterm_gm <= hterm_am [k=1;a=1/1,2/1;b=1/1,2/1;p=2/1]");
    CHECK(claim_of("holder_sum", "a=1/1,2/1;b=1/1,2/1;p=2/1") ==
          "hsum_gm <= hsum_am [a=1/1,2/1;b=1/1,2/1;p=2/1]");
    CHECK(claim_of("holder_conclude", "a=1/1,2/1;b=1/1,2/1;p=2/1") ==
          "holder_lhs <= holder_rhs [a=1/1,2/1;b=1/1,2/1;p=2/1]");
    CHECK(claim_of("power_term", "k=2;w=1/2,1/2;c=1/1,2/1;r=1/1;s=2/1") ==
          "pterm_gm <= pterm_am [k=2;w=1/2,1/2;c=1/1,2/1;r=1/1;s=2/1]");
    CHECK(claim_of("power_sum", "w=1/2,1/2;c=1/1,2/1;r=1/1;s=2/1") ==
          "psum <= 1/1 [w=1/2,1/2;c=1/1,2/1;r=1/1;s=2/1]");
    CHECK(claim_of("power_conclude", "w=1/2,1/2;c=1/1,2/1;r=1/1;s=2/1") ==
          "powermean_r <= powermean_s [w=1/2,1/2;c=1/1,2/1;r=1/1;s=2/1]");
}

TEST_CASE("step_verdict checks a serialized two-term instance") {
    Verdict v = step_verdict("two_term_amgm", "l1=1/2;l2=1/2;c1=1/1;c2=4/1");
    CHECK(v.to_line() == "HOLDS;margin=1/2;precision=0");
    CHECK(v.to_line() ==
          amgm_two_term(Rational(1, 2), Rational(1, 2), Rational(1), Rational(4)).to_line());

    // The instance text is canonical: fields must appear in rule order.
    CHECK_THROWS_AS(step_verdict("two_term_amgm", "l2=1/2;l1=1/2;c1=1/1;c2=4/1"), InputError);
    // Off-contract weights are rejected, not renormalized.
    CHECK_THROWS_AS(step_verdict("two_term_amgm", "l1=1/2;l2=1/3;c1=1/1;c2=4/1"), InputError);
    CHECK_THROWS_AS(step_verdict("no_such_rule", "x=1"), InputError);
}

TEST_CASE("step_verdict is deterministic byte for byte") {
    const char* fields = "w=1/3,2/3;c=2/1,5/1;r=1/2;s=3/2";
    std::string first = step_verdict("power_conclude", fields).to_line();
    for (int i = 0; i < 3; ++i) CHECK(step_verdict("power_conclude", fields).to_line() == first);
}

TEST_CASE("the Hoelder trace replays term, sum, and conclusion steps") {
    // Proportional instance: every step is the equality case.
    HolderInstance eq(SampleVector({Rational(1), Rational(2)}),
                      SampleVector({Rational(1), Rational(2)}), ConjugatePair(PosRational(2, 1)));
    CertificateTrace t = amgm_to_holder_trace(eq);
    REQUIRE(t.steps.size() == 4);
    CHECK(t.steps[0].rule_id == "holder_term");
    CHECK(t.steps[0].instance == "k=1;a=1/1,2/1;b=1/1,2/1;p=2/1");
    CHECK(t.steps[1].rule_id == "holder_term");
    CHECK(t.steps[2].rule_id == "holder_sum");
    CHECK(t.steps[3].rule_id == "holder_conclude");
    CHECK(t.conclusion == "holder_lhs <= holder_rhs [a=1/1,2/1;b=1/1,2/1;p=2/1]");
    CHECK(t.conclusion == t.steps.back().claim);
    for (const TraceStep& s : t.steps) {
        CHECK(s.evidence.to_line() == "EQUALITY;margin=0/1;precision=0");
        CHECK(s.claim == claim_of(s.rule_id, s.instance));
        // Replaying the step reproduces the stored evidence exactly.
        CHECK(step_verdict(s.rule_id, s.instance).to_line() == s.evidence.to_line());
    }

    // Strict instance: the trace's conclusion matches the direct checker.
    HolderInstance strict(SampleVector({Rational(1), Rational(1)}),
                          SampleVector({Rational(1), Rational(2)}),
                          ConjugatePair(PosRational(2, 1)));
    CertificateTrace st = amgm_to_holder_trace(strict);
    CHECK(st.steps.back().evidence.to_line() == check_holder(strict).to_line());
    for (const TraceStep& s : st.steps) CHECK(s.evidence.outcome != Verdict::Outcome::Fails);

    // One side identically zero: the derivation collapses to the conclusion.
    HolderInstance degen(SampleVector({Rational(0), Rational(0)}),
                         SampleVector({Rational(1), Rational(2)}),
                         ConjugatePair(PosRational(2, 1)));
    CertificateTrace dt = amgm_to_holder_trace(degen);
    REQUIRE(dt.steps.size() == 1);
    CHECK(dt.steps[0].rule_id == "holder_conclude");
    CHECK(dt.steps[0].evidence.outcome == Verdict::Outcome::Equality);
    CHECK(dt.conclusion == dt.steps[0].claim);
}

TEST_CASE("the power-mean trace normalizes by U and concludes M_r <= M_s") {
    // U = (2^2 + 14^2)/2 = 100 has a rational square root, so every margin
    // along the derivation is exact.
    CertificateTrace t = amgm_to_power_mean_trace(
        half_half(), SampleVector({Rational(2), Rational(14)}),
        ExponentPair(PosRational(1, 1), PosRational(2, 1)));
    REQUIRE(t.steps.size() == 4);
    CHECK(t.steps[0].rule_id == "power_term");
    CHECK(t.steps[0].evidence.to_line() == "HOLDS;margin=4/25;precision=0");
    CHECK(t.steps[1].evidence.to_line() == "HOLDS;margin=1/25;precision=0");
    CHECK(t.steps[2].rule_id == "power_sum");
    CHECK(t.steps[2].evidence.to_line() == "HOLDS;margin=1/5;precision=0");
    CHECK(t.steps[3].rule_id == "power_conclude");
    // M_1 = 8, M_2 = 10.
    CHECK(t.steps[3].evidence.to_line() == "HOLDS;margin=2/1;precision=0");
    CHECK(t.conclusion == "powermean_r <= powermean_s [w=1/2,1/2;c=2/1,14/1;r=1/1;s=2/1]");
    for (const TraceStep& s : t.steps)
        CHECK(step_verdict(s.rule_id, s.instance).to_line() == s.evidence.to_line());

    // Irrational normalizer: still decided exactly (precision 0), margins as
    // enclosures, and the conclusion agrees with the direct checker.
    SampleVector c12({Rational(1), Rational(2)});
    ExponentPair ex12(PosRational(1, 1), PosRational(2, 1));
    CertificateTrace t2 = amgm_to_power_mean_trace(half_half(), c12, ex12);
    REQUIRE(t2.steps.size() == 4);
    for (const TraceStep& s : t2.steps) {
        CHECK(s.evidence.outcome == Verdict::Outcome::Holds);
        CHECK(s.evidence.precision_used == 0);
    }
    CHECK(t2.steps.back().evidence.to_line() ==
          check_power_mean(half_half(), c12, ex12).to_line());

    // All samples zero: U = 0 collapses the derivation to its conclusion.
    CertificateTrace dz = amgm_to_power_mean_trace(
        half_half(), SampleVector({Rational(0), Rational(0)}), ex12);
    REQUIRE(dz.steps.size() == 1);
    CHECK(dz.steps[0].rule_id == "power_conclude");
    CHECK(dz.steps[0].evidence.outcome == Verdict::Outcome::Equality);

    // r = s carries no derivation.
    CHECK_THROWS_AS(amgm_to_power_mean_trace(half_half(), c12,
                                             ExponentPair(PosRational(2, 1), PosRational(2, 1))),
                    DomainError);
}

TEST_CASE("sharpening sequence A_m on powers of two is exact at every term") {
    SharpeningSequence seq =
        sharpening_sequence(half_half(), SampleVector({Rational(1), Rational(256)}), 2, 3);
    REQUIRE(seq.terms.size() == 4);
    CHECK(seq.terms[0].exact == Rational(257, 2));
    CHECK(seq.terms[1].exact == Rational(289, 4));
    CHECK(seq.terms[2].exact == Rational(625, 16));
    CHECK(seq.terms[3].exact == Rational(6561, 256));
    CHECK(seq.limit.as_rational() == Rational(16));
    REQUIRE(seq.monotonic.size() == 3);
    for (const Verdict& v : seq.monotonic) CHECK(v.outcome == Verdict::Outcome::Holds);
    REQUIRE(seq.above_gm.size() == 4);
    for (Ordering o : seq.above_gm) CHECK(o == Ordering::Greater);
}

TEST_CASE("integer-root sequence B_n descends toward the geometric mean") {
    SharpeningSequence seq =
        power_mean_to_amgm_sequence(half_half(), SampleVector({Rational(1), Rational(64)}), 3);
    REQUIRE(seq.terms.size() == 3);
    CHECK(seq.terms[0].exact == Rational(65, 2));
    CHECK(seq.terms[1].exact == Rational(81, 4));
    CHECK(seq.terms[2].exact == Rational(125, 8));
    CHECK(seq.limit.as_rational() == Rational(8));
    for (const Verdict& v : seq.monotonic) CHECK(v.outcome == Verdict::Outcome::Holds);
}

TEST_CASE("sharpening sequences tie term by term on constant samples") {
    SharpeningSequence seq =
        sharpening_sequence(half_half(), SampleVector({Rational(5), Rational(5)}), 2, 2);
    REQUIRE(seq.terms.size() == 3);
    for (const auto& term : seq.terms) CHECK(term.exact == Rational(5));
    for (const Verdict& v : seq.monotonic) CHECK(v.outcome == Verdict::Outcome::Equality);
    for (Ordering o : seq.above_gm) CHECK(o == Ordering::Equal);

    // A single sample behaves the same way.
    SharpeningSequence one =
        sharpening_sequence(WeightVector({Rational(1)}), SampleVector({Rational(7)}), 3, 2);
    for (const auto& term : one.terms) CHECK(term.exact == Rational(7));
    CHECK(one.limit.as_rational() == Rational(7));
}

TEST_CASE("substituting weighted samples into Hoelder sharpens the mean bound") {
    HolderSubstitution hs =
        holder_to_amgm_substitution(half_half(), SampleVector({Rational(1), Rational(4)}), 2);
    CHECK(hs.p == 2);
    CHECK(hs.derived_claim == "sharpened_am <= am [w=1/2,1/2;c=1/1,4/1;p=2/1]");
    // Σ λ c = 5/2 vs (Σ λ c^{1/2})^2 = 9/4: margin 1/4, exact.
    CHECK(hs.evidence.to_line() == "HOLDS;margin=1/4;precision=0");
    REQUIRE(hs.a.size() == 2);
    // a_k = (λ_k c_k)^{1/2}, b_k = λ_k^{1/2}.
    CHECK(hs.a[0].to_string() == "root(1/2,2/1)");
    CHECK(hs.a[1].to_string() == "root(2/1,2/1)");
    CHECK(hs.b[0].to_string() == "root(1/2,2/1)");
    CHECK(hs.b[1].to_string() == "root(1/2,2/1)");
}

TEST_CASE("substituting powers into the sharpened bound yields M_r <= M_s") {
    PowerMeanSubstitution ps = holder_to_power_mean_substitution(
        half_half(), SampleVector({Rational(1), Rational(2)}),
        ExponentPair(PosRational(1, 1), PosRational(2, 1)));
    CHECK(ps.p == PosRational(2, 1));
    REQUIRE(ps.x.size() == 2);
    CHECK(ps.x[0].as_rational() == Rational(1));
    CHECK(ps.x[1].as_rational() == Rational(4));
    CHECK(ps.derived_claim == "cleared_power_r <= cleared_power_s [w=1/2,1/2;c=1/1,2/1;r=1/1;s=2/1]");
    CHECK(ps.restated_claim == "powermean_r <= powermean_s [w=1/2,1/2;c=1/1,2/1;r=1/1;s=2/1]");
    CHECK(ps.evidence.outcome == Verdict::Outcome::Holds);
    CHECK(ps.evidence.to_line() ==
          check_power_mean(half_half(), SampleVector({Rational(1), Rational(2)}),
                           ExponentPair(PosRational(1, 1), PosRational(2, 1)))
              .to_line());

    // s/r = 3 with x_k = c_k^3.
    PowerMeanSubstitution cube = holder_to_power_mean_substitution(
        half_half(), SampleVector({Rational(1), Rational(8)}),
        ExponentPair(PosRational(1, 1), PosRational(3, 1)));
    CHECK(cube.p == PosRational(3, 1));
    CHECK(cube.x[0].as_rational() == Rational(1));
    CHECK(cube.x[1].as_rational() == Rational(512));
}

TEST_CASE("grid evaluation of (sum w c^x)^(1/x) descends to the geometric mean") {
    LimitReport rep = geometric_limit(half_half(), SampleVector({Rational(1), Rational(4)}), 128, 20);
    CHECK(!rep.degenerate);
    // GM = 2 exactly: a point enclosure.
    CHECK(rep.direct.is_point());
    CHECK(rep.direct.contains(Rational(2)));
    REQUIRE(rep.grid.size() == 20);
    CHECK(rep.grid[0].x == Rational(1, 2));
    CHECK(rep.grid[19].x == Rational(1, 1048576));
    // x = 1/2 evaluates exactly: ((1 + 2)/2)^2 = 9/4.
    CHECK(rep.grid[0].value.contains(Rational(9, 4)));
    for (const auto& g : rep.grid)
        CHECK(compare_disjoint(g.value, rep.direct) == Ordering::Greater);
    for (size_t j = 0; j + 1 < rep.grid.size(); ++j)
        CHECK(compare_disjoint(rep.grid[j].value, rep.grid[j + 1].value) == Ordering::Greater);

    // A zero sample collapses the limit: direct is the zero point and the
    // grid is skipped.
    LimitReport dz = geometric_limit(half_half(), SampleVector({Rational(0), Rational(3)}), 64, 5);
    CHECK(dz.degenerate);
    CHECK(dz.direct.is_point());
    CHECK(dz.direct.contains(Rational(0)));
    CHECK(dz.grid.empty());
}
