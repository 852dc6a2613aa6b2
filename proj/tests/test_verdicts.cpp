// SPDX-License-Identifier: Apache-2.0
//
// Verdict-layer tests: the three inequality checkers, their margin reporting,
// the equality characterizations, and the UNDECIDED path at the precision cap.

#include "doctest.h"

#include <string>

#include "ineqcert/verdicts.hpp"

using namespace ineqcert;

namespace {

WeightVector half_half() { return WeightVector({Rational(1, 2), Rational(1, 2)}); }

}  // namespace

TEST_CASE("arithmetic-geometric verdicts on exactly decidable instances") {
    // GM = 2, AM = 5/2: exact rational margin, decided with no enclosures.
    Verdict v = check_amgm(half_half(), SampleVector({Rational(1), Rational(4)}));
    CHECK(v.outcome == Verdict::Outcome::Holds);
    CHECK(v.decided());
    CHECK(v.margin_exact == Rational(1, 2));
    CHECK(v.precision_used == 0);
    CHECK(!v.witness.has_value());
    CHECK(v.to_line() == "HOLDS;margin=1/2;precision=0");

    // Constant samples: the equality case.
    Verdict e = check_amgm(half_half(), SampleVector({Rational(3), Rational(3)}));
    CHECK(e.outcome == Verdict::Outcome::Equality);
    CHECK(e.margin_exact == Rational(0));
    CHECK(e.to_line() == "EQUALITY;margin=0/1;precision=0");

    // A zero sample collapses the geometric mean, so the margin is the
    // arithmetic mean itself.
    Verdict z = check_amgm(half_half(), SampleVector({Rational(0), Rational(5)}));
    CHECK(z.to_line() == "HOLDS;margin=5/2;precision=0");
}

TEST_CASE("root clearing decides irrational geometric means without rounding") {
    // GM = sqrt(2) is irrational, but (3/2)^2 > 2 settles the comparison
    // exactly: precision_used stays 0 and only the reported margin needs an
    // enclosure.
    Verdict v = check_amgm(half_half(), SampleVector({Rational(1), Rational(2)}));
    CHECK(v.outcome == Verdict::Outcome::Holds);
    CHECK(v.precision_used == 0);
    CHECK(!v.margin_exact.has_value());
    REQUIRE(v.margin_enclosure.has_value());
    CHECK(v.margin_enclosure->strictly_positive());
    // margin = 3/2 - sqrt(2) = 0.08578..., bracketed loosely here.
    CHECK(v.margin_enclosure->lower().to_rational() > Rational(8, 100));
    CHECK(v.margin_enclosure->upper().to_rational() < Rational(9, 100));
    std::string line = v.to_line();
    CHECK(line.substr(0, 13) == "HOLDS;margin=");
    CHECK(line.substr(line.size() - 12) == ";precision=0");
}

TEST_CASE("margins are invariant under permuting the instance") {
    // Exact geometric mean: 1^{1/4} 4^{1/4} 2^{1/2} = 2.
    WeightVector w1({Rational(1, 4), Rational(1, 4), Rational(1, 2)});
    SampleVector c1({Rational(1), Rational(4), Rational(2)});
    WeightVector w2({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
    SampleVector c2({Rational(2), Rational(4), Rational(1)});
    CHECK(check_amgm(w1, c1).to_line() == "HOLDS;margin=1/4;precision=0");
    CHECK(check_amgm(w1, c1).to_line() == check_amgm(w2, c2).to_line());

    // Power-closed samples: M_1 = 25/4, M_{1/2} = 81/16, margin 19/16.
    ExponentPair ex(PosRational(1, 2), PosRational(1, 1));
    SampleVector p1({Rational(1), Rational(16), Rational(4)});
    SampleVector p2({Rational(4), Rational(16), Rational(1)});
    CHECK(check_power_mean(w1, p1, ex).to_line() == "HOLDS;margin=19/16;precision=0");
    CHECK(check_power_mean(w1, p1, ex).to_line() == check_power_mean(w2, p2, ex).to_line());
}

TEST_CASE("Hoelder verdicts cover equality, disjoint supports, and strict cases") {
    ConjugatePair p2(PosRational(2, 1));

    // (a_k^p) proportional to (b_k^q): equality with zero margin.
    HolderInstance prop(SampleVector({Rational(1), Rational(2)}),
                        SampleVector({Rational(2), Rational(4)}), p2);
    CHECK(check_holder(prop).to_line() == "EQUALITY;margin=0/1;precision=0");

    // A single term is always the equality case.
    HolderInstance single(SampleVector({Rational(3)}), SampleVector({Rational(5)}), p2);
    CHECK(check_holder(single).to_line() == "EQUALITY;margin=0/1;precision=0");

    // Disjoint supports: LHS = 0, RHS = 1, exact margin 1.
    HolderInstance disjoint(SampleVector({Rational(1), Rational(0)}),
                            SampleVector({Rational(0), Rational(1)}), p2);
    CHECK(check_holder(disjoint).to_line() == "HOLDS;margin=1/1;precision=0");

    // Strict instance: LHS = 3, RHS = sqrt(10). Decided by clearing
    // (precision_used = 0) with margin sqrt(10) - 3 in (0.16, 0.17).
    HolderInstance strict(SampleVector({Rational(1), Rational(1)}),
                          SampleVector({Rational(1), Rational(2)}), p2);
    Verdict v = check_holder(strict);
    CHECK(v.outcome == Verdict::Outcome::Holds);
    CHECK(v.precision_used == 0);
    REQUIRE(v.margin_enclosure.has_value());
    CHECK(v.margin_enclosure->strictly_positive());
    CHECK(v.margin_enclosure->lower().to_rational() > Rational(16, 100));
    CHECK(v.margin_enclosure->upper().to_rational() < Rational(17, 100));
}

TEST_CASE("power-mean verdicts: equal exponents, exact margins, chain order") {
    // r = s is equality by definition.
    Verdict eq = check_power_mean(half_half(), SampleVector({Rational(2), Rational(3)}),
                                  ExponentPair(PosRational(2, 1), PosRational(2, 1)));
    CHECK(eq.to_line() == "EQUALITY;margin=0/1;precision=0");

    // M_{1/2}(1,64) = 81/4, M_1 = 65/2: margin 49/4, computed exactly.
    Verdict v = check_power_mean(half_half(), SampleVector({Rational(1), Rational(64)}),
                                 ExponentPair(PosRational(1, 2), PosRational(1, 1)));
    CHECK(v.to_line() == "HOLDS;margin=49/4;precision=0");

    // Monotonicity along a chain of exponents: never FAILS, and strictly
    // positive margins for non-constant samples.
    WeightVector w({Rational(1, 5), Rational(2, 5), Rational(2, 5)});
    SampleVector c({Rational(2), Rational(7), Rational(9)});
    const std::pair<PosRational, PosRational> chain[] = {
        {PosRational(1, 3), PosRational(1, 2)},
        {PosRational(1, 2), PosRational(1, 1)},
        {PosRational(1, 1), PosRational(2, 1)},
        {PosRational(1, 3), PosRational(2, 1)},
    };
    for (const auto& [r, s] : chain) {
        Verdict step = check_power_mean(w, c, ExponentPair(r, s));
        CHECK(step.decided());
        CHECK(step.outcome == Verdict::Outcome::Holds);
    }
}

TEST_CASE("a margin below the precision cap is reported UNDECIDED, not guessed") {
    // Samples differing by 2^-4200 put the true margin near 2^-8400, far
    // below what precision 4096 can separate from zero.
    Rational tiny = pow_int(Rational(1, 2), 4200);
    SampleVector c({Rational(2), Rational(2) + tiny});
    Verdict v = check_power_mean(half_half(), c,
                                 ExponentPair(PosRational(1, 2), PosRational(1, 1)));
    CHECK(v.outcome == Verdict::Outcome::Undecided);
    CHECK(!v.decided());
    CHECK(v.precision_used == kPrecisionCap);
    REQUIRE(v.margin_enclosure.has_value());
    CHECK(v.margin_enclosure->contains(Rational(0)));
    std::string line = v.to_line();
    CHECK(line.substr(0, 10) == "UNDECIDED;");
    CHECK(line.substr(line.size() - 15) == ";precision=4096");
}

TEST_CASE("equality characterization: constant on the support, 1-based witness") {
    // Constant samples wherever the weight is positive: equality, no witness.
    WeightVector w_gap({Rational(1, 2), Rational(0), Rational(1, 2)});
    SampleVector c_gap({Rational(3), Rational(99), Rational(3)});
    EqualityCharacterization ec = equality_characterization(w_gap, c_gap);
    CHECK(ec.equal);
    CHECK(!ec.witness.has_value());

    // First differing support pair, reported 1-based.
    WeightVector w3({Rational(1, 3), Rational(1, 3), Rational(1, 3)});
    EqualityCharacterization ne =
        equality_characterization(w3, SampleVector({Rational(5), Rational(5), Rational(8)}));
    CHECK(!ne.equal);
    REQUIRE(ne.witness.has_value());
    CHECK(ne.witness->first == 1);
    CHECK(ne.witness->second == 3);

    // Zero-weight indices are not eligible witnesses.
    WeightVector w0({Rational(0), Rational(1, 2), Rational(1, 2)});
    EqualityCharacterization z =
        equality_characterization(w0, SampleVector({Rational(7), Rational(4), Rational(4)}));
    CHECK(z.equal);
    CHECK(!z.witness.has_value());

    // The witness pair agrees with the checker's verdict.
    Verdict v = check_amgm(w3, SampleVector({Rational(5), Rational(5), Rational(8)}));
    CHECK(v.outcome == Verdict::Outcome::Holds);
}

TEST_CASE("holder_proportional: true, false, and out-of-budget cases") {
    ConjugatePair p2(PosRational(2, 1));

    CHECK(holder_proportional(HolderInstance(SampleVector({Rational(1), Rational(2)}),
                                             SampleVector({Rational(2), Rational(4)}), p2)) ==
          true);
    CHECK(holder_proportional(HolderInstance(SampleVector({Rational(1), Rational(1)}),
                                             SampleVector({Rational(1), Rational(2)}), p2)) ==
          false);
    // Mismatched zero patterns cannot be proportional.
    CHECK(holder_proportional(HolderInstance(SampleVector({Rational(1), Rational(0)}),
                                             SampleVector({Rational(0), Rational(1)}), p2)) ==
          false);
    // One side identically zero: equality (both sides vanish).
    CHECK(holder_proportional(HolderInstance(SampleVector({Rational(0), Rational(0)}),
                                             SampleVector({Rational(1), Rational(2)}), p2)) ==
          true);

    // p = 1000001/1000000 forces cross powers past the exact bit budget:
    // the exact test abstains but the checker still decides via enclosures.
    HolderInstance big(SampleVector({Rational(17), Rational(2)}),
                       SampleVector({Rational(3), Rational(1)}),
                       ConjugatePair(PosRational(1000001, 1000000)));
    CHECK(!holder_proportional(big).has_value());
    Verdict v = check_holder(big);
    CHECK(v.outcome == Verdict::Outcome::Holds);
    CHECK(v.precision_used == 64);
    REQUIRE(v.margin_enclosure.has_value());
    CHECK(v.margin_enclosure->strictly_positive());
    // LHS = 53 and RHS tends to 19 * 3 = 57 as p -> 1: margin close to 4.
    CHECK(v.margin_enclosure->lower().to_rational() > Rational(39, 10));
    CHECK(v.margin_enclosure->upper().to_rational() < Rational(41, 10));
}

TEST_CASE("outcome names are the wire spellings") {
    CHECK(to_string(Verdict::Outcome::Holds) == "HOLDS");
    CHECK(to_string(Verdict::Outcome::Equality) == "EQUALITY");
    CHECK(to_string(Verdict::Outcome::Fails) == "FAILS");
    CHECK(to_string(Verdict::Outcome::Undecided) == "UNDECIDED");
}

TEST_CASE("checkers are deterministic: repeated calls give identical lines") {
    WeightVector w({Rational(2, 7), Rational(5, 7)});
    SampleVector c({Rational(3), Rational(11)});
    Verdict first = check_amgm(w, c);
    for (int i = 0; i < 3; ++i) CHECK(check_amgm(w, c).to_line() == first.to_line());

    HolderInstance h(SampleVector({Rational(1), Rational(3)}),
                     SampleVector({Rational(2), Rational(5)}), ConjugatePair(PosRational(3, 2)));
    Verdict hv = check_holder(h);
    for (int i = 0; i < 3; ++i) CHECK(check_holder(h).to_line() == hv.to_line());
}
