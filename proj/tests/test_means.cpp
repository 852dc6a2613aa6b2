// SPDX-License-Identifier: Apache-2.0
//
// Weight/sample vectors, conjugate and power-mean exponents, RootPower
// clearing, and the mean evaluators (exact representations against
// enclosures).

#include <algorithm>

#include "doctest.h"

#include "ineqcert/generator.hpp"
#include "ineqcert/means.hpp"

using namespace ineqcert;

namespace {

WeightVector half_half() { return WeightVector({Rational(1, 2), Rational(1, 2)}); }

Rational max_width(unsigned precision) {
    return Dyadic(Integer(1), static_cast<long>(kWidthGuardBits) - static_cast<long>(precision))
        .to_rational();
}

}  // namespace

TEST_CASE("weight vector enforces an exact sum of 1") {
    CHECK(WeightVector({Rational(1, 5), Rational(3, 10), Rational(1, 2)}).size() == 3);
    CHECK(WeightVector({Rational(1)}).size() == 1);
    CHECK(WeightVector({Rational(0), Rational(1)})[0] == Rational(0));
    CHECK_THROWS_WITH_AS(WeightVector({Rational(1, 2), Rational(1, 3)}),
                         "WeightVector: weights sum to 5/6, deficit 1/6", DomainError);
    CHECK_THROWS_AS(WeightVector({Rational(3, 2), Rational(-1, 2)}), DomainError);
    CHECK_THROWS_AS(WeightVector({}), DimensionError);
}

TEST_CASE("weight vector denominator lcm") {
    CHECK(WeightVector({Rational(1, 2), Rational(1, 3), Rational(1, 6)}).denominator_lcm() == 6);
    CHECK(WeightVector({Rational(1)}).denominator_lcm() == 1);
    CHECK(WeightVector({Rational(3, 4), Rational(1, 4)}).denominator_lcm() == 4);
}

TEST_CASE("sample vector rejects negative entries") {
    CHECK(SampleVector({Rational(0), Rational(7, 3)}).size() == 2);
    CHECK_THROWS_WITH_AS(SampleVector({Rational(1), Rational(-2)}),
                         "SampleVector: sample 2 is negative (-2/1)", DomainError);
    CHECK_THROWS_AS(SampleVector({}), DimensionError);
}

TEST_CASE("conjugate exponents satisfy 1/p + 1/q = 1") {
    ConjugatePair two{PosRational(2, 1)};
    CHECK(two.q().value() == Rational(2));
    ConjugatePair p32{PosRational(3, 2)};
    CHECK(p32.q().value() == Rational(3));
    ConjugatePair p7{PosRational(7, 1)};
    CHECK(Rational(1) / p7.p().value() + Rational(1) / p7.q().value() == Rational(1));
    CHECK_THROWS_AS(ConjugatePair{PosRational(1, 1)}, DomainError);
    CHECK_THROWS_AS(ConjugatePair{PosRational(9, 10)}, DomainError);
}

TEST_CASE("exponent pair requires 0 < r <= s") {
    ExponentPair ok{PosRational(1, 2), PosRational(2, 1)};
    CHECK(ok.r().value() == Rational(1, 2));
    CHECK(ok.s().value() == Rational(2));
    ExponentPair tie{PosRational(3, 4), PosRational(3, 4)};
    CHECK(tie.r() == tie.s());
    CHECK_THROWS_AS(ExponentPair(PosRational(2, 1), PosRational(1, 2)), DomainError);
    CHECK_THROWS_AS(PosRational(0, 1), DomainError);
    CHECK_THROWS_AS(PosRational(-1, 2), DomainError);
}

TEST_CASE("root power reduces to a rational exactly when one exists") {
    CHECK(RootPower(Rational(4), PosRational(2, 1)).as_rational() == Rational(2));
    CHECK(RootPower(Rational(27, 8), PosRational(3, 1)).as_rational() == Rational(3, 2));
    CHECK(RootPower(Rational(0), PosRational(5, 1)).as_rational() == Rational(0));
    CHECK(RootPower(Rational(5), PosRational(1, 1)).as_rational() == Rational(5));
    // t = a/b means the value is (S^b)^(1/a): with t = 1/2 that is S^2.
    CHECK(RootPower(Rational(2), PosRational(1, 2)).as_rational() == Rational(4));
    CHECK(!RootPower(Rational(2), PosRational(2, 3)).as_rational().has_value());  // sqrt 8
    CHECK(!RootPower(Rational(2), PosRational(2, 1)).as_rational().has_value());
    CHECK(!RootPower(Rational(6), PosRational(3, 1)).as_rational().has_value());
    CHECK_THROWS_AS(RootPower(Rational(-1), PosRational(2, 1)), DomainError);
}

TEST_CASE("root power comparison clears to integer powers") {
    // 2^(1/2) = 1.414... < 3^(1/3) = 1.442...: cleared, 2^3 = 8 < 9 = 3^2.
    CHECK(compare(RootPower(Rational(2), PosRational(2, 1)),
                  RootPower(Rational(3), PosRational(3, 1))) == Ordering::Less);
    CHECK(compare(RootPower(Rational(4), PosRational(2, 1)),
                  RootPower(Rational(8), PosRational(3, 1))) == Ordering::Equal);
    CHECK(compare(RootPower(Rational(2), PosRational(2, 1)), Rational(3, 2)) == Ordering::Less);
    CHECK(compare(RootPower(Rational(2), PosRational(2, 1)), Rational(7, 5)) == Ordering::Greater);
    CHECK(compare(RootPower(Rational(0), PosRational(2, 1)), Rational(0)) == Ordering::Equal);
}

TEST_CASE("root power product stays exact over the lcm root") {
    RootPower sqrt2(Rational(2), PosRational(2, 1));
    CHECK(root_power_product(sqrt2, sqrt2).as_rational() == Rational(2));
    // 2^(1/2) * 2^(1/3) = 2^(5/6) = (2^5)^(1/6)
    RootPower prod = root_power_product(sqrt2, RootPower(Rational(2), PosRational(3, 1)));
    CHECK(compare(prod, RootPower(Rational(32), PosRational(6, 1))) == Ordering::Equal);
}

TEST_CASE("root power enclosure brackets the value") {
    RootPower sqrt2(Rational(2), PosRational(2, 1));
    for (unsigned prec : {32u, 64u, 256u}) {
        Enclosure e = sqrt2.enclosure(prec);
        Rational lo = e.lower().to_rational(), hi = e.upper().to_rational();
        CHECK(lo * lo <= Rational(2));
        CHECK(hi * hi >= Rational(2));
        CHECK(e.width().to_rational() <= max_width(prec));
    }
    CHECK(RootPower(Rational(4), PosRational(2, 1)).enclosure(64).contains(Rational(2)));
}

TEST_CASE("arithmetic mean is the exact weighted sum") {
    CHECK(arithmetic_mean(half_half(), SampleVector({Rational(1), Rational(4)})) == Rational(5, 2));
    CHECK(arithmetic_mean(WeightVector({Rational(1, 5), Rational(3, 10), Rational(1, 2)}),
                          SampleVector({Rational(10), Rational(0), Rational(3)})) ==
          Rational(7, 2));
    CHECK_THROWS_AS(arithmetic_mean(half_half(), SampleVector({Rational(1)})), DimensionError);
}

TEST_CASE("geometric mean reduces exactly on closed instances") {
    CHECK(geometric_mean_repr(half_half(), SampleVector({Rational(1), Rational(4)})).as_rational() ==
          Rational(2));
    CHECK(geometric_mean_repr(WeightVector({Rational(2, 3), Rational(1, 3)}),
                              SampleVector({Rational(3), Rational(81)}))
              .as_rational() == Rational(9));
    // A zero sample with positive weight collapses the product.
    CHECK(geometric_mean_repr(half_half(), SampleVector({Rational(0), Rational(4)})).is_zero());
    // Zero-weight entries are excluded from the product.
    CHECK(geometric_mean_repr(WeightVector({Rational(1), Rational(0)}),
                              SampleVector({Rational(7), Rational(0)}))
              .as_rational() == Rational(7));
}

TEST_CASE("geometric mean enclosure agrees with the exact representation") {
    SplitMix64 g(4242);
    for (int i = 0; i < 20; ++i) {
        size_t n = static_cast<size_t>(g.next_in(1, 5));
        std::vector<Rational> raw, samples;
        for (size_t k = 0; k < n; ++k) {
            raw.emplace_back(static_cast<long>(g.next_in(1, 9)));
            samples.emplace_back(static_cast<long>(g.next_in(1, 40)),
                                 static_cast<long>(g.next_in(1, 40)));
        }
        WeightVector w = normalize_weights(raw);
        SampleVector c{samples};
        Enclosure e = geometric_mean_enclosure(w, c, 96);
        CHECK(e.width().to_rational() <= max_width(96));
        RootPower exact = geometric_mean_repr(w, c);
        if (auto q = exact.as_rational()) {
            CHECK(e.contains(*q));
        } else {
            // The enclosure and the cleared representation must order
            // consistently against the enclosure midpoint's neighbours.
            CHECK(compare(exact, e.upper().to_rational()) != Ordering::Greater);
            CHECK(compare(exact, e.lower().to_rational()) != Ordering::Less);
        }
    }
}

TEST_CASE("power mean representation requires power-closed samples") {
    WeightVector w = half_half();
    // M_{1/2} of (1, 64): (1/2 + 8/2)^2 = 81/4.
    CHECK(power_mean_repr(w, SampleVector({Rational(1), Rational(64)}), PosRational(1, 2))
              .as_rational() == Rational(81, 4));
    // M_2 of (3, 4) with equal weights: sqrt(25/2), irrational but cleared.
    RootPower m2 = power_mean_repr(w, SampleVector({Rational(3), Rational(4)}), PosRational(2, 1));
    CHECK(compare(m2, Rational(7, 2)) == Ordering::Greater);
    CHECK(compare(m2, Rational(4)) == Ordering::Less);
    // M_{1/2} of (1, 2): 2 is not a perfect square.
    CHECK_THROWS_AS(
        power_mean_repr(w, SampleVector({Rational(1), Rational(2)}), PosRational(1, 2)),
        RepresentabilityError);
}

TEST_CASE("power mean enclosure brackets the exact value and respects bounds") {
    WeightVector w({Rational(1, 4), Rational(3, 4)});
    SampleVector c({Rational(1), Rational(4)});
    for (unsigned prec : {48u, 96u}) {
        for (long num : {1L, 2L, 3L}) {
            PosRational r(num, 2);
            Enclosure e = power_mean_enclosure(w, c, r, prec);
            CHECK(e.width().to_rational() <= max_width(prec));
            // min and max of the support bound every power mean.
            CHECK(e.upper().to_rational() >= Rational(1));
            CHECK(e.lower().to_rational() <= Rational(4));
        }
    }
    // M_1 equals the arithmetic mean exactly.
    CHECK(power_mean_enclosure(w, c, PosRational(1, 1), 64).contains(Rational(13, 4)));
    CHECK(power_mean_enclosure(w, c, PosRational(1, 2), 64)
              .contains(*power_mean_repr(w, c, PosRational(1, 2)).as_rational()));
}

TEST_CASE("power mean enclosure is constant on constant support") {
    WeightVector w({Rational(0), Rational(2, 3), Rational(1, 3)});
    SampleVector c({Rational(99), Rational(5, 7), Rational(5, 7)});
    Enclosure e = power_mean_enclosure(w, c, PosRational(3, 5), 64);
    CHECK(e.contains(Rational(5, 7)));
    CHECK(e.width().to_rational() <= max_width(64));
}

TEST_CASE("power mean is permutation invariant") {
    WeightVector w({Rational(1, 6), Rational(1, 3), Rational(1, 2)});
    SampleVector c({Rational(9), Rational(25), Rational(4)});
    WeightVector wp({Rational(1, 2), Rational(1, 6), Rational(1, 3)});
    SampleVector cp({Rational(4), Rational(9), Rational(25)});
    CHECK(arithmetic_mean(w, c) == arithmetic_mean(wp, cp));
    Rational exact = *power_mean_repr(w, c, PosRational(1, 2)).as_rational();
    CHECK(*power_mean_repr(wp, cp, PosRational(1, 2)).as_rational() == exact);
    CHECK(power_mean_enclosure(w, c, PosRational(1, 2), 64).contains(exact));
    CHECK(power_mean_enclosure(wp, cp, PosRational(1, 2), 64).contains(exact));
}

TEST_CASE("power mean scales homogeneously") {
    WeightVector w = half_half();
    SampleVector c({Rational(1), Rational(4)});
    SampleVector c4({Rational(4), Rational(16)});
    // M_r(w, 4c) = 4 M_r(w, c), exactly on closed instances.
    CHECK(*power_mean_repr(w, c4, PosRational(1, 2)).as_rational() ==
          Rational(4) * *power_mean_repr(w, c, PosRational(1, 2)).as_rational());
    CHECK(arithmetic_mean(w, c4) == Rational(4) * arithmetic_mean(w, c));
}

TEST_CASE("holder sides evaluate exactly on closed instances") {
    HolderInstance inst(SampleVector({Rational(1), Rational(2)}),
                        SampleVector({Rational(1), Rational(2)}), ConjugatePair(PosRational(2, 1)));
    HolderSides sides = holder_sides(inst);
    CHECK(sides.lhs == Rational(5));
    CHECK(root_power_product(sides.rhs_a, sides.rhs_b).as_rational() == Rational(5));

    // Disjoint supports: lhs 0, rhs 1.
    HolderInstance disjoint(SampleVector({Rational(1), Rational(0)}),
                            SampleVector({Rational(0), Rational(1)}),
                            ConjugatePair(PosRational(2, 1)));
    HolderSides ds = holder_sides(disjoint);
    CHECK(ds.lhs == Rational(0));
    CHECK(root_power_product(ds.rhs_a, ds.rhs_b).as_rational() == Rational(1));
}

TEST_CASE("power_closed detects exact d-th powers") {
    CHECK(power_closed(SampleVector({Rational(4), Rational(9, 16)}), Integer(2)));
    CHECK(power_closed(SampleVector({Rational(0), Rational(1)}), Integer(7)));
    CHECK(!power_closed(SampleVector({Rational(4), Rational(2)}), Integer(2)));
    CHECK(power_closed(SampleVector({Rational(64)}), Integer(6)));
    CHECK(!power_closed(SampleVector({Rational(64)}), Integer(7)));
    CHECK(power_closed(SampleVector({Rational(5)}), Integer(1)));
    CHECK_THROWS_AS(power_closed(SampleVector({Rational(1)}), Integer(0)), DomainError);
}

TEST_CASE("csv round trips canonical rational lists") {
    std::vector<Rational> v{Rational(1, 2), Rational(0), Rational(7, 3)};
    CHECK(to_csv(v) == "1/2,0/1,7/3");
    CHECK(parse_csv("1/2,0/1,7/3") == v);
    CHECK(parse_csv("3") == std::vector<Rational>{Rational(3)});
    CHECK_THROWS_AS(parse_csv(""), DomainError);
    CHECK_THROWS_AS(parse_csv("1,,2"), DomainError);
    CHECK_THROWS_AS(parse_csv("1, 2"), DomainError);  // no whitespace in canonical form
}
