// SPDX-License-Identifier: Apache-2.0
#include "ineqcert/means.hpp"

namespace ineqcert {

namespace {

unsigned long to_ulong_exponent(const Integer& e, const char* what) {
    if (!e.fits_ulong_p()) throw DomainError(std::string(what) + ": exponent too large to clear");
    return e.get_ui();
}

void require_same_length(size_t a, size_t b, const char* what) {
    if (a != b)
        throw DimensionError(std::string(what) + ": length mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
}

}  // namespace

WeightVector::WeightVector(std::vector<Rational> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw DimensionError("WeightVector: at least one weight required");
    Rational sum;
    for (size_t k = 0; k < w_.size(); ++k) {
        if (w_[k].sign() < 0)
            throw DomainError("WeightVector: weight " + std::to_string(k + 1) + " is negative (" +
                              w_[k].to_string() + ")");
        sum += w_[k];
    }
    if (!(sum == Rational(1)))
        throw DomainError("WeightVector: weights sum to " + sum.to_string() + ", deficit " +
                          (Rational(1) - sum).to_string());
}

Integer WeightVector::denominator_lcm() const {
    Integer l(1);
    for (const Rational& w : w_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), w.den().get_mpz_t());
    return l;
}

SampleVector::SampleVector(std::vector<Rational> values) : c_(std::move(values)) {
    if (c_.empty()) throw DimensionError("SampleVector: at least one sample required");
    for (size_t k = 0; k < c_.size(); ++k)
        if (c_[k].sign() < 0)
            throw DomainError("SampleVector: sample " + std::to_string(k + 1) + " is negative (" +
                              c_[k].to_string() + ")");
}

namespace {

PosRational conjugate_of(const PosRational& p) {
    if (!(p.value() > Rational(1)))
        throw DomainError("ConjugatePair: p must be > 1, got " + p.value().to_string());
    return PosRational(p.value() / (p.value() - Rational(1)));
}

}  // namespace

ConjugatePair::ConjugatePair(PosRational p) : p_(p), q_(conjugate_of(p)) {}

ExponentPair::ExponentPair(PosRational r, PosRational s) : r_(std::move(r)), s_(std::move(s)) {
    if (r_.value() > s_.value())
        throw DomainError("ExponentPair: need r <= s, got r = " + r_.value().to_string() +
                          ", s = " + s_.value().to_string());
}

RootPower::RootPower(Rational base, PosRational inner_exponent)
    : base_(std::move(base)), t_(std::move(inner_exponent)) {
    if (base_.sign() < 0)
        throw DomainError("RootPower: base must be nonnegative, got " + base_.to_string());
}

std::optional<Rational> RootPower::as_rational() const {
    if (base_.is_zero()) return Rational(0);
    // S^(1/t) materializes about bit_size(S) / t bits; decline when that
    // exceeds the exact budget so callers fall back to enclosures.
    Integer cost = Integer(bit_size(base_)) * t_.value().den();
    mpz_cdiv_q(cost.get_mpz_t(), cost.get_mpz_t(), t_.value().num().get_mpz_t());
    if (cost > kExactBitBudget) return std::nullopt;
    return pow_exact(base_, Rational(1) / t_.value());
}

Enclosure RootPower::enclosure(unsigned precision) const {
    if (base_.is_zero()) return Enclosure::point(Dyadic::zero(), precision);
    return pow_enclosure(PosRational(base_), Rational(1) / t_.value(), precision);
}

Integer RootPower::clearing_cost(const RootPower& other) const {
    // (S^b)^(1/a) vs (T^d)^(1/c) clears to S^(b c) vs T^(d a)
    Integer lhs = Integer(bit_size(base_)) * t_.value().den() * other.t_.value().num();
    Integer rhs = Integer(bit_size(other.base_)) * other.t_.value().den() * t_.value().num();
    return lhs > rhs ? lhs : rhs;
}

Integer RootPower::clearing_cost(const Rational& other) const {
    Integer lhs = Integer(bit_size(base_)) * t_.value().den();
    Integer rhs = Integer(bit_size(other)) * t_.value().num();
    return lhs > rhs ? lhs : rhs;
}

std::string RootPower::to_string() const {
    return "root(" + base_.to_string() + "," + t_.value().to_string() + ")";
}

Ordering compare(const RootPower& A, const RootPower& B) {
    if (A.is_zero() || B.is_zero()) {
        if (A.is_zero() && B.is_zero()) return Ordering::Equal;
        return A.is_zero() ? Ordering::Less : Ordering::Greater;
    }
    // A = S^(1/t) with t = a/b is (S^b)^(1/a)
    unsigned long ua = to_ulong_exponent(A.inner().value().num(), "RootPower compare");
    unsigned long ub = to_ulong_exponent(B.inner().value().num(), "RootPower compare");
    Rational cleared_a = pow_int(A.base(), A.inner().value().den());
    Rational cleared_b = pow_int(B.base(), B.inner().value().den());
    return cmp_root_pow(PosRational(cleared_a), ua, PosRational(cleared_b), ub);
}

Ordering compare(const RootPower& A, const Rational& q) {
    if (A.is_zero()) return ordering_of(-q.sign());
    if (q.sign() <= 0) return Ordering::Greater;
    // S^(b/a) vs q clears to S^b vs q^a
    return ineqcert::compare(pow_int(A.base(), A.inner().value().den()),
                             pow_int(q, A.inner().value().num()));
}

RootPower root_power_product(const RootPower& A, const RootPower& B) {
    if (A.is_zero() || B.is_zero()) return RootPower(Rational(0), PosRational(1, 1));
    // values S^(bA/aA) and T^(bB/aB); with m = lcm(aA, aB) the product is
    // (S^(bA m/aA) T^(bB m/aB))^(1/m)
    Integer aA = A.inner().value().num(), aB = B.inner().value().num();
    Integer m;
    mpz_lcm(m.get_mpz_t(), aA.get_mpz_t(), aB.get_mpz_t());
    Integer eA = A.inner().value().den() * (m / aA);
    Integer eB = B.inner().value().den() * (m / aB);
    Rational base = pow_int(A.base(), eA) * pow_int(B.base(), eB);
    return RootPower(base, PosRational(Rational(m)));
}

HolderInstance::HolderInstance(SampleVector a, SampleVector b, ConjugatePair exponents)
    : a_(std::move(a)), b_(std::move(b)), pq_(std::move(exponents)) {
    require_same_length(a_.size(), b_.size(), "HolderInstance");
}

Rational arithmetic_mean(const WeightVector& w, const SampleVector& c) {
    require_same_length(w.size(), c.size(), "arithmetic_mean");
    Rational sum;
    for (size_t k = 0; k < w.size(); ++k) sum += w[k] * c[k];
    return sum;
}

RootPower geometric_mean_repr(const WeightVector& w, const SampleVector& c) {
    require_same_length(w.size(), c.size(), "geometric_mean_repr");
    Integer L = w.denominator_lcm();
    Rational base(1);
    for (size_t k = 0; k < w.size(); ++k) {
        if (w[k].is_zero()) continue;  // c^0 = 1, including c = 0
        Rational e = w[k] * Rational(L);  // exact integer by construction of L
        if (c[k].is_zero()) return RootPower(Rational(0), PosRational(Rational(L)));
        base *= pow_int(c[k], e.num());
    }
    return RootPower(base, PosRational(Rational(L)));
}

namespace {

// c^r for r = a/b, exact; requires c to be a perfect b-th power.
Rational pow_exact_or_representability_error(const Rational& c, const PosRational& r,
                                             const char* caller) {
    const Integer& a = r.value().num();
    const Integer& b = r.value().den();
    if (b == 1) return pow_int(c, a);
    auto root = nth_root_exact(c, to_ulong_exponent(b, caller));
    if (!root)
        throw RepresentabilityError(std::string(caller) + ": sample " + c.to_string() +
                                    " is not an exact " + b.get_str() +
                                    "-th power; use enclosure mode");
    return pow_int(*root, a);
}

}  // namespace

Integer geometric_mean_clearing_bits(const WeightVector& w, const SampleVector& c) {
    require_same_length(w.size(), c.size(), "geometric_mean_clearing_bits");
    Integer L = w.denominator_lcm();
    Integer total(0);
    for (size_t k = 0; k < w.size(); ++k) {
        if (w[k].is_zero()) continue;
        Rational e = w[k] * Rational(L);
        total += e.num() * Integer(bit_size(c[k]));
    }
    return total;
}

Enclosure geometric_mean_enclosure(const WeightVector& w, const SampleVector& c,
                                   unsigned precision) {
    require_same_length(w.size(), c.size(), "geometric_mean_enclosure");
    for (size_t k = 0; k < w.size(); ++k)
        if (!w[k].is_zero() && c[k].is_zero()) return Enclosure::point(Dyadic::zero(), precision);
    for (unsigned pad = 16;; pad *= 2) {
        unsigned work = precision + pad;
        Enclosure prod = Enclosure::point(Dyadic::one(), work);
        for (size_t k = 0; k < w.size(); ++k) {
            if (w[k].is_zero() || c[k] == Rational(1)) continue;
            prod = enc_mul(prod, pow_enclosure(PosRational(c[k]), w[k], work), work);
        }
        Enclosure out = prod.rounded(precision);
        if (out.width() <= Dyadic(Integer(1), kWidthGuardBits - static_cast<long>(precision)))
            return out;
    }
}

RootPower power_mean_repr(const WeightVector& w, const SampleVector& c, const PosRational& r) {
    require_same_length(w.size(), c.size(), "power_mean_repr");
    Rational S;
    for (size_t k = 0; k < w.size(); ++k) {
        if (w[k].is_zero()) continue;
        S += w[k] * pow_exact_or_representability_error(c[k], r, "power_mean_repr");
    }
    return RootPower(S, r);
}

Enclosure power_mean_enclosure(const WeightVector& w, const SampleVector& c, const PosRational& r,
                               unsigned precision) {
    require_same_length(w.size(), c.size(), "power_mean_enclosure");
    std::optional<Rational> constant;
    bool is_constant = true;
    for (size_t k = 0; k < w.size(); ++k) {
        if (w[k].is_zero()) continue;
        if (!constant)
            constant = c[k];
        else if (!(*constant == c[k]))
            is_constant = false;
    }
    // M_r of a support-constant sample vector is that constant, for every r.
    if (is_constant) return Enclosure::of_rational(constant ? *constant : Rational(0), precision);

    Rational inv_r = Rational(1) / r.value();
    for (unsigned pad = 16;; pad *= 2) {
        unsigned work = precision + pad;
        Enclosure S = Enclosure::point(Dyadic::zero(), work);
        for (size_t k = 0; k < w.size(); ++k) {
            if (w[k].is_zero() || c[k].is_zero()) continue;
            Enclosure term = pow_enclosure(PosRational(c[k]), r.value(), work);
            S = enc_add(S, enc_mul_rational(w[k], term, work), work);
        }
        Enclosure m = enc_pow_rational(S, inv_r, work).rounded(precision);
        if (m.width() <= Dyadic(Integer(1), kWidthGuardBits - static_cast<long>(precision)))
            return m;
    }
}

HolderSides holder_sides(const HolderInstance& inst) {
    const SampleVector& a = inst.a();
    const SampleVector& b = inst.b();
    const ConjugatePair& pq = inst.exponents();
    Rational lhs;
    Rational Sa, Sb;
    for (size_t k = 0; k < a.size(); ++k) {
        lhs += a[k] * b[k];
        Sa += pow_exact_or_representability_error(a[k], pq.p(), "holder_sides");
        Sb += pow_exact_or_representability_error(b[k], pq.q(), "holder_sides");
    }
    return HolderSides{lhs, RootPower(Sa, pq.p()), RootPower(Sb, pq.q())};
}

std::string to_csv(const std::vector<Rational>& v) {
    std::string out;
    for (size_t k = 0; k < v.size(); ++k) {
        if (k) out += ",";
        out += v[k].to_string();
    }
    return out;
}

std::vector<Rational> parse_csv(std::string_view text) {
    std::vector<Rational> out;
    size_t pos = 0;
    while (true) {
        size_t comma = text.find(',', pos);
        std::string_view item =
            comma == std::string_view::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        out.push_back(Rational::parse(item));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

bool power_closed(const SampleVector& v, const Integer& d) {
    if (d <= 0) throw DomainError("power_closed: order must be positive");
    if (d == 1) return true;
    if (!d.fits_ulong_p()) return false;
    for (size_t k = 0; k < v.size(); ++k)
        if (!nth_root_exact(v[k], d.get_ui())) return false;
    return true;
}

Enclosure power_sum_enclosure(const SampleVector& x, const Rational& e, unsigned precision) {
    bool all_zero = true;
    for (size_t k = 0; k < x.size(); ++k)
        if (!x[k].is_zero()) all_zero = false;
    if (all_zero) return Enclosure::point(Dyadic::zero(), precision);

    for (unsigned pad = 16;; pad *= 2) {
        unsigned work = precision + pad;
        Enclosure S = Enclosure::point(Dyadic::zero(), work);
        for (size_t k = 0; k < x.size(); ++k) {
            if (x[k].is_zero()) continue;
            S = enc_add(S, pow_enclosure(PosRational(x[k]), e, work), work);
        }
        Enclosure out = S.rounded(precision);
        if (out.width() <= Dyadic(Integer(1), kWidthGuardBits - static_cast<long>(precision)))
            return out;
    }
}

}  // namespace ineqcert
