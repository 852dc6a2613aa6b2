// SPDX-License-Identifier: Apache-2.0
#include "ineqcert/oracle.hpp"

#include <mpfr.h>

#include "ineqcert/errors.hpp"

namespace ineqcert {

namespace {

// Minimal RAII wrapper; everything rounds to nearest.
class Fp {
public:
    explicit Fp(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Fp(const Fp&) = delete;
    Fp& operator=(const Fp&) = delete;
    ~Fp() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    void set(const Rational& q) { mpfr_set_q(v_, q.raw().get_mpq_t(), MPFR_RNDN); }

private:
    mpfr_t v_;
};

void add_mul(Fp& acc, const Rational& coeff, const Fp& x, mpfr_prec_t prec) {
    Fp c(prec), t(prec);
    c.set(coeff);
    mpfr_mul(t.get(), c.get(), x.get(), MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDN);
}

// x^e for rational x >= 0, e rational (e > 0 when x = 0).
void pow_fp(Fp& out, const Rational& x, const Rational& e, mpfr_prec_t prec) {
    Fp base(prec), expo(prec);
    base.set(x);
    expo.set(e);
    mpfr_pow(out.get(), base.get(), expo.get(), MPFR_RNDN);
}

Dyadic dyadic_of(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return Dyadic::zero();
    mpz_t mant;
    mpz_init(mant);
    mpfr_exp_t e = mpfr_get_z_2exp(mant, x);
    Dyadic out(Integer(mpz_class(mant)), static_cast<long>(e));
    mpz_clear(mant);
    return out;
}

// Weighted power sum Σ λ_k c_k^e (skipping zero weights).
void weighted_pow_sum(Fp& out, const std::vector<Rational>& w, const std::vector<Rational>& c,
                      const Rational& e, mpfr_prec_t prec) {
    for (size_t k = 0; k < w.size(); ++k) {
        if (w[k].is_zero()) continue;
        Fp t(prec);
        pow_fp(t, c[k], e, prec);
        add_mul(out, w[k], t, prec);
    }
}

}  // namespace

Dyadic OracleReport::tolerance() const {
    return Dyadic(Integer(1), 4 - static_cast<long>(precision));
}

bool OracleReport::contradicts(const Verdict& v) const {
    bool loud = gap.abs() > tolerance();
    switch (v.outcome) {
        case Verdict::Outcome::Holds: return apparent == Ordering::Greater && loud;
        case Verdict::Outcome::Equality: return loud;
        case Verdict::Outcome::Fails: return apparent == Ordering::Less && loud;
        case Verdict::Outcome::Undecided: return false;
    }
    throw InternalError("OracleReport::contradicts: invalid outcome enum value");
}

std::string OracleReport::to_string() const {
    return "apparent=" + ineqcert::to_string(apparent) + ";gap=" + gap.to_string() +
           ";precision=" + std::to_string(precision);
}

OracleReport brute_oracle(const InstanceSpec& inst, unsigned precision) {
    validate_instance(inst);
    if (precision < 8) throw InputError("brute_oracle: precision must be >= 8 bits");
    // Evaluate with 64 guard bits beyond the reported precision: rounding
    // error grows with operand magnitude, and the guard keeps it below
    // tolerance() = 2^(4-precision) for any magnitude this tool meets, so an
    // exact equality is never reported as a loud gap.
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(precision) + 64;
    Fp lhs(prec), rhs(prec);

    switch (inst.kind) {
        case InstanceKind::Amgm: {
            // lhs = Π c_k^{λ_k}, rhs = Σ λ_k c_k
            Fp prod(prec);
            mpfr_set_ui(prod.get(), 1, MPFR_RNDN);
            for (size_t k = 0; k < inst.w.size(); ++k) {
                if (inst.w[k].is_zero()) continue;
                Fp t(prec);
                pow_fp(t, inst.c[k], inst.w[k], prec);
                mpfr_mul(prod.get(), prod.get(), t.get(), MPFR_RNDN);
            }
            mpfr_set(lhs.get(), prod.get(), MPFR_RNDN);
            for (size_t k = 0; k < inst.w.size(); ++k) {
                Fp t(prec);
                t.set(inst.c[k]);
                add_mul(rhs, inst.w[k], t, prec);
            }
            break;
        }
        case InstanceKind::Holder: {
            // lhs = Σ a_k b_k, rhs = (Σ a_k^p)^{1/p} (Σ b_k^q)^{1/q}
            Rational p = *inst.p;
            Rational q = p / (p - Rational(1));
            for (size_t k = 0; k < inst.a.size(); ++k) {
                Fp t(prec);
                t.set(inst.b[k]);
                add_mul(lhs, inst.a[k], t, prec);
            }
            Fp sum_a(prec), sum_b(prec), root_a(prec), root_b(prec);
            for (size_t k = 0; k < inst.a.size(); ++k) {
                Fp ta(prec), tb(prec);
                pow_fp(ta, inst.a[k], p, prec);
                pow_fp(tb, inst.b[k], q, prec);
                mpfr_add(sum_a.get(), sum_a.get(), ta.get(), MPFR_RNDN);
                mpfr_add(sum_b.get(), sum_b.get(), tb.get(), MPFR_RNDN);
            }
            Fp inv_p(prec), inv_q(prec);
            inv_p.set(Rational(1) / p);
            inv_q.set(Rational(1) / q);
            mpfr_pow(root_a.get(), sum_a.get(), inv_p.get(), MPFR_RNDN);
            mpfr_pow(root_b.get(), sum_b.get(), inv_q.get(), MPFR_RNDN);
            mpfr_mul(rhs.get(), root_a.get(), root_b.get(), MPFR_RNDN);
            break;
        }
        case InstanceKind::PowerMean: {
            // lhs = M_r, rhs = M_s
            Fp sum_r(prec), sum_s(prec), inv(prec);
            weighted_pow_sum(sum_r, inst.w, inst.c, *inst.r, prec);
            weighted_pow_sum(sum_s, inst.w, inst.c, *inst.s, prec);
            inv.set(Rational(1) / *inst.r);
            mpfr_pow(lhs.get(), sum_r.get(), inv.get(), MPFR_RNDN);
            inv.set(Rational(1) / *inst.s);
            mpfr_pow(rhs.get(), sum_s.get(), inv.get(), MPFR_RNDN);
            break;
        }
    }

    Fp gap(prec);
    mpfr_sub(gap.get(), rhs.get(), lhs.get(), MPFR_RNDN);
    int sign = mpfr_sgn(gap.get());
    OracleReport report{sign > 0 ? Ordering::Less : (sign < 0 ? Ordering::Greater : Ordering::Equal),
                        dyadic_of(gap.get()), precision};
    return report;
}

}  // namespace ineqcert
