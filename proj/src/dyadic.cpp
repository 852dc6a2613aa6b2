// SPDX-License-Identifier: Apache-2.0
#include "ineqcert/dyadic.hpp"

namespace ineqcert {

void Dyadic::canonicalize() {
    if (mant_ == 0) {
        exp2_ = 0;
        return;
    }
    unsigned long tz = mpz_scan1(mant_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_fdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), tz);
        exp2_ += static_cast<long>(tz);
    }
}

Dyadic Dyadic::from_rational(const Rational& q, unsigned prec, RoundDir dir) {
    if (q.is_zero()) return Dyadic();
    Integer scaled;
    mpz_mul_2exp(scaled.get_mpz_t(), q.num().get_mpz_t(), prec);
    Integer m;
    if (dir == RoundDir::Down) {
        mpz_fdiv_q(m.get_mpz_t(), scaled.get_mpz_t(), q.den().get_mpz_t());
    } else {
        mpz_cdiv_q(m.get_mpz_t(), scaled.get_mpz_t(), q.den().get_mpz_t());
    }
    return Dyadic(m, -static_cast<long>(prec));
}

Rational Dyadic::to_rational() const {
    if (mant_ == 0) return Rational(0);
    if (exp2_ >= 0) {
        Integer n;
        mpz_mul_2exp(n.get_mpz_t(), mant_.get_mpz_t(), static_cast<unsigned long>(exp2_));
        return Rational(n);
    }
    Integer d(1);
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(-exp2_));
    return Rational(mant_, d);
}

long Dyadic::floor_log2_abs() const {
    if (mant_ == 0) throw DomainError("floor_log2_abs of zero");
    // canonical mantissa is odd, so bit length is exact
    return exp2_ + static_cast<long>(mpz_sizeinbase(mant_.get_mpz_t(), 2)) - 1;
}

Dyadic Dyadic::rounded(unsigned prec, RoundDir dir) const {
    long target = -static_cast<long>(prec);
    if (mant_ == 0 || exp2_ >= target) return *this;
    unsigned long shift = static_cast<unsigned long>(target - exp2_);
    Integer m;
    if (dir == RoundDir::Down) {
        mpz_fdiv_q_2exp(m.get_mpz_t(), mant_.get_mpz_t(), shift);
    } else {
        mpz_cdiv_q_2exp(m.get_mpz_t(), mant_.get_mpz_t(), shift);
    }
    return Dyadic(m, target);
}

Dyadic Dyadic::operator-() const {
    Dyadic r;
    r.mant_ = -mant_;
    r.exp2_ = mant_ == 0 ? 0 : exp2_;
    return r;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long e = std::min(a.exp2_, b.exp2_);
    Integer ma, mb;
    mpz_mul_2exp(ma.get_mpz_t(), a.mant_.get_mpz_t(), static_cast<unsigned long>(a.exp2_ - e));
    mpz_mul_2exp(mb.get_mpz_t(), b.mant_.get_mpz_t(), static_cast<unsigned long>(b.exp2_ - e));
    return Dyadic(ma + mb, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.mant_ * b.mant_, a.exp2_ + b.exp2_);
}

Dyadic Dyadic::mul_pow2(long k) const {
    if (mant_ == 0) return *this;
    Dyadic r = *this;
    r.exp2_ += k;
    return r;
}

std::string Dyadic::to_string() const {
    return mant_.get_str() + "*2^" + std::to_string(exp2_);
}

Ordering compare(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return ordering_of(sa - sb);
    if (sa == 0) return Ordering::Equal;
    Dyadic d = a - b;
    return ordering_of(d.sign());
}

}  // namespace ineqcert
