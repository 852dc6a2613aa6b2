// SPDX-License-Identifier: Apache-2.0
#include "ineqcert/enclosure.hpp"

#include <map>
#include <mutex>

namespace ineqcert {

namespace {

// Result-magnitude guard for pow/exp sizing; beyond this the value would not
// be representable at desk scale anyway.
constexpr long kMagnitudeLimitBits = 1L << 22;

Dyadic two_pow(long e) { return Dyadic(Integer(1), e); }

Dyadic rounded_div(const Rational& num, const Rational& den, unsigned prec, RoundDir dir) {
    return Dyadic::from_rational(num / den, prec, dir);
}

}  // namespace

Enclosure::Enclosure(Dyadic lower, Dyadic upper, unsigned precision)
    : lo_(std::move(lower)), hi_(std::move(upper)), prec_(precision) {
    if (prec_ == 0) throw DomainError("Enclosure: precision must be positive");
    if (compare(lo_, hi_) == Ordering::Greater)
        throw InternalError("Enclosure: lower > upper (" + lo_.to_string() + " > " + hi_.to_string() + ")");
}

Enclosure Enclosure::of_rational(const Rational& q, unsigned precision) {
    return Enclosure(Dyadic::from_rational(q, precision, RoundDir::Down),
                     Dyadic::from_rational(q, precision, RoundDir::Up), precision);
}

bool Enclosure::contains(const Rational& q) const {
    return compare(lo_.to_rational(), q) != Ordering::Greater &&
           compare(hi_.to_rational(), q) != Ordering::Less;
}

Dyadic Enclosure::mag() const {
    Dyadic la = lo_.abs(), ha = hi_.abs();
    return la > ha ? la : ha;
}

Enclosure Enclosure::rounded(unsigned precision) const {
    return Enclosure(lo_.rounded(precision, RoundDir::Down), hi_.rounded(precision, RoundDir::Up),
                     precision);
}

std::string Enclosure::to_string() const {
    return "[" + lo_.to_string() + ", " + hi_.to_string() + "]@" + std::to_string(prec_);
}

std::optional<Ordering> compare_disjoint(const Enclosure& a, const Enclosure& b) {
    if (a.upper() < b.lower()) return Ordering::Less;
    if (a.lower() > b.upper()) return Ordering::Greater;
    if (a.is_point() && b.is_point() && a.lower() == b.lower()) return Ordering::Equal;
    return std::nullopt;
}

Enclosure enc_neg(const Enclosure& a) {
    return Enclosure(-a.upper(), -a.lower(), a.precision());
}

Enclosure enc_add(const Enclosure& a, const Enclosure& b, unsigned prec) {
    return Enclosure((a.lower() + b.lower()).rounded(prec, RoundDir::Down),
                     (a.upper() + b.upper()).rounded(prec, RoundDir::Up), prec);
}

Enclosure enc_sub(const Enclosure& a, const Enclosure& b, unsigned prec) {
    return enc_add(a, enc_neg(b), prec);
}

Enclosure enc_mul(const Enclosure& a, const Enclosure& b, unsigned prec) {
    Dyadic p1 = a.lower() * b.lower();
    Dyadic p2 = a.lower() * b.upper();
    Dyadic p3 = a.upper() * b.lower();
    Dyadic p4 = a.upper() * b.upper();
    Dyadic lo = std::min({p1, p2, p3, p4}, [](const Dyadic& x, const Dyadic& y) { return x < y; });
    Dyadic hi = std::max({p1, p2, p3, p4}, [](const Dyadic& x, const Dyadic& y) { return x < y; });
    return Enclosure(lo.rounded(prec, RoundDir::Down), hi.rounded(prec, RoundDir::Up), prec);
}

Enclosure enc_mul_rational(const Rational& q, const Enclosure& a, unsigned prec) {
    if (q.is_zero()) return Enclosure::point(Dyadic::zero(), prec);
    const Dyadic& l = q.sign() > 0 ? a.lower() : a.upper();
    const Dyadic& h = q.sign() > 0 ? a.upper() : a.lower();
    return Enclosure(Dyadic::from_rational(q * l.to_rational(), prec, RoundDir::Down),
                     Dyadic::from_rational(q * h.to_rational(), prec, RoundDir::Up), prec);
}

Enclosure enc_div(const Enclosure& a, const Enclosure& b, unsigned prec) {
    if (b.lower().sign() <= 0) throw DomainError("enc_div: denominator must be strictly positive");
    Rational bl = b.lower().to_rational(), bh = b.upper().to_rational();
    Rational al = a.lower().to_rational(), ah = a.upper().to_rational();
    Dyadic lo = rounded_div(al, al.sign() >= 0 ? bh : bl, prec, RoundDir::Down);
    Dyadic hi = rounded_div(ah, ah.sign() >= 0 ? bl : bh, prec, RoundDir::Up);
    return Enclosure(lo, hi, prec);
}

namespace {

Enclosure enc_div_uint(const Enclosure& a, unsigned long k, unsigned prec) {
    Rational kq(static_cast<long>(k));
    return Enclosure(rounded_div(a.lower().to_rational(), kq, prec, RoundDir::Down),
                     rounded_div(a.upper().to_rational(), kq, prec, RoundDir::Up), prec);
}

// d^n with every intermediate product rounded in one direction; d >= 0.
Dyadic dyadic_pow_dir(const Dyadic& d, unsigned long n, unsigned prec, RoundDir dir) {
    if (n == 0) return Dyadic::one();
    if (d.is_zero()) return Dyadic::zero();
    Dyadic acc = Dyadic::one();
    int top = 63;
    while (top > 0 && ((n >> top) & 1UL) == 0) --top;
    for (int i = top; i >= 0; --i) {
        acc = (acc * acc).rounded(prec, dir);
        if ((n >> i) & 1UL) acc = (acc * d).rounded(prec, dir);
    }
    return acc;
}

}  // namespace

Enclosure enc_pow_uint(const Enclosure& a, unsigned long n, unsigned prec) {
    if (a.lower().sign() < 0) throw DomainError("enc_pow_uint: base interval must be nonnegative");
    if (n == 0) return Enclosure::point(Dyadic::one(), prec);
    return Enclosure(dyadic_pow_dir(a.lower(), n, prec, RoundDir::Down),
                     dyadic_pow_dir(a.upper(), n, prec, RoundDir::Up), prec);
}

namespace {

// --- series kernels ---------------------------------------------------

// atanh(z) = sum z^(2i+1)/(2i+1) for exact rational 0 < z <= 1/3.
// Tail after the z^(2i+1) term is below z^(2i+1)/8, so adding +-mag(zp)
// after the loop is a sound (generous) remainder bound. The stop threshold
// sits above the rounding granularity 2^-prec (the rounded magnitude cannot
// drop below one granule); callers pad prec so the tail is still negligible.
Enclosure atanh_series(const Rational& z, unsigned prec) {
    Enclosure Z = Enclosure::of_rational(z, prec);
    Enclosure Z2 = enc_mul(Z, Z, prec);
    Enclosure sum = Z;
    Enclosure zp = Z;
    Dyadic eps = two_pow(-static_cast<long>(prec) + 4);
    for (unsigned long i = 1;; ++i) {
        zp = enc_mul(zp, Z2, prec);
        sum = enc_add(sum, enc_div_uint(zp, 2 * i + 1, prec), prec);
        if (zp.mag() <= eps) {
            Dyadic tau = zp.mag();
            sum = enc_add(sum, Enclosure(-tau, tau, prec), prec);
            return sum;
        }
    }
}

Enclosure ln2_enclosure(unsigned prec) {
    // cache per 64-bit precision step; ln 2 = 2 atanh(1/3)
    unsigned bucket = ((prec + 63) / 64) * 64;
    static std::mutex mu;
    static std::map<unsigned, Enclosure> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(bucket);
        if (it != cache.end()) return it->second;
    }
    Enclosure v = enc_mul_rational(Rational(2), atanh_series(Rational(1, 3), bucket + 8), bucket);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(bucket, v);
    return v;
}

// exp(t) for a dyadic point t: halve t until |s| <= 1/2, run the Taylor
// series with a geometric tail bound, then square back up.
Enclosure exp_point(const Dyadic& t, unsigned prec) {
    if (t.is_zero()) return Enclosure::point(Dyadic::one(), prec);
    long tb = t.floor_log2_abs();
    long j = std::max(0L, tb + 2);  // |t| < 2^(tb+1), so |t|/2^j <= 1/2
    long mag = 2;
    if (t.sign() > 0) {
        // e^t < 2^(1.5 t) sizes the integer part
        Rational bound = t.to_rational() * Rational(3, 2);
        Integer mz;
        mpz_fdiv_q(mz.get_mpz_t(), bound.num().get_mpz_t(), bound.den().get_mpz_t());
        mz += 2;
        if (mz > kMagnitudeLimitBits) throw DomainError("exp_point: result magnitude out of range");
        mag = mz.get_si();
    }
    unsigned work = prec + static_cast<unsigned>(j + mag) + 16;
    Enclosure s = Enclosure::point(t.mul_pow2(-j), work);
    Enclosure sum = Enclosure::point(Dyadic::one(), work);
    Enclosure term = sum;
    Dyadic eps = two_pow(-static_cast<long>(work) + 4);
    for (unsigned long i = 1;; ++i) {
        term = enc_div_uint(enc_mul(term, s, work), i, work);
        sum = enc_add(sum, term, work);
        if (term.mag() <= eps) {
            Dyadic tau = term.mag();  // ratio <= 1/2, tail <= |term|
            sum = enc_add(sum, Enclosure(-tau, tau, work), work);
            break;
        }
    }
    for (long r = 0; r < j; ++r) sum = enc_mul(sum, sum, work);
    return sum;
}

// floor(log2 x) for exact rational x > 0.
long floor_log2_rational(const Rational& x) {
    long k = static_cast<long>(bit_size(x.num())) - static_cast<long>(bit_size(x.den()));
    auto ge_two_pow = [&](long e) {
        // x >= 2^e ?
        Integer n = x.num(), d = x.den();
        if (e >= 0)
            mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(e));
        else
            mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(-e));
        return n >= d;
    };
    while (!ge_two_pow(k)) --k;
    while (ge_two_pow(k + 1)) ++k;
    return k;
}

// ln x at working precision, no final width check.
Enclosure ln_core(const Rational& x, unsigned prec) {
    long k = floor_log2_rational(x);
    Rational m = x * pow_int(Rational(1, 2), k);  // in [1, 2)
    Enclosure lnm = Enclosure::point(Dyadic::zero(), prec);
    if (!(m == Rational(1))) {
        Rational z = (m - Rational(1)) / (m + Rational(1));  // in (0, 1/3)
        lnm = enc_mul_rational(Rational(2), atanh_series(z, prec + 8), prec);
    }
    if (k == 0) return lnm;
    unsigned kw = prec + static_cast<unsigned>(bit_size(Integer(k))) + 4;
    Enclosure kln2 = enc_mul_rational(Rational(k), ln2_enclosure(kw), prec);
    return enc_add(lnm, kln2, prec);
}

bool width_within_guard(const Enclosure& e, unsigned precision) {
    return e.width() <= two_pow(kWidthGuardBits - static_cast<long>(precision));
}

}  // namespace

Enclosure ln_enclosure(const PosRational& x, unsigned precision) {
    if (precision == 0) throw DomainError("ln_enclosure: precision must be positive");
    if (x.value() == Rational(1))
        return Enclosure::point(Dyadic::zero(), precision);
    for (unsigned pad = 16;; pad *= 2) {
        Enclosure r = ln_core(x.value(), precision + pad).rounded(precision);
        if (width_within_guard(r, precision)) return r;
    }
}

namespace {

// Rigorous upper bound, in bits, on |log2 x^e| = |e| |ln x| / ln 2.
// Two bounds are combined: |ln x| <= (bitlen difference + 1) ln 2 from the
// binary magnitude of x, and |ln x| <= x - 1 (x >= 1) resp. (1-x)/x (x < 1),
// which is what keeps bases near 1 with huge exponents representable.
Integer pow_magnitude_bits(const Rational& x, const Rational& e) {
    long delta = static_cast<long>(bit_size(x.num())) - static_cast<long>(bit_size(x.den()));
    Integer by_bitlen = abs(e.num()) * Integer(std::abs(delta) + 1);
    mpz_cdiv_q(by_bitlen.get_mpz_t(), by_bitlen.get_mpz_t(), e.den().get_mpz_t());

    // |e| (x-1 or (1-x)/x) * 3/2 >= |e| |ln x| / ln 2
    Rational lnb = x >= Rational(1) ? x - Rational(1) : (Rational(1) - x) / x;
    Rational by_dist_q = Rational(abs(e.num())) / Rational(e.den()) * lnb * Rational(3, 2);
    Integer by_dist;
    mpz_cdiv_q(by_dist.get_mpz_t(), by_dist_q.num().get_mpz_t(), by_dist_q.den().get_mpz_t());

    return by_bitlen < by_dist ? by_bitlen : by_dist;
}

// Directed bound on x^e for exact rational x > 0 via exp(e ln x).
// Returns a full enclosure; callers pick an endpoint or both.
Enclosure pow_transcendental(const Rational& x, const Rational& e, unsigned precision) {
    Integer magz = pow_magnitude_bits(x, e);
    if (magz > kMagnitudeLimitBits) throw DomainError("pow_enclosure: result magnitude out of range");
    unsigned mag_bits = static_cast<unsigned>(magz.get_ui()) + 2;
    long enum_bits = static_cast<long>(bit_size(e.num())) - static_cast<long>(bit_size(e.den()));
    unsigned ebits = static_cast<unsigned>(std::max(0L, enum_bits)) + 2;

    for (unsigned pad = 32;; pad *= 2) {
        unsigned work = precision + mag_bits + pad;
        Enclosure lnx = ln_core(x, work + ebits);
        Enclosure t = enc_mul_rational(e, lnx, work);
        Dyadic lo = exp_point(t.lower(), work).lower();
        Dyadic hi = exp_point(t.upper(), work).upper();
        Enclosure r = Enclosure(lo, hi, work).rounded(precision);
        if (width_within_guard(r, precision)) return r;
    }
}

}  // namespace

Enclosure pow_enclosure(const PosRational& x, const Rational& e, unsigned precision) {
    if (precision == 0) throw DomainError("pow_enclosure: precision must be positive");
    if (e.is_zero() || x.value() == Rational(1))
        return Enclosure::point(Dyadic::one(), precision);
    // The exact route materializes about bit_size(x) |e| bits; only take it
    // when that is affordable.
    Integer exact_cost = Integer(bit_size(x.value())) * abs(e.num());
    mpz_cdiv_q(exact_cost.get_mpz_t(), exact_cost.get_mpz_t(), e.den().get_mpz_t());
    if (exact_cost <= kExactBitBudget) {
        if (auto exact = pow_exact(x.value(), e)) return Enclosure::of_rational(*exact, precision);
    }
    return pow_transcendental(x.value(), e, precision);
}

Enclosure pow_enclosure_nonneg(const Rational& x, const Rational& e, unsigned precision) {
    if (x.sign() < 0) throw DomainError("pow_enclosure_nonneg: negative base");
    if (x.is_zero()) {
        if (e.sign() <= 0) throw DomainError("pow_enclosure_nonneg: 0^e requires e > 0");
        return Enclosure::point(Dyadic::zero(), precision);
    }
    return pow_enclosure(PosRational(x), e, precision);
}

Enclosure enc_pow_rational(const Enclosure& a, const Rational& e, unsigned prec) {
    if (a.lower().sign() < 0) throw DomainError("enc_pow_rational: base interval must be nonnegative");
    if (e.is_zero()) return Enclosure::point(Dyadic::one(), prec);
    if (e.is_integer() && e.sign() > 0 && e.num().fits_ulong_p())
        return enc_pow_uint(a, e.num().get_ui(), prec);
    if (e.sign() > 0) {
        Dyadic lo = a.lower().is_zero()
                        ? Dyadic::zero()
                        : pow_enclosure(PosRational(a.lower().to_rational()), e, prec).lower();
        Dyadic hi = a.upper().is_zero()
                        ? Dyadic::zero()
                        : pow_enclosure(PosRational(a.upper().to_rational()), e, prec).upper();
        return Enclosure(lo, hi, prec);
    }
    if (a.lower().sign() <= 0)
        throw DomainError("enc_pow_rational: negative exponent needs a strictly positive base");
    Dyadic lo = pow_enclosure(PosRational(a.upper().to_rational()), e, prec).lower();
    Dyadic hi = pow_enclosure(PosRational(a.lower().to_rational()), e, prec).upper();
    return Enclosure(lo, hi, prec);
}

Enclosure refine(const Enclosure& prior, const std::function<Enclosure(unsigned)>& producer) {
    unsigned next_prec = prior.precision() >= kPrecisionCap ? kPrecisionCap : prior.precision() * 2;
    Enclosure next = producer(next_prec);
    if (next.lower() > prior.upper() || next.upper() < prior.lower())
        throw InternalError("refine: re-evaluation disjoint from prior enclosure (" +
                            next.to_string() + " vs " + prior.to_string() + ")");
    Dyadic lo = std::max(next.lower(), prior.lower(), [](const Dyadic& x, const Dyadic& y) { return x < y; });
    Dyadic hi = std::min(next.upper(), prior.upper(), [](const Dyadic& x, const Dyadic& y) { return x < y; });
    return Enclosure(lo, hi, next_prec);
}

}  // namespace ineqcert
