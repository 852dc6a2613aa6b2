// SPDX-License-Identifier: Apache-2.0
#include "ineqcert/rational.hpp"

#include <cctype>

namespace ineqcert {

std::string to_string(Ordering o) {
    switch (o) {
        case Ordering::Less: return "Less";
        case Ordering::Equal: return "Equal";
        case Ordering::Greater: return "Greater";
    }
    return "?";
}

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

Rational Rational::operator-() const {
    Rational r;
    r.q_ = -q_;
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

std::string Rational::to_string() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::parse(std::string_view text) {
    auto bad = [&](const char* why) -> DomainError {
        return DomainError(std::string("malformed rational '") + std::string(text) + "': " + why);
    };
    if (text.empty()) throw bad("empty");
    size_t slash = text.find('/');
    auto digits_ok = [](std::string_view s) {
        if (s.empty()) return false;
        size_t i = (s[0] == '-') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    std::string_view num_s = text.substr(0, slash);
    if (!digits_ok(num_s)) throw bad("expected integer numerator");
    Integer num(std::string(num_s), 10);
    if (slash == std::string_view::npos) return Rational(num, 1);
    std::string_view den_s = text.substr(slash + 1);
    if (!digits_ok(den_s) || den_s[0] == '-') throw bad("expected positive integer denominator");
    Integer den(std::string(den_s), 10);
    if (den == 0) throw bad("zero denominator");
    return Rational(num, den);
}

Rational rational_of(const Integer& num, const Integer& den) {
    return Rational(num, den);
}

Rational pow_int(const Rational& x, long e) {
    return pow_int(x, Integer(e));
}

Rational pow_int(const Rational& x, const Integer& e) {
    if (e == 0) return Rational(1);
    if (x.is_zero() && e < 0) throw DomainError("pow_int: 0 raised to a negative power");
    Integer a = abs(e);
    if (!a.fits_ulong_p()) throw DomainError("pow_int: exponent magnitude too large");
    unsigned long ae = a.get_ui();
    Integer pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), x.num().get_mpz_t(), ae);
    mpz_pow_ui(pd.get_mpz_t(), x.den().get_mpz_t(), ae);
    // already coprime, so no reduction happens inside
    return e > 0 ? Rational(pn, pd) : Rational(pd, pn);
}

Ordering cmp_root_pow(const PosRational& A, unsigned long u, const PosRational& B, unsigned long v) {
    if (u == 0 || v == 0) throw DomainError("cmp_root_pow: root orders must be positive");
    Rational lhs = pow_int(A.value(), static_cast<long>(v));
    Rational rhs = pow_int(B.value(), static_cast<long>(u));
    return compare(lhs, rhs);
}

std::optional<Rational> nth_root_exact(const Rational& x, unsigned long k) {
    if (k == 0) throw DomainError("nth_root_exact: zeroth root");
    if (x.sign() < 0) throw DomainError("nth_root_exact: negative base");
    if (x.is_zero()) return Rational(0);
    if (k == 1) return x;
    Integer rn, rd;
    if (!mpz_root(rn.get_mpz_t(), x.num().get_mpz_t(), k)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), x.den().get_mpz_t(), k)) return std::nullopt;
    return Rational(rn, rd);
}

std::optional<Rational> pow_exact(const Rational& x, const Rational& e) {
    if (x.sign() < 0) throw DomainError("pow_exact: negative base");
    if (e.is_zero()) return Rational(1);
    if (x.is_zero()) {
        if (e.sign() < 0) throw DomainError("pow_exact: 0 raised to a negative power");
        return Rational(0);
    }
    Integer d = e.den();
    if (!d.fits_ulong_p()) return std::nullopt;
    auto root = nth_root_exact(x, d.get_ui());
    if (!root) return std::nullopt;
    return pow_int(*root, e.num());
}

size_t bit_size(const Integer& x) {
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

size_t bit_size(const Rational& x) {
    return bit_size(x.num()) + bit_size(x.den());
}

}  // namespace ineqcert
