// SPDX-License-Identifier: Apache-2.0
#include "ineqcert/generator.hpp"

#include <algorithm>
#include <cctype>

#include "ineqcert/errors.hpp"

namespace ineqcert {

uint64_t SplitMix64::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

uint64_t SplitMix64::next_in(uint64_t lo, uint64_t hi) {
    if (hi < lo) throw InternalError("SplitMix64::next_in: empty range");
    return lo + next() % (hi - lo + 1);
}

GeneratorMode GeneratorMode::power_closed(unsigned long order) {
    if (order < 1) throw InputError("power_closed order must be >= 1");
    return GeneratorMode{Kind::PowerClosed, order};
}

std::string GeneratorMode::to_string() const {
    if (kind == Kind::General) return "general";
    return "power_closed(" + std::to_string(order) + ")";
}

GeneratorMode GeneratorMode::parse(const std::string& text) {
    if (text == "general") return general();
    constexpr std::string_view prefix = "power_closed(";
    if (text.size() > prefix.size() + 1 && text.compare(0, prefix.size(), prefix) == 0 &&
        text.back() == ')') {
        std::string digits = text.substr(prefix.size(), text.size() - prefix.size() - 1);
        if (!digits.empty() && digits.size() <= 4 &&
            std::all_of(digits.begin(), digits.end(),
                        [](unsigned char ch) { return std::isdigit(ch); }))
            return power_closed(std::stoul(digits));
    }
    throw InputError("unknown generator mode '" + text +
                     "' (expected general or power_closed(L))");
}

WeightVector normalize_weights(const std::vector<Rational>& raw) {
    Rational sum;
    for (const Rational& r : raw) {
        if (r.sign() < 0)
            throw InputError("normalize_weights: raw weight " + r.to_string() + " is negative");
        sum += r;
    }
    if (sum.is_zero()) throw InputError("normalize_weights: raw weights are all zero");
    std::vector<Rational> out;
    out.reserve(raw.size());
    for (const Rational& r : raw) out.push_back(r / sum);
    return WeightVector(std::move(out));
}

namespace {

// Raw integer weights in [1, 64] keep the normalized denominators' lcm small
// (the sum is at most 64 n), so exact geometric-mean clearing stays cheap.
std::vector<Rational> draw_weights(SplitMix64& rng, size_t n) {
    std::vector<Rational> raw;
    raw.reserve(n);
    for (size_t k = 0; k < n; ++k) raw.emplace_back(static_cast<long>(rng.next_in(1, 64)));
    return normalize_weights(raw).values();
}

Rational draw_sample(SplitMix64& rng, const GeneratorMode& mode, unsigned long bound) {
    if (mode.kind == GeneratorMode::Kind::General) {
        Integer num(static_cast<unsigned long>(rng.next_in(0, bound)));
        Integer den(static_cast<unsigned long>(rng.next_in(1, bound)));
        return Rational(num, den);
    }
    // Power-closed mode keeps bases small so the order-th powers stay at
    // desk scale even for orders up to a few dozen.
    unsigned long base_bound = std::min<unsigned long>(bound, 64);
    Integer num(static_cast<unsigned long>(rng.next_in(0, base_bound)));
    Integer den(static_cast<unsigned long>(rng.next_in(1, base_bound)));
    return pow_int(Rational(num, den), static_cast<long>(mode.order));
}

std::vector<Rational> draw_samples(SplitMix64& rng, size_t n, const GeneratorMode& mode,
                                   unsigned long bound) {
    std::vector<Rational> out;
    out.reserve(n);
    for (size_t k = 0; k < n; ++k) out.push_back(draw_sample(rng, mode, bound));
    return out;
}

}  // namespace

InstanceSpec gen_instance(uint64_t seed, InstanceKind kind, size_t n, const GeneratorMode& mode,
                          unsigned long bound) {
    if (n < 1) throw InputError("gen_instance: n must be >= 1");
    if (bound < 1) throw InputError("gen_instance: bound must be >= 1");
    SplitMix64 rng(seed);
    InstanceSpec inst;
    inst.kind = kind;
    switch (kind) {
        case InstanceKind::Amgm:
            inst.w = draw_weights(rng, n);
            inst.c = draw_samples(rng, n, mode, bound);
            break;
        case InstanceKind::Holder: {
            inst.a = draw_samples(rng, n, mode, bound);
            inst.b = draw_samples(rng, n, mode, bound);
            uint64_t v = rng.next_in(1, 4);
            uint64_t u = rng.next_in(v + 1, v + 6);
            inst.p = Rational(static_cast<long>(u), static_cast<long>(v));
            break;
        }
        case InstanceKind::PowerMean: {
            inst.w = draw_weights(rng, n);
            inst.c = draw_samples(rng, n, mode, bound);
            Rational r(static_cast<long>(rng.next_in(1, 8)), static_cast<long>(rng.next_in(1, 4)));
            Rational s(static_cast<long>(rng.next_in(1, 8)), static_cast<long>(rng.next_in(1, 4)));
            if (compare(s, r) == Ordering::Less) std::swap(r, s);
            inst.r = r;
            inst.s = s;
            break;
        }
    }
    inst.provenance = "seed=" + std::to_string(seed) + ";mode=" + mode.to_string() +
                      ";n=" + std::to_string(n) + ";bound=" + std::to_string(bound);
    validate_instance(inst);
    return inst;
}

}  // namespace ineqcert
