#include "dds/hiprec.hpp"

#include "dds/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace dds {

namespace {

// pi to 100 decimal digits:
//   3.1415926535897932384626433832795028841971693993751058209749445923
//     078164062862089986280348253421170680
// The table below splits pi into thirteen 21-bit chunks (each chunk is a
// double whose mantissa has at most 21 significant bits, so the product
// k*chunk is exact for any integer |k| < 2^32).  The chunk sum equals pi
// to about 290 bits, i.e. ~87 decimal digits.
constexpr std::array<double, 13> kPiChunks = {
    0x1.921fb00000000p+1,
    0x1.5110b00000000p-21,
    0x1.1846a00000000p-43,
    -0x1.d9ccf00000000p-65,
    0x1.1701c00000000p-87,
    -0x1.f197700000000p-109,
    0x1.2049c00000000p-131,
    0x1.114d000000000p-155,
    -0x1.9c5ff00000000p-177,
    0x1.77d4c00000000p-203,
    0x1.d89ce00000000p-225,
    -0x1.bb5d700000000p-247,
    0x1.043cc00000000p-269,
};

constexpr double kPiHi = 0x1.921fb54442d18p+1;
constexpr double kPiLo = 0x1.1a62633145c07p-53;
constexpr double kLn2Hi = 0x1.62e42fefa39efp-1;
constexpr double kLn2Lo = 0x1.abc9e3b39803fp-56;
constexpr double kInvPi = 0x1.45f306dc9c883p-2;

// Small fixed-capacity Shewchuk expansion: a sum of nonoverlapping doubles
// kept in increasing order of magnitude.  All grow operations are exact.
struct Expansion {
    std::array<double, 20> c{};
    int n = 0;

    void grow(double b) {
        double q = b;
        int m = 0;
        for (int i = 0; i < n; ++i) {
            double e;
            q = eft::two_sum(q, c[i], e);
            if (e != 0.0) c[m++] = e;
        }
        c[m++] = q;
        n = m;
    }

    // Round the exact value to a normalized two-component result.
    HiPrec to_hiprec() const {
        HiPrec s{0.0, 0.0};
        for (int i = 0; i < n; ++i) s += HiPrec(c[i]);
        return s;
    }
};

} // namespace

HiPrec pi_hp() { return {kPiHi, kPiLo}; }
HiPrec half_pi_hp() { return {0x1.921fb54442d18p+0, 0x1.1a62633145c07p-54}; }

HiPrec sqrt(HiPrec a) {
    if (a.hi == 0.0 && a.lo == 0.0) return {0.0, 0.0};
    if (a.hi < 0.0) throw DomainError("sqrt of negative HiPrec value");
    double x = std::sqrt(a.hi);
    // One Newton step in HiPrec: x' = (x + a/x)/2.
    HiPrec r = (HiPrec(x) + a / HiPrec(x));
    return ldexp(r, -1);
}

HiPrec recip(HiPrec a) { return HiPrec(1.0) / a; }

HiPrec pow_int(HiPrec a, long long n) {
    if (n == 0) return HiPrec(1.0);
    bool inv = n < 0;
    unsigned long long m = inv ? static_cast<unsigned long long>(-(n + 1)) + 1ull
                               : static_cast<unsigned long long>(n);
    HiPrec acc(1.0), base = a;
    while (m) {
        if (m & 1ull) acc *= base;
        base *= base;
        m >>= 1;
    }
    return inv ? recip(acc) : acc;
}

HiPrec exp(HiPrec a) {
    if (a.hi > 709.0) throw DomainError("exp overflow in HiPrec");
    if (a.hi < -745.0) return HiPrec(0.0);
    HiPrec ln2{kLn2Hi, kLn2Lo};
    double kd = std::nearbyint(a.hi / kLn2Hi);
    int k = static_cast<int>(kd);
    HiPrec r = a - HiPrec(kd) * ln2;      // |r| <= ln2/2 + tiny
    HiPrec term(1.0), sum(1.0);
    for (int i = 1; i < 40; ++i) {
        term = term * r / HiPrec(static_cast<double>(i));
        sum += term;
        if (std::fabs(term.hi) < 1e-36 * std::fabs(sum.hi)) break;
    }
    return ldexp(sum, k);
}

HiPrec log(HiPrec a) {
    if (a.hi <= 0.0) throw DomainError("log of non-positive HiPrec value");
    HiPrec y(std::log(a.hi));
    // Newton on f(y) = exp(y) - a: y += a*exp(-y) - 1, twice.
    for (int i = 0; i < 2; ++i) y += a * exp(-y) - HiPrec(1.0);
    return y;
}

HiPrec pow(HiPrec a, double s) {
    if (s == std::nearbyint(s) && std::fabs(s) < 1e15)
        return pow_int(a, static_cast<long long>(s));
    return exp(HiPrec(s) * log(a));
}

HiPrec sin_reduced(HiPrec r) {
    HiPrec r2 = r * r;
    HiPrec term = r, sum = r;
    for (int i = 1; i < 26; ++i) {
        double d = static_cast<double>(2 * i) * static_cast<double>(2 * i + 1);
        term = -(term * r2) / HiPrec(d);
        sum += term;
        if (std::fabs(term.hi) < 1e-40) break;
    }
    return sum;
}

HiPrec cos_reduced(HiPrec r) {
    HiPrec r2 = r * r;
    HiPrec term(1.0), sum(1.0);
    for (int i = 1; i < 26; ++i) {
        double d = static_cast<double>(2 * i - 1) * static_cast<double>(2 * i);
        term = -(term * r2) / HiPrec(d);
        sum += term;
        if (std::fabs(term.hi) < 1e-40) break;
    }
    return sum;
}

namespace {

// Exact residual x - k*pi accumulated over the chunk table.  Both input
// components and every product k*chunk enter the expansion exactly, so the
// only rounding is the final two-component compression.
HiPrec residual(HiPrec x, std::int64_t k) {
    Expansion e;
    if (x.lo != 0.0) e.grow(x.lo);
    e.grow(x.hi);
    double kd = static_cast<double>(k);
    for (double chunk : kPiChunks) e.grow(-(kd * chunk));
    return e.to_hiprec();
}

ReducedAngle reduce_core(HiPrec x) {
    ReducedAngle out;
    out.source = x.to_double();
    if (std::fabs(out.source) > kReduceMaxAny)
        throw RangeError("angle reduction argument exceeds supported maximum " +
                         std::to_string(kReduceMaxAny));
    std::int64_t k = static_cast<std::int64_t>(std::nearbyint(out.source * kInvPi));
    HiPrec r = residual(x, k);
    HiPrec hp = half_pi_hp();
    // The double estimate of k can be off by one near half-integer x/pi.
    while (r > hp) { ++k; r = residual(x, k); }
    while (r <= -hp) { --k; r = residual(x, k); }
    out.k = k;
    out.r = r;
    return out;
}

} // namespace

ReducedAngle reduce_mod_pi(std::int64_t n) {
    if (n < 0) throw DomainError("reduce_mod_pi requires a non-negative integer");
    if (static_cast<double>(n) > kReduceMaxInt)
        throw RangeError("reduce_mod_pi argument exceeds supported maximum 1e9");
    if (n == 0) return {0, HiPrec(0.0), 0.0};
    return reduce_core(HiPrec(static_cast<double>(n)));
}

ReducedAngle reduce_mod_pi_any(HiPrec x) { return reduce_core(x); }

HiPrec sin_int(std::int64_t n) {
    if (n < 1) throw DomainError("sin_int requires n >= 1");
    ReducedAngle ra = reduce_mod_pi(n);
    HiPrec s = sin_reduced(ra.r);
    return (ra.k & 1) ? -s : s;
}

HiPrec sin_any(HiPrec x) {
    ReducedAngle ra = reduce_core(x);
    HiPrec s = sin_reduced(ra.r);
    return (ra.k & 1) ? -s : s;
}

HiPrec cos_any(HiPrec x) {
    ReducedAngle ra = reduce_core(x);
    HiPrec c = cos_reduced(ra.r);
    return (ra.k & 1) ? -c : c;
}

HiPrec compensated_sum(std::span<const HiPrec> terms) {
    HiPrec acc(0.0);
    for (const HiPrec& t : terms) acc += t;
    return acc;
}

} // namespace dds
