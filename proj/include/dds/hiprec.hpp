#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace dds {

// Two-component extended-precision real (~31 decimal digits).
//
// The value is hi + lo with |lo| <= ulp(hi)/2.  Arithmetic follows the
// classic error-free transformation scheme (Dekker / Knuth / Shewchuk);
// basic operations keep relative error below 2^-100 across the exponent
// range used here (10^+-300).
struct HiPrec {
    double hi = 0.0;
    double lo = 0.0;

    constexpr HiPrec() = default;
    constexpr HiPrec(double x) : hi(x), lo(0.0) {}
    constexpr HiPrec(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
    explicit operator double() const { return to_double(); }
};

namespace eft {

// s = fl(a+b), err exact: a + b = s + err. No magnitude ordering required.
inline double two_sum(double a, double b, double& err) {
    double s = a + b;
    double bb = s - a;
    err = (a - (s - bb)) + (b - bb);
    return s;
}

// Requires |a| >= |b| (or a == 0).
inline double quick_two_sum(double a, double b, double& err) {
    double s = a + b;
    err = b - (s - a);
    return s;
}

// p = fl(a*b), err exact: a*b = p + err.
inline double two_prod(double a, double b, double& err) {
    double p = a * b;
    err = std::fma(a, b, -p);
    return p;
}

} // namespace eft

inline HiPrec operator+(HiPrec a, HiPrec b) {
    double e1, e2;
    double s = eft::two_sum(a.hi, b.hi, e1);
    double t = eft::two_sum(a.lo, b.lo, e2);
    e1 += t;
    s = eft::quick_two_sum(s, e1, e1);
    e1 += e2;
    s = eft::quick_two_sum(s, e1, e1);
    return {s, e1};
}

inline HiPrec operator-(HiPrec a) { return {-a.hi, -a.lo}; }
inline HiPrec operator-(HiPrec a, HiPrec b) { return a + (-b); }

inline HiPrec operator*(HiPrec a, HiPrec b) {
    double e;
    double p = eft::two_prod(a.hi, b.hi, e);
    e += a.hi * b.lo + a.lo * b.hi;
    p = eft::quick_two_sum(p, e, e);
    return {p, e};
}

inline HiPrec operator/(HiPrec a, HiPrec b) {
    double q1 = a.hi / b.hi;
    HiPrec r = a - HiPrec(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - HiPrec(q2) * b;
    double q3 = r.hi / b.hi;
    double e;
    double q = eft::quick_two_sum(q1, q2, e);
    HiPrec res = HiPrec{q, e} + HiPrec(q3);
    return res;
}

inline HiPrec& operator+=(HiPrec& a, HiPrec b) { a = a + b; return a; }
inline HiPrec& operator-=(HiPrec& a, HiPrec b) { a = a - b; return a; }
inline HiPrec& operator*=(HiPrec& a, HiPrec b) { a = a * b; return a; }
inline HiPrec& operator/=(HiPrec& a, HiPrec b) { a = a / b; return a; }

inline bool operator<(HiPrec a, HiPrec b)  { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(HiPrec a, HiPrec b)  { return b < a; }
inline bool operator<=(HiPrec a, HiPrec b) { return !(b < a); }
inline bool operator>=(HiPrec a, HiPrec b) { return !(a < b); }
inline bool operator==(HiPrec a, HiPrec b) { return a.hi == b.hi && a.lo == b.lo; }

inline HiPrec fabs(HiPrec a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

// Exact scaling by a power of two.
inline HiPrec ldexp(HiPrec a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

HiPrec sqrt(HiPrec a);
HiPrec exp(HiPrec a);
HiPrec log(HiPrec a);         // a > 0
HiPrec pow_int(HiPrec a, long long n);
HiPrec pow(HiPrec a, double s);  // a > 0
HiPrec recip(HiPrec a);

// sin/cos of an already-reduced angle, |r| <= pi/2 + eps.
HiPrec sin_reduced(HiPrec r);
HiPrec cos_reduced(HiPrec r);

// pi and friends at HiPrec precision.
HiPrec pi_hp();
HiPrec half_pi_hp();

// Result of removing the nearest multiple of pi from an angle.
//
// source = k*pi + r with r in (-pi/2, pi/2].  The residual is computed
// against a ~290-bit representation of pi (see hiprec.cpp for the chunk
// table and its provenance), so r carries the full two-component
// precision even when the cancellation is severe.
struct ReducedAngle {
    std::int64_t k = 0;
    HiPrec r;
    double source = 0.0;
};

// Maximum angle magnitude accepted by the public integer reduction.
inline constexpr double kReduceMaxInt = 1.0e9;
// Internal reduction bound; products k*chunk stay exact up to here.
inline constexpr double kReduceMaxAny = 1.2e10;

// Range reduction for a non-negative integer n <= 10^9.
ReducedAngle reduce_mod_pi(std::int64_t n);

// Range reduction for an arbitrary angle given as an exact hi/lo pair.
ReducedAngle reduce_mod_pi_any(HiPrec x);

// sin(n) for integer n >= 1 (relative error well below 1e-20 up to 10^9).
HiPrec sin_int(std::int64_t n);

// sin/cos for arbitrary |x| within the internal reduction bound.
HiPrec sin_any(HiPrec x);
HiPrec cos_any(HiPrec x);

// Sequential compensated sum; deterministic for a fixed input order.
HiPrec compensated_sum(std::span<const HiPrec> terms);

} // namespace dds
