#include "dds/special.hpp"

#include "dds/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace dds::sf {

ComplexValue operator+(const ComplexValue& a, const ComplexValue& b) {
    return {a.re + b.re, a.im + b.im};
}

ComplexValue operator-(const ComplexValue& a, const ComplexValue& b) {
    return {a.re - b.re, a.im - b.im};
}

ComplexValue operator*(const ComplexValue& a, const ComplexValue& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexValue operator/(const ComplexValue& a, const ComplexValue& b) {
    HiPrec d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

HiPrec abs(const ComplexValue& z) {
    return dds::sqrt(z.re * z.re + z.im * z.im);
}

ComplexValue sqrt(const ComplexValue& z) {
    if (z.re.hi == 0.0 && z.re.lo == 0.0 && z.im.hi == 0.0 && z.im.lo == 0.0)
        return {HiPrec(0.0), HiPrec(0.0)};
    HiPrec r = abs(z);
    bool im_neg = z.im.hi < 0.0 || (z.im.hi == 0.0 && z.im.lo < 0.0);
    if (z.re.hi >= 0.0) {
        HiPrec w = dds::sqrt(ldexp(r + z.re, -1));
        return {w, ldexp(z.im / w, -1)};
    }
    HiPrec v = dds::sqrt(ldexp(r - z.re, -1));
    if (im_neg) v = -v;
    return {ldexp(z.im / v, -1), v};
}

ComplexValue sinh(const ComplexValue& z) {
    // sinh(x+iy) = sinh(x)cos(y) + i cosh(x)sin(y); the trig factors go
    // through the exact range reduction so large |y| stays accurate.
    HiPrec ex = dds::exp(z.re);
    HiPrec emx = recip(ex);
    HiPrec sh = ldexp(ex - emx, -1);
    HiPrec ch = ldexp(ex + emx, -1);
    HiPrec cy = cos_any(z.im);
    HiPrec sy = sin_any(z.im);
    return {sh * cy, ch * sy};
}

PolygammaOrder::PolygammaOrder(int order) : m(order) {
    if (order < 1 || order > 6)
        throw DomainError("polygamma order must be in [1, 6]");
}

namespace {

// Bernoulli numbers B_2 .. B_24 as exact numerator/denominator pairs.
struct Rational { double num, den; };
constexpr std::array<Rational, 12> kBernoulli = {{
    {1.0, 6.0},
    {-1.0, 30.0},
    {1.0, 42.0},
    {-1.0, 30.0},
    {5.0, 66.0},
    {-691.0, 2730.0},
    {7.0, 6.0},
    {-3617.0, 510.0},
    {43867.0, 798.0},
    {-174611.0, 330.0},
    {854513.0, 138.0},
    {-236364091.0, 2730.0},
}};

constexpr double kAsymptoticCut = 24.0;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Asymptotic series at y >= kAsymptoticCut:
// psi^(m)(y) = (-1)^(m+1) [ (m-1)!/y^m + m!/(2 y^(m+1))
//              + sum_j B_2j (2j+m-1)! / ((2j)! y^(2j+m)) ]
HiPrec polygamma_asymptotic(int m, HiPrec y) {
    HiPrec inv_y = recip(y);
    HiPrec inv_y2 = inv_y * inv_y;
    HiPrec ym = pow_int(inv_y, m);
    HiPrec sum = HiPrec(factorial(m - 1)) * ym;
    sum += ldexp(HiPrec(factorial(m)) * ym * inv_y, -1);
    HiPrec factor = ym * inv_y2;              // y^-(2+m), j = 1
    double rising = factorial(m + 1);         // (2j+m-1)! at j = 1
    double two_j_fact = 2.0;                  // (2j)! at j = 1
    for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
        HiPrec b = HiPrec(kBernoulli[j].num) / HiPrec(kBernoulli[j].den);
        sum += b * HiPrec(rising / two_j_fact) * factor;
        factor *= inv_y2;
        int twoj = static_cast<int>(2 * (j + 1));
        rising *= static_cast<double>(twoj + m) * static_cast<double>(twoj + m + 1);
        two_j_fact *= static_cast<double>(twoj + 1) * static_cast<double>(twoj + 2);
    }
    return (m % 2 == 0) ? -sum : sum;
}

} // namespace

HiPrec polygamma_hp(int m, HiPrec x) {
    if (m < 1 || m > 6) throw DomainError("polygamma order must be in [1, 6]");
    if (x.hi <= 0.0) throw DomainError("polygamma requires x > 0");
    // psi^(m)(x) = psi^(m)(x+1) + (-1)^(m+1) m! / x^(m+1)
    HiPrec shift(0.0);
    HiPrec mfact(factorial(m));
    double sign = (m % 2 == 0) ? -1.0 : 1.0;
    while (x.hi < kAsymptoticCut) {
        shift += HiPrec(sign) * mfact * pow_int(recip(x), m + 1);
        x += HiPrec(1.0);
    }
    return shift + polygamma_asymptotic(m, x);
}

double polygamma(PolygammaOrder m, double x) {
    return polygamma_hp(m.m, HiPrec(x)).to_double();
}

HiPrec zeta_hp(double s) {
    if (s <= 1.0) throw DomainError("zeta requires s > 1");
    constexpr int N = 32;
    HiPrec sum(0.0);
    for (int n = 1; n < N; ++n) sum += pow(HiPrec(static_cast<double>(n)), -s);
    HiPrec Nh(static_cast<double>(N));
    HiPrec Ns = pow(Nh, -s);                       // N^-s
    sum += Ns * Nh / HiPrec(s - 1.0);              // N^(1-s)/(s-1)
    sum += ldexp(Ns, -1);
    // Euler-Maclaurin correction terms.
    HiPrec factor = Ns / Nh;                       // N^(-s-1)
    HiPrec inv_N2 = recip(Nh * Nh);
    HiPrec rising(s);                              // s(s+1)...(s+2j-2), j = 1
    double two_j_fact = 2.0;
    for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
        HiPrec b = HiPrec(kBernoulli[j].num) / HiPrec(kBernoulli[j].den);
        sum += b / HiPrec(two_j_fact) * rising * factor;
        factor *= inv_N2;
        int twoj = static_cast<int>(2 * (j + 1));
        rising *= HiPrec(s + twoj - 1) * HiPrec(s + twoj);
        two_j_fact *= static_cast<double>(twoj + 1) * static_cast<double>(twoj + 2);
    }
    return sum;
}

double zeta(double s) { return zeta_hp(s).to_double(); }

HiPrec zeta3_tail_hp(long long sigma) {
    if (sigma < 1) throw DomainError("zeta3_tail requires sigma >= 1");
    return -ldexp(polygamma_hp(2, HiPrec(static_cast<double>(sigma))), -1);
}

double zeta3_tail(long long sigma) { return zeta3_tail_hp(sigma).to_double(); }

ComplexValue bessel_I_half(const ComplexValue& z) {
    if (z.re.hi == 0.0 && z.re.lo == 0.0 && z.im.hi == 0.0 && z.im.lo == 0.0)
        throw DomainError("bessel_I_half requires z != 0");
    ComplexValue two_over_pi_z = ComplexValue(HiPrec(2.0), HiPrec(0.0)) /
                                 (ComplexValue(pi_hp(), HiPrec(0.0)) * z);
    return sqrt(two_over_pi_z) * sinh(z);
}

HiPrec bessel_J_half_hp(HiPrec x) {
    if (x.hi <= 0.0) throw DomainError("bessel_J_half requires x > 0");
    return dds::sqrt(HiPrec(2.0) / (pi_hp() * x)) * sin_any(x);
}

double bessel_J_half(double x) { return bessel_J_half_hp(HiPrec(x)).to_double(); }

double struve_H_minus_half(double x) { return bessel_J_half(x); }

PolylogResult polylog_eval(double s, double z) {
    if (s <= 1.0) throw DomainError("polylog requires s > 1");
    if (std::fabs(z) > 1.0) throw DomainError("polylog requires |z| <= 1");
    PolylogResult out;
    if (z == 0.0) return out;
    if (z == 1.0) {
        out.value = zeta(s);
        out.error_bound = 1e-18 * out.value;
        return out;
    }
    if (z == -1.0) {
        // Li_s(-1) = -(1 - 2^(1-s)) zeta(s)
        HiPrec eta = (HiPrec(1.0) - pow(HiPrec(2.0), 1.0 - s)) * zeta_hp(s);
        out.value = (-eta).to_double();
        out.error_bound = 1e-18 * std::fabs(out.value);
        return out;
    }
    double az = std::fabs(z);
    HiPrec sum(0.0);
    HiPrec zk(1.0);
    HiPrec zc(z);
    constexpr double kTarget = 1e-16;
    constexpr long long kMaxTerms = 40000000;
    long long k = 0;
    double bound;
    do {
        ++k;
        zk *= zc;
        sum += zk / pow(HiPrec(static_cast<double>(k)), s);
        bound = std::pow(az, static_cast<double>(k + 1)) /
                (std::pow(static_cast<double>(k + 1), s) * (1.0 - az));
    } while (bound > kTarget && k < kMaxTerms);
    out.value = sum.to_double();
    // truncation tail plus the rounding of the returned double
    out.error_bound = bound + std::fabs(out.value) * 0x1p-52;
    out.terms = k;
    return out;
}

double polylog(double s, double z) { return polylog_eval(s, z).value; }

HiPrec fermi_dirac_F_hp(double p, double x) {
    if (p <= 0.0) throw DomainError("fermi_dirac_F requires p > 0");
    if (x > 0.0) throw DomainError("fermi_dirac_F requires x <= 0");
    // Alternating-series acceleration (Cohen-Rodriguez Villegas-Zagier);
    // valid here because e^(rx)/r^(p+1) is a moment sequence on [0,1].
    constexpr int n = 56;
    HiPrec d(1.0);
    {
        HiPrec base = HiPrec(3.0) + ldexp(dds::sqrt(HiPrec(8.0)), 0);
        d = pow_int(base, n);
        d = ldexp(d + recip(d), -1);
    }
    HiPrec b(-1.0), c = -d, s(0.0);
    for (int k = 0; k < n; ++k) {
        c = b - c;
        double r = static_cast<double>(k + 1);
        HiPrec a_k = dds::exp(HiPrec(r * x)) / pow(HiPrec(r), p + 1.0);
        s += c * a_k;
        b *= HiPrec(static_cast<double>(k + n) * static_cast<double>(k - n)) /
             HiPrec((k + 0.5) * (k + 1.0));
    }
    return s / d;
}

double fermi_dirac_F(double p, double x) { return fermi_dirac_F_hp(p, x).to_double(); }

double bose_einstein_G(double s) {
    if (s <= 0.0) throw DomainError("bose_einstein_G requires s > 0");
    return zeta(s + 1.0);
}

} // namespace dds::sf
