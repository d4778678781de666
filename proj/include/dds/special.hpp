#pragma once

#include "dds/hiprec.hpp"

namespace dds::sf {

// Complex value on the HiPrec substrate.  Principal-branch convention for
// sqrt and log.
struct ComplexValue {
    HiPrec re;
    HiPrec im;

    ComplexValue() = default;
    ComplexValue(HiPrec r, HiPrec i) : re(r), im(i) {}
    ComplexValue(double r, double i) : re(r), im(i) {}
};

ComplexValue operator+(const ComplexValue& a, const ComplexValue& b);
ComplexValue operator-(const ComplexValue& a, const ComplexValue& b);
ComplexValue operator*(const ComplexValue& a, const ComplexValue& b);
ComplexValue operator/(const ComplexValue& a, const ComplexValue& b);
HiPrec abs(const ComplexValue& z);
ComplexValue sqrt(const ComplexValue& z);   // principal branch
ComplexValue sinh(const ComplexValue& z);   // accurate for large imaginary parts

// Derivative order of the polygamma family; bounded to the range the rest
// of the code actually uses.
struct PolygammaOrder {
    explicit PolygammaOrder(int order);
    int m;
};

// psi^(m)(x) for 1 <= m <= 6, x > 0.  Recurrence shift to x >= 24, then the
// Bernoulli asymptotic series, all on the HiPrec substrate.
HiPrec polygamma_hp(int m, HiPrec x);
double polygamma(PolygammaOrder m, double x);

// Riemann zeta for real s > 1 (Euler-Maclaurin accelerated).
HiPrec zeta_hp(double s);
double zeta(double s);

// Sum of n^-3 from n = sigma on, via -psi''(sigma)/2.
double zeta3_tail(long long sigma);
HiPrec zeta3_tail_hp(long long sigma);

// Half-order modified Bessel: I_{1/2}(z) = sqrt(2/(pi z)) * sinh(z).
ComplexValue bessel_I_half(const ComplexValue& z);

// Half-order Bessel of the first kind on the positive real axis:
// J_{1/2}(x) = sqrt(2/(pi x)) * sin(x).
HiPrec bessel_J_half_hp(HiPrec x);
double bessel_J_half(double x);

// H_{-1/2}(x) = J_{1/2}(x) (the m = 0 case of H_{-m-1/2} = (-1)^m J_{m+1/2}).
double struve_H_minus_half(double x);

struct PolylogResult {
    double value = 0.0;
    double error_bound = 0.0;  // absolute bound: truncation tail + rounding
    long long terms = 0;
};

// Li_s(z) = sum z^k / k^s for s > 1, |z| <= 1.
PolylogResult polylog_eval(double s, double z);
double polylog(double s, double z);

// Fermi-Dirac series F_p(x) = sum_{r>=1} (-1)^{r+1} e^{rx} / r^{p+1},
// for p > 0 and x <= 0 (no factorial prefactor).
HiPrec fermi_dirac_F_hp(double p, double x);
double fermi_dirac_F(double p, double x);

// Bose-Einstein integral at the origin: G_s(0) = zeta(s+1), s > 0.
double bose_einstein_G(double s);

} // namespace dds::sf
