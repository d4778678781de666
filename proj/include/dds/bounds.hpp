#pragma once

#include "dds/hiprec.hpp"

#include <map>
#include <string>

namespace dds::bounds {

// Conjugate exponent pair with 1/p + 1/q = 1 (q derived from p).
struct HolderConjugates {
    explicit HolderConjugates(double p_in);
    double p;
    double q;
};

struct BoundReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;  // lhs <= rhs + 1e-12 |rhs|
    double margin = 0.0;     // rhs - lhs
    std::map<std::string, double> params;
};

// Truncated Hoelder bound for the csc^2/n^3 series:
//   sum_{k<=N} csc^2(k)/k^3  <=  zeta(p)^(1/p) (sum_{k<=N} (csc^2(k)/k^2)^q)^(1/q).
// The q-th powers are accumulated in log space, so spike terms cannot
// overflow for any p > 1.
BoundReport holder_truncated(double p, long long N);

// Fermi-Dirac-weighted variant:
//   sum_{k<=N} e^(xk/p) csc^2(k)/k^3  <=  |F_p(x)|^(1/p) (sum (csc^2/k^2)^q)^(1/q).
BoundReport fermi_weighted_holder(double p, double x, long long N);

// delta = sqrt( (pi^2/6) / ((4/3) zeta(3) + (2 sqrt3/(3 pi)) c1) ).
double delta_from_c1(double c1);

// Double-sided bound around the reconstruction Psi(sigma).  The interval is
// only a few units in the 21st decimal wide at sigma = 10001, so the
// inside/outside determination is made on the substrate with the shared
// Lambda value cancelled structurally; the raw endpoints are also reported.
struct DoubleSidedReport {
    double lower = 0.0;
    double upper = 0.0;
    double psi_value = 0.0;
    double margin_lower = 0.0;  // psi - lower, substrate precision
    double margin_upper = 0.0;  // upper - psi, substrate precision
    bool inside = false;
    double middle_lower = 0.0;  // (sigma^2+12)/(18 sigma^4 (sigma+1)^2)
    double middle_upper = 0.0;  // (sigma+12)/(18 sigma^4 (sigma+1))
    double lambda_term = 0.0;   // (2 sqrt3/(3 pi)) Lambda(sigma)
    double psi1_sq_term = 0.0;  // (2/3) [psi'(sigma)]^2
};
DoubleSidedReport double_sided_bounds(long long sigma);

// Two-sided trigamma/tetragamma inequality (k = 1 only):
//   (x^2+12)/(12 x^4 (x+1)^2) < [psi'(x)]^2 + psi''(x) < (x+12)/(12 x^4 (x+1)).
BoundReport monotonic_PQ_check(double x, double k);

} // namespace dds::bounds
