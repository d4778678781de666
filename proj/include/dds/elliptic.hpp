#pragma once

#include "dds/hiprec.hpp"

#include <vector>

namespace dds::ec {

// A fitted Weierstrass pair (a, b) with its member integers: each member
// lambda satisfies csc^2(lambda) = lambda^3 + a lambda + b up to the
// recorded residual.
struct EllipticClass {
    HiPrec a;
    HiPrec b;
    std::vector<long long> members;
    std::vector<double> residuals;  // membership_residual at each member
    double discriminant = 0.0;      // -16 (4a^3 + 27b^2)
};

struct ExpansionTerm {
    long long kappa = 0;      // I_hi - lambda_lo + 1
    HiPrec a;
    HiPrec b;
    long long lambda_lo = 0;
    long long I_hi = 0;
};

// Fit (a, b) to >= 2 distinct members: exact 2x2 solve for two members,
// least squares beyond that.  Throws FitError on duplicate members and
// DegenerateCurveError on a zero discriminant.
EllipticClass fit_class(const std::vector<long long>& members);

// csc^2(lambda)/lambda^3 - (1 + a/lambda^2 + b/lambda^3).
double membership_residual(const EllipticClass& cls, long long lambda);

// kappa + a [psi'(lambda_lo) - psi'(I_hi+1)] + (b/2)[psi''(I_hi+1) - psi''(lambda_lo)].
HiPrec class_partial_sum_hp(const ExpansionTerm& term);
double class_partial_sum(const ExpansionTerm& term);

struct ExpansionReport {
    long long kappa_total = 0;
    double correction_sum = 0.0;
    double value = 0.0;
    HiPrec value_hp;
    double max_residual = 0.0;  // largest |membership residual| over all blocks
    long long blocks = 0;
};

// Partition [n_lo, n_hi] into consecutive blocks of size `chunk` (trailing
// singleton merged into the previous block), fit each block, and accumulate
// the polygamma-expansion values.
ExpansionReport full_expansion(long long n_lo, long long n_hi, long long chunk);

// -16 (4 a^3 + 27 b^2)
double discriminant(double a, double b);

} // namespace dds::ec
