#pragma once

#include "dds/hiprec.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace dds::series {

enum class Kernel { csc, cot, sec, one };

// Periodic integer-indexed coefficient table; table[0] applies to n = 1,
// table[1] to n = 2, ..., wrapping with the table period.
struct PeriodicWeight {
    std::vector<double> table;
};

// Exponential weight: term n is multiplied by exp(x * n / p).
struct ExpWeight {
    double x = 0.0;
    double p = 1.0;
};

// Declarative description of one Diophantine Dirichlet series
//   sum f(phi n)^v * w(n) / n^s.
struct SeriesSpec {
    Kernel kernel = Kernel::csc;
    double power = 2.0;     // v >= 0, exponent on the trig kernel
    double exponent = 3.0;  // s, power of n in the denominator
    double phase = 1.0;     // phi > 0, argument scale
    std::optional<PeriodicWeight> periodic;
    std::optional<ExpWeight> exponential;

    void validate() const;
};

// One running-record event: |f(phi n)|^v exceeded all earlier values.
struct SpikeEntry {
    long long index = 0;
    double magnitude = 0.0;
};

struct PartialSumReport {
    SeriesSpec spec;
    long long n_lo = 0;
    long long n_hi = 0;
    HiPrec value;
    long long n_terms = 0;
    double max_term = 0.0;          // largest |term| seen
    long long max_term_index = 0;
    std::vector<SpikeEntry> spikes; // strict running maxima of |f(phi n)|^v
    double error_bound = 0.0;       // absolute bound from substrate precision
};

// Extended (two-component) evaluation is the normative mode; fast mode
// evaluates terms in plain double after the exact range reduction.
enum class EvalMode { extended, fast };
void set_eval_mode(EvalMode mode);
EvalMode eval_mode();

PartialSumReport partial_sum(const SeriesSpec& spec, long long n_lo, long long n_hi);

// Lambda(sigma) = sum_{n=1}^{sigma-1} Re[-i I_{1/2}(-3in) / (n^4 I_{1/2}^3(-in))],
// evaluated literally through the complex Bessel route.
struct LambdaResult {
    HiPrec value;
    double max_imag_residual = 0.0;  // largest |Im/Re| seen across terms
};
LambdaResult lambda_bessel_hp(long long sigma);
double lambda_bessel(long long sigma);

// Same sum through the elementary triple-angle reduction:
// sum (pi/(2 sqrt 3)) (3 csc^2 n - 4) / n^3.
HiPrec lambda_elementary_hp(long long sigma);
double lambda_elementary(long long sigma);

// Psi(sigma) = (4/3) zeta(3) + (2 sqrt3/(3 pi)) Lambda(sigma) + (2/3) psi''(sigma).
HiPrec psi_reconstruction_hp(long long sigma);
double psi_reconstruction(long long sigma);

// Truncated tail estimate
// Theta = (pi sqrt3/3) psi''(sigma) + (pi sqrt3/2) sum_{n=sigma}^{n_max} csc^2(n)/n^3.
double theta_tail(long long sigma, long long n_max);

// Recursive half-angle decomposition of csc^2(x):
// 1/sin^2 x = (1/4) sum_{k=0}^{m-1} 4^-k / cos^2(x/2^(k+1))
//           + (1/4) 4^(1-m) / sin^2(x/2^m).
struct RecursionDecomposition {
    double x = 0.0;
    int m = 0;
    HiPrec cos_sum;
    HiPrec remainder;
    HiPrec total;
};
RecursionDecomposition recursion_decompose(double x, int m);

// The k-split of the decomposition's cosine sum for one fixed n:
// S1 over k in [0, L], S2 over k in [L+1, m-1].
struct SplitSums {
    double s1 = 0.0;
    double s2 = 0.0;
    // Empirical ratio S1 * 3 * 4^L * n^3 / (4^(L+1) - 1): the effective
    // reciprocal of the "constant" the geometric approximation assumes.
    double s1_ratio = 0.0;
};
SplitSums split_S1_S2(long long n, int m, int L);

// Direct partial sum against the same series rearranged by summation by
// parts through the running numerator sums (A(0) = 0 anchors the scheme).
struct AbelReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_gap = 0.0;  // |lhs-rhs|/|lhs| measured on the substrate
};
AbelReport abel_check(const SeriesSpec& spec, long long N);

// Partial-sum function A(x) = sum_{n <= floor(x)} term(n); A(x) = 0 for x < 1.
double abel_A(const SeriesSpec& spec, double x);

// Integral against d(floor): the sum of the integrand at every integer jump
// in (x_lo, x_hi].  A jump landing on a kernel pole is the common-
// discontinuity failure mode and raises CommonDiscontinuityError.
HiPrec stieltjes_floor_sum_hp(const SeriesSpec& spec, double x_lo, double x_hi);
double stieltjes_floor_sum(const SeriesSpec& spec, double x_lo, double x_hi);

// sum_{n=1}^{N} chi(n) / n^s with chi periodic (chi[0] applies to n = 1).
HiPrec character_series_hp(const std::vector<double>& chi, double s, long long N);
double character_series(const std::vector<double>& chi, double s, long long N);

// The three partial sums tied by csc^2 - cot^2 = 1.
struct CotSecSums {
    HiPrec csc_sum;
    HiPrec cot_sum;
    HiPrec cube_sum;
};
CotSecSums cot_sec_identity_check(long long N);

} // namespace dds::series
