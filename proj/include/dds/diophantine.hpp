#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace dds::dio {

using BigInt = boost::multiprecision::cpp_int;

// One continued-fraction convergent p/q of a target real.
struct Convergent {
    BigInt p;
    BigInt q;
    double abs_error = 0.0;     // |alpha - p/q|, computed at >= 40 digits
    double eff_exponent = 0.0;  // -ln|alpha - p/q| / ln q, for q >= 2
    bool exact = false;         // the expansion terminated here
};

struct MuCondition {
    double u = 0.0;   // > 0
    double v = 1.0;   // >= 1
    double mu = 1.0;  // >= 1
};

// Built-in 100-digit decimal expansion of pi.
const std::string& builtin_pi_digits();

// Parse a digit-string (optional sign, decimal digits, one period; `#`
// comments and whitespace ignored).  Throws ParseError when malformed or
// when fewer than 60 significant digits are supplied.
void validate_digit_string(const std::string& digits);

// First `count` continued-fraction convergents of the value described by
// the digit string, via exact integer arithmetic.  Terminates early when
// the input is exactly rational.  Throws DepthError when `count` exceeds
// what the supplied digits can certify.
std::vector<Convergent> convergents_of(const std::string& alpha_digits, int count);

// Running-record indices of |csc(n)| up to n_max, each flagged with
// membership in the set of convergent numerators of pi.
struct SpikeRecord {
    long long index = 0;
    double csc_abs = 0.0;
    bool is_convergent_numerator = false;
};
std::vector<SpikeRecord> spike_correlate(long long n_max);

// Largest effective exponent over the convergents with q >= 2.
double effective_mu(const std::vector<Convergent>& conv);

// Strict test |alpha - p/q| < q^-(mu - eps) at >= 40-digit precision.
bool epsilon_good(const std::string& alpha_digits, long long p, long long q,
                  double mu, double eps);

struct ConvergencePredicates {
    bool meiburg_converges = false;  // mu < 1 + u/v (strict)
    double alekseyev_upper = 0.0;    // 1 + u/v
};
ConvergencePredicates convergence_predicates(const MuCondition& c);

// inf over the convergents of q^exponent * |alpha - p/q|; the best
// approximation-floor constant witnessed by the list.
struct FloorConstant {
    double c = 0.0;
    BigInt p;
    BigInt q;
};
FloorConstant floor_constant_C(const std::vector<Convergent>& conv, double exponent);

// Historical upper bounds on mu(pi); static citation data.
struct MuHistoryEntry {
    double bound;
    const char* author;
    int year;
};
const std::vector<MuHistoryEntry>& mu_history();

// Read a digit-string file: one value, `#` comments and blank lines ignored.
std::string read_digit_file(const std::string& path);

} // namespace dds::dio
