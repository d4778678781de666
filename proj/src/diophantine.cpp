#include "dds/diophantine.hpp"

#include "dds/errors.hpp"
#include "dds/hiprec.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace dds::dio {

using BigFloat = boost::multiprecision::cpp_dec_float_100;

const std::string& builtin_pi_digits() {
    static const std::string digits =
        "3."
        "1415926535897932384626433832795028841971693993751058209749445923"
        "078164062862089986280348253421170680";
    return digits;
}

namespace {

struct ParsedDigits {
    bool negative = false;
    std::string int_part;   // digits, no leading zeros beyond a single "0"
    std::string frac_part;  // digits
    int significant = 0;
};

ParsedDigits parse_digits(const std::string& raw) {
    std::string s;
    for (char c : raw) {
        if (c == '#') break;
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    ParsedDigits out;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        out.negative = s[i] == '-';
        ++i;
    }
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (seen_dot) throw ParseError("digit string has more than one period");
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            seen_digit = true;
            (seen_dot ? out.frac_part : out.int_part) += c;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "' in digit string");
        }
    }
    if (!seen_digit) throw ParseError("digit string contains no digits");
    if (out.int_part.empty()) out.int_part = "0";
    std::string all = out.int_part + out.frac_part;
    std::size_t first = all.find_first_not_of('0');
    out.significant = first == std::string::npos
                          ? 0
                          : static_cast<int>(all.size() - first);
    return out;
}

BigFloat to_bigfloat(const ParsedDigits& d) {
    std::string lit = (d.negative ? "-" : "") + d.int_part +
                      (d.frac_part.empty() ? "" : "." + d.frac_part);
    return BigFloat(lit);
}

} // namespace

void validate_digit_string(const std::string& digits) {
    ParsedDigits d = parse_digits(digits);
    if (d.significant < 60)
        throw ParseError("digit string must carry at least 60 significant digits, got " +
                         std::to_string(d.significant));
}

std::vector<Convergent> convergents_of(const std::string& alpha_digits, int count) {
    if (count < 1) throw DomainError("convergents_of requires count >= 1");
    ParsedDigits d = parse_digits(alpha_digits);
    if (d.significant < 60)
        throw ParseError("digit string must carry at least 60 significant digits, got " +
                         std::to_string(d.significant));
    if (d.negative) throw ParseError("digit string must describe a positive real");

    // Exact rational N / 10^f from the digit string.
    BigInt den = 1;
    for (std::size_t i = 0; i < d.frac_part.size(); ++i) den *= 10;
    BigInt num(d.int_part + d.frac_part);
    BigFloat alpha = to_bigfloat(d);

    // The convergent error 1/(q_n q_{n+1}) must stay well above the 10^-f
    // uncertainty of the input for the reported error to be meaningful.
    BigInt digit_floor = den;  // 10^f

    std::vector<Convergent> out;
    BigInt p_prev = 0, p_cur = 1, q_prev = 1, q_cur = 0;
    BigInt n = num, m = den;
    for (int i = 0; i < count; ++i) {
        if (m == 0) break;
        BigInt a = n / m;
        BigInt r = n - a * m;
        BigInt p_new = a * p_cur + p_prev;
        BigInt q_new = a * q_cur + q_prev;
        p_prev = p_cur; p_cur = p_new;
        q_prev = q_cur; q_cur = q_new;
        Convergent c;
        c.p = p_cur;
        c.q = q_cur;
        if (r == 0) {
            c.exact = true;
            c.abs_error = 0.0;
            c.eff_exponent = 0.0;
            out.push_back(c);
            break;
        }
        // The convergent error is ~1/q^2; it must stay a 17-digit band above
        // the 10^-f input uncertainty for the reported error to be certified.
        if (q_cur * q_cur * BigInt(100000000000000000LL) > digit_floor) {
            throw DepthError("requested depth exceeds what the supplied digits certify; "
                             "max safe count is " + std::to_string(i),
                             i);
        }
        BigFloat err = boost::multiprecision::abs(
            alpha - BigFloat(p_cur) / BigFloat(q_cur));
        c.abs_error = static_cast<double>(err);
        if (q_cur >= 2 && err > 0) {
            BigFloat mu = -boost::multiprecision::log(err) /
                          boost::multiprecision::log(BigFloat(q_cur));
            c.eff_exponent = static_cast<double>(mu);
        }
        out.push_back(c);
        n = m;
        m = r;
    }
    return out;
}

std::vector<SpikeRecord> spike_correlate(long long n_max) {
    if (n_max < 1) throw DomainError("spike_correlate requires n_max >= 1");
    if (static_cast<double>(n_max) > kReduceMaxInt)
        throw RangeError("spike_correlate supports n_max <= 1e9");
    std::set<long long> numerators;
    for (const Convergent& c : convergents_of(builtin_pi_digits(), 40)) {
        if (c.p <= BigInt(n_max)) numerators.insert(static_cast<long long>(c.p));
    }
    std::vector<SpikeRecord> out;
    double record = 0.0;
    for (long long n = 1; n <= n_max; ++n) {
        double mag = std::fabs(1.0 / sin_int(n).to_double());
        if (mag > record) {
            record = mag;
            out.push_back({n, mag, numerators.count(n) > 0});
        }
    }
    return out;
}

double effective_mu(const std::vector<Convergent>& conv) {
    if (conv.empty()) throw DomainError("effective_mu requires a non-empty convergent list");
    double best = 0.0;
    bool any = false;
    for (const Convergent& c : conv) {
        if (c.q < 2 || c.exact) continue;
        best = any ? std::max(best, c.eff_exponent) : c.eff_exponent;
        any = true;
    }
    if (!any)
        throw DomainError("effective exponent undefined: no convergent with q >= 2 "
                          "and nonzero error");
    return best;
}

bool epsilon_good(const std::string& alpha_digits, long long p, long long q,
                  double mu, double eps) {
    if (q < 2) throw DomainError("epsilon_good requires q >= 2");
    if (eps <= 0.0) throw DomainError("epsilon_good requires eps > 0");
    ParsedDigits d = parse_digits(alpha_digits);
    if (d.significant < 60)
        throw ParseError("digit string must carry at least 60 significant digits, got " +
                         std::to_string(d.significant));
    BigFloat alpha = to_bigfloat(d);
    BigFloat err = boost::multiprecision::abs(alpha - BigFloat(p) / BigFloat(q));
    BigFloat thr = boost::multiprecision::pow(BigFloat(q), BigFloat(-(mu - eps)));
    return err < thr;
}

ConvergencePredicates convergence_predicates(const MuCondition& c) {
    if (c.u <= 0.0 || c.v < 1.0)
        throw DomainError("convergence_predicates requires u > 0 and v >= 1");
    ConvergencePredicates out;
    out.alekseyev_upper = 1.0 + c.u / c.v;
    out.meiburg_converges = c.mu < out.alekseyev_upper;
    return out;
}

FloorConstant floor_constant_C(const std::vector<Convergent>& conv, double exponent) {
    if (conv.empty()) throw DomainError("floor_constant_C requires a non-empty list");
    if (exponent <= 0.0) throw DomainError("floor_constant_C requires exponent > 0");
    FloorConstant best;
    bool any = false;
    for (const Convergent& c : conv) {
        if (c.exact) continue;
        BigFloat val = boost::multiprecision::pow(BigFloat(c.q), BigFloat(exponent)) *
                       BigFloat(c.abs_error);
        double v = static_cast<double>(val);
        if (!any || v < best.c) {
            best.c = v;
            best.p = c.p;
            best.q = c.q;
            any = true;
        }
    }
    if (!any) throw DomainError("floor_constant_C: no inexact convergents in list");
    return best;
}

const std::vector<MuHistoryEntry>& mu_history() {
    static const std::vector<MuHistoryEntry> table = {
        {42.0, "Mahler", 1953},
        {20.6, "Mignotte", 1974},
        {14.65, "Chudnovsky", 1982},
        {13.398, "Hata", 1993},
        {7.6063, "Salikhov", 2008},
    };
    return table;
}

std::string read_digit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open digit file: " + path);
    std::string line, collected;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) collected += c;
    }
    if (collected.empty()) throw ParseError("digit file holds no value: " + path);
    return collected;
}

} // namespace dds::dio
