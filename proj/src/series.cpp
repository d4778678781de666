#include "dds/series.hpp"

#include "dds/errors.hpp"
#include "dds/special.hpp"

#include <atomic>
#include <cmath>
#include <string>

namespace dds::series {

namespace {

std::atomic<EvalMode> g_mode{EvalMode::extended};

constexpr double kPoleProximity = 1e-15;

struct TermValue {
    HiPrec term;
    double kernel_mag = 1.0;  // |f(phi n)|^v
};

double weight_at(const SeriesSpec& spec, long long n) {
    double w = 1.0;
    if (spec.periodic) {
        const auto& t = spec.periodic->table;
        w *= t[static_cast<std::size_t>((n - 1) % static_cast<long long>(t.size()))];
    }
    if (spec.exponential)
        w *= std::exp(spec.exponential->x * static_cast<double>(n) / spec.exponential->p);
    return w;
}

HiPrec weight_at_hp(const SeriesSpec& spec, long long n) {
    HiPrec w(1.0);
    if (spec.periodic) {
        const auto& t = spec.periodic->table;
        w *= HiPrec(t[static_cast<std::size_t>((n - 1) % static_cast<long long>(t.size()))]);
    }
    if (spec.exponential)
        w *= exp(HiPrec(spec.exponential->x) * HiPrec(static_cast<double>(n)) /
                 HiPrec(spec.exponential->p));
    return w;
}

HiPrec kernel_power(HiPrec f, double v) {
    if (v == 0.0) return HiPrec(1.0);
    if (v == 2.0) return f * f;
    if (v == std::nearbyint(v)) return pow_int(f, static_cast<long long>(v));
    return pow(fabs(f), v);  // fractional powers act on |f|
}

ReducedAngle reduce_term_angle(const SeriesSpec& spec, long long n) {
    if (spec.phase == 1.0) return reduce_mod_pi_any(HiPrec(static_cast<double>(n)));
    double e;
    double p = eft::two_prod(spec.phase, static_cast<double>(n), e);
    return reduce_mod_pi_any({p, e});
}

void check_pole(const SeriesSpec& spec, const ReducedAngle& ra, long long n) {
    double dist;
    if (spec.kernel == Kernel::sec)
        dist = half_pi_hp().to_double() - std::fabs(ra.r.to_double());
    else
        dist = ra.r.to_double();
    if (std::fabs(dist) < kPoleProximity)
        throw PoleError("kernel pole within 1e-15 of the reduced argument at n = " +
                            std::to_string(n),
                        n);
}

// Plain-double term evaluation behind the exact range reduction.
TermValue eval_term_fast(const SeriesSpec& spec, long long n) {
    TermValue out;
    double f = 1.0;
    if (spec.kernel != Kernel::one) {
        ReducedAngle ra = reduce_term_angle(spec, n);
        check_pole(spec, ra, n);
        double parity = (ra.k & 1) ? -1.0 : 1.0;
        double r = ra.r.to_double();
        switch (spec.kernel) {
            case Kernel::csc: f = 1.0 / (parity * std::sin(r)); break;
            case Kernel::cot: f = std::cos(r) / std::sin(r); break;
            case Kernel::sec: f = 1.0 / (parity * std::cos(r)); break;
            case Kernel::one: break;
        }
    }
    double fv;
    if (spec.power == 2.0) fv = f * f;
    else if (spec.power == std::nearbyint(spec.power))
        fv = std::pow(f, spec.power);
    else
        fv = std::pow(std::fabs(f), spec.power);
    out.kernel_mag = std::fabs(fv);
    out.term = HiPrec(fv * weight_at(spec, n) /
                      std::pow(static_cast<double>(n), spec.exponent));
    return out;
}

TermValue eval_term(const SeriesSpec& spec, long long n) {
    if (eval_mode() == EvalMode::fast) return eval_term_fast(spec, n);
    TermValue out;
    HiPrec f(1.0);
    if (spec.kernel != Kernel::one) {
        ReducedAngle ra = reduce_term_angle(spec, n);
        check_pole(spec, ra, n);
        double parity = (ra.k & 1) ? -1.0 : 1.0;
        switch (spec.kernel) {
            case Kernel::csc:
                f = recip(HiPrec(parity) * sin_reduced(ra.r));
                break;
            case Kernel::cot:
                f = cos_reduced(ra.r) / sin_reduced(ra.r);
                break;
            case Kernel::sec:
                f = recip(HiPrec(parity) * cos_reduced(ra.r));
                break;
            case Kernel::one:
                break;
        }
    }
    HiPrec fv = kernel_power(f, spec.power);
    out.kernel_mag = std::fabs(fv.to_double());
    HiPrec ns;
    if (spec.exponent == std::nearbyint(spec.exponent))
        ns = pow_int(HiPrec(static_cast<double>(n)), static_cast<long long>(spec.exponent));
    else
        ns = pow(HiPrec(static_cast<double>(n)), spec.exponent);
    out.term = fv * weight_at_hp(spec, n) / ns;
    return out;
}

} // namespace

void SeriesSpec::validate() const {
    if (power < 0.0) throw DomainError("series power v must be >= 0");
    if (phase <= 0.0) throw DomainError("series phase must be > 0");
    if (periodic && periodic->table.empty())
        throw DomainError("periodic weight requires period >= 1");
    if (kernel == Kernel::one && !periodic && !exponential && exponent <= 1.0)
        throw DomainError("plain p-series requires s > 1");
}

void set_eval_mode(EvalMode mode) { g_mode.store(mode); }
EvalMode eval_mode() { return g_mode.load(); }

PartialSumReport partial_sum(const SeriesSpec& spec, long long n_lo, long long n_hi) {
    spec.validate();
    if (n_lo < 1 || n_hi < n_lo)
        throw DomainError("partial_sum requires 1 <= n_lo <= n_hi");
    PartialSumReport rep;
    rep.spec = spec;
    rep.n_lo = n_lo;
    rep.n_hi = n_hi;
    rep.n_terms = n_hi - n_lo + 1;
    HiPrec acc(0.0);
    double abs_acc = 0.0;
    double record = 0.0;
    for (long long n = n_lo; n <= n_hi; ++n) {
        TermValue tv = eval_term(spec, n);
        acc += tv.term;
        double at = std::fabs(tv.term.to_double());
        abs_acc += at;
        if (at > rep.max_term) {
            rep.max_term = at;
            rep.max_term_index = n;
        }
        if (tv.kernel_mag > record) {
            record = tv.kernel_mag;
            rep.spikes.push_back({n, tv.kernel_mag});
        }
    }
    rep.value = acc;
    rep.error_bound = (eval_mode() == EvalMode::fast ? 4e-16 : 1e-30) * abs_acc;
    return rep;
}

LambdaResult lambda_bessel_hp(long long sigma) {
    if (sigma < 1) throw DomainError("lambda_bessel requires sigma >= 1");
    LambdaResult res;
    res.value = HiPrec(0.0);
    for (long long n = 1; n < sigma; ++n) {
        double nd = static_cast<double>(n);
        sf::ComplexValue i1 = sf::bessel_I_half({HiPrec(0.0), HiPrec(-3.0 * nd)});
        sf::ComplexValue i2 = sf::bessel_I_half({HiPrec(0.0), HiPrec(-nd)});
        sf::ComplexValue den =
            sf::ComplexValue(pow_int(HiPrec(nd), 4), HiPrec(0.0)) * (i2 * i2 * i2);
        sf::ComplexValue ratio = i1 / den;
        sf::ComplexValue term{ratio.im, -ratio.re};  // -i * ratio
        double imag_rel = std::fabs(term.im.to_double()) /
                          std::max(std::fabs(term.re.to_double()), 1e-300);
        res.max_imag_residual = std::max(res.max_imag_residual, imag_rel);
        if (imag_rel > 1e-12)
            throw ConsistencyError(
                "imaginary residue above 1e-12 relative in Lambda term n = " +
                std::to_string(n));
        res.value += term.re;
    }
    return res;
}

double lambda_bessel(long long sigma) { return lambda_bessel_hp(sigma).value.to_double(); }

HiPrec lambda_elementary_hp(long long sigma) {
    if (sigma < 1) throw DomainError("lambda_elementary requires sigma >= 1");
    HiPrec pref = pi_hp() / (HiPrec(2.0) * sqrt(HiPrec(3.0)));
    HiPrec acc(0.0);
    for (long long n = 1; n < sigma; ++n) {
        HiPrec s = sin_int(n);
        HiPrec csc2 = recip(s * s);
        acc += (HiPrec(3.0) * csc2 - HiPrec(4.0)) / pow_int(HiPrec(static_cast<double>(n)), 3);
    }
    return pref * acc;
}

double lambda_elementary(long long sigma) { return lambda_elementary_hp(sigma).to_double(); }

HiPrec psi_reconstruction_hp(long long sigma) {
    if (sigma < 2) throw DomainError("psi_reconstruction requires sigma >= 2");
    HiPrec z3 = sf::zeta_hp(3.0);
    HiPrec lam = lambda_bessel_hp(sigma).value;
    HiPrec psi2 = sf::polygamma_hp(2, HiPrec(static_cast<double>(sigma)));
    HiPrec c = HiPrec(2.0) * sqrt(HiPrec(3.0)) / (HiPrec(3.0) * pi_hp());
    return HiPrec(4.0) / HiPrec(3.0) * z3 + c * lam + HiPrec(2.0) / HiPrec(3.0) * psi2;
}

double psi_reconstruction(long long sigma) { return psi_reconstruction_hp(sigma).to_double(); }

double theta_tail(long long sigma, long long n_max) {
    if (sigma < 2 || n_max < sigma)
        throw DomainError("theta_tail requires 2 <= sigma <= n_max");
    HiPrec psi2 = sf::polygamma_hp(2, HiPrec(static_cast<double>(sigma)));
    SeriesSpec spec;  // csc^2 / n^3
    HiPrec tail = partial_sum(spec, sigma, n_max).value;
    HiPrec pi_s3 = pi_hp() * sqrt(HiPrec(3.0));
    return (pi_s3 / HiPrec(3.0) * psi2 + ldexp(pi_s3, -1) * tail).to_double();
}

RecursionDecomposition recursion_decompose(double x, int m) {
    if (m < 1) throw DomainError("recursion_decompose requires m >= 1");
    RecursionDecomposition out;
    out.x = x;
    out.m = m;
    HiPrec quarter(0.25);
    HiPrec cos_sum(0.0);
    for (int k = 0; k < m; ++k) {
        HiPrec arg(std::ldexp(x, -(k + 1)));
        ReducedAngle ra = reduce_mod_pi_any(arg);
        if (half_pi_hp().to_double() - std::fabs(ra.r.to_double()) < kPoleProximity)
            throw PoleError("cos pole in decomposition at k = " + std::to_string(k), k);
        HiPrec c = cos_reduced(ra.r);
        cos_sum += ldexp(recip(c * c), -2 * k);
    }
    out.cos_sum = quarter * cos_sum;
    HiPrec arg(std::ldexp(x, -m));
    ReducedAngle ra = reduce_mod_pi_any(arg);
    if (std::fabs(ra.r.to_double()) < kPoleProximity)
        throw PoleError("sin pole in decomposition remainder at m = " + std::to_string(m), m);
    HiPrec s = sin_reduced(ra.r);
    out.remainder = quarter * ldexp(recip(s * s), 2 - 2 * m);
    out.total = out.cos_sum + out.remainder;
    return out;
}

SplitSums split_S1_S2(long long n, int m, int L) {
    if (n < 1 || m < 2 || L < 0 || L > m - 2)
        throw DomainError("split_S1_S2 requires n >= 1, m >= 2, 0 <= L <= m-2");
    double xd = static_cast<double>(n);
    HiPrec n3 = pow_int(HiPrec(xd), 3);
    auto piece = [&](int k) {
        HiPrec arg(std::ldexp(xd, -(k + 1)));
        ReducedAngle ra = reduce_mod_pi_any(arg);
        if (half_pi_hp().to_double() - std::fabs(ra.r.to_double()) < kPoleProximity)
            throw PoleError("cos pole in split sum at k = " + std::to_string(k), k);
        HiPrec c = cos_reduced(ra.r);
        return ldexp(recip(c * c), -2 * k) / n3;
    };
    HiPrec s1(0.0), s2(0.0);
    for (int k = 0; k <= L; ++k) s1 += piece(k);
    for (int k = L + 1; k < m; ++k) s2 += piece(k);
    SplitSums out;
    out.s1 = s1.to_double();
    out.s2 = s2.to_double();
    double geo = (std::pow(4.0, L + 1) - 1.0) / (3.0 * std::pow(4.0, L));
    out.s1_ratio = out.s1 * xd * xd * xd / geo;
    return out;
}

AbelReport abel_check(const SeriesSpec& spec, long long N) {
    spec.validate();
    if (N < 1) throw DomainError("abel_check requires N >= 1");
    HiPrec lhs = partial_sum(spec, 1, N).value;
    // Summation by parts: with c_n the term numerator and d_n = n^-s,
    //   sum c_n d_n = sum_{n<N} C(n)(d_n - d_{n+1}) + C(N) d_N,  C(0) = 0.
    SeriesSpec numerator = spec;
    numerator.exponent = 0.0;
    HiPrec C(0.0), rhs(0.0);
    auto dpow = [&](long long n) {
        return pow(HiPrec(static_cast<double>(n)), -spec.exponent);
    };
    for (long long n = 1; n <= N; ++n) {
        C += eval_term(numerator, n).term;
        if (n < N)
            rhs += C * (dpow(n) - dpow(n + 1));
        else
            rhs += C * dpow(n);
    }
    AbelReport rep;
    rep.lhs = lhs.to_double();
    rep.rhs = rhs.to_double();
    rep.rel_gap = std::fabs((lhs - rhs).to_double()) /
                  std::max(std::fabs(lhs.to_double()), 1e-300);
    return rep;
}

double abel_A(const SeriesSpec& spec, double x) {
    spec.validate();
    if (x < 1.0) return 0.0;
    return partial_sum(spec, 1, static_cast<long long>(std::floor(x))).value.to_double();
}

HiPrec stieltjes_floor_sum_hp(const SeriesSpec& spec, double x_lo, double x_hi) {
    spec.validate();
    if (x_lo < 1.0 || x_hi < x_lo)
        throw DomainError("stieltjes_floor_sum requires 1 <= x_lo <= x_hi");
    // Jump convention: the jump at integer n contributes the integrand at n;
    // jumps lie in the half-open interval (x_lo, x_hi].
    long long first = static_cast<long long>(std::floor(x_lo)) + 1;
    long long last = static_cast<long long>(std::floor(x_hi));
    HiPrec acc(0.0);
    for (long long n = first; n <= last; ++n) {
        try {
            acc += eval_term(spec, n).term;
        } catch (const PoleError& e) {
            throw CommonDiscontinuityError(
                "integrand pole coincides with the floor jump at n = " + std::to_string(n), n);
        }
    }
    return acc;
}

double stieltjes_floor_sum(const SeriesSpec& spec, double x_lo, double x_hi) {
    return stieltjes_floor_sum_hp(spec, x_lo, x_hi).to_double();
}

HiPrec character_series_hp(const std::vector<double>& chi, double s, long long N) {
    if (chi.empty()) throw DomainError("character table must have period >= 1");
    if (s <= 1.0) throw DomainError("character_series requires s > 1");
    if (N < 0) throw DomainError("character_series requires N >= 0");
    HiPrec acc(0.0);
    long long period = static_cast<long long>(chi.size());
    bool int_s = s == std::nearbyint(s);
    for (long long n = 1; n <= N; ++n) {
        double c = chi[static_cast<std::size_t>((n - 1) % period)];
        if (c == 0.0) continue;
        HiPrec ns = int_s ? pow_int(HiPrec(static_cast<double>(n)),
                                    static_cast<long long>(s))
                          : pow(HiPrec(static_cast<double>(n)), s);
        acc += HiPrec(c) / ns;
    }
    return acc;
}

double character_series(const std::vector<double>& chi, double s, long long N) {
    return character_series_hp(chi, s, N).to_double();
}

CotSecSums cot_sec_identity_check(long long N) {
    if (N < 1) throw DomainError("cot_sec_identity_check requires N >= 1");
    CotSecSums out;
    for (long long n = 1; n <= N; ++n) {
        ReducedAngle ra = reduce_mod_pi(n);
        HiPrec s = sin_reduced(ra.r);
        HiPrec c = cos_reduced(ra.r);
        HiPrec n3 = pow_int(HiPrec(static_cast<double>(n)), 3);
        HiPrec inv_s2 = recip(s * s);
        out.csc_sum += inv_s2 / n3;
        out.cot_sum += (c * c) * inv_s2 / n3;
        out.cube_sum += recip(n3);
    }
    return out;
}

} // namespace dds::series
