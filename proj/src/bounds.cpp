#include "dds/bounds.hpp"

#include "dds/errors.hpp"
#include "dds/series.hpp"
#include "dds/special.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dds::bounds {

HolderConjugates::HolderConjugates(double p_in) : p(p_in), q(p_in / (p_in - 1.0)) {
    if (!(p_in > 1.0)) throw DomainError("Hoelder exponent requires p > 1");
}

namespace {

void finish(BoundReport& rep) {
    rep.margin = rep.rhs - rep.lhs;
    rep.satisfied = rep.lhs <= rep.rhs + 1e-12 * std::fabs(rep.rhs);
}

// (sum_k (csc^2(k)/k^2)^q)^(1/q) via log-sum-exp on the substrate.
HiPrec csc2_over_k2_q_norm(double q, long long N) {
    std::vector<HiPrec> logs;
    logs.reserve(static_cast<std::size_t>(N));
    double max_log = -1e308;
    for (long long k = 1; k <= N; ++k) {
        HiPrec s = sin_int(k);
        HiPrec l = HiPrec(q) * (log(recip(s * s)) -
                                HiPrec(2.0) * log(HiPrec(static_cast<double>(k))));
        logs.push_back(l);
        max_log = std::max(max_log, l.to_double());
    }
    HiPrec acc(0.0);
    for (const HiPrec& l : logs) acc += exp(l - HiPrec(max_log));
    HiPrec log_norm = (HiPrec(max_log) + log(acc)) / HiPrec(q);
    return exp(log_norm);
}

HiPrec lhs_sum(double x_over_p, long long N) {
    HiPrec acc(0.0);
    for (long long k = 1; k <= N; ++k) {
        HiPrec s = sin_int(k);
        HiPrec t = recip(s * s) / pow_int(HiPrec(static_cast<double>(k)), 3);
        if (x_over_p != 0.0)
            t *= exp(HiPrec(x_over_p) * HiPrec(static_cast<double>(k)));
        acc += t;
    }
    return acc;
}

} // namespace

BoundReport holder_truncated(double p, long long N) {
    HolderConjugates pq(p);
    if (N < 1) throw DomainError("holder_truncated requires N >= 1");
    BoundReport rep;
    rep.lhs = lhs_sum(0.0, N).to_double();
    HiPrec norm = csc2_over_k2_q_norm(pq.q, N);
    rep.rhs = (pow(sf::zeta_hp(p), 1.0 / p) * norm).to_double();
    rep.params = {{"p", p}, {"q", pq.q}, {"N", static_cast<double>(N)}};
    finish(rep);
    return rep;
}

BoundReport fermi_weighted_holder(double p, double x, long long N) {
    HolderConjugates pq(p);
    if (x > 0.0) throw DomainError("fermi_weighted_holder requires x <= 0");
    if (N < 1) throw DomainError("fermi_weighted_holder requires N >= 1");
    BoundReport rep;
    rep.lhs = lhs_sum(x / p, N).to_double();
    HiPrec norm = csc2_over_k2_q_norm(pq.q, N);
    HiPrec F = sf::fermi_dirac_F_hp(p, x);
    rep.rhs = (pow(fabs(F), 1.0 / p) * norm).to_double();
    rep.params = {{"p", p}, {"q", pq.q}, {"x", x}, {"N", static_cast<double>(N)},
                  {"F_p_x", F.to_double()}};
    finish(rep);
    return rep;
}

double delta_from_c1(double c1) {
    if (c1 <= 0.0) throw DomainError("delta_from_c1 requires c1 > 0");
    HiPrec z3 = sf::zeta_hp(3.0);
    HiPrec den = HiPrec(4.0) / HiPrec(3.0) * z3 +
                 HiPrec(2.0) * sqrt(HiPrec(3.0)) / (HiPrec(3.0) * pi_hp()) * HiPrec(c1);
    if (den.to_double() <= 0.0) throw DomainError("delta_from_c1: non-positive denominator");
    HiPrec num = pi_hp() * pi_hp() / HiPrec(6.0);
    return sqrt(num / den).to_double();
}

DoubleSidedReport double_sided_bounds(long long sigma) {
    if (sigma < 2) throw DomainError("double_sided_bounds requires sigma >= 2");
    DoubleSidedReport rep;
    HiPrec sg(static_cast<double>(sigma));
    HiPrec s4 = pow_int(sg, 4);
    HiPrec m_lo = (sg * sg + HiPrec(12.0)) /
                  (HiPrec(18.0) * s4 * pow_int(sg + HiPrec(1.0), 2));
    HiPrec m_up = (sg + HiPrec(12.0)) / (HiPrec(18.0) * s4 * (sg + HiPrec(1.0)));
    HiPrec z3 = sf::zeta_hp(3.0);
    HiPrec lam = series::lambda_bessel_hp(sigma).value;
    HiPrec c = HiPrec(2.0) * sqrt(HiPrec(3.0)) / (HiPrec(3.0) * pi_hp());
    HiPrec p1 = sf::polygamma_hp(1, sg);
    HiPrec p2 = sf::polygamma_hp(2, sg);
    HiPrec two_thirds = HiPrec(2.0) / HiPrec(3.0);
    HiPrec base = HiPrec(4.0) / HiPrec(3.0) * z3 + c * lam - two_thirds * (p1 * p1);
    HiPrec lower = base + m_lo;
    HiPrec upper = base + m_up;
    HiPrec psi = HiPrec(4.0) / HiPrec(3.0) * z3 + c * lam + two_thirds * p2;
    // psi - lower = (2/3)([psi']^2 + psi'') - m_lo: the shared terms cancel
    // exactly, leaving the tiny margins at full substrate resolution.
    HiPrec margin_lo = two_thirds * (p1 * p1 + p2) - m_lo;
    HiPrec margin_up = m_up - two_thirds * (p1 * p1 + p2);
    rep.lower = lower.to_double();
    rep.upper = upper.to_double();
    rep.psi_value = psi.to_double();
    rep.margin_lower = margin_lo.to_double();
    rep.margin_upper = margin_up.to_double();
    rep.inside = rep.margin_lower >= 0.0 && rep.margin_upper >= 0.0;
    rep.middle_lower = m_lo.to_double();
    rep.middle_upper = m_up.to_double();
    rep.lambda_term = (c * lam).to_double();
    rep.psi1_sq_term = (two_thirds * p1 * p1).to_double();
    return rep;
}

BoundReport monotonic_PQ_check(double x, double k) {
    if (x <= 0.0) throw DomainError("monotonic_PQ_check requires x > 0");
    if (k != 1.0)
        throw UnsupportedParameterError("monotonic_PQ_check implemented for k = 1 only");
    HiPrec xh(x);
    HiPrec x4 = pow_int(xh, 4);
    HiPrec lower = (xh * xh + HiPrec(12.0)) /
                   (HiPrec(12.0) * x4 * pow_int(xh + HiPrec(1.0), 2));
    HiPrec upper = (xh + HiPrec(12.0)) / (HiPrec(12.0) * x4 * (xh + HiPrec(1.0)));
    HiPrec p1 = sf::polygamma_hp(1, xh);
    HiPrec p2 = sf::polygamma_hp(2, xh);
    HiPrec mid = p1 * p1 + p2;
    BoundReport rep;
    rep.lhs = lower.to_double();
    rep.rhs = upper.to_double();
    rep.margin = (upper - lower).to_double();
    rep.satisfied = lower < mid && mid < upper;
    rep.params = {{"x", x}, {"k", k}, {"mid", mid.to_double()},
                  {"gap_lower", (mid - lower).to_double()},
                  {"gap_upper", (upper - mid).to_double()}};
    return rep;
}

} // namespace dds::bounds
