#include "dds/elliptic.hpp"

#include "dds/errors.hpp"
#include "dds/special.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

namespace dds::ec {

namespace {

HiPrec csc2_hp(long long n) {
    HiPrec s = sin_int(n);
    return recip(s * s);
}

// y(lambda) = csc^2(lambda) - lambda^3, the quantity the line a*lambda + b
// must interpolate.
HiPrec curve_rhs(long long lambda) {
    return csc2_hp(lambda) - pow_int(HiPrec(static_cast<double>(lambda)), 3);
}

HiPrec discriminant_hp(HiPrec a, HiPrec b) {
    return HiPrec(-16.0) * (HiPrec(4.0) * pow_int(a, 3) + HiPrec(27.0) * (b * b));
}

double residual_for(HiPrec a, HiPrec b, long long lambda) {
    HiPrec l(static_cast<double>(lambda));
    HiPrec l3 = pow_int(l, 3);
    HiPrec lhs = csc2_hp(lambda) / l3;
    HiPrec rhs = HiPrec(1.0) + a / (l * l) + b / l3;
    return (lhs - rhs).to_double();
}

} // namespace

EllipticClass fit_class(const std::vector<long long>& members) {
    if (members.size() < 2) throw DomainError("fit_class requires at least 2 members");
    {
        std::set<long long> uniq(members.begin(), members.end());
        if (uniq.size() != members.size())
            throw FitError("duplicate members make the fit system singular");
    }
    for (long long m : members)
        if (m < 1) throw DomainError("fit_class members must be positive integers");

    EllipticClass cls;
    cls.members = members;
    if (members.size() == 2) {
        HiPrec l1(static_cast<double>(members[0]));
        HiPrec l2(static_cast<double>(members[1]));
        HiPrec y1 = curve_rhs(members[0]);
        HiPrec y2 = curve_rhs(members[1]);
        cls.a = (y1 - y2) / (l1 - l2);
        cls.b = y1 - cls.a * l1;
    } else {
        // Least squares on y = a*lambda + b via the normal equations.
        HiPrec sx(0.0), sxx(0.0), sy(0.0), sxy(0.0);
        HiPrec count(static_cast<double>(members.size()));
        for (long long m : members) {
            HiPrec x(static_cast<double>(m));
            HiPrec y = curve_rhs(m);
            sx += x;
            sxx += x * x;
            sy += y;
            sxy += x * y;
        }
        HiPrec det = count * sxx - sx * sx;
        if (std::fabs(det.to_double()) == 0.0)
            throw FitError("singular normal equations in least-squares fit");
        cls.a = (count * sxy - sx * sy) / det;
        cls.b = (sxx * sy - sx * sxy) / det;
    }
    HiPrec disc = discriminant_hp(cls.a, cls.b);
    cls.discriminant = disc.to_double();
    if (cls.discriminant == 0.0)
        throw DegenerateCurveError("fitted curve has zero discriminant");
    cls.residuals.reserve(members.size());
    for (long long m : members) cls.residuals.push_back(residual_for(cls.a, cls.b, m));
    return cls;
}

double membership_residual(const EllipticClass& cls, long long lambda) {
    if (lambda < 1) throw DomainError("membership_residual requires lambda >= 1");
    return residual_for(cls.a, cls.b, lambda);
}

HiPrec class_partial_sum_hp(const ExpansionTerm& term) {
    if (term.lambda_lo > term.I_hi)
        throw DomainError("class_partial_sum requires lambda_lo <= I_hi");
    if (term.lambda_lo < 1) throw DomainError("class_partial_sum requires lambda_lo >= 1");
    HiPrec lo(static_cast<double>(term.lambda_lo));
    HiPrec hi1(static_cast<double>(term.I_hi + 1));
    HiPrec p1 = sf::polygamma_hp(1, lo) - sf::polygamma_hp(1, hi1);
    HiPrec p2 = sf::polygamma_hp(2, hi1) - sf::polygamma_hp(2, lo);
    return HiPrec(static_cast<double>(term.kappa)) + term.a * p1 + ldexp(term.b * p2, -1);
}

double class_partial_sum(const ExpansionTerm& term) {
    return class_partial_sum_hp(term).to_double();
}

ExpansionReport full_expansion(long long n_lo, long long n_hi, long long chunk) {
    if (n_lo < 1 || n_hi < n_lo) throw DomainError("full_expansion requires 1 <= n_lo <= n_hi");
    if (chunk < 2) throw DomainError("full_expansion requires chunk >= 2");
    if (n_hi - n_lo + 1 < 2)
        throw DomainError("full_expansion requires at least 2 indices to form a block");
    ExpansionReport rep;
    std::vector<std::pair<long long, long long>> blocks;
    for (long long start = n_lo; start <= n_hi;) {
        long long end = std::min(start + chunk - 1, n_hi);
        blocks.emplace_back(start, end);
        start = end + 1;
    }
    if (blocks.size() >= 2 && blocks.back().first == blocks.back().second) {
        // a trailing singleton cannot be fitted; merge it into the previous block
        long long tail = blocks.back().second;
        blocks.pop_back();
        blocks.back().second = tail;
    }
    HiPrec acc(0.0);
    HiPrec corr(0.0);
    for (auto [start, end] : blocks) {
        std::vector<long long> members;
        for (long long n = start; n <= end; ++n) members.push_back(n);
        EllipticClass cls = fit_class(members);
        for (double r : cls.residuals)
            rep.max_residual = std::max(rep.max_residual, std::fabs(r));
        ExpansionTerm term{end - start + 1, cls.a, cls.b, start, end};
        HiPrec v = class_partial_sum_hp(term);
        acc += v;
        corr += v - HiPrec(static_cast<double>(term.kappa));
        rep.kappa_total += term.kappa;
        ++rep.blocks;
    }
    rep.value_hp = acc;
    rep.value = acc.to_double();
    rep.correction_sum = corr.to_double();
    return rep;
}

double discriminant(double a, double b) {
    return -16.0 * (4.0 * a * a * a + 27.0 * b * b);
}

} // namespace dds::ec
