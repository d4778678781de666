#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dds/errors.hpp"
#include "dds/series.hpp"
#include "dds/special.hpp"
#include "oracle.hpp"

#include <cmath>
#include <random>
#include <thread>
#include <vector>

using namespace dds;
using namespace dds::series;

namespace {

SeriesSpec flint() {
    SeriesSpec s;
    s.kernel = Kernel::csc;
    s.power = 2.0;
    s.exponent = 3.0;
    return s;
}

double rel(HiPrec a, HiPrec b) {
    return std::fabs((a - b).to_double()) / std::fabs(b.to_double());
}

} // namespace

TEST_CASE("single-term partial sum is csc^2(1)") {
    auto rep = partial_sum(flint(), 1, 1);
    // mpmath, 32 digits: 1.4122829274373919146093350045416
    oracle::BF want("1.4122829274373919146093350045416");
    CHECK(oracle::rel_err2(rep.value.hi, rep.value.lo, want) < 1e-28);
    CHECK(rep.n_terms == 1);
    CHECK(rep.spikes.size() == 1);
    CHECK(rep.spikes[0].index == 1);
}

TEST_CASE("partial sum over 1..10 against the frozen oracle") {
    auto rep = partial_sum(flint(), 1, 10);
    oracle::BF want("3.5387181516747726160442480583");
    CHECK(oracle::rel_err2(rep.value.hi, rep.value.lo, want) < 1e-26);
    CHECK(rep.n_terms == 10);
}

TEST_CASE("partial sum matches the reconstruction at sigma = 10001") {
    auto rep = partial_sum(flint(), 1, 10000);
    CHECK(rep.value.to_double() == doctest::Approx(30.314510833013896).epsilon(1e-12));
    HiPrec psi = psi_reconstruction_hp(10001);
    CHECK(rel(rep.value, psi) < 1e-9);
}

TEST_CASE("Cookson-Hills partial sum evaluates without pole errors") {
    SeriesSpec sec = flint();
    sec.kernel = Kernel::sec;
    auto rep = partial_sum(sec, 1, 1000);
    CHECK(std::isfinite(rep.value.to_double()));
    CHECK(rep.value.to_double() > 0.0);
}

TEST_CASE("phase landing on a pole raises PoleError") {
    SeriesSpec s = flint();
    s.phase = 1.5707963267948966;  // phi ~ pi/2: n = 2 puts the argument at pi
    CHECK_THROWS_AS(partial_sum(s, 1, 3), PoleError);
}

TEST_CASE("spike records over n <= 400") {
    auto rep = partial_sum(flint(), 1, 400);
    std::vector<long long> idx;
    for (auto& s : rep.spikes) idx.push_back(s.index);
    CHECK(idx == std::vector<long long>{1, 3, 22, 333, 355});
    for (std::size_t i = 1; i < rep.spikes.size(); ++i)
        CHECK(rep.spikes[i].magnitude > rep.spikes[i - 1].magnitude);
}

TEST_CASE("csc^2 partial sums are strictly increasing") {
    HiPrec prev(0.0);
    for (long long N : {1LL, 5LL, 50LL, 500LL}) {
        auto rep = partial_sum(flint(), 1, N);
        CHECK(rep.value > prev);
        prev = rep.value;
    }
}

TEST_CASE("lambda at tiny sigma") {
    CHECK(lambda_bessel(1) == 0.0);
    CHECK(lambda_elementary(1) == 0.0);
    // one-term closed form (pi/(2 sqrt3))(3 csc^2(1) - 4), mpmath 32 digits
    oracle::BF want("0.21479808538873651316022248128192");
    HiPrec got = lambda_elementary_hp(2);
    CHECK(oracle::rel_err2(got.hi, got.lo, want) < 1e-27);
    // and the Bessel route lands on the same number
    CHECK(rel(lambda_bessel_hp(2).value, got) < 1e-15);
}

TEST_CASE("lambda paths agree at sigma = 3") {
    oracle::BF want("0.17266707567100737931585243970845");
    HiPrec elem = lambda_elementary_hp(3);
    CHECK(oracle::rel_err2(elem.hi, elem.lo, want) < 1e-27);
    CHECK(rel(lambda_bessel_hp(3).value, elem) < 1e-15);
}

TEST_CASE("lambda path equality on the sigma grid") {
    for (long long sg : {2LL, 10LL, 100LL, 1000LL})
        CHECK(rel(lambda_bessel_hp(sg).value, lambda_elementary_hp(sg)) < 1e-12);
}

TEST_CASE("lambda telescoping over a window") {
    HiPrec w = lambda_elementary_hp(600) - lambda_elementary_hp(400);
    HiPrec pref = pi_hp() / (HiPrec(2.0) * sqrt(HiPrec(3.0)));
    HiPrec direct(0.0);
    for (long long n = 400; n < 600; ++n) {
        HiPrec s = sin_int(n);
        direct += pref * (HiPrec(3.0) * recip(s * s) - HiPrec(4.0)) /
                  pow_int(HiPrec(static_cast<double>(n)), 3);
    }
    CHECK(rel(w, direct) < 1e-14);
}

TEST_CASE("psi reconstruction identities at small sigma") {
    // sigma = 2: the reconstruction collapses to csc^2(1)
    HiPrec got = psi_reconstruction_hp(2);
    HiPrec want = partial_sum(flint(), 1, 1).value;
    CHECK(rel(got, want) < 1e-12);
    // sigma = 100 vs the direct sum
    CHECK(rel(psi_reconstruction_hp(100), partial_sum(flint(), 1, 99).value) < 1e-12);
    CHECK_THROWS_AS(psi_reconstruction(1), DomainError);
}

TEST_CASE("theta tail closes the gap between lambda endpoints") {
    HiPrec lo = lambda_elementary_hp(100);
    HiPrec hi = lambda_elementary_hp(10001);
    double theta = theta_tail(100, 10000);
    CHECK(std::fabs(lo.to_double() + theta - hi.to_double()) /
              hi.to_double() <
          1e-6);
    // one-term window
    double t22 = theta_tail(2, 2);
    HiPrec s2 = sin_int(2);
    double byhand = (pi_hp() * sqrt(HiPrec(3.0)) / HiPrec(3.0) *
                         sf::polygamma_hp(2, HiPrec(2.0)) +
                     pi_hp() * sqrt(HiPrec(3.0)) / HiPrec(2.0) * recip(s2 * s2) /
                         HiPrec(8.0))
                        .to_double();
    CHECK(t22 == doctest::Approx(byhand).epsilon(1e-14));
    CHECK(std::isfinite(theta_tail(1000, 10000)));
}

TEST_CASE("recursion decomposition base identity at m = 1") {
    auto dec = recursion_decompose(1.0, 1);
    // (1/4)(1/sin^2(1/2) + 1/cos^2(1/2)) computed on the substrate
    HiPrec s = sin_any(HiPrec(0.5));
    HiPrec c = cos_any(HiPrec(0.5));
    HiPrec byhand = ldexp(recip(s * s) + recip(c * c), -2);
    CHECK(rel(dec.total, byhand) < 1e-28);
    HiPrec target = recip(sin_any(HiPrec(1.0)) * sin_any(HiPrec(1.0)));
    CHECK(rel(dec.total, target) < 1e-13);
}

TEST_CASE("recursion decomposition is m-independent and exact") {
    for (double x : {1.0, 2.5, 7.0}) {
        HiPrec s = sin_any(HiPrec(x));
        HiPrec target = recip(s * s);
        for (int m : {1, 5, 10, 20}) {
            auto dec = recursion_decompose(x, m);
            CHECK(rel(dec.total, target) < 1e-13);
            CHECK(rel(dec.cos_sum + dec.remainder, dec.total) == 0.0);
        }
    }
}

TEST_CASE("recursion decomposition flags poles") {
    // x = pi: the k = 0 term needs cos(pi/2) and must flag the pole
    CHECK_THROWS_AS(recursion_decompose(3.141592653589793, 1), PoleError);
}

TEST_CASE("split sums: degenerate and generic") {
    auto sp = split_S1_S2(1, 2, 0);
    // S2 covers exactly k = 1
    HiPrec c = cos_any(HiPrec(0.25));
    CHECK(sp.s2 == doctest::Approx(ldexp(recip(c * c), -2).to_double()).epsilon(1e-15));

    auto sp2 = split_S1_S2(3, 12, 4);
    HiPrec whole(0.0);
    for (int k = 0; k < 12; ++k) {
        HiPrec ck = cos_any(HiPrec(std::ldexp(3.0, -(k + 1))));
        whole += ldexp(recip(ck * ck), -2 * k) / HiPrec(27.0);
    }
    CHECK(std::fabs(sp2.s1 + sp2.s2 - whole.to_double()) / whole.to_double() < 1e-14);
    CHECK_THROWS_AS(split_S1_S2(3, 12, 11), DomainError);
}

TEST_CASE("split S2 obeys the geometric tail bound with its secant factor") {
    // S2 <= sec^2(n/2^(L+2)) * (4/3) 4^-(L+1) / n^3: every secant factor in
    // S2 is at most the first one, and the rest is a geometric series.
    long long n = 10;
    int m = 30, L = 10;
    auto sp = split_S1_S2(n, m, L);
    double first_arg = std::ldexp(static_cast<double>(n), -(L + 2));
    double sec2 = 1.0 / std::pow(std::cos(first_arg), 2);
    double bound = sec2 * (4.0 / 3.0) * std::pow(4.0, -(L + 1)) / 1000.0;
    CHECK(sp.s2 <= bound);
    // the plain geometric bound is a lower bound here, not an upper one
    double naive = (4.0 / 3.0) * std::pow(4.0, -(L + 1)) / 1000.0;
    CHECK(sp.s2 >= naive * (1.0 - 1e-12));
    CHECK(sp.s1_ratio > 0.0);
}

TEST_CASE("abel rearrangement") {
    auto r1 = abel_check(flint(), 1);
    CHECK(r1.lhs == doctest::Approx(r1.rhs).epsilon(1e-18));
    auto r1000 = abel_check(flint(), 1000);
    CHECK(r1000.rel_gap < 1e-18);
    CHECK(abel_A(flint(), 0.0) == 0.0);
    CHECK(abel_A(flint(), 0.999) == 0.0);
    CHECK(abel_A(flint(), 1.0) ==
          doctest::Approx(partial_sum(flint(), 1, 1).value.to_double()));
}

TEST_CASE("stieltjes floor sum follows the jump convention") {
    HiPrec st = stieltjes_floor_sum_hp(flint(), 1.0, 10.5);
    HiPrec direct = partial_sum(flint(), 2, 10).value;
    CHECK((st - direct).to_double() == 0.0);  // same term path, same order
    CHECK(stieltjes_floor_sum(flint(), 1.0, 1.0) == 0.0);
    CHECK(stieltjes_floor_sum(flint(), 2.5, 3.0) ==
          doctest::Approx(partial_sum(flint(), 3, 3).value.to_double()));
}

TEST_CASE("stieltjes floor sum reports common discontinuities") {
    SeriesSpec s = flint();
    s.phase = 1.5707963267948966;  // jump at n = 2 lands on the csc pole
    CHECK_THROWS_AS(stieltjes_floor_sum(s, 1.0, 5.0), CommonDiscontinuityError);
}

TEST_CASE("character series: trivial, alternating, and mod-4") {
    // chi = 1: approaches zeta(3)
    double z3 = sf::zeta(3.0);
    double got = character_series({1.0}, 3.0, 100000);
    CHECK(std::fabs(got - z3) < 1.0 / (2.0 * 1e10) * 1.01);
    // alternating: eta(2) = pi^2/12 within the alternating tail bound
    double eta2 = 0.82246703342411321823620758332301;
    double alt = character_series({1.0, -1.0}, 2.0, 1000000);
    CHECK(std::fabs(alt - eta2) < 1.0 / (1e6 * 1e6));
    // non-principal character mod 4 at s = 1.5, frozen 25-digit oracle
    oracle::BF want("0.8645026529612020403637333");
    HiPrec hp = character_series_hp({1.0, 0.0, -1.0, 0.0}, 1.5, 1000000);
    CHECK(oracle::rel_err2(hp.hi, hp.lo, want) < 1e-24);
    CHECK_THROWS_AS(character_series({}, 3.0, 10), DomainError);
    CHECK_THROWS_AS(character_series({1.0}, 0.5, 10), DomainError);
}

TEST_CASE("pythagorean identity across the three sums") {
    auto one = cot_sec_identity_check(1);
    CHECK(rel(one.csc_sum - one.cot_sum, HiPrec(1.0)) < 1e-30);
    auto big = cot_sec_identity_check(10000);
    CHECK(rel(big.csc_sum - big.cot_sum, big.cube_sum) < 1e-18);
    // frozen cross-checks (mpmath, 25 digits)
    oracle::BF cotsum("29.11245393485380125229844");
    oracle::BF cubesum("1.202056898160094260399738");
    CHECK(oracle::rel_err2(big.cot_sum.hi, big.cot_sum.lo, cotsum) < 1e-20);
    CHECK(oracle::rel_err2(big.cube_sum.hi, big.cube_sum.lo, cubesum) < 1e-22);
    // tail restatement: cot_sum = csc_sum - (zeta(3) - zeta3_tail(N+1))
    HiPrec restated = big.csc_sum - (sf::zeta_hp(3.0) - sf::zeta3_tail_hp(10001));
    CHECK(rel(big.cot_sum, restated) < 1e-18);
}

TEST_CASE("weights compose into the term product") {
    SeriesSpec s = flint();
    s.exponential = ExpWeight{-1.0, 2.0};
    auto rep = partial_sum(s, 1, 50);
    HiPrec byhand(0.0);
    for (long long n = 1; n <= 50; ++n) {
        HiPrec sn = sin_int(n);
        byhand += exp(HiPrec(-0.5 * static_cast<double>(n))) * recip(sn * sn) /
                  pow_int(HiPrec(static_cast<double>(n)), 3);
    }
    CHECK(rel(rep.value, byhand) < 1e-25);
}

TEST_CASE("spec validation") {
    SeriesSpec bad = flint();
    bad.power = -1.0;
    CHECK_THROWS_AS(partial_sum(bad, 1, 10), DomainError);
    bad = flint();
    bad.phase = 0.0;
    CHECK_THROWS_AS(partial_sum(bad, 1, 10), DomainError);
    SeriesSpec pseries;
    pseries.kernel = Kernel::one;
    pseries.power = 0.0;
    pseries.exponent = 0.9;
    CHECK_THROWS_AS(partial_sum(pseries, 1, 10), DomainError);
    CHECK_THROWS_AS(partial_sum(flint(), 0, 10), DomainError);
    CHECK_THROWS_AS(partial_sum(flint(), 5, 4), DomainError);
}

TEST_CASE("random series specs agree with the decimal-bigfloat oracle") {
    std::mt19937_64 rng(8128);
    std::uniform_int_distribution<int> kernel_pick(0, 2);
    std::uniform_int_distribution<int> v_pick(1, 3);
    std::uniform_int_distribution<int> s_pick(2, 4);
    std::uniform_int_distribution<long long> n_pick(1, 300);
    for (int trial = 0; trial < 20; ++trial) {
        SeriesSpec spec;
        spec.kernel = static_cast<Kernel>(kernel_pick(rng));
        spec.power = v_pick(rng);
        spec.exponent = s_pick(rng);
        long long lo = n_pick(rng);
        long long hi = lo + n_pick(rng);
        auto rep = partial_sum(spec, lo, hi);
        oracle::BF want = 0;
        for (long long n = lo; n <= hi; ++n) {
            oracle::BF s = oracle::sin_int(n);
            oracle::BF f;
            if (spec.kernel == Kernel::csc) f = 1 / s;
            else if (spec.kernel == Kernel::cot) f = cos(oracle::reduced(n)) / s *
                     ((oracle::k_round(n) % 2 != 0) ? -1 : 1);
            else f = 1 / (cos(oracle::reduced(n)) *
                          ((oracle::k_round(n) % 2 != 0) ? -1 : 1));
            oracle::BF fv = pow(abs(f), static_cast<int>(spec.power));
            if (f < 0 && static_cast<int>(spec.power) % 2 != 0) fv = -fv;
            want += fv / pow(oracle::BF(n), static_cast<int>(spec.exponent));
        }
        CHECK(oracle::rel_err2(rep.value.hi, rep.value.lo, want) < 1e-25);
    }
}

TEST_CASE("random decompositions reproduce csc^2 against the oracle") {
    std::mt19937_64 rng(6174);
    std::uniform_real_distribution<double> x_pick(0.1, 30.0);
    std::uniform_int_distribution<int> m_pick(1, 25);
    int done = 0;
    while (done < 15) {
        double x = x_pick(rng);
        int m = m_pick(rng);
        oracle::BF sx = sin(oracle::BF(x));
        if (abs(sx) < 1e-3) continue;  // stay clear of the pole guard
        auto dec = recursion_decompose(x, m);
        oracle::BF want = 1 / (sx * sx);
        CHECK(oracle::rel_err2(dec.total.hi, dec.total.lo, want) < 1e-13);
        ++done;
    }
}

TEST_CASE("concurrent evaluation is bit-identical to serial") {
    auto serial = partial_sum(flint(), 1, 2000);
    HiPrec results[4];
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&results, t] {
            results[t] = partial_sum(flint(), 1, 2000).value;
        });
    for (auto& th : pool) th.join();
    for (int t = 0; t < 4; ++t) {
        CHECK(results[t].hi == serial.value.hi);
        CHECK(results[t].lo == serial.value.lo);
    }
}

TEST_CASE("fast mode tracks extended mode") {
    auto ext = partial_sum(flint(), 1, 1000);
    set_eval_mode(EvalMode::fast);
    auto fast = partial_sum(flint(), 1, 1000);
    set_eval_mode(EvalMode::extended);
    CHECK(std::fabs(fast.value.to_double() - ext.value.to_double()) /
              ext.value.to_double() <
          1e-12);
}
