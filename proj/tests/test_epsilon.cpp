#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <random>

#include "mulcm/epsilon.hpp"
#include "mulcm/s0.hpp"

using namespace mulcm;

namespace {
const PrimeTables& tables() {
    static PrimeTables t = PrimeTables::build(1, 2100000);
    return t;
}
const ConstantLedger& led() {
    static ConstantLedger l = ConstantLedger::build(LedgerOptions{}, tables());
    return l;
}
}  // namespace

TEST_CASE("zeta bracket") {
    Interval z1 = zeta_bounds(1.0);
    CHECK(z1.contains(1.6449340668482264));  // zeta(2) = pi^2/6
    Interval z = zeta_bounds(0.04);
    CHECK(z.contains(25.58012052477012));  // Euler-Maclaurin reference for zeta(1.04)
    CHECK(z.lo() >= 25.0 - 1e-12);
    CHECK_THROWS(zeta_bounds(0.0));
    // bracket width (e^{gamma eps} - 1)/eps
    Interval w = z - Interval(25.0);
    CHECK(w.hi() < (std::exp(0.5772156649 * 0.04) - 1.0) / 0.04 + 1e-6);
}

TEST_CASE("g_eps values") {
    CHECK(g_eps(1.0, 0.5, tables()).contains(1.0));
    Interval g6 = g_eps(1e6, 0.1, tables());
    CHECK(g6.hi() < 9.1);   // the 9.1 pin sits at 1e8
    CHECK(g6.lo() > 8.0);
    Interval g5 = g_eps(1e5, 0.1, tables());
    CHECK(g5.hi() < g6.lo());  // increasing toward the pin
}

TEST_CASE("omega1 structure") {
    Interval o = omega1(241, 1e33, std::numeric_limits<double>::infinity(), led());
    CHECK(o.lo() > 0.4);
    CHECK(o.hi() < 0.6);
    // non-increasing in R (sampled grid)
    for (double T : {422.0, 1e16}) {
        double T0 = T == 422.0 ? 1e7 : 1e33;
        double prev = std::numeric_limits<double>::infinity();
        for (int R = 26; R <= 1000; R += 25) {
            double cur = omega1(R, T, T0, led()).hi();
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }
    // indicator off below 10.9e8 removes the Grr quadratic term
    Interval lowT = omega1(100, 422, 1e7, led());
    Interval ee = Interval(1.0) / Interval(100.0);
    CHECK(lowT.hi() > 0.0);  // smoke: Grr(ee, 422) = 2 ee exactly
}

TEST_CASE("omega2 structure and variants") {
    Interval o = omega2(439, 50, 1e33, std::numeric_limits<double>::infinity(), led());
    CHECK(o.lo() > 0.4);
    CHECK(o.hi() < 0.6);
    CHECK_THROWS(omega2(50, 50, 1e33, 1e50, led()));
    // as R grows the decay factors approach 1: omega2 increases toward the
    // S-shaped ceiling
    double prev = 0.0;
    for (int R : {60, 120, 400, 5000}) {
        double cur = omega2(R, 50, 1e12, 1e16, led()).hi();
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
    // both q4 variants evaluate, and differ only slightly
    Interval a = omega2(203, 50, 1e12, 1e16, led(), OmegaVariant::Source);
    Interval b = omega2(203, 50, 1e12, 1e16, led(), OmegaVariant::Rendered);
    CHECK(std::fabs(a.mid() - b.mid()) < 5e-3);
}

TEST_CASE("optimizer reproduces the source R for three spot configurations") {
    auto r1 = optimize_r(25, 422, 1e7, 300, OptimizeCriterion::MinGap, led());
    CHECK(std::abs(r1.R - 43) <= 2);
    auto r2 = optimize_r(100, 1e16, 1e33, 600, OptimizeCriterion::MinGap, led());
    CHECK(std::abs(r2.R - 459) <= 2);
    auto r3 = optimize_r(25, 1e33, std::numeric_limits<double>::infinity(), 600,
                         OptimizeCriterion::MinGap, led());
    CHECK(std::abs(r3.R - 241) <= 2);
    CHECK_THROWS(optimize_r(5, 422, 1e7, 300, OptimizeCriterion::MinGap, led()));
    CHECK_THROWS(optimize_r(25, 422, 1e7, 25, OptimizeCriterion::MinGap, led()));
    // min-max and min-gap land within 2 of each other here
    auto mm = optimize_r(25, 422, 1e7, 300, OptimizeCriterion::MinMax, led());
    CHECK(std::abs(mm.R - r1.R) <= 2);
    // determinism across runs
    auto r1b = optimize_r(25, 422, 1e7, 300, OptimizeCriterion::MinGap, led());
    CHECK(r1.R == r1b.R);
    CHECK(r1.bound.lo() == r1b.bound.lo());
    CHECK(r1.bound.hi() == r1b.bound.hi());
}

TEST_CASE("min-gap and min-max optima stay within 2 across all rows") {
    auto gap_rows = omega_table(led(), OmegaVariant::Source, OptimizeCriterion::MinGap);
    auto max_rows = omega_table(led(), OmegaVariant::Source, OptimizeCriterion::MinMax);
    for (size_t i = 0; i < gap_rows.size(); ++i) {
        CAPTURE(gap_rows[i].S);
        CAPTURE(gap_rows[i].T);
        CHECK(std::abs(gap_rows[i].R_found - max_rows[i].R_found) <= 2);
    }
}

TEST_CASE("windowed g_eps agrees with the tabled route") {
    Interval a = g_eps(50000.0, 0.1, tables());
    Interval b = g_eps_big(50000.0, 0.1);
    CHECK(a.intersects(b));
    CHECK(std::fabs(a.mid() - b.mid()) < 1e-9);
}

TEST_CASE("s_eps brute force") {
    // eps = 0 matches the exact rational oracle
    auto exact = s0_bruteforce_trace(400);
    for (uint32_t X : {5u, 100u, 400u}) {
        double direct = s_eps_bruteforce(X, 0.0);
        CHECK(direct == doctest::Approx(exact[X].get_d()).epsilon(1e-10));
    }
    // nonnegative on random samples
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<uint32_t> X(2, 500);
    std::uniform_real_distribution<double> E(0.0, 0.16);
    for (int i = 0; i < 100; ++i) {
        CHECK(s_eps_bruteforce(X(rng), E(rng)) >= -1e-12);
    }
    // domination by the bracket bound for a spot sample
    Interval om1 = omega1(158, 422, 1e7, led());
    Interval om2 = omega2(158, 100, 422, 1e7, led());
    double bound = max(om1, om2).hi();
    CHECK(s_eps_bruteforce(2000, 0.01) <= bound);
}
