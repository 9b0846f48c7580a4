#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mulcm/interval.hpp"

using namespace mulcm;

TEST_CASE("decimal rounding modes") {
    CHECK(round_decimal(0.12341, 4, RoundMode::Up) == doctest::Approx(0.1235).epsilon(1e-15));
    CHECK(round_decimal(-0.12341, 4, RoundMode::Up) == doctest::Approx(-0.1234).epsilon(1e-15));
    CHECK(round_decimal(0.0296, 4, RoundMode::TowardZero) == doctest::Approx(0.0296).epsilon(1e-15));
    CHECK(round_decimal(0.12341, 4, RoundMode::Down) == doctest::Approx(0.1234).epsilon(1e-15));
    CHECK(round_decimal(2.0, 4, RoundMode::Up) == 2.0);
    CHECK(round_decimal(-0.00005, 4, RoundMode::TowardZero) == 0.0);
    CHECK_THROWS(round_decimal(std::numeric_limits<double>::infinity(), 4, RoundMode::Up));
}

TEST_CASE("decimal rounding idempotence") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> U(-10.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
        double x = U(rng);
        for (auto m : {RoundMode::Up, RoundMode::Down, RoundMode::TowardZero}) {
            double once = round_decimal(x, 4, m);
            CHECK(round_decimal(once, 4, m) == once);
        }
        CHECK(round_decimal(x, 4, RoundMode::Up) >= x);
        CHECK(round_decimal(x, 4, RoundMode::Down) <= x);
        CHECK(std::fabs(round_decimal(x, 4, RoundMode::TowardZero)) <= std::fabs(x));
    }
}

TEST_CASE("report pair") {
    auto r = report(Interval(1.0), 4);
    CHECK(r.first == 1.0);
    CHECK(r.second == 1.0);
    Interval third = Interval(1.0) / Interval(3.0);
    r = report(third, 4);
    CHECK(r.first == doctest::Approx(0.3333).epsilon(1e-15));
    CHECK(r.second == doctest::Approx(0.3334).epsilon(1e-15));
    // the headline ratio of the m/m2 constants renders as 2.9506 at 4 digits
    Interval rho = Interval::ratio10(296, 4) / Interval::ratio10(10032, 6);
    CHECK(report_upper(rho, 4) == doctest::Approx(2.9506).epsilon(1e-15));
}

TEST_CASE("basic arithmetic containment") {
    Interval a(1.0), b(2.0);
    Interval s = a + b;
    CHECK(s.contains(3.0));
    CHECK(s.width() <= 2 * std::ldexp(1.0, -51));
    CHECK(sqrt(Interval(4.0)).contains(2.0));
    CHECK(exp(Interval(0.0)).contains(1.0));
    CHECK(log(Interval(1.0)).contains(0.0));
    CHECK(pow_int(Interval(-2.0, 3.0), 2).contains(0.0));
    CHECK(pow_int(Interval(-2.0, 3.0), 2).contains(9.0));
    CHECK(pow_int(Interval(-2.0, 3.0), 2).contains(4.0));
    CHECK_THROWS(Interval(1.0) / Interval(-1.0, 1.0));
    CHECK_THROWS(log(Interval(0.0, 1.0)));
    CHECK_THROWS(sqrt(Interval(-1.0, 1.0)));
}

TEST_CASE("ratio10 encloses the decimal value") {
    Interval h1 = Interval::ratio10(10032, 6);
    CHECK(h1.lo() <= 0.010032);
    CHECK(h1.hi() >= 0.010032);
    CHECK(h1.width() < 1e-17);
    Interval g = Interval::euler_gamma();
    CHECK(g.contains(0.5772156649015329));
}

namespace {

// randomized outward-rounding soundness, shared with the acceptance suite
template <typename Rng>
long soundness_trial_errors(Rng& rng, long trials) {
    std::uniform_real_distribution<double> U(-30.0, 30.0);
    std::uniform_real_distribution<double> W(0.0, 1e-6);
    std::uniform_int_distribution<int> op(0, 7);
    long bad = 0;
    for (long i = 0; i < trials; ++i) {
        double x = U(rng), y = U(rng);
        Interval X(x - W(rng), x + W(rng)), Y(y - W(rng), y + W(rng));
        double z;
        Interval Z(0.0);
        switch (op(rng)) {
            case 0: z = x + y; Z = X + Y; break;
            case 1: z = x - y; Z = X - Y; break;
            case 2: z = x * y; Z = X * Y; break;
            case 3:
                if (Y.contains(0.0)) continue;
                z = x / y; Z = X / Y; break;
            case 4: z = std::exp(x / 8); Z = exp(X / Interval(8.0)); break;
            case 5:
                if (X.lo() <= 0) continue;
                z = std::log(x); Z = log(X); break;
            case 6:
                if (X.lo() < 0) continue;
                z = std::sqrt(x); Z = sqrt(X); break;
            default:
                if (X.lo() <= 0) continue;
                z = std::pow(x, y / 8); Z = pow(X, Y / Interval(8.0)); break;
        }
        if (!Z.contains(z)) ++bad;
    }
    return bad;
}

}  // namespace

TEST_CASE("randomized soundness") {
    std::mt19937_64 rng(987654321);
    CHECK(soundness_trial_errors(rng, 100000) == 0);
}

TEST_CASE("monotone nesting of unary functions") {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> U(0.1, 20.0);
    for (int i = 0; i < 5000; ++i) {
        double a = U(rng), w1 = U(rng) * 1e-4, w2 = w1 + U(rng) * 1e-4;
        Interval inner(a - w1, a + w1), outer(a - w2, a + w2);
        CHECK(exp(outer).contains(exp(inner)));
        CHECK(log(outer).contains(log(inner)));
        CHECK(sqrt(outer).contains(sqrt(inner)));
    }
}
