#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <numeric>
#include <random>

#include "mulcm/sieves.hpp"

using namespace mulcm;

TEST_CASE("mu and phi spot values") {
    auto t = PrimeTables::build(1, 1000);
    CHECK(t.mu(1) == 1);
    CHECK(t.phi(1) == 1);
    CHECK(t.mu(12) == 0);
    CHECK(t.phi(12) == 4);
    CHECK(t.mu(30) == -1);
    CHECK(t.phi(30) == 8);
    CHECK(t.small_prime_mask(30) == ((1u << 0) | (1u << 1) | (1u << 2)));  // {2,3,5}
    CHECK(t.mu(4) == 0);
    for (uint32_t p : {2u, 3u, 97u}) {
        CHECK(t.mu(p) == -1);
        CHECK(t.phi(p) == p - 1);
    }
}

TEST_CASE("phi equals n prod (1-1/p) against factorization, n <= 1e4") {
    auto t = PrimeTables::build(1, 10000);
    std::vector<uint32_t> fs;
    for (uint64_t n = 2; n <= 10000; ++n) {
        t.factor(n, fs);
        uint64_t val = n;
        for (uint32_t p : fs) val = val / p * (p - 1);
        CHECK(val == t.phi(n));
    }
}

TEST_CASE("sum of mu over divisors vanishes (sampled)") {
    auto t = PrimeTables::build(1, 20000);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<uint64_t> D(2, 20000);
    for (int i = 0; i < 300; ++i) {
        uint64_t n = D(rng);
        long s = 0;
        for (uint64_t d = 1; d * d <= n; ++d) {
            if (n % d) continue;
            s += t.mu(d);
            if (d * d != n) s += t.mu(n / d);
        }
        CHECK(s == 0);
    }
}

TEST_CASE("segmented window agrees bit-exactly with monolithic") {
    auto mono = PrimeTables::build(1, 60000);
    auto win = PrimeTables::build(40000, 60000);
    for (uint64_t n = 40000; n <= 60000; ++n) {
        CHECK(win.mu(n) == mono.mu(n));
        CHECK(win.phi(n) == mono.phi(n));
        CHECK(win.small_prime_mask(n) == mono.small_prime_mask(n));
    }
    size_t cnt = 0;
    for (uint32_t p : mono.primes())
        if (p >= 40000) ++cnt;
    CHECK(win.primes().size() == cnt);
}

TEST_CASE("prime counts") {
    auto t = PrimeTables::build(1, 100000);
    CHECK(t.primes().size() == 9592);
    size_t below100 = 0;
    for (uint32_t p : t.primes())
        if (p <= 100) ++below100;
    CHECK(below100 == 25);
    size_t n = 0;
    for_primes(1e6, [&](uint64_t) { ++n; });
    CHECK(n == 78498);
}

TEST_CASE("eval_g") {
    CHECK(eval_g(3, GWeight::g0).contains(1.0));
    CHECK(eval_g(3, GWeight::g2).contains(1.0));
    // closed form sqrt(3)(sqrt(2)-1)/2
    CHECK(eval_g(2, GWeight::g0).contains(0.3587194676071504));
    CHECK(eval_g(2, GWeight::g0).width() < 1e-14);
    CHECK(report_upper(rho_exact(), 4) == doctest::Approx(2.9506).epsilon(1e-15));
}

TEST_CASE("eval_phi_s / eval_sigma_s") {
    CHECK(eval_phi_s(1, 0.5).contains(1.0));
    double sqrt2m1 = 0.41421356237309503;
    CHECK(eval_phi_s(2, 0.5).contains(sqrt2m1));
    CHECK(eval_phi_s(6, 1.0).contains(2.0));
    CHECK(eval_sigma_s(6, 1.0).contains(12.0));
    CHECK(eval_phi_s(30, 1.0).contains(8.0));
    CHECK_THROWS(eval_phi_s(0, 1.0));
}

TEST_CASE("xi exponent from exact expression") {
    Interval xi = xi_exponent();
    CHECK(xi.contains(1.0 - 1.0 / (12.0 * 2.302585092994046)));
    CHECK(xi.width() < 1e-15);
}

TEST_CASE("table cache round trip") {
    auto t = PrimeTables::build(1, 5000);
    std::string path = "/tmp/mulcm_tables_test.bin";
    t.save(path);
    auto u = PrimeTables::load(path);
    CHECK(u.lo() == t.lo());
    CHECK(u.hi() == t.hi());
    for (uint64_t n = 1; n <= 5000; ++n) {
        CHECK(u.mu(n) == t.mu(n));
        CHECK(u.phi(n) == t.phi(n));
    }
    std::remove(path.c_str());
}
