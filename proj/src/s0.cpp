#include "mulcm/s0.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace mulcm {

namespace {

constexpr uint32_t kOracleCap = 3000;

mpz_class lcm_to(uint32_t n) {
    mpz_class L = 1;
    std::vector<bool> comp(n + 1, false);
    for (uint32_t p = 2; p <= n; ++p) {
        if (comp[p]) continue;
        for (uint64_t q = uint64_t(p) * p; q <= n; q += p) comp[q] = true;
        uint64_t pk = p;
        while (pk * p <= n) pk *= p;
        L *= pk;
    }
    return L;
}

}  // namespace

std::vector<mpq_class> s0_bruteforce_trace(uint32_t limit) {
    if (limit < 1 || limit > kOracleCap)
        throw std::domain_error("s0_bruteforce: limit outside oracle scale");
    auto t = PrimeTables::build(1, limit);
    mpz_class L = lcm_to(limit);
    mpz_class S = L;  // S0(1) = 1, scaled
    mpz_class tmp;
    std::vector<mpq_class> out(limit + 1);
    out[1] = 1;
    for (uint32_t l = 2; l <= limit; ++l) {
        int mul = t.mu(l);
        if (mul != 0) {
            mpz_divexact_ui(tmp.get_mpz_t(), L.get_mpz_t(), l);
            S += tmp;  // mu(l)^2 / l
            for (uint32_t m = 1; m < l; ++m) {
                int mum = t.mu(m);
                if (!mum) continue;
                uint64_t lcm_lm = uint64_t(l) / std::gcd(l, m) * m;
                mpz_divexact_ui(tmp.get_mpz_t(), L.get_mpz_t(), lcm_lm);
                tmp *= 2 * mul * mum;
                S += tmp;
            }
        }
        out[l] = mpq_class(S, L);
        out[l].canonicalize();
    }
    return out;
}

mpq_class s0_bruteforce(uint32_t X) {
    if (X < 1) throw std::domain_error("s0_bruteforce: X >= 1");
    return s0_bruteforce_trace(X).back();
}

std::vector<mpq_class> s0_recurrence_trace_exact(uint32_t limit) {
    if (limit < 1 || limit > kOracleCap)
        throw std::domain_error("s0_recurrence_trace_exact: limit outside oracle scale");
    auto t = PrimeTables::build(1, limit);
    // exact Mertens values m(y), y <= limit
    std::vector<mpq_class> m(limit + 1);
    mpq_class run = 0;
    for (uint32_t y = 1; y <= limit; ++y) {
        if (t.mu(y) != 0) run += mpq_class(t.mu(y), y);
        m[y] = run;
    }

    std::vector<mpq_class> out(limit + 1);
    out[1] = 1;
    mpq_class S = 1;
    std::vector<uint32_t> ps;
    for (uint32_t l = 2; l <= limit; ++l) {
        int mul = t.mu(l);
        if (mul != 0) {
            t.factor(l, ps);
            mpq_class inner = 0;
            uint64_t cap = l - 1;
            // DFS over n | l^inf, n <= l-1, weight (1/n) prod_{p|n} (1-p)
            struct Walk {
                const std::vector<uint32_t>& ps;
                uint64_t cap;
                const std::vector<mpq_class>& m;
                mpq_class* inner;
                void go(size_t i, uint64_t n, long long num) const {
                    if (i == ps.size()) {
                        mpq_class w(mpz_class(static_cast<long>(num)),
                                    mpz_class(static_cast<unsigned long>(n)));
                        w.canonicalize();
                        *inner += w * m[cap / n];
                        return;
                    }
                    go(i + 1, n, num);
                    uint64_t p = ps[i];
                    long long num_p = num * (1 - static_cast<long long>(p));
                    for (uint64_t np = n * p; np <= cap; np *= p) {
                        go(i + 1, np, num_p);
                        if (np > cap / p) break;
                    }
                }
            };
            Walk{ps, cap, m, &inner}.go(0, 1, 1);
            S += mpq_class(1, l) + mpq_class(2 * mul, l) * inner;
        }
        out[l] = S;
    }
    return out;
}

S0ScanSummary s0_scan(uint64_t limit, const MertensTable& mertens, const PrimeTables& tables,
                      const std::string& csv_path, uint64_t stride) {
    if (mertens.limit() < limit)
        throw std::invalid_argument("s0_scan: mertens table shorter than scan limit");
    if (tables.hi() < limit) throw std::invalid_argument("s0_scan: prime tables too short");

    FILE* csv = nullptr;
    std::string tmp_path;
    if (!csv_path.empty() && stride > 0) {
        tmp_path = csv_path + ".tmp";
        csv = std::fopen(tmp_path.c_str(), "w");
        if (!csv) throw std::runtime_error("s0_scan: cannot open " + tmp_path);
        std::fprintf(csv, "l,lo,hi\n");
    }

    S0ScanSummary out;
    out.limit = limit;
    double mid = 1.0, comp = 0.0, rad = 0.0;  // S0(1) = 1
    out.max_global_hi = 1.0;
    out.argmax_global = 1;
    out.min_from_1000_lo = std::numeric_limits<double>::infinity();

    std::vector<uint32_t> ps;
    constexpr double kEps = 2.220446049250313e-16;
    for (uint64_t l = 2; l <= limit; ++l) {
        int mul = tables.mu(l);
        Interval delta = Interval::ratio(mul ? 1 : 0, static_cast<long long>(l));
        if (mul != 0) {
            tables.factor(l, ps);
            Interval inner(0.0);
            uint64_t cap = l - 1;
            struct Walk {
                const std::vector<uint32_t>& ps;
                uint64_t cap;
                const MertensTable& mt;
                Interval* inner;
                void go(size_t i, uint64_t n, long long num) const {
                    if (i == ps.size()) {
                        *inner += Interval::ratio(num, static_cast<long long>(n)) *
                                  mt.m(static_cast<double>(cap / n));
                        return;
                    }
                    go(i + 1, n, num);
                    uint64_t p = ps[i];
                    long long num_p = num * (1 - static_cast<long long>(p));
                    for (uint64_t np = n * p; np <= cap; np *= p) {
                        go(i + 1, np, num_p);
                        if (np > cap / p) break;
                    }
                }
            };
            Walk{ps, cap, mertens, &inner}.go(0, 1, 1);
            delta += Interval::ratio(2 * mul, static_cast<long long>(l)) * inner;
        }
        // compensated midpoint + certified radius
        double d = delta.mid();
        double y = d - comp;
        double t2 = mid + y;
        comp = (t2 - mid) - y;
        mid = t2;
        rad += 0.5 * delta.width() + kEps * (std::fabs(mid) + std::fabs(d)) + 1e-300;

        double hi = mid + rad, lo = mid - rad;
        double w = hi - lo;
        if (w > out.max_width) out.max_width = w;
        if (hi > out.max_global_hi) { out.max_global_hi = hi; out.argmax_global = l; }
        if (l >= 2 && hi > out.max_from_2_hi) out.max_from_2_hi = hi;
        if (l >= 6 && hi > out.max_from_6_hi) out.max_from_6_hi = hi;
        if (l >= 422 && hi > out.max_from_422_hi) {
            out.max_from_422_hi = hi;
            out.argmax_from_422 = l;
            out.max_from_422 = Interval(lo, hi);
        }
        if (l >= 1000 && lo < out.min_from_1000_lo) out.min_from_1000_lo = lo;
        if (hi < 0.0) out.nonneg_ok = false;
        if (l >= 1300 && l <= 1350 && lo > 0.44455) out.spike_1300_1350 = true;
        if (csv && (l % stride == 0 || l == limit))
            std::fprintf(csv, "%llu,%.17g,%.17g\n", static_cast<unsigned long long>(l), lo, hi);
    }
    out.final_value = Interval(mid - rad, mid + rad);
    if (csv) {
        std::fclose(csv);
        if (std::rename(tmp_path.c_str(), csv_path.c_str()) != 0)
            throw std::runtime_error("s0_scan: rename failed");
    }
    return out;
}

}  // namespace mulcm
