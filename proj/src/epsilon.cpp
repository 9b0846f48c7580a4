#include "mulcm/epsilon.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mulcm {

Interval zeta_bounds(double eps) {
    if (!(eps > 0.0) || eps > 1.0) throw std::domain_error("zeta_bounds: 0 < eps <= 1");
    Interval e(eps);
    Interval lo = Interval(1.0) / e;
    Interval hi = exp(Interval::euler_gamma() * e) / e;
    return Interval(lo.lo(), hi.hi());
}

Interval g_eps(double X, double eps, const PrimeTables& tables) {
    if (!(X >= 1.0)) throw std::domain_error("g_eps: X >= 1 required");
    uint64_t n = static_cast<uint64_t>(X);
    if (tables.lo() != 1 || tables.hi() < n)
        throw std::invalid_argument("g_eps: tables must cover [1, X]");
    Interval expo(1.0 + eps);
    std::vector<Interval> cache(n + 1, Interval(0.0));
    std::vector<bool> cached(n + 1, false);
    Interval sum(1.0);  // l = 1
    std::vector<uint32_t> ps;
    for (uint64_t l = 2; l <= n; ++l) {
        if (tables.mu(l) == 0) continue;
        tables.factor(l, ps);
        Interval term(1.0);
        for (uint32_t p : ps) {
            if (!cached[p]) {
                // 1/phi_{1+eps}(p) = 1/(p^{1+eps} - 1)
                cache[p] = Interval(1.0) / (pow(Interval(static_cast<double>(p)), expo) - 1.0);
                cached[p] = true;
            }
            term *= cache[p];
        }
        sum += term;
    }
    return sum;
}

Interval g_eps_big(double X, double eps) {
    if (!(X >= 2.0)) throw std::domain_error("g_eps_big: X >= 2 required");
    uint64_t n = static_cast<uint64_t>(X);
    Interval expo(1.0 + eps);
    // base primes and their cached local factors 1/(p^{1+eps}-1)
    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(n))) + 1;
    std::vector<uint64_t> base;
    std::vector<Interval> bfac;
    for_primes(static_cast<double>(root), [&](uint64_t p) {
        base.push_back(p);
        bfac.push_back(Interval(1.0) /
                       (pow(Interval(static_cast<double>(p)), expo) - 1.0));
    });

    const uint64_t seg = 1u << 22;
    std::vector<uint64_t> rem;
    std::vector<Interval> val;
    std::vector<uint8_t> sqf;
    Interval sum(0.0);
    for (uint64_t lo = 1; lo <= n; lo += seg) {
        uint64_t hi = std::min(n, lo + seg - 1);
        size_t m = static_cast<size_t>(hi - lo + 1);
        rem.assign(m, 0);
        val.assign(m, Interval(1.0));
        sqf.assign(m, 1);
        for (size_t i = 0; i < m; ++i) rem[i] = lo + i;
        for (size_t bi = 0; bi < base.size(); ++bi) {
            uint64_t p = base[bi];
            if (p > hi) break;
            for (uint64_t q = ((lo + p - 1) / p) * p; q <= hi; q += p) {
                size_t i = static_cast<size_t>(q - lo);
                uint32_t e = 0;
                while (rem[i] % p == 0) { rem[i] /= p; ++e; }
                if (e >= 2) { sqf[i] = 0; continue; }
                val[i] *= bfac[bi];
            }
        }
        for (size_t i = 0; i < m; ++i) {
            if (!sqf[i] || lo + i == 1) continue;
            Interval v = val[i];
            if (rem[i] > 1)
                v *= Interval(1.0) /
                     (pow(Interval(static_cast<double>(rem[i])), expo) - 1.0);
            sum += v;
        }
    }
    return sum + Interval(1.0);  // l = 1
}

namespace {

Interval ind(bool b) { return Interval(b ? 1.0 : 0.0); }

// Grr(ee, t) = 2 ee - 1_{t >= 10.9e8} value1 ee^2 / e^{2 ee gamma}
Interval grr(const Interval& ee, double t, const ConstantLedger& led) {
    Interval out = 2.0 * ee;
    if (t >= 10.9e8)
        out -= led.val("value1") * ee * ee / exp(2.0 * ee * Interval::euler_gamma());
    return out;
}

struct OmegaConstants {
    Interval ll11, ll12, ll2;       // log-offset blocks
    Interval lin_coef, lin_eps_coef;  // coefficients of 2^e and e 2^{2e}
    Interval q_a, q_b, q_c, q_d;    // quadratic block
    Interval ax1, value1, c;
};

OmegaConstants omega_constants(const ConstantLedger& led) {
    OmegaConstants o;
    o.ll11 = led.val("loglemma1_1");
    o.ll12 = led.val("loglemma1_2");
    o.ll2 = led.val("loglemma2");
    Interval ax2 = led.val("ax_2");
    Interval subs = led.val("subs");
    Interval thx = led.val("THx_aux11");
    Interval thxxx = led.val("THxxx_aux11");
    Interval s109 = sqrt(Interval::ratio10(109, 1));
    Interval s47 = sqrt(Interval(47.0));
    Interval r41 = Interval::ratio10(41, 1);
    o.lin_coef = ax2 * thx * r41 / s109 + thxxx * Interval::ratio(5, 2) / s109 +
                 subs * thx * r41 / s47 + thxxx * Interval::ratio(5, 2) / s47;
    o.lin_eps_coef = ax2 * thxxx / 2.0 / s109 + subs * thxxx / 2.0 / s47;
    Interval c = led.val("c");
    Interval cp1 = c + 1.0;
    Interval over109 = cp1 / Interval::ratio10(109, 1);
    Interval thx1 = led.val("THx1"), thx2 = led.val("THx2"), th1 = led.val("TH1");
    o.q_a = (Interval(1.0) + Interval(1.0) / c) * Interval::ratio(9, 10000) * o.ll2;
    o.q_b = (Interval::ratio(25, 4) * thx1 + Interval(5.0) * r41 * thx2 + r41 * r41 * th1) *
            over109;
    o.q_c = (Interval::ratio(10, 4) * thx1 + r41 * thx2) * over109;
    o.q_d = thx1 * cp1 / 4.0 / Interval::ratio10(109, 1);
    o.ax1 = led.val("ax_1");
    o.value1 = led.val("value1");
    o.c = c;
    return o;
}

Interval mn1(const Interval& ee, double T) { return min(ee, Interval(1.0) / log(Interval(T))); }
Interval mn2(const Interval& ee, double T) {
    return min(2.0 * ee, Interval(1.0) / log(Interval(T)));
}

}  // namespace

Interval omega1(int R, double T, double T0, const ConstantLedger& led) {
    if (R < 1) throw std::domain_error("omega1: R >= 1");
    OmegaConstants o = omega_constants(led);
    bool ind1 = T0 > 1e12;
    Interval ee = Interval(1.0) / Interval(static_cast<double>(R));
    Interval tw = Interval(1.0) / (Interval(1.0) + 12.0 * Interval::ln10());
    Interval c3 = Interval::ratio(3, 100);

    Interval p1 = theta_bound(T, T0, led) + c3 * o.ll11 * tw * ind(ind1) + grr(ee, T, led);
    Interval p2 = mn2(ee, T) * (c3 * o.ll11 * ind(ind1) + o.lin_coef * pow(Interval(2.0), ee) +
                                o.lin_eps_coef * pow(Interval(2.0), 2.0 * ee) / Interval(double(R)));
    Interval p3 = mn1(ee, T) * 2.0 * (c3 * o.ll12 + o.ax1);
    Interval R2(static_cast<double>(R));
    Interval p4 = mn2(ee, T) * (Interval(1.0) / (2.0 * R2)) *
                  (o.q_a + o.q_b * pow(Interval(2.0), 2.0 * ee) +
                   o.q_c * pow(Interval(2.0), 3.0 * ee) / R2 +
                   o.q_d * pow(Interval(2.0), 4.0 * ee) / (R2 * R2));
    return p1 + p2 + p3 + p4;
}

Interval omega2(int R, int S, double T, double T0, const ConstantLedger& led,
                OmegaVariant variant) {
    if (R <= S) throw std::domain_error("omega2: R > S required");
    OmegaConstants o = omega_constants(led);
    bool ind1 = T0 > 1e12;
    Interval eS = Interval(1.0) / Interval(static_cast<double>(S));
    Interval Sv(static_cast<double>(S));
    Interval logT = log(Interval(T));
    Interval exx1 = exp(-logT / Interval(static_cast<double>(R)));
    Interval exx2 = exp(-2.0 * logT / Interval(static_cast<double>(R)));
    Interval tw = Interval(1.0) / (Interval(1.0) + 12.0 * Interval::ln10());
    Interval c3 = Interval::ratio(3, 100);

    Interval q1;
    if (variant == OmegaVariant::Source) {
        // reference helper: Grr(1/S, t) with the generic e^{2 gamma/S}
        q1 = exx2 * theta_bound(T, T0, led) + c3 * o.ll11 * tw * ind(ind1) + grr(eS, T, led);
    } else {
        // rendered formula: 2/S - value1 1_{T>=10.9e8}/(S^2 e^{2 gamma/10})
        Interval sub(0.0);
        if (T >= 10.9e8)
            sub = o.value1 /
                  (Sv * Sv * exp(2.0 * Interval::euler_gamma() / Interval::ratio10(10, 0)));
        q1 = exx2 * theta_bound(T, T0, led) + c3 * o.ll11 * tw * ind(ind1) + 2.0 / Sv - sub;
    }

    Interval base = 2.0 * (c3 * o.ll12 + o.ax1);
    Interval q2 = variant == OmegaVariant::Source ? (2.0 / Sv) * exx1 * base
                                                : exx1 * base / Sv;  // rendered: 2 vals/S once

    Interval q3 = (2.0 / Sv) * exx2 *
                  (c3 * o.ll11 * ind(ind1) + o.lin_coef * pow(Interval(2.0), eS) +
                   o.lin_eps_coef * pow(Interval(2.0), 2.0 * eS) / Sv);

    Interval second = variant == OmegaVariant::Source ? o.q_b * pow(Interval(2.0), eS)
                                                    : o.q_b * pow(Interval(2.0), 2.0 * eS);
    Interval last = variant == OmegaVariant::Source
                        ? o.q_d * pow(Interval(2.0), Interval::ratio(4, 10)) / Interval(100.0)
                        : o.q_d * pow(Interval(2.0), 4.0 * eS) / (Sv * Sv);
    Interval q4 = (Interval(1.0) / (Sv * Sv)) * exx2 *
                  (o.q_a + second + o.q_c * pow(Interval(2.0), 3.0 * eS) / Sv + last);
    return q1 + q2 + q3 + q4;
}

OptimizeResult optimize_r(int S, double T, double T0, int r_max, OptimizeCriterion crit,
                          const ConstantLedger& led, OmegaVariant variant) {
    if (S < 7) throw std::domain_error("optimize_r: S >= 7 required");
    if (r_max <= S + 1) throw std::domain_error("optimize_r: empty scan range");
    OptimizeResult best;
    double best_score = std::numeric_limits<double>::infinity();
    for (int R = S + 1; R <= r_max; ++R) {
        Interval o1 = omega1(R, T, T0, led);
        Interval o2 = omega2(R, S, T, T0, led, variant);
        double score = crit == OptimizeCriterion::MinGap ? std::fabs(o1.mid() - o2.mid())
                                                         : max(o1, o2).hi();
        if (score < best_score) {
            best_score = score;
            best = {R, max(o1, o2), o1, o2};
        }
    }
    return best;
}

double s_eps_bruteforce(uint32_t X, double eps) {
    if (X < 1 || X > 3000) throw std::domain_error("s_eps_bruteforce: X outside oracle scale");
    auto t = PrimeTables::build(1, std::max<uint64_t>(X, 2));
    double S = 0.0;
    for (uint32_t d = 1; d <= X; ++d) {
        if (t.mu(d) == 0) continue;
        S += 1.0 / std::pow(static_cast<double>(d), 1.0 + eps);  // diagonal
        for (uint32_t e = d + 1; e <= X; ++e) {
            if (t.mu(e) == 0) continue;
            uint64_t l = uint64_t(d) / std::gcd(d, e) * e;
            S += 2.0 * t.mu(d) * t.mu(e) / std::pow(static_cast<double>(l), 1.0 + eps);
        }
    }
    return S;
}

std::vector<OmegaTableRow> omega_table(const ConstantLedger& led, OmegaVariant variant,
                                       OptimizeCriterion crit, int r_max_scale) {
    struct Cfg { int S; double T, T0; int R; };
    const Cfg cfgs[] = {
        {25, 422, 1e7, 43},    {50, 422, 1e7, 82},    {100, 422, 1e7, 158},
        {25, 1e7, 1e12, 81},   {50, 1e7, 1e12, 153},  {100, 1e7, 1e12, 297},
        {25, 1e12, 1e16, 111}, {50, 1e12, 1e16, 203}, {100, 1e12, 1e16, 387},
        {25, 1e16, 1e33, 133}, {50, 1e16, 1e33, 242}, {100, 1e16, 1e33, 459},
        {25, 1e33, std::numeric_limits<double>::infinity(), 241},
        {50, 1e33, std::numeric_limits<double>::infinity(), 439},
        {100, 1e33, std::numeric_limits<double>::infinity(), 833},
    };
    std::vector<OmegaTableRow> rows;
    for (const Cfg& c : cfgs) {
        int rmax = r_max_scale > 0 ? r_max_scale : std::max(2 * c.R + 50, c.S + 50);
        OptimizeResult r = optimize_r(c.S, c.T, c.T0, rmax, crit, led, variant);
        rows.push_back({c.S, c.T, c.T0, c.R, r.R, r.bound});
    }
    return rows;
}

}  // namespace mulcm
