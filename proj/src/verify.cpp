#include "mulcm/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "mulcm/epsilon.hpp"
#include "mulcm/ledger.hpp"
#include "mulcm/mertens.hpp"
#include "mulcm/s0.hpp"
#include "mulcm/scan.hpp"
#include "mulcm/verify.hpp"

namespace mulcm {

namespace {

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Reporter {
    FILE* out;
    VerifyResult res;
    bool cur_ok = true;
    bool cur_expected = true;
    std::vector<std::string> notes;

    void subcheck(bool ok, const char* what, bool documented_defect = false) {
        if (ok) return;
        cur_ok = false;
        if (!documented_defect) cur_expected = false;
        notes.push_back(std::string(documented_defect ? "FAIL* " : "FAIL ") + what);
    }
    void close(int idx, const char* title, double secs) {
        if (cur_ok) {
            std::fprintf(out, "[%2d] PASS  %-52s (%.1fs)\n", idx, title, secs);
            ++res.criteria_pass;
        } else if (cur_expected) {
            std::fprintf(out, "[%2d] FAIL* %-52s (%.1fs)\n", idx, title, secs);
            ++res.criteria_fail_expected;
        } else {
            std::fprintf(out, "[%2d] FAIL  %-52s (%.1fs)\n", idx, title, secs);
            ++res.criteria_fail;
        }
        for (auto& n : notes) std::fprintf(out, "       %s\n", n.c_str());
        notes.clear();
        cur_ok = cur_expected = true;
    }
};

bool grid_hit(const Interval& v, double literal, double grid) {
    // the source stores ceilinged decimals: accept the literal's grid cell
    return v.intersects(Interval(literal - grid, literal + grid));
}

}  // namespace

VerifyResult run_acceptance(const VerifyConfig& cfg) {
    Reporter rep{cfg.out};
    FILE* out = cfg.out;
    std::fprintf(out, "acceptance suite (scan %.2g, maxima %.2g, products M=%.2g%s)\n",
                 double(cfg.s0_scan_limit), double(cfg.maxima_limit), cfg.euler_M,
                 cfg.full_m ? ", full-M rederivations on" : "");

    uint64_t big_limit = std::max<uint64_t>(cfg.maxima_limit, cfg.s0_scan_limit) + 100;
    auto t0 = Clock::now();
    PrimeTables tables = PrimeTables::build(1, big_limit);
    std::fprintf(out, "     tables to %.2g built in %.1fs\n", double(big_limit), secs_since(t0));

    // ---- 1: exact oracle equivalence ---------------------------------------
    t0 = Clock::now();
    {
        auto brute = s0_bruteforce_trace(2000);
        auto rec = s0_recurrence_trace_exact(2000);
        bool eq = true;
        for (uint32_t l = 1; l <= 2000; ++l)
            if (brute[l] != rec[l]) { eq = false; break; }
        rep.subcheck(eq, "recurrence != brute force somewhere in [1,2000]");
        rep.subcheck(secs_since(t0) < 10.0, "runtime >= 10 s");
    }
    rep.close(1, "S0 recurrence == brute force exactly, X <= 2000", secs_since(t0));

    // ---- 2: exact Mertens recombination ------------------------------------
    t0 = Clock::now();
    rep.subcheck(verify_recombination_exact(100000, tables), "recombination mismatch <= 1e5");
    rep.subcheck(secs_since(t0) < 5.0, "runtime >= 5 s");
    rep.close(2, "q0=6 residue recombination exact, t <= 1e5", secs_since(t0));

    // ---- 3: the first Theta bracket at desk scale --------------------------
    t0 = Clock::now();
    {
        uint64_t lim = cfg.full_scan ? 11000000 : cfg.s0_scan_limit;
        PrimeTables* big = &tables;
        PrimeTables full = PrimeTables();
        if (lim + 10 > tables.hi()) {
            full = PrimeTables::build(1, lim + 10);
            big = &full;
        }
        MertensTable mt(lim, *big);
        S0ScanSummary s = s0_scan(lim, mt, *big);
        rep.subcheck(s.nonneg_ok, "S0 dipped negative");
        char buf[256];
        if (s.max_from_422_hi > 0.445) {
            std::snprintf(buf, sizeof buf,
                          "S0(X) <= 0.445 on [422, %llu]: exceeded at X=%llu, "
                          "S0 = %.15f (exact value 0.445309230257814 at 757 confirmed by "
                          "the rational oracle; source constant 0.445 is too small)",
                          (unsigned long long)lim, (unsigned long long)s.argmax_from_422,
                          s.max_from_422_hi);
            rep.subcheck(false, buf, true);
        }
        rep.subcheck(s.spike_1300_1350, "no X in [1300,1350] with S0 > 0.44455");
        rep.subcheck(s.max_from_2_hi <= 19.0 / 30.0 + 1e-9,
                     "S0 > 19/30 on [2, limit] (19/30 is attained exactly at X=5)");
        rep.subcheck(s.max_from_6_hi <= 0.528, "S0 > 0.528 on [6, limit]");
        rep.subcheck(s.min_from_1000_lo >= 0.437, "S0 < 0.437 for X >= 1000");
    }
    rep.close(3, "first-bracket scan: nonneg, spike, 19/30, 0.528", secs_since(t0));

    // ---- 4: maxima scans ----------------------------------------------------
    t0 = Clock::now();
    {
        struct Row {
            const char* id;
            uint64_t want_arg;
            double literal;
        };
        const Row rows[] = {
            // the source literal for the first integrand is 62359917454422/10^13
            {"aux1.plain", 42, 6.2359917454422},
            {"aux1.g0", 42, 3.16843122347233},
            {"aux1.g0sq", 42, 2.06803754617859},
            {"aux2", 6, 1.90380793763037},
            {"aux3", 2, 2.67710025},
        };
        for (const Row& r : rows) {
            ScanReport rr = scan_mean(r.id, cfg.maxima_limit, tables);
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s: argmax %llu != %llu", r.id,
                          (unsigned long long)rr.arg, (unsigned long long)r.want_arg);
            rep.subcheck(rr.arg == r.want_arg, buf);
            std::snprintf(buf, sizeof buf, "%s: literal %.14g not in [%.14g, %.14g]", r.id,
                          r.literal, rr.value.lo(), rr.value.hi());
            rep.subcheck(rr.value.contains(r.literal) &&
                             rr.value.width() < 1e-12 * std::fabs(r.literal) + 1e-12,
                         buf);
        }
        // Xi scans: the normalized prefix increases toward its limit constant
        // (about 2.2539 resp. 1.5884), so the source's claimed interior argmax
        // cannot be reproduced at this or any deeper limit; its literal is the
        // running value at the smaller X where its scan stopped.
        ScanReport x1 = scan_mean("xi1", cfg.maxima_limit, tables);
        ScanReport x2 = scan_mean("xi2", cfg.maxima_limit, tables);
        char buf[300];
        std::snprintf(buf, sizeof buf,
                      "xi1 to %.2g: argmax %llu, max [%.10f, %.10f]; source claims argmax "
                      "978118 (value there = 2.2526506709, reproduced exactly by a scan "
                      "stopped at 978118, but the prefix keeps growing)",
                      double(cfg.maxima_limit), (unsigned long long)x1.arg, x1.value.lo(),
                      x1.value.hi());
        rep.subcheck(x1.arg == 978118 && x1.value.contains(2.2526506709), buf, true);
        std::snprintf(buf, sizeof buf,
                      "xi2 to %.2g: argmax %llu, max [%.10f, %.10f]; source claims argmax "
                      "478671 with 1.587160669 (our value at 478671 is 1.5871779...)",
                      double(cfg.maxima_limit), (unsigned long long)x2.arg, x2.value.lo(),
                      x2.value.hi());
        rep.subcheck(x2.arg == 478671 && x2.value.contains(1.587160669), buf, true);
        // what is verifiable: the value at the source's own stop point
        ScanReport x1s = scan_mean("xi1", 978118, tables);
        rep.subcheck(x1s.arg == 978118 && x1s.value.contains(2.2526506709),
                     "xi1 value at 978118 does not reproduce the source literal");
    }
    rep.close(4, "mean-value maxima scans", secs_since(t0));

    // ---- 5: Euler enclosures contain the deep-truncation literals ----------
    t0 = Clock::now();
    {
        SpecRegistry reg = build_registry(rho_exact());
        struct Lit { const char* name; double v; };
        // the P1 family literals carry the source scale (P1_M = 290950563/1e8)
        const Lit prods[] = {
            {"P1", 2.90950563},        {"P1_delta1", 62.357582}, {"P1_delta2", 306.1036494},
            {"P1_delta3", 707.85717},  {"P2", 1.638009774},      {"P2_delta", 13.81614454},
            {"P3", 1.031648197},       {"P3_spec", 3.191814808}, {"P1x", 1.2159031},
            {"P1x_delta", 7.26497961}, {"PPdelta", 4.94778677},  {"P0_LX", 0.694045937},
            {"P1_LX", 1.079535589},    {"AP0_LX", 1.031648197},  {"AP1_LX", 3.191814808},
        };
        for (const Lit& l : prods) {
            Interval e = enclose_product(reg.product(l.name), cfg.euler_M);
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s: literal %.10g outside [%.12g, %.12g]", l.name,
                          l.v, e.lo(), e.hi());
            rep.subcheck(e.contains(l.v), buf);
        }
        {
            Interval e = enclose_product(reg.product("APROD"), cfg.euler_M);
            char buf[300];
            std::snprintf(buf, sizeof buf,
                          "APROD: source literal 0.40282372 outside [%.12g, %.12g]; the "
                          "product prod(1-2/p^2+1/p^3) is 0.42824953... (its partials never "
                          "pass through the literal), confirmed against the measured slope "
                          "of sum mu^2 phi/l^2",
                          e.lo(), e.hi());
            rep.subcheck(e.contains(0.40282372), buf, true);
            rep.subcheck(e.contains(0.4282495334), "APROD: independently confirmed value drifted");
        }
        Interval g = Interval::euler_gamma();
        Interval asum = g + enclose_prime_sum(reg.sum("ASUM_SUM"), cfg.euler_M);
        rep.subcheck(asum.contains(2.046752376),
                     "gamma + ASUM T-sum must contain 2.046752376 (the source literal "
                     "already includes gamma)");
        Interval xiv = xi_exponent();
        Interval sumx = enclose_prime_sum(reg.sum("SUMX_SUM"), cfg.euler_M) -
                        evaluate_sum_term(reg.sum("SUMX_SUM"), 2, xiv);
        rep.subcheck(sumx.contains(0.656118309), "Sumx p>=3 part must contain 0.656118309");
        Interval asumx = enclose_prime_sum(reg.sum("ASUMX_SUM"), cfg.euler_M) -
                         evaluate_sum_term(reg.sum("ASUMX_SUM"), 2, xiv);
        rep.subcheck(asumx.contains(0.3611216153), "ASumx p>=3 part must contain 0.3611216153");
    }
    rep.close(5, "Euler enclosures at M=1e5 contain the 1e8 literals", secs_since(t0));

    // ---- 6: full-M truncation reproduction ---------------------------------
    t0 = Clock::now();
    if (cfg.full_m) {
        SpecRegistry reg = build_registry(rho_exact());
        struct Lit { const char* name; double v; double grid; };
        const Lit rows[] = {
            {"P1", 2.90950563, 1e-8},        {"P1_delta1", 62.357582, 1e-6},
            {"P1_delta2", 306.1036494, 1e-7}, {"P1_delta3", 707.85717, 1e-5},
            {"P2", 1.638009774, 1e-9},       {"P2_delta", 13.81614454, 1e-8},
            {"P3", 1.031648197, 1e-9},       {"P3_spec", 3.191814808, 1e-9},
            {"P1x", 1.2159031, 1e-7},        {"P1x_delta", 7.26497961, 1e-8},
            {"PPdelta", 4.94778677, 1e-8},   {"P1_LX", 1.079535589, 1e-9},
            {"P0_LX", 0.694045937, 1e-9},
        };
        for (const Lit& l : rows) {
            Interval tr = truncated_product(reg.product(l.name), 1e8);
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s@1e8: literal %.10g vs [%.12g, %.12g]", l.name,
                          l.v, tr.lo(), tr.hi());
            rep.subcheck(grid_hit(tr, l.v, l.grid), buf);
        }
        {
            Interval tr = truncated_product(reg.product("APROD"), 1e8);
            char buf[200];
            std::snprintf(buf, sizeof buf,
                          "APROD@1e8: source literal 0.40282372 vs computed [%.12g, %.12g]",
                          tr.lo(), tr.hi());
            rep.subcheck(grid_hit(tr, 0.40282372, 1e-8), buf, true);
        }
        {
            // the pinned Chebyshev pair at 1e8, re-sieved with certified logs
            ChebyshevCounts cc = chebyshev_counts(1e8);
            char cbuf[160];
            std::snprintf(cbuf, sizeof cbuf,
                          "sieved pi(1e8) = %llu (want 5761455), theta in [%.6f, %.6f] "
                          "(want floor 99987730)",
                          (unsigned long long)cc.pi, cc.theta.lo(), cc.theta.hi());
            rep.subcheck(cc.pi == 5761455 && cc.theta_floor == 99987730 &&
                             std::floor(cc.theta.lo()) == std::floor(cc.theta.hi()),
                         cbuf);
        }
        {
            Interval g8 = g_eps_big(1e8, 0.1);
            char buf[120];
            std::snprintf(buf, sizeof buf, "G(1e8;1.1) = [%.8f, %.8f], pin needs >= 9.1",
                          g8.lo(), g8.hi());
            rep.subcheck(g8.lo() >= 9.1, buf);
        }
        rep.close(6, "full-M truncations match the source literals", secs_since(t0));
    } else {
        std::fprintf(out, "[ 6] SKIP  full-M reproduction (long run; pass --full)\n");
    }

    // ---- 7: threshold sums and bound table ----------------------------------
    t0 = Clock::now();
    {
        ThresholdSums ts = threshold_sums(cfg.threshold_J, std::numeric_limits<double>::infinity(),
                                          tables);
        char buf[200];
        std::snprintf(buf, sizeof buf, "S1 = [%.15f, %.15f] vs 0.333415398793 (12-digit ceiling)",
                      ts.s1.lo(), ts.s1.hi());
        rep.subcheck(grid_hit(ts.s1, 0.333415398793, 1e-12), buf);
        std::snprintf(buf, sizeof buf, "S2 = [%.8f, %.8f] vs 41346.25411", ts.s2.lo(), ts.s2.hi());
        rep.subcheck(grid_hit(ts.s2, 41346.25411, 1e-5), buf);
        rep.subcheck(ts.s1.width() < 1e-6 * ts.s1.mid(), "S1 relative width >= 1e-6");
        rep.subcheck(ts.s2.width() < 1e-6 * ts.s2.mid(), "S2 relative width >= 1e-6");
        rep.subcheck(secs_since(t0) < 30.0, "threshold sums runtime >= 30 s");

        // Bound4 determinism: two independent ledger builds, bit-identical
        LedgerOptions lo;
        lo.rederive_scans = false;
        ConstantLedger la = ConstantLedger::build(lo, tables);
        ConstantLedger lb = ConstantLedger::build(lo, tables);
        rep.subcheck(la.val("Bound4").lo() == lb.val("Bound4").lo() &&
                         la.val("Bound4").hi() == lb.val("Bound4").hi(),
                     "Bound4 not bit-identical across runs");

        if (cfg.full_m) {
            LedgerOptions fo;
            fo.prime_limit = 1e8;
            fo.rederive_scans = false;
            ConstantLedger lf = ConstantLedger::build(fo, tables);
            struct B { double eta; int u, v, k, J; const char* name; double lit; };
            const B bs[] = {{1.2, 9, 12, 0, 30, "Bound1", 0.59751334145858},
                            {2.2, 12, 16, 0, 61, "Bound2", 0.4987002674334},
                            {5.2, 16, 33, 0, 80, "Bound3", 0.4669804238966}};
            for (const B& b : bs) {
                Interval u = u_bound(b.eta, b.u, b.v, b.k, b.J, lf, tables);
                std::snprintf(buf, sizeof buf, "%s: U = [%.14f, %.14f] vs %.14f", b.name,
                              u.lo(), u.hi(), b.lit);
                rep.subcheck(grid_hit(u, b.lit, 1e-9), buf);
            }
        }
    }
    rep.close(7, "threshold sums + bound table determinism", secs_since(t0));

    // ---- 8: optimizer parity -------------------------------------------------
    t0 = Clock::now();
    {
        LedgerOptions lo;
        lo.rederive_scans = false;
        ConstantLedger led = ConstantLedger::build(lo, tables);
        auto rows = omega_table(led, OmegaVariant::Source, OptimizeCriterion::MinGap);
        for (const auto& r : rows) {
            char buf[120];
            std::snprintf(buf, sizeof buf, "S=%d T=%g: found R=%d vs source %d", r.S, r.T,
                          r.R_found, r.R_source);
            rep.subcheck(std::abs(r.R_found - r.R_source) <= 2, buf);
        }
    }
    rep.close(8, "min-gap optimizer reproduces all fifteen (S -> R)", secs_since(t0));

    // ---- 9: end-to-end domination --------------------------------------------
    t0 = Clock::now();
    {
        LedgerOptions lo;
        lo.rederive_scans = false;
        ConstantLedger led = ConstantLedger::build(lo, tables);
        // the epsilon <= 1/25 row of the (422, 1e7) bracket
        Interval o1 = omega1(43, 422, 1e7, led);
        Interval o2 = omega2(43, 25, 422, 1e7, led);
        double bound = max(o1, o2).hi();
        std::mt19937_64 rng(20260809);
        std::uniform_int_distribution<uint32_t> X(422, 2500);
        std::uniform_real_distribution<double> E(0.0, 0.04);
        bool dominated = true, nonneg = true;
        for (int i = 0; i < 200; ++i) {
            double v = s_eps_bruteforce(X(rng), E(rng));
            if (v > bound) dominated = false;
            if (v < -1e-12) nonneg = false;
        }
        rep.subcheck(dominated, "sampled S_eps exceeded the bracket bound");
        rep.subcheck(nonneg, "sampled S_eps went negative");
    }
    rep.close(9, "S_eps samples dominated by max(Omega1, Omega2)", secs_since(t0));

    // ---- 10: interval soundness ------------------------------------------------
    t0 = Clock::now();
    {
        std::mt19937_64 rng(424242);
        std::uniform_real_distribution<double> U(-30.0, 30.0);
        std::uniform_real_distribution<double> W(0.0, 1e-6);
        std::uniform_int_distribution<int> op(0, 7);
        long bad = 0;
        for (long i = 0; i < 100000; ++i) {
            double x = U(rng), y = U(rng);
            Interval Xv(x - W(rng), x + W(rng)), Yv(y - W(rng), y + W(rng));
            double z;
            Interval Z(0.0);
            switch (op(rng)) {
                case 0: z = x + y; Z = Xv + Yv; break;
                case 1: z = x - y; Z = Xv - Yv; break;
                case 2: z = x * y; Z = Xv * Yv; break;
                case 3:
                    if (Yv.contains(0.0)) continue;
                    z = x / y; Z = Xv / Yv; break;
                case 4: z = std::exp(x / 8); Z = exp(Xv / Interval(8.0)); break;
                case 5:
                    if (Xv.lo() <= 0) continue;
                    z = std::log(x); Z = log(Xv); break;
                case 6:
                    if (Xv.lo() < 0) continue;
                    z = std::sqrt(x); Z = sqrt(Xv); break;
                default:
                    if (Xv.lo() <= 0) continue;
                    z = std::pow(x, y / 8); Z = pow(Xv, Yv / Interval(8.0)); break;
            }
            if (!Z.contains(z)) ++bad;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%ld containment violations", bad);
        rep.subcheck(bad == 0, buf);
    }
    rep.close(10, "randomized interval soundness, 1e5 trials", secs_since(t0));

    std::fprintf(out, "summary: %d pass, %d fail* (documented source-literal defects), %d fail\n",
                 rep.res.criteria_pass, rep.res.criteria_fail_expected, rep.res.criteria_fail);
    return rep.res;
}

}  // namespace mulcm
