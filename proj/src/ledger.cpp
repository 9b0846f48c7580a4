#include "mulcm/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "mulcm/prime_tails.hpp"

namespace mulcm {

namespace {

Interval iv10(long long num, int e) { return Interval::ratio10(num, e); }

Interval abs_minus_one(const Interval& f) { return abs(f - Interval(1.0)); }

// w-shape of the edge-route error constants at q = 1:
//   (sqrt2-1)/(sqrt2-1+|2^alpha f(2)-1|) (E1 + |2^alpha f(2)-1| E2/(sqrt2-1))
Interval w_factor_from(const Interval& dev, const Interval& E1, const Interval& E2) {
    Interval s = sqrt(Interval(2.0)) - 1.0;
    return (s / (s + dev)) * (E1 + dev * E2 / s);
}

}  // namespace

void ConstantLedger::put(const std::string& name, const Interval& v, Provenance p, double scale,
                         const std::string& note) {
    if (!map_.count(name)) order_.push_back(name);
    map_[name] = LedgerEntry{v, p, scale, note};
}

const LedgerEntry& ConstantLedger::entry(const std::string& name) const {
    auto it = map_.find(name);
    if (it == map_.end()) throw std::out_of_range("ledger: no entry " + name);
    return it->second;
}

Interval mv_delta1(const Interval& delta) {
    Interval g = Interval::euler_gamma();
    return max(g, Interval(1.0) / (delta * exp(g * delta + 1.0)));
}

std::pair<Interval, Interval> mean_value_enclosure(const MeanValueSpec& spec, double M,
                                                   const SpecRegistry& reg) {
    Interval lead = spec.factor2_main * enclose_product(reg.product(spec.leading_product), M);
    Interval errp = enclose_product(reg.product(spec.error_product), M);
    switch (spec.route) {
        case MvRoute::FreeDelta: {
            if (!(spec.delta.lo() > 0.0) || !(spec.delta.hi() < 0.5))
                throw std::domain_error("mean_value_enclosure: delta outside (0,1/2)");
            Interval two(2.0), one(1.0);
            Interval coef = (two - two * spec.alpha - spec.delta) /
                            (one - spec.alpha - spec.delta);
            return {lead, coef * mv_delta1(spec.delta) * spec.factor2_err * errp};
        }
        case MvRoute::EdgeA:
            return {lead, spec.w_factor * spec.factor2_err * errp};
        case MvRoute::EdgeB: {
            if (!(spec.alpha.hi() < 0.5))
                throw std::domain_error("mean_value_enclosure: route B needs alpha < 1/2");
            Interval coef = Interval(1.0) + (Interval(2.0) - 2.0 * spec.alpha) /
                                                (Interval(1.0) - 2.0 * spec.alpha);
            return {lead, coef * spec.w_factor * spec.factor2_err * errp};
        }
        case MvRoute::EdgeC:
            // alpha = 1/2 variant: coefficient of (1 + log(X)/2)
            return {lead, spec.w_factor * spec.factor2_err * errp};
    }
    throw std::logic_error("mean_value_enclosure: bad route");
}

ConstantLedger ConstantLedger::build(const LedgerOptions& opt, const PrimeTables& tables) {
    ConstantLedger led;
    led.opt_ = opt;
    led.registry_ = build_registry(rho_exact());
    const SpecRegistry& reg = led.registry_;
    const double M = opt.prime_limit;
    const Interval one(1.0), two(2.0);
    const Interval g = Interval::euler_gamma();
    const Interval ln10 = Interval::ln10();
    const Interval ln2 = Interval::ln2();
    const Interval sqrt2 = sqrt(two);

    // ---- stage 0: source literals -----------------------------------------
    led.put("H1", iv10(10032, 6), Provenance::SourcePinned);
    led.put("H2", iv10(296, 4), Provenance::SourcePinned);
    led.put("E1", iv10(1044, 3), Provenance::SourcePinned);
    led.put("E2", iv10(232, 3), Provenance::SourcePinned);
    led.put("Harm1_a", iv10(578, 3), Provenance::SourcePinned);
    led.put("Harm2_a", iv10(1166, 3), Provenance::SourcePinned);
    led.put("Harm1", iv10(1040, 3), Provenance::SourcePinned);
    led.put("Harm2", iv10(1048, 3), Provenance::SourcePinned);
    led.put("c", Interval::ratio(1, 1000), Provenance::SourcePinned);
    led.put("value1", iv10(91, 1), Provenance::SourcePinned, 1e8,
            "G(1e8;1.1) >= 9.1; re-verified by the windowed evaluation (9.10395...)");
    led.put("Z_80", iv10(809999, 4), Provenance::SourcePinned);
    led.put("S11_80", iv10(333415398793, 12), Provenance::SourcePinned,
            0, "re-derivable via threshold_sums(80, inf)");
    led.put("S12_80", iv10(4134625411, 5), Provenance::SourcePinned,
            0, "re-derivable via threshold_sums(80, inf)");
    led.put("Bound0", iv10(445, 3), Provenance::SourcePinned, 0,
            "exceeded at X=757 where S0 = 0.44530923... exactly; kept for table parity");
    led.put("Bound1", iv10(59751334145858, 14), Provenance::SourcePinned,
            0, "re-derivable via u_bound(1.2;9,12;0,30)");
    led.put("Bound2", iv10(4987002674334, 13), Provenance::SourcePinned,
            0, "re-derivable via u_bound(2.2;12,16;0,61)");
    led.put("Bound3", iv10(4669804238966, 13), Provenance::SourcePinned,
            0, "re-derivable via u_bound(5.2;16,33;0,80)");
    led.put("logmx", iv10(129424331261228, 14), Provenance::SourcePinned, 2e8,
            "K1 scan offset; source scan used rho=2.951 and the corrected c1 slope");
    led.put("logmm", iv10(505508801388535, 15), Provenance::SourcePinned, 2e8);
    led.put("log2mx", iv10(129424331261228, 14), Provenance::SourcePinned, 2e8,
            "identical literal to logmx in the source; desk rescan disagrees (see k2 scans)");
    led.put("log2mm", iv10(505508801388535, 15), Provenance::SourcePinned, 2e8,
            "identical literal to logmm in the source; desk rescan disagrees");
    led.put("rho_scan", iv10(2951, 3), Provenance::SourcePinned,
            0, "3-digit ceiling of H2/H1 used by the source scans");

    // ---- stage 1: basic derived constants ----------------------------------
    Interval xiv = xi_exponent();
    led.put("xi", xiv, Provenance::Computed);
    Interval trop = led.val("H2") / led.val("H1");
    led.put("trop", trop, Provenance::Computed);
    Interval g0v = g0_at_2();
    Interval g2v = g2_at_2(trop);
    led.put("g0_2", g0v, Provenance::Computed);
    led.put("g2_2", g2v, Provenance::Computed);
    Interval d13 = Interval::ratio(1, 3), d512 = Interval::ratio(5, 12),
             d49 = Interval::ratio(4, 9);
    led.put("A_delta13", mv_delta1(d13), Provenance::Computed);
    led.put("A_delta512", mv_delta1(d512), Provenance::Computed);
    led.put("A_delta49", mv_delta1(d49), Provenance::Computed);

    // ---- stage 2: Euler products / sums at M --------------------------------
    auto put_prod = [&](const char* name) {
        led.put(name, enclose_product(reg.product(name), M), Provenance::Computed, M);
    };
    for (const char* n : {"P1", "P1_delta1", "P1_delta2", "P1_delta3", "P2", "P2_delta", "P3",
                          "P3_spec", "P1x", "P1x_delta", "PPdelta", "P0_LX", "P0C_LX", "P1_LX",
                          "AP0_LX", "AP1_LX"})
        put_prod(n);
    led.put("APROD_computed", enclose_product(reg.product("APROD"), M), Provenance::Computed, M,
            "true value of prod (1-2/p^2+1/p^3); the source literal 0.40282372 is not "
            "attainable by this product (see W)");
    led.put("ASUM_computed", g + enclose_prime_sum(reg.sum("ASUM_SUM"), M), Provenance::Computed,
            M, "gamma + T_f; the source adds gamma to a literal that already contains it");
    led.put("SUMX_T", enclose_prime_sum(reg.sum("SUMX_SUM"), M), Provenance::Computed, M);
    led.put("ASUMX_T", enclose_prime_sum(reg.sum("ASUMX_SUM"), M), Provenance::Computed, M);

    // ---- stage 3: local factors at p = 2 ------------------------------------
    auto Fmain = [&](const Interval& f) { return one - (one - f) / 2.0 - f / 4.0; };
    auto Fbar = [&](const Interval& f, const Interval& delta) {
        return one + abs_minus_one(f) / pow(two, one - delta) +
               abs(f) / pow(two, two - 2.0 * delta);
    };
    Interval fx1 = one / ((sqrt2 - one) * (sqrt2 - one));
    led.put("fx1_2", fx1, Provenance::Computed);
    led.put("Fx1_2", Fmain(fx1), Provenance::Computed);
    led.put("Fx1_2_delta2", Fbar(fx1, d512), Provenance::Computed);
    Interval fx2 = g0v * fx1;
    led.put("fx2_2", fx2, Provenance::Computed);
    led.put("Fx2_2", Fmain(fx2), Provenance::Computed);
    led.put("Fx2_2_delta2", Fbar(fx2, d512), Provenance::Computed);
    Interval f1 = g0v * g0v * fx1;
    led.put("f1_2", f1, Provenance::Computed);
    led.put("F1_2", Fmain(f1), Provenance::Computed);
    led.put("F1_2_delta1", Fbar(f1, d13), Provenance::Computed);
    led.put("F1_2_delta2", Fbar(f1, d512), Provenance::Computed);
    led.put("F1_2_delta3", Fbar(f1, d49), Provenance::Computed);

    Interval txi = pow(two, xiv);
    Interval f2 = g0v * g2v * (one + (pow(two, xiv - Interval(0.5)) + one) / (txi - one));
    led.put("f2_2", f2, Provenance::Computed);
    led.put("F2_2", Fmain(f2), Provenance::Computed);
    led.put("F2_2_delta", Fbar(f2, d13), Provenance::Computed);

    Interval f3 = g2v * g2v * pow(two, 2.0 * xiv - one) / ((txi - one) * (txi - one));
    led.put("f3_2", f3, Provenance::Computed);
    led.put("F3_2", Fmain(f3), Provenance::Computed);
    led.put("F3_2_spec", one + abs_minus_one(f3) / (sqrt2 - one), Provenance::Computed);
    led.put("W_aux3", w_factor_from(abs_minus_one(f3), led.val("E1"), led.val("E2")),
            Provenance::Computed);

    Interval fxxx = (sqrt2 + one) / 2.0;
    Interval fx1g0 = g0v * fxxx;
    auto Fnu = [&](const Interval& f) {
        return one - (one - f * sqrt2) / 2.0 - f * sqrt2 / 4.0;
    };
    auto Fnu_bar = [&](const Interval& f) {
        return one + abs_minus_one(f * sqrt2) / pow(two, Interval::ratio(2, 3)) +
               abs(f * sqrt2) / pow(two, Interval::ratio(4, 3));
    };
    led.put("F1xxx_2", Fnu(fxxx), Provenance::Computed);
    led.put("F1xxx_2_delta", Fnu_bar(fxxx), Provenance::Computed);
    led.put("F1x_2", Fnu(fx1g0), Provenance::Computed);
    led.put("F1x_2_delta", Fnu_bar(fx1g0), Provenance::Computed);

    Interval f2lx = g2v * (one / 4.0) * txi / (txi - one);
    led.put("f2_lx", f2lx, Provenance::Computed);
    led.put("W2_lx", w_factor_from(abs(2.0 * f2lx - one), led.val("E1"), led.val("E2")),
            Provenance::Computed);
    Interval F2LX = one - (one - 2.0 * f2lx) / 2.0 - f2lx / 2.0;
    led.put("F2_LX", F2LX, Provenance::Computed);
    led.put("F2P1_LX", one + abs(2.0 * f2lx - one) / (sqrt2 - one), Provenance::Computed);
    Interval af2lx = g2v * g2v * (one / 4.0) * txi * txi / ((txi - one) * (txi - one));
    led.put("Af2_lx", af2lx, Provenance::Computed);
    Interval AF2LX = one - (one - 2.0 * af2lx) / 2.0 - af2lx / 2.0;
    led.put("AF2_LX", AF2LX, Provenance::Computed);
    led.put("AF2P1_LX", one + abs(2.0 * af2lx - one) / (sqrt2 - one), Provenance::Computed);

    // ---- stage 4: analytic thresholds + scan maxima -> TH constants ---------
    Interval vx1 = led.val("Fx1_2") * led.val("P1") +
                   Interval::ratio(19, 7) * led.val("A_delta512") * led.val("Fx1_2_delta2") *
                       led.val("P1_delta2") * pow(Interval(4e9), -d512);
    Interval vx2 = led.val("Fx2_2") * led.val("P1") +
                   Interval::ratio(19, 7) * led.val("A_delta512") * led.val("Fx2_2_delta2") *
                       led.val("P1_delta2") * pow(Interval(4e9), -d512);
    Interval v1 = led.val("F1_2") * led.val("P1") +
                  Interval::ratio(19, 7) * led.val("A_delta512") * led.val("F1_2_delta2") *
                      led.val("P1_delta2") * pow(Interval(4e9), -d512);
    led.put("vx1", vx1, Provenance::Computed, M);
    led.put("vx2", vx2, Provenance::Computed, M);
    led.put("v1", v1, Provenance::Computed, M);
    Interval v2 = led.val("F2_2") * led.val("P2") +
                  Interval::ratio(5, 2) * led.val("A_delta13") * led.val("F2_2_delta") *
                      led.val("P2_delta") * pow(Interval(1e7), -d13);
    led.put("v2", v2, Provenance::Computed, M);
    Interval v3 = led.val("F3_2") * led.val("P3") +
                  Interval(3.0) * led.val("W_aux3") * led.val("P3_spec") *
                      pow(Interval(1e6), Interval::ratio(-1, 2));
    led.put("v3", v3, Provenance::Computed, M);
    Interval vxxx = 2.0 * led.val("F1xxx_2") * led.val("P1x") +
                    Interval(4.0) * led.val("A_delta13") * led.val("F1xxx_2_delta") *
                        led.val("P1x_delta") * pow(Interval(5e6), -d13);
    Interval vx11 = 2.0 * led.val("F1x_2") * led.val("P1x") +
                    Interval(4.0) * led.val("A_delta13") * led.val("F1x_2_delta") *
                        led.val("P1x_delta") * pow(Interval(5e6), -d13);
    led.put("vxxx_aux11", vxxx, Provenance::Computed, M);
    led.put("vx_aux11", vx11, Provenance::Computed, M);

    // scan maxima: source literals (validated at desk scale when rederiving)
    led.put("Fmx1", iv10(62359917454422, 13), Provenance::SourcePinned, 4e9);
    led.put("Fmx2", iv10(316843122347233, 14), Provenance::SourcePinned, 4e9);
    led.put("mx1", iv10(206803754617859, 14), Provenance::SourcePinned, 4e9);
    led.put("mx2", iv10(190380793763037, 14), Provenance::SourcePinned, 1e7);
    led.put("mx3", iv10(267710025, 8), Provenance::SourcePinned, 1e6);
    led.put("mxxx_aux11", iv10(22526506709, 10), Provenance::SourcePinned, 5e6);
    led.put("mx_aux11", iv10(1587160669, 9), Provenance::SourcePinned, 5e6);
    if (opt.rederive_scans) {
        ScanOptions so;  // rho = 2.951, matching the source scans
        struct Row { const char* scan; const char* entry; uint64_t lim; };
        for (const Row& r : {Row{"aux1.plain", "Fmx1_desk", opt.scan_limit},
                             Row{"aux1.g0", "Fmx2_desk", opt.scan_limit},
                             Row{"aux1.g0sq", "mx1_desk", opt.scan_limit},
                             Row{"aux2", "mx2_desk", opt.scan_limit},
                             Row{"aux3", "mx3_desk", opt.scan_limit},
                             Row{"xi1", "mxxx_aux11_desk", opt.xi_scan_limit},
                             Row{"xi2", "mx_aux11_desk", opt.xi_scan_limit}}) {
            ScanReport rep = scan_mean(r.scan, std::min<uint64_t>(r.lim, tables.hi()), tables, so);
            led.put(r.entry, rep.value, Provenance::DeskScanned,
                    static_cast<double>(rep.limit), "argmax X=" + std::to_string(rep.arg));
        }
    }

    auto THmax = [&](const char* v, const char* mx) { return max(led.val(v), led.val(mx)); };
    led.put("THx1", THmax("vx1", "Fmx1"), Provenance::Computed);
    led.put("THx2", THmax("vx2", "Fmx2"), Provenance::Computed);
    led.put("TH1", THmax("v1", "mx1"), Provenance::Computed);
    led.put("TH2", THmax("v2", "mx2"), Provenance::Computed);
    led.put("TH3", THmax("v3", "mx3"), Provenance::Computed);
    led.put("THxxx_aux11", THmax("vxxx_aux11", "mxxx_aux11"), Provenance::Computed);
    led.put("THx_aux11", THmax("vx_aux11", "mx_aux11"), Provenance::Computed);

    Interval tw = Interval(12.0) * ln10;
    led.put("L1", 2.0 * led.val("TH2") / 2.0 / ln10 / 12.0 + led.val("TH2") / ln10 / 12.0,
            Provenance::Computed);
    led.put("L2",
            led.val("TH3") * (one / tw - one / (tw * tw)) + led.val("TH3") / (tw * tw),
            Provenance::Computed);

    // ---- stage 5: c1/c2 brackets and the log-offset outputs -----------------
    Interval c1 = F2LX * led.val("P0_LX");
    led.put("c1", c1, Provenance::Computed, M,
            "as printed (trailing -1 factor); feeds loglemma1_1 for source parity");
    led.put("lc1", Interval(c1.lo()), Provenance::Computed, M);
    led.put("uc1", Interval(c1.hi()), Provenance::Computed, M);
    Interval c1c = F2LX * led.val("P0C_LX");
    led.put("c1_corrected", c1c, Provenance::Computed, M,
            "H_f(0) with the corrected local factor; matches the K1 slope and scan offsets");
    Interval c2 = AF2LX * led.val("AP0_LX");
    led.put("c2", c2, Provenance::Computed, M);
    led.put("lc2", Interval(c2.lo()), Provenance::Computed, M);
    led.put("uc2", Interval(c2.hi()), Provenance::Computed, M);
    led.put("Sumx", g + log(two) / (f2lx + one) + led.val("SUMX_T") -
                        evaluate_sum_term(reg.sum("SUMX_SUM"), 2, xiv),
            Provenance::Computed, M, "gamma + log2/(f(2)+1) + (p >= 3 part)");
    led.put("ASumx", g + log(two) / (af2lx + one) + led.val("ASUMX_T") -
                         evaluate_sum_term(reg.sum("ASUMX_SUM"), 2, xiv),
            Provenance::Computed, M);

    led.put("loglemma1_1", c1, Provenance::Computed, M);
    led.put("loglemma1_2", led.val("logmx") / tw, Provenance::Computed);
    led.put("loglemma2", c2 / tw + led.val("log2mx") / (tw * tw), Provenance::Computed);

    // ---- stage 6: the G_q constants -----------------------------------------
    // Source-parity group: the exact literals the source pipeline ran on.
    led.put("W", iv10(40282372, 8), Provenance::SourcePinned, 0,
            "source literal; the independently computed product is W_computed "
            "= APROD_computed and differs in the second digit");
    led.put("ASUM", g + iv10(2046752376, 9), Provenance::SourcePinned, 0,
            "source expression (gamma added to a literal that already equals "
            "gamma + T_f); honest value in ASUM_computed");
    led.put("f2_gq", Interval::ratio(1, 4), Provenance::Computed);
    led.put("W2", w_factor_from(abs(2.0 * Interval::ratio(1, 4) - one), led.val("E1"),
                                led.val("E2")),
            Provenance::Computed);
    led.put("PPdelta_pinned", iv10(494778677, 8), Provenance::SourcePinned);
    Interval aprod_delta = led.val("PPdelta_pinned") *
                           exp(b_kappa(Interval::ratio(3, 2), 1e8, 5761455) /
                               (one - pow(Interval(1e8), Interval::ratio(-1, 2))));
    led.put("APROD_delta", aprod_delta, Provenance::Computed, 1e8,
            "PPdelta literal with the analytic tail factor");
    led.put("G1", led.val("W2") * aprod_delta, Provenance::Computed);
    led.put("G2", led.val("E2") * aprod_delta, Provenance::Computed);
    Interval aprod_delta_c = led.val("PPdelta");  // computed full enclosure
    led.put("G1_computed", led.val("W2") * aprod_delta_c, Provenance::Computed, M);
    led.put("G2_computed", led.val("E2") * aprod_delta_c, Provenance::Computed, M);

    // ---- stage 7: A/B coefficient block and theorem table -------------------
    Interval pi2 = Interval::pi() * Interval::pi();
    led.put("ax_1",
            (one / 30.0) * ((Interval(6.0) / pi2) * log(iv10(109, 1) / Interval(5.0)) +
                            led.val("Harm2") - led.val("Harm1")),
            Provenance::Computed);
    led.put("u1", Interval::ratio(2323, 30030), Provenance::SourcePinned);
    led.put("u2", Interval::ratio(57731, 570570), Provenance::SourcePinned);
    led.put("ax_2", max(led.val("u1"), led.val("u2")), Provenance::Computed);
    double ax2_up = round_up(led.val("ax_2").hi(), opt.digits);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", opt.digits, ax2_up);
    led.put("subs", one - Interval(ax2_up), Provenance::Computed, 0,
            std::string("1 - RoundUp(ax_2, digits) = 1 - ") + buf);

    Interval z80 = led.val("Z_80");
    Interval thresh1 = 2.0 * led.val("TH1") / z80 +
                       2.0 * sqrt2 * led.val("H1") * led.val("L1") / sqrt(z80) +
                       led.val("H1") * led.val("H1") * led.val("L2");
    led.put("Thresh33_1", thresh1, Provenance::Computed);
    Interval sq33 = sqrt(pow(Interval(10.0), Interval(33.0)));
    Interval thresh2 = led.val("W") * (led.val("S11_80") + ln2) +
                       (led.val("G2") * led.val("S12_80") + led.val("G1") * (one + sqrt2)) / sq33;
    led.put("Thresh33_2", thresh2, Provenance::Computed);
    led.put("Bound4", thresh1 + thresh2, Provenance::Computed, 0,
            "assembled from the source-parity W/G group");
    Interval thresh2c = led.val("APROD_computed") * (led.val("S11_80") + ln2) +
                        (led.val("G2_computed") * led.val("S12_80") +
                         led.val("G1_computed") * (one + sqrt2)) / sq33;
    led.put("Bound4_computed", thresh1 + thresh2c, Provenance::Computed, M,
            "same pipeline on the independently computed W/G group");
    return led;
}

std::string ConstantLedger::to_json() const {
    nlohmann::json j;
    j["schema"] = "mulcm-ledger-v1";
    j["digits"] = opt_.digits;
    j["prime_limit"] = opt_.prime_limit;
    j["scan_limit"] = opt_.scan_limit;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& name : order_) {
        const LedgerEntry& e = map_.at(name);
        nlohmann::json row;
        row["name"] = name;
        row["lo"] = e.value.lo();
        row["hi"] = e.value.hi();
        auto rep = report(e.value, opt_.digits);
        row["report_lo"] = rep.first;
        row["report_hi"] = rep.second;
        row["provenance"] = e.prov == Provenance::SourcePinned
                                ? "source-pinned"
                                : (e.prov == Provenance::DeskScanned ? "desk-scanned" : "computed");
        if (e.scale > 0) row["scale"] = e.scale;
        if (!e.note.empty()) row["note"] = e.note;
        entries.push_back(row);
    }
    j["entries"] = entries;
    nlohmann::json specs = nlohmann::json::array();
    for (const auto& s : registry_.products) {
        nlohmann::json row;
        row["name"] = s.name;
        row["kind"] = "product";
        row["factor"] = s.factor.str();
        row["start_prime"] = s.start_prime;
        row["kappa"] = s.kappa_of_xi.str();
        row["b_of_M"] = s.b_of_M.str();
        row["sign"] = s.sign == TailKind::NonNeg ? "nonneg"
                                                 : (s.sign == TailKind::NonPos ? "nonpos" : "mixed");
        specs.push_back(row);
    }
    for (const auto& s : registry_.sums) {
        nlohmann::json row;
        row["name"] = s.name;
        row["kind"] = "prime-log-sum";
        row["f"] = s.f.str();
        row["kappa"] = s.kappa_of_xi.str();
        row["c_of_M"] = s.c_of_M.str();
        row["sign"] = s.sign == TailKind::NonNeg ? "nonneg"
                                                 : (s.sign == TailKind::NonPos ? "nonpos" : "mixed");
        specs.push_back(row);
    }
    j["specs"] = specs;
    return j.dump(2);
}

void ConstantLedger::write_json(const std::string& path) const {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp);
        if (!f) throw std::runtime_error("ledger: cannot open " + tmp);
        f << to_json() << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("ledger: rename failed");
}

std::string ConstantLedger::to_table() const {
    std::string out = "name                      report_lo      report_hi      provenance\n";
    char line[256];
    for (const auto& name : order_) {
        const LedgerEntry& e = map_.at(name);
        auto rep = report(e.value, opt_.digits);
        std::snprintf(line, sizeof line, "%-25s %-14.10g %-14.10g %s\n", name.c_str(), rep.first,
                      rep.second,
                      e.prov == Provenance::SourcePinned
                          ? "source-pinned"
                          : (e.prov == Provenance::DeskScanned ? "desk-scanned" : "computed"));
        out += line;
    }
    return out;
}

// ---- theorem-level operations ----------------------------------------------

Interval tail_lemma(double X, double D, const ConstantLedger& led) {
    if (!(X >= D) || !(D >= 0.0)) throw std::domain_error("tail_lemma: X >= D >= 0 required");
    Interval ratio = D == 0.0 ? Interval(0.0) : Interval(D) / Interval(X);
    return 2.0 * led.val("TH1") * ratio +
           2.0 * sqrt(Interval(2.0)) * led.val("H1") * led.val("L1") * sqrt(ratio) +
           led.val("H1") * led.val("H1") * led.val("L2");
}

Interval getgq_r(uint64_t q) {
    Interval r(1.0);
    uint64_t n = q;
    for (uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            Interval P(static_cast<double>(p));
            r *= P * P / (P * P + P - 1.0);
            while (n % p == 0) n /= p;
        }
    if (n > 1) {
        Interval P(static_cast<double>(n));
        r *= P * P / (P * P + P - 1.0);
    }
    return r;
}

Interval getgq_t(uint64_t q) {
    Interval r(1.0);
    uint64_t n = q;
    auto fac = [&](uint64_t p) {
        Interval P(static_cast<double>(p));
        Interval p32 = pow(P, Interval::ratio(3, 2));
        r *= p32 / (p32 - P + 1.0);
    };
    for (uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            fac(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) fac(n);
    return r;
}

Interval getgq_c(uint64_t q) {
    Interval r(0.0);
    uint64_t n = q;
    auto term = [&](uint64_t p) {
        Interval P(static_cast<double>(p));
        r += (P - 1.0) * log(P) / (P * P + P - 1.0);
    };
    for (uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            term(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) term(n);
    return r;
}

GqResult getgq(uint64_t q, double X, const ConstantLedger& led) {
    if (q < 1 || !(X > 0.0)) throw std::domain_error("getgq: q >= 1 and X > 0 required");
    Interval sq = getgq_c(q) + led.val("ASUM");
    Interval main = led.val("W") * getgq_r(q) * (log(Interval(X)) + sq);
    const char* gname = q % 2 == 0 ? "G2" : "G1";
    Interval err = led.val(gname) * getgq_t(q) / sqrt(Interval(X));
    return {main, err};
}

namespace {

// Shared machinery of the primorial divisor sums: for each j, DFS over
// squarefree n | Pi(j) below a cap, accumulating phi(n)/n^2 m_n(j)^2 and
// phi(n)/n^{3/2} m_n(j)^2 with certified m_n(j) radii.
class PrimorialDivisorContext {
public:
    explicit PrimorialDivisorContext(const PrimeTables& tables) {
        if (tables.lo() != 1 || tables.hi() < 80)
            throw std::invalid_argument("threshold sums: tables must cover [1, 80]");
        for (int m = 1; m <= 80; ++m) {
            muval_[m] = tables.mu(m) / static_cast<double>(m);
            mmask_[m] = tables.small_prime_mask(m);
        }
        for (int i = 0; i < 22; ++i) {
            Interval P(static_cast<double>(kSmallPrimes[i]));
            w2f_[i] = (P - 1.0) / (P * P);
            w32f_[i] = (P - 1.0) / pow(P, Interval::ratio(3, 2));
        }
    }

    // grow r_{Pi(j)}, t_{Pi(j)} when j is prime
    void advance_weights(int j, Interval& r_run, Interval& t_run) const {
        for (int i = 0; i < 22; ++i)
            if (static_cast<int>(kSmallPrimes[i]) == j) {
                Interval P(static_cast<double>(j));
                r_run *= P * P / (P * P + P - 1.0);
                Interval p32 = pow(P, Interval::ratio(3, 2));
                t_run *= p32 / (p32 - P + 1.0);
            }
    }

    std::pair<Interval, Interval> inner_sums(int j, double cap) const {
        Interval s1(0.0), s2(0.0);
        j_ = j;
        cap_ = cap;
        s1_ = &s1;
        s2_ = &s2;
        walk(0, 1.0, 0, Interval(1.0), Interval(1.0));
        return {s1, s2};
    }

private:
    void walk(int idx, double n, uint32_t nmask, const Interval& w2, const Interval& w32) const {
        double s = 0.0;
        for (int m = 1; m <= j_; ++m)
            if (muval_[m] != 0.0 && (mmask_[m] & nmask) == 0) s += muval_[m];
        Interval mn(s - kMnErr, s + kMnErr);
        Interval mn2 = mn * mn;
        *s1_ += w2 * mn2;
        *s2_ += w32 * mn2;
        for (int i = idx; i < 22; ++i) {
            int p = static_cast<int>(kSmallPrimes[i]);
            if (p > j_) break;
            double np = n * p;
            if (!(np < cap_)) continue;
            walk(i + 1, np, nmask | (1u << i), w2 * w2f_[i], w32 * w32f_[i]);
        }
    }

    // naive-summation radius for one m_n(j): 80 terms, sum of |mu(m)/m| < 5
    static constexpr double kMnErr = 82 * 2.220446049250313e-16 * 5.0;
    double muval_[81];
    uint32_t mmask_[81];
    Interval w2f_[22], w32f_[22];
    mutable int j_ = 0;
    mutable double cap_ = 0;
    mutable Interval* s1_ = nullptr;
    mutable Interval* s2_ = nullptr;
};

}  // namespace

ThresholdSums threshold_sums(int J, double cap, const PrimeTables& tables) {
    if (J < 2 || J > 80) throw std::domain_error("threshold_sums: 2 <= J <= 80 required");
    ThresholdSums out{Interval(0.0), Interval(0.0)};
    Interval r_run(1.0), t_run(1.0);
    PrimorialDivisorContext ctx(tables);
    for (int j = 2; j <= J; ++j) {
        ctx.advance_weights(j, r_run, t_run);
        auto [inner1, inner2] = ctx.inner_sums(j, cap);
        Interval jlog =
            log(Interval(static_cast<double>(j + 1)) / Interval(static_cast<double>(j)));
        out.s1 += r_run * jlog * inner1;
        Interval sj = sqrt(Interval(static_cast<double>(j + 1))) +
                      sqrt(Interval(static_cast<double>(j)));
        out.s2 += t_run * sj * inner2;
    }
    return out;
}

Interval u_bound(double eta, int u, int v, int k, int J, const ConstantLedger& led,
                 const PrimeTables& tables) {
    if (!(eta > 1.0) || !(u < v) || v > 33 || k < 0 || J < 2 || J > 80)
        throw std::domain_error("u_bound: parameter domain violated");
    double kmax = std::floor((v - u) * std::log(10.0) / std::log(eta));
    if (k > kmax) throw std::domain_error("u_bound: k beyond the bracket ceiling");
    int d = led.options().digits;
    // the displayed majorant composes 4-digit ceilings of the ledger constants
    auto up = [&](const Interval& x) { return Interval(round_up(x.hi(), d)); };
    Interval sqrt2 = sqrt(Interval(2.0));
    Interval A1 = up(2.0 * led.val("TH1"));
    Interval A2 = up(2.0 * sqrt2 * led.val("H1") * led.val("L1"));
    Interval A3 = up(led.val("H1") * led.val("H1") * led.val("L2"));
    Interval AW = up(led.val("W"));
    Interval A5 = up(led.val("G1") * (Interval(1.0) + sqrt2));
    Interval A7 = up(led.val("G2"));

    Interval Jz = Interval(static_cast<double>(J)) + Interval::ratio10(9999, 4);
    Interval scale = pow(Interval(eta), Interval(static_cast<double>(k))) *
                     pow(Interval(10.0), Interval(static_cast<double>(u)));
    Interval out = A1 / Jz + A2 / sqrt(Jz) + A3 + AW * Interval::ln2() + A5 / sqrt(scale);

    Interval S1(0.0), S2(0.0);
    Interval r_run(1.0), t_run(1.0);
    double eta_k1_10u = std::pow(eta, k + 1) * std::pow(10.0, u);
    PrimorialDivisorContext ctx(tables);
    for (int j = 2; j <= J; ++j) {
        ctx.advance_weights(j, r_run, t_run);
        auto [inner1, inner2] = ctx.inner_sums(j, eta_k1_10u / j);  // n < cap per j
        Interval jlog =
            log(Interval(static_cast<double>(j + 1)) / Interval(static_cast<double>(j)));
        S1 += r_run * jlog * inner1;
        Interval sj = sqrt(Interval(static_cast<double>(j + 1))) +
                      sqrt(Interval(static_cast<double>(j)));
        S2 += t_run * sj * inner2;
    }
    return out + AW * S1 + A7 / sqrt(scale) * S2;
}

Interval theta_bound(double T, double T0, const ConstantLedger& led) {
    bool inf0 = std::isinf(T0) || T0 >= 1e50;
    if (T == 422 && T0 == 1e7) return led.val("Bound0");
    if (T == 1e7 && T0 == 1e12) return led.val("Bound1");
    if (T == 1e12 && T0 == 1e16) return led.val("Bound2");
    if (T == 1e16 && T0 == 1e33) return led.val("Bound3");
    if (T == 1e33 && inf0) return led.val("Bound4");
    throw std::domain_error("theta_bound: unknown bracket");
}

}  // namespace mulcm
