// mulcm: certified recomputation of the constants, scans and bound tables
// behind the Moebius lcm double-sum estimates.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "mulcm/epsilon.hpp"
#include "mulcm/ledger.hpp"
#include "mulcm/mertens.hpp"
#include "mulcm/prime_tails.hpp"
#include "mulcm/s0.hpp"
#include "mulcm/scan.hpp"
#include "mulcm/verify.hpp"

using namespace mulcm;

namespace {

constexpr int kExitVerifyFailure = 2;
constexpr int kExitConfigError = 3;

struct RunConfig {
    double prime_limit = 1e6;
    double scan_limit = 1e6;
    double mertens_limit = 1e6;
    int digits = 4;
    int threads = 0;  // 0 = all; evaluation is deterministic regardless
    std::string out;
};

// minimal TOML subset: `key = value` lines, '#' comments, sections ignored
void apply_config_file(const std::string& path, RunConfig& rc) {
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || key.front() == '[') continue;
        try {
            if (key == "prime_limit") rc.prime_limit = std::stod(val);
            else if (key == "scan_limit") rc.scan_limit = std::stod(val);
            else if (key == "mertens_limit") rc.mertens_limit = std::stod(val);
            else if (key == "digits") rc.digits = std::stoi(val);
            else if (key == "threads") rc.threads = std::stoi(val);
            else if (key == "out") rc.out = val;
            else throw CLI::ValidationError("--config", "unknown key " + key);
        } catch (const std::invalid_argument&) {
            throw CLI::ValidationError("--config", "bad value for " + key);
        }
    }
}

void write_text(const std::string& path, const std::string& body) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp);
        if (!f) throw std::runtime_error("cannot open " + tmp);
        f << body;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed for " + path);
}

std::string iv_str(const Interval& v, int digits) {
    auto r = report(v, digits);
    char buf[128];
    std::snprintf(buf, sizeof buf, "[%.*f, %.*f]", digits, r.first, digits, r.second);
    return buf;
}

const PrimeTables& shared_tables(double need) {
    static std::map<uint64_t, PrimeTables> cache;
    uint64_t n = static_cast<uint64_t>(need) + 10;
    for (auto& [hi, t] : cache)
        if (hi >= n) return t;
    auto [it, ok] = cache.emplace(n, PrimeTables::build(1, n));
    return it->second;
}

double parse_t0(const std::string& s) {
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified Moebius lcm double-sum pipeline"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    RunConfig rc;
    std::string config_path;
    app.add_option("--config", config_path, "TOML config overriding defaults");
    app.add_option("--prime-limit", rc.prime_limit, "Euler product truncation (e.g. 1e6)");
    app.add_option("--scan-limit", rc.scan_limit, "mean-value scan limit");
    app.add_option("--mertens-limit", rc.mertens_limit, "Mertens table limit");
    app.add_option("--digits", rc.digits, "reporting digits")->check(CLI::Range(1, 12));
    app.add_option("--threads", rc.threads, "worker cap (results are thread-count independent)");
    app.add_option("-o,--out", rc.out, "output path (written atomically)");

    auto* led_cmd = app.add_subcommand("ledger", "build the full constant ledger");
    bool led_full_m = false;
    led_cmd->add_flag("--full-m", led_full_m, "truncate products at 1e8 (minutes)");

    auto* s0_cmd = app.add_subcommand("s0-scan", "run the S0 recurrence scan");
    double s0_limit = 1e6;
    bool s0_oracle = false, s0_full = false;
    uint64_t s0_stride = 0;
    std::string s0_csv;
    s0_cmd->add_option("--limit", s0_limit, "scan limit");
    s0_cmd->add_flag("--oracle", s0_oracle, "compare against the exact oracle (limit <= 3000)");
    s0_cmd->add_flag("--full-scan", s0_full, "scan to 1.1e7 (source scale)");
    s0_cmd->add_option("--csv", s0_csv, "CSV trace path");
    s0_cmd->add_option("--stride", s0_stride, "CSV stride");

    auto* brute_cmd = app.add_subcommand("brute-check", "exact oracle equivalences");
    double brute_limit = 1500;
    brute_cmd->add_option("--limit", brute_limit, "oracle comparison limit (<= 3000)");

    auto* max_cmd = app.add_subcommand("maxima", "mean-value maxima scan reports");
    double max_limit = 0;
    max_cmd->add_option("--limit", max_limit, "scan limit (default: scan-limit)");

    auto* theta_cmd = app.add_subcommand("theta", "piecewise S0 bound lookup");
    double theta_T = 422;
    std::string theta_T0 = "1e7";
    theta_cmd->add_option("--t", theta_T, "bracket start");
    theta_cmd->add_option("--t0", theta_T0, "bracket end (inf allowed)");

    auto* omega_cmd = app.add_subcommand("omega", "the fifteen-row bound table");
    std::string omega_variant = "source";
    std::string omega_criterion = "min-gap";
    omega_cmd->add_option("--variant", omega_variant, "source | rendered | both");
    omega_cmd->add_option("--criterion", omega_criterion, "min-gap | min-max");

    auto* opt_cmd = app.add_subcommand("optimize", "optimize R for one configuration");
    int opt_S = 25, opt_rmax = 600;
    double opt_T = 422;
    std::string opt_T0 = "auto", opt_criterion = "min-gap";
    opt_cmd->add_option("--s", opt_S, "S parameter")->required();
    opt_cmd->add_option("--t", opt_T, "bracket start")->required();
    opt_cmd->add_option("--t0", opt_T0, "bracket end (inf allowed; auto pairs with --t)");
    opt_cmd->add_option("--r-max", opt_rmax, "scan ceiling");
    opt_cmd->add_option("--criterion", opt_criterion, "min-gap | min-max");

    auto* tails_cmd = app.add_subcommand("tails", "B_kappa / C_kappa tail functionals");
    double tails_kappa = 1.5, tails_M = 1e6;
    tails_cmd->add_option("--kappa", tails_kappa, "exponent > 1");
    tails_cmd->add_option("--m", tails_M, "cutoff");

    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
    bool verify_full = false;
    verify_cmd->add_flag("--full", verify_full, "include the long-run criteria");

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) apply_config_file(config_path, rc);
        if (rc.prime_limit < 100 || rc.scan_limit < 100)
            throw CLI::ValidationError("config", "limits out of range");
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    }

    try {
        if (*led_cmd) {
            LedgerOptions lo;
            lo.prime_limit = led_full_m ? 1e8 : rc.prime_limit;
            lo.scan_limit = static_cast<uint64_t>(rc.scan_limit);
            lo.xi_scan_limit = static_cast<uint64_t>(std::max(rc.scan_limit, 2e6));
            lo.digits = rc.digits;
            const PrimeTables& t = shared_tables(std::max(rc.scan_limit, 2e6));
            ConstantLedger led = ConstantLedger::build(lo, t);
            if (!rc.out.empty()) {
                led.write_json(rc.out);
                std::printf("ledger written to %s (%zu entries)\n", rc.out.c_str(),
                            led.names().size());
            } else {
                std::fputs(led.to_table().c_str(), stdout);
            }
        } else if (*s0_cmd) {
            if (s0_full) s0_limit = 1.1e7;
            uint64_t lim = static_cast<uint64_t>(s0_limit);
            const PrimeTables& t = shared_tables(s0_limit);
            MertensTable mt(lim, t);
            S0ScanSummary s = s0_scan(lim, mt, t, s0_csv, s0_stride);
            std::printf("S0 scan to %llu\n", static_cast<unsigned long long>(lim));
            std::printf("  final        %s\n", s.final_value.str().c_str());
            std::printf("  max [422, L] %.12g at X=%llu\n", s.max_from_422_hi,
                        static_cast<unsigned long long>(s.argmax_from_422));
            std::printf("  max [2, L]   %.12g   max [6, L] %.12g\n", s.max_from_2_hi,
                        s.max_from_6_hi);
            std::printf("  min [1000,L] %.12g   nonneg %s   width<= %.3g\n", s.min_from_1000_lo,
                        s.nonneg_ok ? "yes" : "NO", s.max_width);
            std::printf("  spike >0.44455 in [1300,1350]: %s\n", s.spike_1300_1350 ? "yes" : "no");
            if (!s0_csv.empty()) std::printf("  trace written to %s\n", s0_csv.c_str());
            if (s0_oracle) {
                uint32_t olim = static_cast<uint32_t>(std::min(s0_limit, 3000.0));
                auto ex = s0_bruteforce_trace(olim);
                auto rec = s0_recurrence_trace_exact(olim);
                bool eq = true;
                for (uint32_t l = 1; l <= olim; ++l)
                    if (ex[l] != rec[l]) { eq = false; break; }
                std::printf("  oracle to %u: %s\n", olim, eq ? "exact match" : "MISMATCH");
                if (!eq) return kExitVerifyFailure;
            }
        } else if (*brute_cmd) {
            uint32_t lim = static_cast<uint32_t>(brute_limit);
            auto ex = s0_bruteforce_trace(lim);
            auto rec = s0_recurrence_trace_exact(lim);
            bool eq = true;
            for (uint32_t l = 1; l <= lim; ++l)
                if (ex[l] != rec[l]) { eq = false; break; }
            const PrimeTables& t = shared_tables(std::max(100000.0, brute_limit));
            bool rec_ok = verify_recombination_exact(100000, t);
            std::printf("recurrence == brute force to %u: %s\n", lim,
                        eq ? "exact match" : "MISMATCH");
            std::printf("q0=6 recombination exact to 1e5: %s\n",
                        rec_ok ? "exact match" : "MISMATCH");
            if (!eq || !rec_ok) return kExitVerifyFailure;
        } else if (*max_cmd) {
            uint64_t lim = static_cast<uint64_t>(max_limit > 0 ? max_limit : rc.scan_limit);
            const PrimeTables& t = shared_tables(static_cast<double>(lim));
            std::ostringstream os;
            for (const auto& id : scan_registry_ids()) {
                ScanReport r = scan_mean(id, lim, t);
                os << id << ": argmax " << r.arg << " value " << r.value.str(12)
                   << (r.overlap ? " (ambiguous)" : "") << "\n";
            }
            LedgerOptions lo;
            lo.prime_limit = rc.prime_limit;
            lo.rederive_scans = false;
            ConstantLedger led = ConstantLedger::build(lo, t);
            // the source scans ran with rho = 2.951 and, for K1, the corrected
            // local factor; both slope variants are reported
            ScanOptions so;
            Interval txi = pow(Interval(2.0), xi_exponent());
            Interval txr = txi / (txi - 1.0);
            Interval g2s = g2_at_2(so.rho);
            Interval f2s = g2s * (Interval(1.0) / 4.0) * txr;
            Interval F2s = (Interval(1.0) + f2s) / 2.0;
            Interval af2s = g2s * g2s * (Interval(1.0) / 4.0) * txr * txr;
            Interval AF2s = Interval(1.0) - (Interval(1.0) - 2.0 * af2s) / 2.0 - af2s / 2.0;
            Interval c1s = F2s * led.val("P0C_LX");
            Interval c2s = AF2s * led.val("AP0_LX");
            ScanReport k1mx = scan_k_offset(1, false, Interval(c1s.lo()), lim, t, so);
            ScanReport k1mn = scan_k_offset(1, true, Interval(c1s.hi()), lim, t, so);
            ScanReport k2mx = scan_k_offset(2, false, Interval(c2s.lo()), lim, t, so);
            ScanReport k2mn = scan_k_offset(2, true, Interval(c2s.hi()), lim, t, so);
            os << "k1.max (corrected slope): argmax " << k1mx.arg << " value "
               << k1mx.value.str(12) << "  [source logmx 1.29424331261228 @3]\n";
            os << "k1.min (corrected slope): argmin " << k1mn.arg << " value "
               << k1mn.value.str(12) << "  [source logmm 0.505508801388535 @1]\n";
            os << "k2.max: argmax " << k2mx.arg << " value " << k2mx.value.str(12)
               << "  [source log2mx repeats the k1 literal; coincidence does NOT persist]\n";
            os << "k2.min: argmin " << k2mn.arg << " value " << k2mn.value.str(12)
               << "  [source log2mm repeats the k1 literal]\n";
            ScanReport k1p = scan_k_offset(1, false, Interval(led.val("c1").lo()), lim, t, so);
            os << "k1.max (printed slope): argmax " << k1p.arg << " value " << k1p.value.str(12)
               << "  [max drifts with the limit: the printed P0_LX factor is not the K1 slope]\n";
            if (!rc.out.empty()) {
                write_text(rc.out, os.str());
                std::printf("maxima written to %s\n", rc.out.c_str());
            } else {
                std::fputs(os.str().c_str(), stdout);
            }
        } else if (*theta_cmd) {
            const PrimeTables& t = shared_tables(std::max(rc.scan_limit, 2e6));
            LedgerOptions lo;
            lo.prime_limit = rc.prime_limit;
            lo.digits = rc.digits;
            lo.rederive_scans = false;
            ConstantLedger led = ConstantLedger::build(lo, t);
            Interval v = theta_bound(theta_T, parse_t0(theta_T0), led);
            std::printf("Theta(%g, %s) = %s  report %s\n", theta_T, theta_T0.c_str(),
                        v.str().c_str(), iv_str(v, rc.digits).c_str());
        } else if (*omega_cmd) {
            const PrimeTables& t = shared_tables(std::max(rc.scan_limit, 2e6));
            LedgerOptions lo;
            lo.prime_limit = rc.prime_limit;
            lo.digits = rc.digits;
            lo.rederive_scans = false;
            ConstantLedger led = ConstantLedger::build(lo, t);
            OptimizeCriterion crit = omega_criterion == "min-max" ? OptimizeCriterion::MinMax
                                                                  : OptimizeCriterion::MinGap;
            std::ostringstream os;
            os << "S,T,T0,R,bound_lo,bound_hi,variant\n";
            auto emit = [&](OmegaVariant v, const char* name) {
                for (const auto& r : omega_table(led, v, crit)) {
                    char buf[200];
                    std::snprintf(buf, sizeof buf, "%d,%g,%g,%d,%.17g,%.17g,%s\n", r.S, r.T,
                                  r.T0, r.R_found, r.bound.lo(), r.bound.hi(), name);
                    os << buf;
                }
            };
            if (omega_variant == "source" || omega_variant == "both")
                emit(OmegaVariant::Source, "source");
            if (omega_variant == "rendered" || omega_variant == "both")
                emit(OmegaVariant::Rendered, "rendered");
            if (omega_variant != "source" && omega_variant != "rendered" &&
                omega_variant != "both") {
                std::fprintf(stderr, "config error: --variant must be source|rendered|both\n");
                return kExitConfigError;
            }
            if (!rc.out.empty()) {
                write_text(rc.out, os.str());
                std::printf("omega table written to %s\n", rc.out.c_str());
            } else {
                std::fputs(os.str().c_str(), stdout);
            }
        } else if (*opt_cmd) {
            const PrimeTables& t = shared_tables(std::max(rc.scan_limit, 2e6));
            LedgerOptions lo;
            lo.prime_limit = rc.prime_limit;
            lo.rederive_scans = false;
            ConstantLedger led = ConstantLedger::build(lo, t);
            double T0;
            if (opt_T0 == "auto") {
                if (opt_T == 422) T0 = 1e7;
                else if (opt_T == 1e7) T0 = 1e12;
                else if (opt_T == 1e12) T0 = 1e16;
                else if (opt_T == 1e16) T0 = 1e33;
                else if (opt_T == 1e33) T0 = std::numeric_limits<double>::infinity();
                else {
                    std::fprintf(stderr, "config error: cannot infer --t0 for T=%g\n", opt_T);
                    return kExitConfigError;
                }
            } else {
                T0 = parse_t0(opt_T0);
            }
            OptimizeCriterion crit = opt_criterion == "min-max" ? OptimizeCriterion::MinMax
                                                                : OptimizeCriterion::MinGap;
            OptimizeResult r = optimize_r(opt_S, opt_T, T0, opt_rmax, crit, led);
            std::printf("S=%d T=%g T0=%g: R*=%d bound=%s (omega1 %s, omega2 %s)\n", opt_S, opt_T,
                        T0, r.R, iv_str(r.bound, rc.digits).c_str(),
                        iv_str(r.omega1_v, rc.digits).c_str(),
                        iv_str(r.omega2_v, rc.digits).c_str());
        } else if (*tails_cmd) {
            auto counts = prime_scale_counts(tails_M);
            Interval b = b_kappa(tails_kappa, tails_M, counts.pi);
            std::printf("pi(%g) = %llu, floor theta = %llu\n", tails_M,
                        static_cast<unsigned long long>(counts.pi),
                        static_cast<unsigned long long>(counts.theta_floor));
            std::printf("B_%g(%g) = %s\n", tails_kappa, tails_M, b.str().c_str());
            if (tails_M > kThetaBoundThreshold) {
                Interval c = c_kappa(tails_kappa, tails_M, counts.theta_floor);
                std::printf("C_%g(%g) = %s\n", tails_kappa, tails_M, c.str().c_str());
            } else {
                std::printf("C_%g: refused, M <= 3594641 (theta bound validity)\n", tails_kappa);
            }
        } else if (*verify_cmd) {
            VerifyConfig vc;
            vc.full_m = verify_full;
            vc.full_scan = verify_full;
            vc.s0_scan_limit = static_cast<uint64_t>(rc.scan_limit);
            VerifyResult r = run_acceptance(vc);
            if (!r.clean()) return kExitVerifyFailure;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitVerifyFailure;
    }
    return 0;
}
