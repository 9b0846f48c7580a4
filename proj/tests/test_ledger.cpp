#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "mulcm/ledger.hpp"

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

TEST_CASE("pinned literals and basic derived entries") {
    CHECK(led().val("H1").contains(0.010032));
    CHECK(led().entry("H1").prov == Provenance::SourcePinned);
    CHECK(report_upper(led().val("trop"), 4) == doctest::Approx(2.9506).epsilon(1e-15));
    CHECK(led().val("xi").contains(0.96380879317472901));
    CHECK(led().val("g2_2").contains(1.4378023997056495));
    CHECK(led().val("subs").contains(0.8988));  // 1 - RoundUp(ax_2, 4)
    CHECK(led().val("ax_2").contains(57731.0 / 570570.0));
}

TEST_CASE("scan-dominated thresholds reproduce the source literals") {
    CHECK(led().val("TH2").contains(1.90380793763037));
    CHECK(led().val("TH3").contains(2.67710025));
    // analytic side dominates these two; the interval must sit above the
    // scan literal and stay in a sane band
    CHECK(led().val("THx1").hi() >= 6.2359917454422);
    CHECK(led().val("THx1").hi() < 6.5);
    CHECK(led().val("TH1").lo() > 2.0680);
    CHECK(led().val("TH1").hi() < 2.16);
    // desk rescans agree with the pinned maxima at the attaining points
    CHECK(led().val("Fmx1_desk").contains(6.2359917454422));
    CHECK(led().val("mx1_desk").contains(2.06803754617859));
    CHECK(led().val("mx2_desk").contains(1.90380793763037));
    CHECK(led().entry("Fmx1_desk").note == "argmax X=42");
    CHECK(led().entry("mx2_desk").note == "argmax X=6");
    CHECK(led().entry("mx3_desk").note == "argmax X=2");
}

TEST_CASE("L1/L2 composition") {
    CHECK(led().val("L1").contains(2.0 * 1.90380793763037 / (12 * 2.302585092994046)));
    double tw = 12 * 2.302585092994046;
    CHECK(led().val("L2").contains(2.67710025 * (1 / tw - 1 / (tw * tw)) +
                                   2.67710025 / (tw * tw)));
}

TEST_CASE("c1/c2 brackets and GetGq group") {
    CHECK(led().val("c1").lo() > 0.6029);
    CHECK(led().val("c1").hi() < 0.6031);
    CHECK(led().val("c1_corrected").lo() > 0.7130);
    CHECK(led().val("c1_corrected").hi() < 0.7136);
    CHECK(led().val("c2").lo() > 1.6384);
    CHECK(led().val("c2").hi() < 1.6386);
    // the gamma + T_f sums reproduce the source offsets
    CHECK(led().val("Sumx").contains(0.5772156649015329 + 0.6931471805599453 / 1.7376395534292714 +
                                     0.656118309));
    CHECK(led().val("ASumx").contains(0.5772156649015329 + 0.6931471805599453 / 3.1764484431312847 +
                                      0.3611216153));
    CHECK(led().val("ASUM_computed").contains(2.046752376));
    CHECK(led().val("APROD_computed").contains(0.4282495334));
    CHECK(!led().val("APROD_computed").contains(0.40282372));  // the source literal is off
    CHECK(led().val("W").contains(0.40282372));                // pinned for table parity
    CHECK(led().val("W2").contains(0.59990245352944210));
    CHECK(led().val("G1").lo() > 2.968);
    CHECK(led().val("G1").hi() < 2.969);
    CHECK(led().val("G2").lo() > 1.1478);
    CHECK(led().val("G2").hi() < 1.1480);
}

TEST_CASE("theorem assembly") {
    CHECK(led().val("Thresh33_2").contains(0.41352375702924968));
    CHECK(led().val("Bound4").contains(0.46633));   // parity pipeline value
    CHECK(led().val("Bound4").width() < 0.002);
    CHECK(led().val("Bound4_computed").lo() > 0.49);  // honest W group sits higher
    Interval t = theta_bound(422, 1e7, led());
    CHECK(t.contains(0.445));
    CHECK(theta_bound(1e12, 1e16, led()).contains(0.4987002674334));
    CHECK(theta_bound(1e33, std::numeric_limits<double>::infinity(), led()).lo() > 0.46);
    CHECK_THROWS(theta_bound(500, 1e7, led()));
}

TEST_CASE("tail lemma shapes") {
    Interval full = tail_lemma(10.0, 10.0, led());  // D = X: ratio 1
    Interval expect = 2.0 * led().val("TH1") + 2.0 * sqrt(Interval(2.0)) * led().val("H1") *
                      led().val("L1") + led().val("H1") * led().val("H1") * led().val("L2");
    CHECK(full.intersects(expect));
    Interval zero = tail_lemma(5.0, 0.0, led());  // D = 0: only the constant term
    CHECK(zero.intersects(led().val("H1") * led().val("H1") * led().val("L2")));
    // D/X = 1/80.9999 reproduces the first threshold block
    Interval z = tail_lemma(80.9999, 1.0, led());
    CHECK(z.intersects(led().val("Thresh33_1")));
    CHECK_THROWS(tail_lemma(1.0, 2.0, led()));
}

TEST_CASE("getgq structure") {
    CHECK(getgq_r(1).contains(1.0));
    CHECK(getgq_t(1).contains(1.0));
    CHECK(getgq_c(1).contains(0.0));
    CHECK(getgq_r(2).contains(0.8));  // 4/(4+2-1)
    auto r = getgq(1, 100.0, led());
    // W (log X + ASUM) with the pinned group
    Interval expect = led().val("W") * (log(Interval(100.0)) + led().val("ASUM"));
    CHECK(r.main.intersects(expect));
    CHECK(r.err.lo() > 0.0);
    auto r2 = getgq(2, 100.0, led());
    CHECK(r2.err.hi() < r.err.hi());  // G2 < G1
}

TEST_CASE("threshold sums against the independent oracle") {
    auto t2 = threshold_sums(2, std::numeric_limits<double>::infinity(), tables());
    CHECK(t2.s1.contains(0.16218604324326575));  // (2/5) log(3/2)
    CHECK(t2.s2.contains(2.9375024952548375));
    auto t5 = threshold_sums(5, std::numeric_limits<double>::infinity(), tables());
    CHECK(t5.s1.contains(0.261321604075178855));
    CHECK(t5.s2.contains(17.7037539892969999));
    CHECK_THROWS(threshold_sums(81, 1.0, tables()));
    // capping prunes the lattice monotonically
    auto capped = threshold_sums(5, 3.0, tables());
    CHECK(capped.s1.hi() < t5.s1.hi());
}

TEST_CASE("u_bound parameter domain and monotone k-term") {
    CHECK_THROWS(u_bound(1.0, 9, 12, 0, 30, led(), tables()));
    CHECK_THROWS(u_bound(1.2, 12, 9, 0, 30, led(), tables()));
    CHECK_THROWS(u_bound(1.2, 9, 12, 1000, 30, led(), tables()));
    Interval u0 = u_bound(1.2, 9, 12, 0, 30, led(), tables());
    CHECK(u0.lo() > 0.0);
    CHECK(u0.hi() < 1.0);
}

TEST_CASE("mean value builder routes") {
    const auto& reg = led().registry();
    MeanValueSpec aux1;
    aux1.route = MvRoute::FreeDelta;
    aux1.alpha = Interval(0.0);
    aux1.delta = Interval::ratio(5, 12);
    aux1.factor2_main = led().val("F1_2");
    aux1.factor2_err = led().val("F1_2_delta2");
    aux1.leading_product = "P1";
    aux1.error_product = "P1_delta2";
    auto [lead, err] = mean_value_enclosure(aux1, 1e5, reg);
    // v1 = lead + err T^{-delta} must straddle the ledger's v1
    Interval v1 = lead + err * pow(Interval(4e9), -Interval::ratio(5, 12));
    CHECK(v1.intersects(led().val("v1")));
    MeanValueSpec bad = aux1;
    bad.delta = Interval(0.7);
    CHECK_THROWS(mean_value_enclosure(bad, 1e5, reg));
    MeanValueSpec aux3;
    aux3.route = MvRoute::EdgeB;
    aux3.alpha = Interval(0.0);
    aux3.factor2_main = led().val("F3_2");
    aux3.factor2_err = led().val("F3_2_spec");
    aux3.leading_product = "P3";
    aux3.error_product = "P3_spec";
    aux3.w_factor = led().val("W_aux3");
    auto [lead3, err3] = mean_value_enclosure(aux3, 1e5, reg);
    CHECK(lead3.intersects(led().val("F3_2") * led().val("P3")));
    // route B error = 3 w' (full P); the source's v3 composition drops the
    // p=2 factor of P (harmless: the scan branch dominates TH3 either way)
    Interval err_src = Interval(3.0) * led().val("W_aux3") * led().val("P3_spec");
    CHECK(err3.hi() > err_src.hi());
}

TEST_CASE("harmonic squarefree window on [1e3, 1e6]") {
    // 1.040 <= sum_{l<=X} mu^2(l)/l - (6/pi^2) log X <= 1.048
    Interval six_pi2 = Interval(6.0) / (Interval::pi() * Interval::pi());
    Interval sum(0.0);
    const auto& t = tables();
    for (uint64_t l = 1; l <= 1000000; ++l) {
        if (t.mu(l) != 0) sum += Interval::ratio(1, static_cast<long long>(l));
        if (l >= 1000 && (l % 127 == 0 || l == 1000 || l == 1000000)) {
            Interval w = sum - six_pi2 * log(Interval(static_cast<double>(l)));
            CHECK(w.lo() >= 1.040);
            CHECK(w.hi() <= 1.048);
        }
    }
}

TEST_CASE("ledger export and determinism") {
    std::string j = led().to_json();
    CHECK(j.find("\"name\": \"H1\"") != std::string::npos);
    CHECK(j.find("source-pinned") != std::string::npos);
    CHECK(j.find("\"specs\"") != std::string::npos);
    // bit-identical rebuild
    ConstantLedger l2 = ConstantLedger::build(LedgerOptions{}, tables());
    for (const auto& n : led().names()) {
        CAPTURE(n);
        CHECK(led().val(n).lo() == l2.val(n).lo());
        CHECK(led().val(n).hi() == l2.val(n).hi());
    }
}
