#ifndef MULCM_LEDGER_HPP
#define MULCM_LEDGER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mulcm/euler.hpp"
#include "mulcm/interval.hpp"
#include "mulcm/scan.hpp"
#include "mulcm/sieves.hpp"

namespace mulcm {

enum class Provenance { Computed, SourcePinned, DeskScanned };

struct LedgerEntry {
    Interval value{};
    Provenance prov = Provenance::Computed;
    double scale = 0.0;  // truncation M or scan limit, when meaningful
    std::string note;
};

struct LedgerOptions {
    double prime_limit = 1e6;     // Euler product truncation
    uint64_t scan_limit = 1000000;
    uint64_t xi_scan_limit = 2000000;
    bool rederive_scans = true;   // run the desk scans (else carry source literals)
    int digits = 4;
};

// Name -> certified enclosure with provenance, built in topological stages.
// The bound tables (Theta, U) intentionally run on source-pinned values where
// the source literals are known to be off (see the *_computed counterparts
// and the notes); the computed variants sit alongside for comparison.
class ConstantLedger {
public:
    static ConstantLedger build(const LedgerOptions& opt, const PrimeTables& tables);

    bool has(const std::string& name) const { return map_.count(name) != 0; }
    const LedgerEntry& entry(const std::string& name) const;
    const Interval& val(const std::string& name) const { return entry(name).value; }
    const std::vector<std::string>& names() const { return order_; }
    const LedgerOptions& options() const { return opt_; }
    const SpecRegistry& registry() const { return registry_; }

    std::string to_json() const;
    void write_json(const std::string& path) const;
    std::string to_table() const;

    void put(const std::string& name, const Interval& v, Provenance p, double scale = 0.0,
             const std::string& note = std::string());

private:
    LedgerOptions opt_;
    SpecRegistry registry_;
    std::map<std::string, LedgerEntry> map_;
    std::vector<std::string> order_;
};

// ---- generic mean-value enclosure builder ---------------------------------

// FreeDelta: convolution route with a free delta in (0, 1/2).
// Edge*: the delta = 1/2 edge route, split on alpha above/below/at 1/2.
enum class MvRoute { FreeDelta, EdgeA, EdgeB, EdgeC };

struct MeanValueSpec {
    std::string name;
    MvRoute route = MvRoute::FreeDelta;
    Interval alpha{};           // 0, 1/2 or 1 in this pipeline
    Interval delta{};           // FreeDelta route parameter
    Interval factor2_main{};    // local H factor at p = 2
    Interval factor2_err{};     // companion factor at p = 2 for the error side
    std::string leading_product;  // registry name, p >= 3 part
    std::string error_product;
    Interval w_factor{};        // edge-route w (A) or w' (B, C)
};

// (leading coefficient enclosure, X-power error coefficient enclosure)
std::pair<Interval, Interval> mean_value_enclosure(const MeanValueSpec& spec, double M,
                                                   const SpecRegistry& reg);

// Delta_1^delta = max(gamma, 1/(delta e^{gamma delta + 1}))
Interval mv_delta1(const Interval& delta);

// ---- bound-table operations --------------------------------------------------

// 2 TH1 (D/X) + 2 sqrt(2) H1 L1 sqrt(D/X) + H1^2 L2
Interval tail_lemma(double X, double D, const ConstantLedger& led);

struct GqResult {
    Interval main;  // W r_q (log X + s_q)
    Interval err;   // (G1 or G2) t_q / sqrt(X)
};
GqResult getgq(uint64_t q, double X, const ConstantLedger& led);
Interval getgq_r(uint64_t q);  // prod p^2/(p^2+p-1)
Interval getgq_t(uint64_t q);  // prod p^{3/2}/(p^{3/2}-p+1)
Interval getgq_c(uint64_t q);  // sum (p-1) log p/(p^2+p-1)

struct ThresholdSums {
    Interval s1, s2;
};
// S1/S2 primorial divisor sums over 1 < j <= J with the divisor cap (inf ok)
ThresholdSums threshold_sums(int J, double cap, const PrimeTables& tables);

// The displayed U(eta; u, v; k, J) majorant, composed from the 4-digit
// ceilings of the ledger constants exactly as the source renders it.
Interval u_bound(double eta, int u, int v, int k, int J, const ConstantLedger& led,
                 const PrimeTables& tables);

// Piecewise S0 bound; T0 = infinity selects the 10^33 row.
Interval theta_bound(double T, double T0, const ConstantLedger& led);

}  // namespace mulcm

#endif
