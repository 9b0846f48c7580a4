#ifndef MULCM_SCAN_HPP
#define MULCM_SCAN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mulcm/interval.hpp"
#include "mulcm/sieves.hpp"

namespace mulcm {

// Mean-value maxima scanner over integer X: tracks the largest (or smallest)
// normalized prefix value of a registered squarefree-supported integrand.
struct ScanReport {
    std::string id;
    uint64_t limit = 0;
    uint64_t arg = 0;          // smallest X attaining the extremum
    Interval value{};          // certified enclosure at the attaining X
    bool overlap = false;      // another X's interval overlaps the extremum
    std::vector<std::pair<uint64_t, double>> checkpoints;  // value at powers of 10
};

// Integrand ids:
//   aux1.plain, aux1.g0, aux1.g0sq  : max of (1/X) sum mu^2 phi / phi_{1/2}^2 [g0 weights]
//   aux2                            : max of (1/X) sum with g0,g2 weights
//   aux3                            : max of (1/X) sum with g2^2 weight
//   xi1, xi2                        : max of the sqrt-normalized nu sums
//   geps                            : running G(X;1+1/10) (monotone; arg = limit)
// g2-weighted integrands take rho from ScanOptions; the pinned maxima of the
// source were produced with the 3-digit ceiling 2.951 (see ledger notes).
struct ScanOptions {
    Interval rho = Interval::ratio10(2951, 3);
};

std::vector<std::string> scan_registry_ids();

ScanReport scan_mean(const std::string& id, uint64_t limit, const PrimeTables& tables,
                     const ScanOptions& opt = ScanOptions());

// K-scans: extremum of  K_w([X]) - c log([X])      (max variant, c = lower slope)
//          or of        K_w([X]) - c log([X] + 1)  (min variant, c = upper slope)
// where K_1, K_2 are the log-offset prefix sums feeding the c1/c2 brackets.
ScanReport scan_k_offset(int which, bool min_variant, const Interval& c, uint64_t limit,
                         const PrimeTables& tables, const ScanOptions& opt = ScanOptions());

}  // namespace mulcm

#endif
