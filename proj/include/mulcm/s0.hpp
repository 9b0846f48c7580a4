#ifndef MULCM_S0_HPP
#define MULCM_S0_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "mulcm/interval.hpp"
#include "mulcm/mertens.hpp"
#include "mulcm/sieves.hpp"

namespace mulcm {

// Exact S0(l) for l = 1..limit by the definition (double sum over pairs),
// every value scaled by lcm(1..limit) internally.  Oracle scale only.
std::vector<mpq_class> s0_bruteforce_trace(uint32_t limit);
mpq_class s0_bruteforce(uint32_t X);

// Exact S0(l) via the divisor-lattice recurrence and an exact Mertens table.
// Must agree with the brute force wherever both are defined.
std::vector<mpq_class> s0_recurrence_trace_exact(uint32_t limit);

struct S0ScanSummary {
    uint64_t limit = 0;
    Interval final_value{};
    uint64_t argmax_global = 0;
    double max_global_hi = 0.0;
    double max_from_422_hi = 0.0;   // sup over [422, limit]
    uint64_t argmax_from_422 = 0;
    Interval max_from_422{};
    double max_from_2_hi = 0.0;     // sup over [2, limit]
    double max_from_6_hi = 0.0;     // sup over [6, limit]
    double min_from_1000_lo = 0.0;  // inf over [1000, limit]
    bool nonneg_ok = true;          // S0(l).hi >= 0 throughout
    bool spike_1300_1350 = false;   // some X in [1300,1350] exceeds 0.44455
    double max_width = 0.0;         // largest interval width seen
};

// Interval evaluation of the recurrence up to limit (compensated midpoint
// plus certified radius).  Optional CSV trace (l, lo, hi) at `stride`.
S0ScanSummary s0_scan(uint64_t limit, const MertensTable& mertens, const PrimeTables& tables,
                      const std::string& csv_path = std::string(), uint64_t stride = 0);

}  // namespace mulcm

#endif
