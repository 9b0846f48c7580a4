#ifndef MULCM_EPSILON_HPP
#define MULCM_EPSILON_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mulcm/interval.hpp"
#include "mulcm/ledger.hpp"
#include "mulcm/sieves.hpp"

namespace mulcm {

// 1/eps < zeta(1+eps) <= e^{gamma eps}/eps
Interval zeta_bounds(double eps);

// G(X; 1+eps) = sum_{l<=X} mu^2(l)/phi_{1+eps}(l), certified
Interval g_eps(double X, double eps, const PrimeTables& tables);

// Same sum evaluated window by window without per-integer tables, for X
// beyond the table budget (minutes at 1e8).
Interval g_eps_big(double X, double eps);

// The two epsilon-regime bound functionals.  `Source` transcribes the
// reference helpers verbatim (including the q2 doubling, the 2^{1/S}
// exponent and the hard-coded S=10 pieces of its q4 term); `Rendered` is
// the formula as the reference renders it.
enum class OmegaVariant { Source, Rendered };

Interval omega1(int R, double T, double T0, const ConstantLedger& led);
Interval omega2(int R, int S, double T, double T0, const ConstantLedger& led,
                OmegaVariant variant = OmegaVariant::Source);

enum class OptimizeCriterion { MinMax, MinGap };

struct OptimizeResult {
    int R = 0;
    Interval bound{};     // max(Omega1, Omega2) at the optimum
    Interval omega1_v{};
    Interval omega2_v{};
};

// scan R in (S, r_max]; MinGap minimizes |Omega1 - Omega2| (the source CHECK
// loop), MinMax minimizes max(...).hi; smallest R wins ties
OptimizeResult optimize_r(int S, double T, double T0, int r_max, OptimizeCriterion crit,
                          const ConstantLedger& led, OmegaVariant variant = OmegaVariant::Source);

// direct double sum, oracle scale
double s_eps_bruteforce(uint32_t X, double eps);

// the fifteen (S, T, T0) rows of the final table
struct OmegaTableRow {
    int S;
    double T, T0;
    int R_source;
    int R_found;
    Interval bound;
};
std::vector<OmegaTableRow> omega_table(const ConstantLedger& led, OmegaVariant variant,
                                       OptimizeCriterion crit, int r_max_scale = 0);

}  // namespace mulcm

#endif
