#ifndef MULCM_PRIME_TAILS_HPP
#define MULCM_PRIME_TAILS_HPP

#include <cstdint>

#include "mulcm/interval.hpp"

namespace mulcm {

// Explicit prime-counting upper bound (t/log t)(1 + 1/log t + 2.53816/log^2 t),
// valid for all t > 1.
Interval pi_upper(double t);

// B_kappa(M): certified bound for sum_{p>M} 1/p^kappa derived from pi_upper.
// piM must be the exact prime count at M (sieve it or use a pinned value).
// kappa is carried as an enclosure so exponents like 1+xi stay certified.
Interval b_kappa(const Interval& kappa, double M, uint64_t piM);
inline Interval b_kappa(double kappa, double M, uint64_t piM) {
    return b_kappa(Interval(kappa), M, piM);
}

// C_kappa(M): certified bound for sum_{p>M} log p / p^kappa.  The Chebyshev
// theta bound behind it requires M > 3 594 641; smaller M is refused.
Interval c_kappa(const Interval& kappa, double M, uint64_t thetaM_floor);
inline Interval c_kappa(double kappa, double M, uint64_t thetaM_floor) {
    return c_kappa(Interval(kappa), M, thetaM_floor);
}

constexpr double kThetaBoundThreshold = 3594641.0;

enum class TailSign { NonNeg, NonPos };

// Tail closure for infinite products: multiplies `partial` by
//   [1, exp(bM * B_kappa(M))]                          when v_p >= 0 past M,
//   [exp(-bM * B_kappa(M) / (1 - bM/M^kappa)), 1]      when v_p <  0 past M.
Interval tail_factor(const Interval& partial, const Interval& bM, const Interval& kappa, double M,
                     uint64_t piM, TailSign sign);

// Tail closure for prime log-sums: adds [0, cM*C_kappa(M)] or the mirrored
// nonpositive version.
Interval sum_tail(const Interval& partial, const Interval& cM, const Interval& kappa, double M,
                  uint64_t thetaM_floor, TailSign sign);

// pi(M) and floor(theta(M)) by segmented sieve, memoized; M = 1e8 returns the
// externally checked pair (5761455, 99987730) without re-sieving.
struct PrimeScaleCounts {
    uint64_t pi;
    uint64_t theta_floor;
};
PrimeScaleCounts prime_scale_counts(double M);
// cache peek without sieving; false if M was never counted
bool prime_scale_counts_cached(double M, PrimeScaleCounts& out);

}  // namespace mulcm

#endif
