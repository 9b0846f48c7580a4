#ifndef MULCM_SIEVES_HPP
#define MULCM_SIEVES_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mulcm/interval.hpp"

namespace mulcm {

// Primes up to 80; their 22-bit divisibility mask drives the primorial
// threshold sums.
extern const uint32_t kSmallPrimes[22];

// Per-integer arithmetic data over [lo, hi], immutable once built.
class PrimeTables {
public:
    // lo == 1 uses one linear sieve; lo > 1 assembles the window from base
    // primes <= sqrt(hi).  Both routes produce bit-identical data.
    static PrimeTables build(uint64_t lo, uint64_t hi);

    uint64_t lo() const { return lo_; }
    uint64_t hi() const { return hi_; }

    int mu(uint64_t n) const { return mu_[idx(n)]; }
    uint32_t phi(uint64_t n) const { return phi_[idx(n)]; }
    uint32_t small_prime_mask(uint64_t n) const { return mask_[idx(n)]; }
    // smallest prime factor; 0 for n == 1
    uint32_t spf(uint64_t n) const { return spf_[idx(n)]; }
    bool squarefree(uint64_t n) const { return mu_[idx(n)] != 0; }

    const std::vector<uint32_t>& primes() const { return primes_; }

    // distinct prime factors of n (n within range), ascending
    void factor(uint64_t n, std::vector<uint32_t>& out) const;

    void save(const std::string& path) const;
    static PrimeTables load(const std::string& path);

private:
    size_t idx(uint64_t n) const { return static_cast<size_t>(n - lo_); }

    uint64_t lo_ = 1, hi_ = 0;
    std::vector<int8_t> mu_;
    std::vector<uint32_t> phi_;
    std::vector<uint32_t> spf_;
    std::vector<uint32_t> mask_;
    std::vector<uint32_t> primes_;
};

// Ascending enumeration of all primes <= limit, segment by segment.
// Deterministic order; the callback must not retain the argument.
void for_primes(double limit, const std::function<void(uint64_t)>& fn);

// pi(limit) and floor(theta(limit)) with certified rounding of the log sum.
struct ChebyshevCounts {
    uint64_t pi;
    uint64_t theta_floor;
    Interval theta;
};
ChebyshevCounts chebyshev_counts(double limit);

// phi_s(q) = q^s prod_{p|q} (1 - p^-s), sigma_s(q) = q^s prod (1 + p^-s)
Interval eval_phi_s(uint64_t q, const Interval& s);
Interval eval_sigma_s(uint64_t q, const Interval& s);
inline Interval eval_phi_s(uint64_t q, double s) { return eval_phi_s(q, Interval(s)); }
inline Interval eval_sigma_s(uint64_t q, double s) { return eval_sigma_s(q, Interval(s)); }

// xi = 1 - 1/(12 log 10), built from the exact expression
Interval xi_exponent();

enum class GWeight { g0, g2 };
// g0(q) = prod_{2|q} sqrt(3)(sqrt(2)-1)/2,  g2(q) = prod_{2|q} rho (1 - 2^-xi).
// rho defaults to the enclosure of H2/H1 = 0.0296/0.010032.
Interval eval_g(uint64_t q, GWeight which);
Interval eval_g(uint64_t q, GWeight which, const Interval& rho);
Interval g0_at_2();
Interval g2_at_2(const Interval& rho);
Interval rho_exact();  // H2/H1

}  // namespace mulcm

#endif
