#include "mulcm/prime_tails.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "mulcm/sieves.hpp"

namespace mulcm {

namespace {
const Interval kDusartC = Interval::ratio10(253816, 5);  // 2.53816
const Interval kDusartTheta = Interval::ratio10(2, 1);   // 0.2
}  // namespace

Interval pi_upper(double t) {
    if (!(t > 1.0)) throw std::domain_error("pi_upper: t > 1 required");
    Interval T(t);
    Interval lt = log(T);
    return (T / lt) * (Interval(1.0) + Interval(1.0) / lt + kDusartC / (lt * lt));
}

Interval b_kappa(const Interval& kappa, double M, uint64_t piM) {
    if (!(kappa.lo() > 1.0)) throw std::domain_error("b_kappa: kappa > 1 required");
    if (!(M >= 1e4)) throw std::domain_error("b_kappa: M >= 1e4 required");
    PrimeScaleCounts known;
    if (prime_scale_counts_cached(M, known) && known.pi != piM)
        throw std::domain_error("b_kappa: piM inconsistent with the sieved count at M");
    Interval k = kappa, Mi(M);
    Interval lM = log(Mi);
    Interval lead = k / ((k - 1.0) * pow(Mi, k - 1.0) * lM) *
                    (Interval(1.0) + Interval(1.0) / lM + kDusartC / (lM * lM));
    return lead - Interval(static_cast<double>(piM)) / pow(Mi, k);
}

Interval c_kappa(const Interval& kappa, double M, uint64_t thetaM_floor) {
    if (!(kappa.lo() > 1.0)) throw std::domain_error("c_kappa: kappa > 1 required");
    if (!(M > kThetaBoundThreshold))
        throw std::domain_error("c_kappa: M > 3594641 required by the theta bound");
    Interval k = kappa, Mi(M);
    Interval lM = log(Mi);
    Interval lead = (Interval(1.0) + kDusartTheta / (lM * lM)) * k / ((k - 1.0) * pow(Mi, k - 1.0));
    return lead - Interval(static_cast<double>(thetaM_floor)) / pow(Mi, k);
}

Interval tail_factor(const Interval& partial, const Interval& bM, const Interval& kappa, double M,
                     uint64_t piM, TailSign sign) {
    if (bM.lo() == 0.0 && bM.hi() == 0.0) return partial;  // empty tail
    Interval B = b_kappa(kappa, M, piM);
    Interval bB = bM * B;
    if (sign == TailSign::NonNeg) {
        Interval f(1.0, exp(bB).hi());  // throws if the tail bound came out negative
        return partial * f;
    }
    Interval ratio = bM / pow(Interval(M), kappa);
    if (ratio.hi() >= 1.0)
        throw std::domain_error("tail_factor: nonpos tail needs bM/M^kappa < 1, got hi=" +
                                std::to_string(ratio.hi()));
    Interval f(exp(-(bB / (Interval(1.0) - ratio))).lo(), 1.0);
    return partial * f;
}

Interval sum_tail(const Interval& partial, const Interval& cM, const Interval& kappa, double M,
                  uint64_t thetaM_floor, TailSign sign) {
    if (cM.lo() == 0.0 && cM.hi() == 0.0) return partial;
    Interval C = c_kappa(kappa, M, thetaM_floor);
    Interval cC = cM * C;
    if (sign == TailSign::NonNeg) return partial + Interval(0.0, cC.hi());
    return partial + Interval(-cC.hi(), 0.0);
}

namespace {
std::map<double, PrimeScaleCounts>& counts_cache() {
    static std::map<double, PrimeScaleCounts> cache = {
        {1e8, {5761455, 99987730}},  // externally checked pair at the full scale
    };
    return cache;
}
std::mutex& counts_mutex() {
    static std::mutex mu;
    return mu;
}
}  // namespace

PrimeScaleCounts prime_scale_counts(double M) {
    {
        std::lock_guard<std::mutex> g(counts_mutex());
        auto& cache = counts_cache();
        auto it = cache.find(M);
        if (it != cache.end()) return it->second;
    }
    ChebyshevCounts c = chebyshev_counts(M);
    PrimeScaleCounts out{c.pi, c.theta_floor};
    std::lock_guard<std::mutex> g(counts_mutex());
    counts_cache()[M] = out;
    return out;
}

bool prime_scale_counts_cached(double M, PrimeScaleCounts& out) {
    std::lock_guard<std::mutex> g(counts_mutex());
    auto& cache = counts_cache();
    auto it = cache.find(M);
    if (it == cache.end()) return false;
    out = it->second;
    return true;
}

}  // namespace mulcm
