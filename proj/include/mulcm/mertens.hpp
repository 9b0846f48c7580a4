#ifndef MULCM_MERTENS_HPP
#define MULCM_MERTENS_HPP

#include <cstdint>
#include <vector>

#include "mulcm/interval.hpp"
#include "mulcm/sieves.hpp"

namespace mulcm {

// Prefix sums m(t; a0, q0) = sum_{l<=t, l=a0 mod q0} mu(l)/l stored at every
// integer t <= limit, one array per residue class coprime to q0.  Plain m(t)
// and the coprime variants m_q(t) are recombined from these classes.
class MertensTable {
public:
    MertensTable(uint64_t limit, const PrimeTables& tables, uint32_t q0 = 6);

    uint64_t limit() const { return limit_; }
    uint32_t q0() const { return q0_; }

    // m(t; a0, q0) for a coprime residue a0
    Interval m_class(uint32_t a0, double t) const;

    // m(t) recombined over the divisors of q0
    Interval m(double t) const;

    // m_q(X) = sum_{l<=X, (l,q)=1} mu(l)/l via the d | q^inf expansion
    Interval m_q(double X, uint64_t q) const;

    void save(const std::string& path) const;
    static MertensTable load(const std::string& path, const PrimeTables& tables);

private:
    MertensTable() = default;
    uint64_t limit_;
    uint32_t q0_;
    std::vector<uint32_t> residues_;       // coprime residues mod q0
    std::vector<int> res_index_;           // residue -> class slot, -1 otherwise
    std::vector<std::vector<double>> cls_; // per class, index t (0..limit)
    double err_;                           // certified per-entry error
    std::vector<uint32_t> q0_divisors_;    // divisors of q0 with mu != 0
    std::vector<int8_t> q0_div_mu_;
};

// Direct small-scale evaluation (certified), independent of any table.
Interval m_direct(double X, const PrimeTables& tables);

// m_q(X; 1+eps) by direct summation with a certified accumulation bound.
Interval m_q_eps(double X, uint64_t q, double eps, const PrimeTables& tables);

// Exact-rational verification that the q0=6 residue recombination reproduces
// m(t) for every t <= limit (GMP integers over the running lcm).
bool verify_recombination_exact(uint64_t limit, const PrimeTables& tables);

}  // namespace mulcm

#endif
