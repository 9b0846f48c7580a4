#ifndef MULCM_EULER_HPP
#define MULCM_EULER_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mulcm/interval.hpp"
#include "mulcm/prime_tails.hpp"

namespace mulcm {

// Tiny expression tree over the prime variable p and the global exponent xi.
// One audited evaluator serves every registered local factor, and the ledger
// can print each spec for review.
class Expr {
public:
    static Expr p();
    static Expr xi();
    static Expr c(long long num, long long den = 1);
    static Expr c10(long long num, int exp10);
    static Expr c_iv(const Interval& v, const std::string& label);

    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator*(const Expr& o) const;
    Expr operator/(const Expr& o) const;
    Expr operator-() const;
    Expr pow(const Expr& e) const;
    Expr sqrt() const;
    Expr log() const;

    Interval eval(const Interval& pval, const Interval& xival) const;
    std::string str() const;

    Expr() = default;
    bool empty() const { return !node_; }

    struct Node;  // exposed for the evaluator translation unit

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

inline Expr operator+(long long a, const Expr& b) { return Expr::c(a) + b; }
inline Expr operator-(long long a, const Expr& b) { return Expr::c(a) - b; }
inline Expr operator*(long long a, const Expr& b) { return Expr::c(a) * b; }
inline Expr operator/(long long a, const Expr& b) { return Expr::c(a) / b; }

// Sign behaviour of the local terms past the truncation point.  Mixed uses
// the two-sided closure (lower end of the nonpos tail, upper end of the
// nonneg tail) for factors whose sign flips inside the tail region.
enum class TailKind { NonNeg, NonPos, Mixed };

// Declarative local factor of a multiplicative Euler product: the factor at
// each prime p >= start_prime is `factor` (already in 1 + v_p form), the tail
// majorant is |v_p| p^kappa <= b_of_M(M) for p > M.
struct ProductSpec {
    std::string name;
    Expr factor;
    uint32_t start_prime = 3;
    Expr kappa_of_xi;  // exponent enclosure, e.g. 3/2 or 1+xi
    Expr b_of_M;       // evaluated with p := M
    TailKind sign = TailKind::NonNeg;
};

// Declarative prime log-sum  sum_p (1 - (p-2) f(p)) log p / ((f(p)+1)(p-1)),
// the T_f shape shared by every mean-value constant in the pipeline.
// |term_p| <= c_of_M(M) log p / p^kappa for p > M.
struct SumSpec {
    std::string name;
    Expr f;                      // f(p) for p >= 3
    std::optional<Interval> f_at_2;  // weighted value at p = 2 when it differs
    uint32_t start_prime = 2;
    Expr kappa_of_xi;
    Expr c_of_M;
    TailKind sign = TailKind::NonNeg;
};

// Product over primes <= M in ascending order (fixed reduction order).
Interval truncated_product(const ProductSpec& spec, double M);
// Truncation composed with the analytic tail; contains the infinite product.
Interval enclose_product(const ProductSpec& spec, double M);

Interval truncated_prime_sum(const SumSpec& spec, double M);
// Contains the infinite sum.  For M below the theta-bound threshold the
// truncation is extended to the smallest admissible cutoff internally.
Interval enclose_prime_sum(const SumSpec& spec, double M);

// Numeric verification of the majorant and sign condition on (M-1e4, M].
struct WindowCheck {
    bool majorant_ok;
    bool sign_ok;
};
WindowCheck verify_window(const ProductSpec& spec, double M);
WindowCheck verify_window(const SumSpec& spec, double M);

// Every product/sum the constant pipeline consumes, keyed by the names used
// in the ledger.  rho is the prime-2 weight of g2 (the exact H2/H1 enclosure
// for the analytic constants).
struct SpecRegistry {
    std::vector<ProductSpec> products;
    std::vector<SumSpec> sums;
    const ProductSpec& product(const std::string& name) const;
    const SumSpec& sum(const std::string& name) const;
};
SpecRegistry build_registry(const Interval& rho);

Interval evaluate_sum_term(const SumSpec& spec, uint64_t p, const Interval& xival);

}  // namespace mulcm

#endif
