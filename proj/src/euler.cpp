#include "mulcm/euler.hpp"

#include <cmath>
#include <stdexcept>

#include "mulcm/sieves.hpp"

namespace mulcm {

struct Expr::Node {
    enum Kind { P, Xi, Const, Add, Sub, Mul, Div, Pow, Sqrt, Log, Neg } kind;
    Interval cval{};
    std::string label;
    std::shared_ptr<const Node> a, b;
};

namespace {
using NodePtr = std::shared_ptr<const Expr::Node>;
NodePtr mk(Expr::Node n) { return std::make_shared<const Expr::Node>(std::move(n)); }
}  // namespace

Expr Expr::p() { return Expr(mk({Node::P})); }
Expr Expr::xi() { return Expr(mk({Node::Xi})); }

Expr Expr::c(long long num, long long den) {
    std::string l = den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    return Expr(mk({Node::Const, Interval::ratio(num, den), l}));
}

Expr Expr::c10(long long num, int exp10) {
    std::string l = std::to_string(num) + "e-" + std::to_string(exp10);
    return Expr(mk({Node::Const, Interval::ratio10(num, exp10), l}));
}

Expr Expr::c_iv(const Interval& v, const std::string& label) {
    return Expr(mk({Node::Const, v, label}));
}

Expr Expr::operator+(const Expr& o) const { return Expr(mk({Node::Add, {}, {}, node_, o.node_})); }
Expr Expr::operator-(const Expr& o) const { return Expr(mk({Node::Sub, {}, {}, node_, o.node_})); }
Expr Expr::operator*(const Expr& o) const { return Expr(mk({Node::Mul, {}, {}, node_, o.node_})); }
Expr Expr::operator/(const Expr& o) const { return Expr(mk({Node::Div, {}, {}, node_, o.node_})); }
Expr Expr::operator-() const { return Expr(mk({Node::Neg, {}, {}, node_})); }
Expr Expr::pow(const Expr& e) const { return Expr(mk({Node::Pow, {}, {}, node_, e.node_})); }
Expr Expr::sqrt() const { return Expr(mk({Node::Sqrt, {}, {}, node_})); }
Expr Expr::log() const { return Expr(mk({Node::Log, {}, {}, node_})); }

Interval Expr::eval(const Interval& pval, const Interval& xival) const {
    if (!node_) throw std::logic_error("Expr: empty expression");
    const Node& n = *node_;
    switch (n.kind) {
        case Node::P: return pval;
        case Node::Xi: return xival;
        case Node::Const: return n.cval;
        case Node::Add: return Expr(n.a).eval(pval, xival) + Expr(n.b).eval(pval, xival);
        case Node::Sub: return Expr(n.a).eval(pval, xival) - Expr(n.b).eval(pval, xival);
        case Node::Mul: return Expr(n.a).eval(pval, xival) * Expr(n.b).eval(pval, xival);
        case Node::Div: return Expr(n.a).eval(pval, xival) / Expr(n.b).eval(pval, xival);
        case Node::Pow: return mulcm::pow(Expr(n.a).eval(pval, xival), Expr(n.b).eval(pval, xival));
        case Node::Sqrt: return mulcm::sqrt(Expr(n.a).eval(pval, xival));
        case Node::Log: return mulcm::log(Expr(n.a).eval(pval, xival));
        case Node::Neg: return -Expr(n.a).eval(pval, xival);
    }
    throw std::logic_error("Expr: bad node");
}

std::string Expr::str() const {
    if (!node_) return "<empty>";
    const Node& n = *node_;
    auto s = [](const NodePtr& q) { return Expr(q).str(); };
    switch (n.kind) {
        case Node::P: return "p";
        case Node::Xi: return "xi";
        case Node::Const: return n.label;
        case Node::Add: return "(" + s(n.a) + " + " + s(n.b) + ")";
        case Node::Sub: return "(" + s(n.a) + " - " + s(n.b) + ")";
        case Node::Mul: return "(" + s(n.a) + "*" + s(n.b) + ")";
        case Node::Div: return "(" + s(n.a) + "/" + s(n.b) + ")";
        case Node::Pow: return s(n.a) + "^(" + s(n.b) + ")";
        case Node::Sqrt: return "sqrt(" + s(n.a) + ")";
        case Node::Log: return "log(" + s(n.a) + ")";
        case Node::Neg: return "-(" + s(n.a) + ")";
    }
    return "?";
}

Interval truncated_product(const ProductSpec& spec, double M) {
    Interval xiv = xi_exponent();
    Interval prod(1.0);
    for_primes(M, [&](uint64_t p) {
        if (p < spec.start_prime) return;
        Interval f = spec.factor.eval(Interval(static_cast<double>(p)), xiv);
        if (f.lo() <= 0.0)
            throw std::domain_error("truncated_product[" + spec.name + "]: factor at p=" +
                                    std::to_string(p) + " has nonpositive bound " +
                                    std::to_string(f.lo()));
        prod *= f;
    });
    return prod;
}

namespace {

Interval product_tail(const Interval& partial, const ProductSpec& spec, double M,
                      const Interval& kappa, uint64_t piM) {
    Interval xiv = xi_exponent();
    Interval b = spec.b_of_M.eval(Interval(M), xiv);
    switch (spec.sign) {
        case TailKind::NonNeg:
            return tail_factor(partial, b, kappa, M, piM, TailSign::NonNeg);
        case TailKind::NonPos:
            return tail_factor(partial, b, kappa, M, piM, TailSign::NonPos);
        case TailKind::Mixed: {
            Interval up = tail_factor(partial, b, kappa, M, piM, TailSign::NonNeg);
            Interval dn = tail_factor(partial, b, kappa, M, piM, TailSign::NonPos);
            return Interval::hull(up, dn);
        }
    }
    throw std::logic_error("product_tail: bad sign");
}

}  // namespace

Interval enclose_product(const ProductSpec& spec, double M) {
    Interval partial = truncated_product(spec, M);
    Interval kappa = spec.kappa_of_xi.eval(Interval(M), xi_exponent());
    uint64_t piM = prime_scale_counts(M).pi;
    return product_tail(partial, spec, M, kappa, piM);
}

Interval evaluate_sum_term(const SumSpec& spec, uint64_t p, const Interval& xival) {
    Interval P(static_cast<double>(p));
    Interval f = (p == 2 && spec.f_at_2) ? *spec.f_at_2 : spec.f.eval(P, xival);
    return (Interval(1.0) - (P - 2.0) * f) * log(P) / ((f + 1.0) * (P - 1.0));
}

Interval truncated_prime_sum(const SumSpec& spec, double M) {
    Interval xiv = xi_exponent();
    Interval sum(0.0);
    for_primes(M, [&](uint64_t p) {
        if (p < spec.start_prime) return;
        sum += evaluate_sum_term(spec, p, xiv);
    });
    return sum;
}

Interval enclose_prime_sum(const SumSpec& spec, double M) {
    // the theta-based tail needs M past the Dusart threshold; extend the
    // truncation rather than substituting a different theta bound
    double Mstar = M > kThetaBoundThreshold ? M : 3594642.0;
    Interval partial = truncated_prime_sum(spec, Mstar);
    Interval xiv = xi_exponent();
    Interval kappa = spec.kappa_of_xi.eval(Interval(Mstar), xiv);
    Interval c = spec.c_of_M.eval(Interval(Mstar), xiv);
    uint64_t tf = prime_scale_counts(Mstar).theta_floor;
    switch (spec.sign) {
        case TailKind::NonNeg:
            return sum_tail(partial, c, kappa, Mstar, tf, TailSign::NonNeg);
        case TailKind::NonPos:
            return sum_tail(partial, c, kappa, Mstar, tf, TailSign::NonPos);
        case TailKind::Mixed: {
            Interval up = sum_tail(partial, c, kappa, Mstar, tf, TailSign::NonNeg);
            Interval dn = sum_tail(partial, c, kappa, Mstar, tf, TailSign::NonPos);
            return Interval::hull(up, dn);
        }
    }
    throw std::logic_error("enclose_prime_sum: bad sign");
}

WindowCheck verify_window(const ProductSpec& spec, double M) {
    // pointwise |v_p| p^kappa <= b(p) on the window; b is nonincreasing in its
    // argument, so the same inequality past M is what the tail closure needs.
    // Several majorants are exactly tight, hence the 1e-9 slack.
    Interval xiv = xi_exponent();
    WindowCheck w{true, true};
    for_primes(M, [&](uint64_t p) {
        if (p <= M - 1e4 || p < spec.start_prime) return;
        Interval P(static_cast<double>(p));
        Interval kappa = spec.kappa_of_xi.eval(P, xiv);
        Interval b = spec.b_of_M.eval(P, xiv);
        Interval v = spec.factor.eval(P, xiv) - 1.0;
        if (abs(v * pow(P, kappa)).lo() > b.hi() * (1.0 + 1e-9)) w.majorant_ok = false;
        if (spec.sign == TailKind::NonNeg && v.hi() < 0.0) w.sign_ok = false;
        if (spec.sign == TailKind::NonPos && v.lo() > 0.0) w.sign_ok = false;
    });
    return w;
}

WindowCheck verify_window(const SumSpec& spec, double M) {
    Interval xiv = xi_exponent();
    WindowCheck w{true, true};
    for_primes(M, [&](uint64_t p) {
        if (p <= M - 1e4 || p < spec.start_prime) return;
        Interval P(static_cast<double>(p));
        Interval kappa = spec.kappa_of_xi.eval(P, xiv);
        Interval c = spec.c_of_M.eval(P, xiv);
        Interval t = evaluate_sum_term(spec, p, xiv);
        if (abs(t * pow(P, kappa) / log(P)).lo() > c.hi() * (1.0 + 1e-9)) w.majorant_ok = false;
        if (spec.sign == TailKind::NonNeg && t.hi() < 0.0) w.sign_ok = false;
        if (spec.sign == TailKind::NonPos && t.lo() > 0.0) w.sign_ok = false;
    });
    return w;
}

const ProductSpec& SpecRegistry::product(const std::string& name) const {
    for (const auto& s : products)
        if (s.name == name) return s;
    throw std::out_of_range("SpecRegistry: no product " + name);
}

const SumSpec& SpecRegistry::sum(const std::string& name) const {
    for (const auto& s : sums)
        if (s.name == name) return s;
    throw std::out_of_range("SpecRegistry: no sum " + name);
}

SpecRegistry build_registry(const Interval& rho) {
    SpecRegistry reg;
    const Expr P = Expr::p();
    const Expr XI = Expr::xi();
    auto C = [](long long n, long long d = 1) { return Expr::c(n, d); };
    const Expr one = C(1), two = C(2);
    const Expr sqp = P.sqrt();
    const Expr pxi = P.pow(XI);

    // ---- phi/phi_{1/2}^2 family: f(p) = (p-1)/(sqrt(p)-1)^2 ---------------
    reg.products.push_back({"P1", one + (two * P - sqp - one) / (P * P * (sqp - one)), 3,
                            C(3, 2), two / (one - P.pow(C(-1, 2))), TailKind::NonNeg});
    auto aux1_delta = [&](const char* name, long long dn, long long dd) {
        Expr delta = C(dn, dd);
        Expr factor = one + (two * P.pow(one - delta) + sqp + one) /
                                (P.pow(two - two * delta) * (sqp - one));
        Expr b = (two + P.pow(delta - C(1, 2)) + P.pow(delta - one)) / (one - P.pow(C(-1, 2)));
        reg.products.push_back({name, factor, 3, C(3, 2) - delta, b, TailKind::NonNeg});
    };
    aux1_delta("P1_delta1", 1, 3);
    aux1_delta("P1_delta2", 5, 12);
    aux1_delta("P1_delta3", 4, 9);

    // ---- mixed g0/g2 weight: f(p) = 1 + (p^{xi-1/2}+1)/(p^xi-1) -----------
    reg.products.push_back({"P2",
                            one + (P.pow(XI + C(1, 2)) + P - pxi - P.pow(XI - C(1, 2))) /
                                      (P * P * (pxi - one)),
                            3, C(3, 2), (one + P.pow(C(1, 2) - XI)) / (one - P.pow(-XI)),
                            TailKind::NonNeg});
    reg.products.push_back(
        {"P2_delta",
         one + (P.pow(C(1, 6) + XI) + pxi + P.pow(C(2, 3)) + P.pow(XI - C(1, 2))) /
                   (P.pow(C(4, 3)) * (pxi - one)),
         3, C(7, 6),
         (one + P.pow(C(-1, 6)) + P.pow(C(1, 2) - XI) + P.pow(C(-2, 3))) / (one - P.pow(-XI)),
         TailKind::NonNeg});

    // ---- squared g2 weight / K2 leading: shared product --------------------
    Expr p3_factor = one + (two * P.pow(one + XI) - two * P.pow(two * XI) - P +
                            P.pow(two * XI - one)) /
                               (P * P * (pxi - one) * (pxi - one));
    Expr p3_b = (two + P.pow(XI - two)) / ((one - P.pow(-XI)) * (one - P.pow(-XI)));
    reg.products.push_back({"P3", p3_factor, 3, one + XI, p3_b, TailKind::NonNeg});
    reg.products.push_back({"AP0_LX", p3_factor, 3, one + XI, p3_b, TailKind::NonNeg});

    Expr p3s_factor =
        one + (two * pxi - P.pow(two * XI - one) - one) / ((pxi - one) * (pxi - one) * (sqp - one));
    Expr p3s_b = two / ((one - P.pow(-XI)) * (one - P.pow(-XI)) * (one - P.pow(C(-1, 2))));
    reg.products.push_back({"P3_spec", p3s_factor, 3, C(1, 2) + XI, p3s_b, TailKind::NonNeg});
    reg.products.push_back({"AP1_LX", p3s_factor, 3, C(1, 2) + XI, p3s_b, TailKind::NonNeg});

    // ---- sqrt-normalized nu sums -------------------------------------------
    reg.products.push_back({"P1x", one + (P - sqp - one) / P.pow(C(5, 2)), 3, C(3, 2), one,
                            TailKind::NonNeg});
    reg.products.push_back({"P1x_delta",
                            one + (P.pow(C(2, 3)) + sqp + one) / P.pow(C(11, 6)), 3, C(7, 6),
                            one + P.pow(C(-1, 6)) + P.pow(C(-2, 3)), TailKind::NonNeg});

    // ---- the G_q mean value (phi(l)/l^2 family) -----------------------------
    reg.products.push_back({"APROD", one - two / (P * P) + one / (P * P * P), 2, two, two,
                            TailKind::NonPos});
    reg.products.push_back({"PPdelta", one + one / (P.pow(C(3, 2)) - P), 2, C(3, 2),
                            one / (one - P.pow(C(-1, 2))), TailKind::NonNeg});

    // ---- K1 log-offset family ----------------------------------------------
    // As printed: the trailing -1 makes this differ from the H_f(0) local
    // factor; kept verbatim because its pinned value feeds the c1 bracket.
    reg.products.push_back({"P0_LX",
                            one + (P.pow(two - XI) - two * P - one) / (P.pow(C(3) - XI) * (pxi - one)),
                            3, one + XI, one / (one - P.pow(-XI)), TailKind::Mixed});
    // Corrected local factor (trailing +1): this is the H_f(0) Euler factor
    // that matches the asymptotic slope of K1 and the pinned scan offsets.
    reg.products.push_back({"P0C_LX",
                            one + (P.pow(two - XI) - two * P + one) / (P.pow(C(3) - XI) * (pxi - one)),
                            3, one + XI, one / (one - P.pow(-XI)), TailKind::Mixed});
    reg.products.push_back({"P1_LX",
                            one + (P.pow(one - XI) - one) /
                                      (P.pow(one - XI) * (pxi - one) * (sqp - one)),
                            3, C(1, 2) + XI,
                            one / ((one - P.pow(-XI)) * (one - P.pow(C(-1, 2)))),
                            TailKind::NonNeg});

    // ---- prime log-sums (all share the T_f term shape) ---------------------
    Interval xiv = xi_exponent();
    Interval g2v = g2_at_2(rho);
    Interval two_xi = pow(Interval(2.0), xiv);
    Interval f2_lx = g2v * (Interval(1.0) / 4.0) * two_xi / (two_xi - 1.0);
    Interval af2_lx = g2v * g2v * (Interval(1.0) / 4.0) * two_xi * two_xi /
                      ((two_xi - 1.0) * (two_xi - 1.0));

    reg.sums.push_back({"ASUM_SUM", (P - one) / (P * P), std::nullopt, 2, two,
                        C(3) / ((one - one / P) * (one - one / (P * P))), TailKind::NonNeg});
    reg.sums.push_back({"SUMX_SUM", ((P - one) / (P * P)) * (pxi / (pxi - one)), f2_lx, 2,
                        one + XI,
                        (one + two * P.pow(XI - two)) /
                            ((one - P.pow(-XI) - one / (P * P)) * (one - one / P)),
                        TailKind::Mixed});
    reg.sums.push_back({"ASUMX_SUM",
                        ((P - one) / (P * P)) * (pxi / (pxi - one)) * (pxi / (pxi - one)), af2_lx,
                        2, one + XI,
                        (two + two * P.pow(XI - two)) /
                            ((one - two * P.pow(-XI) - one / (P * P)) * (one - one / P)),
                        TailKind::NonPos});
    return reg;
}

}  // namespace mulcm
