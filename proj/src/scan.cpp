#include "mulcm/scan.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace mulcm {

namespace {

// per-prime local factor of each integrand; composite squarefree values are
// products over the prime factors
struct Integrand {
    std::function<Interval(uint64_t p, const Interval& xi, const ScanOptions&)> local;
    enum Norm { ByX, BySqrtX, Plain } norm;
};

Interval phi_half_ratio(const Interval& P) {
    // sqrt(p)/phi_{1/2}(p) = 1/(1 - p^{-1/2}) = sqrt(p)/(sqrt(p)-1)
    return sqrt(P) / (sqrt(P) - 1.0);
}

Interval phi_xi_ratio(const Interval& P, const Interval& xi) {
    Interval pxi = pow(P, xi);
    return pxi / (pxi - 1.0);
}

Integrand integrand_for(const std::string& id) {
    using I = Interval;
    if (id == "aux1.plain")
        return {[](uint64_t p, const I&, const ScanOptions&) {
                    I P(static_cast<double>(p));
                    I s = sqrt(P) - 1.0;
                    return (P - 1.0) / (s * s);
                },
                Integrand::ByX};
    if (id == "aux1.g0")
        return {[](uint64_t p, const I&, const ScanOptions&) {
                    I P(static_cast<double>(p));
                    I s = sqrt(P) - 1.0;
                    I v = (P - 1.0) / (s * s);
                    return p == 2 ? v * g0_at_2() : v;
                },
                Integrand::ByX};
    if (id == "aux1.g0sq")
        return {[](uint64_t p, const I&, const ScanOptions&) {
                    I P(static_cast<double>(p));
                    I s = sqrt(P) - 1.0;
                    I v = (P - 1.0) / (s * s);
                    return p == 2 ? v * g0_at_2() * g0_at_2() : v;
                },
                Integrand::ByX};
    if (id == "aux2")
        return {[](uint64_t p, const I& xi, const ScanOptions& o) {
                    I P(static_cast<double>(p));
                    I v = ((P - 1.0) / P) * phi_half_ratio(P) * phi_xi_ratio(P, xi);
                    return p == 2 ? v * g0_at_2() * g2_at_2(o.rho) : v;
                },
                Integrand::ByX};
    if (id == "aux3")
        return {[](uint64_t p, const I& xi, const ScanOptions& o) {
                    I P(static_cast<double>(p));
                    I r = phi_xi_ratio(P, xi);
                    I v = ((P - 1.0) / P) * r * r;
                    if (p == 2) { I g = g2_at_2(o.rho); v = v * g * g; }
                    return v;
                },
                Integrand::ByX};
    if (id == "xi1")
        return {[](uint64_t p, const I&, const ScanOptions&) {
                    I P(static_cast<double>(p));
                    return (P - 1.0) / (P * (sqrt(P) - 1.0));  // phi_{1/2}(p) = sqrt(p)-1
                },
                Integrand::BySqrtX};
    if (id == "xi2")
        return {[](uint64_t p, const I&, const ScanOptions&) {
                    I P(static_cast<double>(p));
                    I v = ((P - 1.0) / pow(P, I(1.5))) * phi_half_ratio(P);
                    return p == 2 ? v * g0_at_2() : v;
                },
                Integrand::BySqrtX};
    if (id == "geps")
        return {[](uint64_t p, const I&, const ScanOptions&) {
                    I P(static_cast<double>(p));
                    return Interval(1.0) / (pow(P, I(1.1)) - 1.0);
                },
                Integrand::Plain};
    throw std::out_of_range("scan_mean: unregistered integrand " + id);
}

// shared scan driver: term(l) from cached prime factors, a value map, and a
// max (or min) tracker over integer X
template <typename Value>
ScanReport drive(const std::string& id, uint64_t limit, const PrimeTables& tables,
                 const std::function<Interval(uint64_t)>& prime_factor_value, bool track_min,
                 const Value& value_at) {
    if (tables.lo() != 1 || tables.hi() < limit)
        throw std::invalid_argument("scan: tables must cover [1, limit]");
    ScanReport rep;
    rep.id = id;
    rep.limit = limit;

    std::vector<Interval> cache(limit + 1, Interval(0.0));
    std::vector<bool> cached(limit + 1, false);

    Interval sum(1.0);  // l = 1 contributes 1 for every registered integrand
    rep.arg = 1;
    rep.value = value_at(1, sum);
    std::vector<uint32_t> ps;
    uint64_t next_cp = 10;
    for (uint64_t l = 2; l <= limit; ++l) {
        if (tables.mu(l) != 0) {
            tables.factor(l, ps);
            Interval term(1.0);
            for (uint32_t p : ps) {
                if (!cached[p]) {
                    cache[p] = prime_factor_value(p);
                    cached[p] = true;
                }
                term *= cache[p];
            }
            sum += term;
        }
        Interval v = value_at(l, sum);
        if (!track_min) {
            if (v.hi() > rep.value.hi()) {
                rep.overlap = v.lo() <= rep.value.hi();
                rep.value = v;
                rep.arg = l;
            } else if (v.hi() > rep.value.lo()) {
                rep.overlap = true;
            }
        } else {
            if (v.lo() < rep.value.lo()) {
                rep.overlap = v.hi() >= rep.value.lo();
                rep.value = v;
                rep.arg = l;
            } else if (v.lo() < rep.value.hi()) {
                rep.overlap = true;
            }
        }
        if (l == next_cp || l == limit) {
            rep.checkpoints.emplace_back(l, track_min ? v.lo() : v.hi());
            if (l == next_cp) next_cp *= 10;
        }
    }
    return rep;
}

}  // namespace

std::vector<std::string> scan_registry_ids() {
    return {"aux1.plain", "aux1.g0", "aux1.g0sq", "aux2", "aux3", "xi1", "xi2", "geps"};
}

ScanReport scan_mean(const std::string& id, uint64_t limit, const PrimeTables& tables,
                     const ScanOptions& opt) {
    Integrand ig = integrand_for(id);
    Interval xiv = xi_exponent();
    auto pf = [&](uint64_t p) { return ig.local(p, xiv, opt); };
    switch (ig.norm) {
        case Integrand::ByX:
            return drive(id, limit, tables, pf, false, [](uint64_t l, const Interval& s) {
                return s / Interval(static_cast<double>(l));
            });
        case Integrand::BySqrtX:
            return drive(id, limit, tables, pf, false, [](uint64_t l, const Interval& s) {
                return s / sqrt(Interval(static_cast<double>(l)));
            });
        case Integrand::Plain:
            return drive(id, limit, tables, pf, false,
                         [](uint64_t, const Interval& s) { return s; });
    }
    throw std::logic_error("scan_mean: bad norm");
}

ScanReport scan_k_offset(int which, bool min_variant, const Interval& c, uint64_t limit,
                         const PrimeTables& tables, const ScanOptions& opt) {
    if (which != 1 && which != 2) throw std::invalid_argument("scan_k_offset: which in {1,2}");
    Interval xiv = xi_exponent();
    auto pf = [&](uint64_t p) {
        Interval P(static_cast<double>(p));
        Interval r = phi_xi_ratio(P, xiv);
        Interval v = ((P - 1.0) / (P * P)) * r;
        if (which == 2) v = v * r;
        if (p == 2) {
            Interval g = g2_at_2(opt.rho);
            v = v * (which == 2 ? g * g : g);
        }
        return v;
    };
    std::string id = (which == 1 ? "k1." : "k2.") + std::string(min_variant ? "min" : "max");
    if (!min_variant) {
        return drive(id, limit, tables, pf, false, [&](uint64_t l, const Interval& s) {
            return s - c * log(Interval(static_cast<double>(l)));
        });
    }
    return drive(id, limit, tables, pf, true, [&](uint64_t l, const Interval& s) {
        return s - c * log(Interval(static_cast<double>(l + 1)));
    });
}

}  // namespace mulcm
