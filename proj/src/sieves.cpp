#include "mulcm/sieves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace mulcm {

const uint32_t kSmallPrimes[22] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                   37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79};

namespace {

constexpr uint64_t kMaxTableSpan = 1u << 28;  // ~256M integers per table

std::vector<uint32_t> base_primes(uint64_t limit) {
    std::vector<bool> comp(limit + 1, false);
    std::vector<uint32_t> ps;
    for (uint64_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            ps.push_back(static_cast<uint32_t>(i));
            for (uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return ps;
}

}  // namespace

PrimeTables PrimeTables::build(uint64_t lo, uint64_t hi) {
    if (lo < 1 || lo > hi) throw std::invalid_argument("PrimeTables: bad range");
    if (hi - lo + 1 > kMaxTableSpan)
        throw std::length_error("PrimeTables: span exceeds memory budget, build segments");
    if (hi > 0xFFFFFFFFull) throw std::length_error("PrimeTables: hi exceeds 32-bit phi storage");

    PrimeTables t;
    t.lo_ = lo;
    t.hi_ = hi;
    size_t n = static_cast<size_t>(hi - lo + 1);
    t.mu_.assign(n, 0);
    t.phi_.assign(n, 0);
    t.spf_.assign(n, 0);
    t.mask_.assign(n, 0);

    if (lo == 1) {
        // linear sieve: one pass fills spf, mu, phi
        t.mu_[0] = 1;
        t.phi_[0] = 1;
        std::vector<uint32_t>& pr = t.primes_;
        for (uint64_t i = 2; i <= hi; ++i) {
            size_t ii = t.idx(i);
            if (t.spf_[ii] == 0) {
                t.spf_[ii] = static_cast<uint32_t>(i);
                t.mu_[ii] = -1;
                t.phi_[ii] = static_cast<uint32_t>(i - 1);
                pr.push_back(static_cast<uint32_t>(i));
            }
            for (uint32_t p : pr) {
                if (p > t.spf_[ii] || i * p > hi) break;
                size_t ip = t.idx(i * p);
                t.spf_[ip] = p;
                if (i % p == 0) {
                    t.mu_[ip] = 0;
                    t.phi_[ip] = t.phi_[ii] * p;
                } else {
                    t.mu_[ip] = -t.mu_[ii];
                    t.phi_[ip] = t.phi_[ii] * (p - 1);
                }
            }
        }
    } else {
        // windowed construction via base primes
        std::vector<uint64_t> rem(n);
        std::vector<int8_t> par(n, 0);    // number of distinct primes mod 2
        std::vector<uint8_t> sqf(n, 1);   // squarefree so far
        for (size_t i = 0; i < n; ++i) {
            rem[i] = lo + i;
            t.phi_[i] = 1;
        }
        uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
        for (uint32_t p : base_primes(root)) {
            uint64_t start = ((lo + p - 1) / p) * p;
            for (uint64_t m = start; m <= hi; m += p) {
                size_t i = t.idx(m);
                if (t.spf_[i] == 0) t.spf_[i] = p;
                uint32_t e = 0;
                while (rem[i] % p == 0) { rem[i] /= p; ++e; }
                if (e >= 2) sqf[i] = 0;
                par[i] ^= 1;
                uint64_t pe = 1;
                for (uint32_t k = 1; k < e; ++k) pe *= p;
                t.phi_[i] *= static_cast<uint32_t>(pe * (p - 1));
            }
        }
        for (size_t i = 0; i < n; ++i) {
            uint64_t m = lo + i;
            if (m == 1) { t.mu_[i] = 1; t.phi_[i] = 1; continue; }
            if (rem[i] > 1) {  // one prime factor > sqrt(hi)
                if (t.spf_[i] == 0) t.spf_[i] = static_cast<uint32_t>(rem[i]);
                par[i] ^= 1;
                t.phi_[i] *= static_cast<uint32_t>(rem[i] - 1);
            }
            t.mu_[i] = sqf[i] ? (par[i] ? -1 : 1) : 0;
            if (t.phi_[i] == m - 1) t.primes_.push_back(static_cast<uint32_t>(m));
        }
    }

    // 22-bit small prime mask by direct marking
    for (int b = 0; b < 22; ++b) {
        uint64_t p = kSmallPrimes[b];
        uint64_t start = ((lo + p - 1) / p) * p;
        for (uint64_t m = start; m <= hi; m += p) t.mask_[t.idx(m)] |= (1u << b);
    }
    return t;
}

void PrimeTables::factor(uint64_t n, std::vector<uint32_t>& out) const {
    out.clear();
    while (n > 1) {
        uint32_t p = spf(n);
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
}

void PrimeTables::save(const std::string& path) const {
    std::string tmp = path + ".tmp";
    FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw std::runtime_error("PrimeTables::save: cannot open " + tmp);
    // little-endian fixed-width records; see docs/formats.md
    const char magic[8] = {'M', 'U', 'L', 'C', 'M', 'P', 'T', '1'};
    uint64_t n = hi_ - lo_ + 1;
    std::fwrite(magic, 1, 8, f);
    std::fwrite(&lo_, 8, 1, f);
    std::fwrite(&hi_, 8, 1, f);
    std::fwrite(mu_.data(), 1, n, f);
    std::fwrite(phi_.data(), 4, n, f);
    std::fwrite(spf_.data(), 4, n, f);
    std::fwrite(mask_.data(), 4, n, f);
    uint64_t np = primes_.size();
    std::fwrite(&np, 8, 1, f);
    std::fwrite(primes_.data(), 4, np, f);
    if (std::fclose(f) != 0) throw std::runtime_error("PrimeTables::save: close failed");
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("PrimeTables::save: rename failed");
}

PrimeTables PrimeTables::load(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("PrimeTables::load: cannot open " + path);
    char magic[8];
    PrimeTables t;
    if (std::fread(magic, 1, 8, f) != 8 || std::memcmp(magic, "MULCMPT1", 8) != 0) {
        std::fclose(f);
        throw std::runtime_error("PrimeTables::load: bad magic");
    }
    bool ok = std::fread(&t.lo_, 8, 1, f) == 1 && std::fread(&t.hi_, 8, 1, f) == 1;
    uint64_t n = t.hi_ - t.lo_ + 1;
    t.mu_.resize(n);
    t.phi_.resize(n);
    t.spf_.resize(n);
    t.mask_.resize(n);
    ok = ok && std::fread(t.mu_.data(), 1, n, f) == n && std::fread(t.phi_.data(), 4, n, f) == n &&
         std::fread(t.spf_.data(), 4, n, f) == n && std::fread(t.mask_.data(), 4, n, f) == n;
    uint64_t np = 0;
    ok = ok && std::fread(&np, 8, 1, f) == 1;
    t.primes_.resize(np);
    ok = ok && std::fread(t.primes_.data(), 4, np, f) == np;
    std::fclose(f);
    if (!ok) throw std::runtime_error("PrimeTables::load: truncated file");
    return t;
}

void for_primes(double limit, const std::function<void(uint64_t)>& fn) {
    if (limit < 2) return;
    uint64_t n = static_cast<uint64_t>(limit);
    const uint64_t seg = 1u << 22;
    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(n))) + 1;
    auto base = base_primes(root);
    std::vector<uint8_t> comp;
    for (uint64_t lo = 2; lo <= n; lo += seg) {
        uint64_t hi = std::min(n, lo + seg - 1);
        comp.assign(hi - lo + 1, 0);
        for (uint32_t p : base) {
            uint64_t pp = static_cast<uint64_t>(p) * p;
            if (pp > hi) break;
            uint64_t start = std::max(pp, ((lo + p - 1) / p) * p);
            for (uint64_t m = start; m <= hi; m += p) comp[m - lo] = 1;
        }
        for (uint64_t m = lo; m <= hi; ++m)
            if (!comp[m - lo]) fn(m);
    }
}

ChebyshevCounts chebyshev_counts(double limit) {
    // Kahan in long double keeps the sum tight enough to certify the floor
    // even at 1e8 (plain double-interval logs are ~0.1 wide there).
    uint64_t pi = 0;
    long double sum = 0.0L, comp = 0.0L;
    long double term_err = 0.0L;
    constexpr long double kUlpL = 1.0842021724855044e-19L;  // 2^-63
    for_primes(limit, [&](uint64_t p) {
        ++pi;
        long double t = logl(static_cast<long double>(p));
        term_err += 4 * kUlpL * t;  // logl slack, same margin as the interval layer
        long double y = t - comp;
        long double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    });
    long double err = term_err + 2 * kUlpL * sum + 1e-9L;
    double lo = std::nextafter(static_cast<double>(sum - err), -1.0 / 0.0);
    double hi = std::nextafter(static_cast<double>(sum + err), 1.0 / 0.0);
    Interval theta(lo, hi);
    uint64_t tf = static_cast<uint64_t>(std::floor(theta.lo()));
    if (std::floor(theta.lo()) != std::floor(theta.hi()))
        throw std::runtime_error("chebyshev_counts: theta floor not certifiable at this width");
    return {pi, tf, theta};
}

Interval eval_phi_s(uint64_t q, const Interval& s) {
    if (q < 1) throw std::domain_error("eval_phi_s: q >= 1 required");
    Interval r = pow(Interval(static_cast<double>(q)), s);
    uint64_t n = q;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            r *= Interval(1.0) - pow(Interval(static_cast<double>(p)), -s);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) r *= Interval(1.0) - pow(Interval(static_cast<double>(n)), -s);
    return r;
}

Interval eval_sigma_s(uint64_t q, const Interval& s) {
    if (q < 1) throw std::domain_error("eval_sigma_s: q >= 1 required");
    Interval r = pow(Interval(static_cast<double>(q)), s);
    uint64_t n = q;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            r *= Interval(1.0) + pow(Interval(static_cast<double>(p)), -s);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) r *= Interval(1.0) + pow(Interval(static_cast<double>(n)), -s);
    return r;
}

Interval xi_exponent() {
    return Interval(1.0) - Interval(1.0) / (Interval(12.0) * Interval::ln10());
}

Interval rho_exact() { return Interval::ratio10(296, 4) / Interval::ratio10(10032, 6); }

Interval g0_at_2() { return sqrt(Interval(3.0)) * (sqrt(Interval(2.0)) - 1.0) / 2.0; }

Interval g2_at_2(const Interval& rho) {
    return rho * (Interval(1.0) - pow(Interval(2.0), -xi_exponent()));
}

Interval eval_g(uint64_t q, GWeight which, const Interval& rho) {
    if (q < 1) throw std::domain_error("eval_g: q >= 1 required");
    if (q % 2 != 0) return Interval(1.0);
    return which == GWeight::g0 ? g0_at_2() : g2_at_2(rho);
}

Interval eval_g(uint64_t q, GWeight which) { return eval_g(q, which, rho_exact()); }

}  // namespace mulcm
