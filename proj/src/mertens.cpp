#include "mulcm/mertens.hpp"

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <stdexcept>

namespace mulcm {

namespace {
constexpr double kEps = 2.220446049250313e-16;  // 2^-52
}

MertensTable::MertensTable(uint64_t limit, const PrimeTables& tables, uint32_t q0)
    : limit_(limit), q0_(q0) {
    if (q0 < 2 || q0 > 30) throw std::invalid_argument("MertensTable: q0 out of range");
    for (uint32_t p = 2; p <= q0; ++p)
        if (q0 % (p * p) == 0) throw std::invalid_argument("MertensTable: q0 must be squarefree");
    if (tables.lo() != 1 || tables.hi() < limit)
        throw std::invalid_argument("MertensTable: tables must cover [1, limit]");
    if (limit > (1ull << 28))
        throw std::length_error("MertensTable: limit exceeds memory budget");

    res_index_.assign(q0_, -1);
    for (uint32_t a = 0; a < q0_; ++a)
        if (std::gcd(a, q0_) == 1) {
            res_index_[a] = static_cast<int>(residues_.size());
            residues_.push_back(a);
        }
    cls_.assign(residues_.size(), std::vector<double>(limit_ + 1, 0.0));

    // Kahan per class; entries store the running sum at every integer
    std::vector<double> sum(residues_.size(), 0.0), comp(residues_.size(), 0.0);
    double abs_sum = 0.0;
    for (uint64_t l = 1; l <= limit_; ++l) {
        int mu = tables.mu(l);
        int slot = res_index_[l % q0_];
        if (mu != 0 && slot >= 0) {
            double term = static_cast<double>(mu) / static_cast<double>(l);
            abs_sum += std::fabs(term);
            double y = term - comp[slot];
            double t = sum[slot] + y;
            comp[slot] = (t - sum[slot]) - y;
            sum[slot] = t;
        }
        for (size_t c = 0; c < residues_.size(); ++c) cls_[c][l] = sum[c];
    }
    err_ = 4.0 * kEps * (abs_sum + 2.0);

    for (uint32_t d = 1; d <= q0_; ++d)
        if (q0_ % d == 0 && tables.mu(d) != 0) {
            q0_divisors_.push_back(d);
            q0_div_mu_.push_back(static_cast<int8_t>(tables.mu(d)));
        }
}

Interval MertensTable::m_class(uint32_t a0, double t) const {
    int slot = res_index_[a0 % q0_];
    if (slot < 0) throw std::invalid_argument("MertensTable: residue not coprime to q0");
    if (t < 1.0) return Interval(0.0);
    if (t > static_cast<double>(limit_))
        throw std::out_of_range("MertensTable: t beyond table limit");
    double v = cls_[slot][static_cast<uint64_t>(t)];
    return Interval(v - err_, v + err_);
}

Interval MertensTable::m(double t) const {
    if (t < 1.0) return Interval(0.0);
    if (t > static_cast<double>(limit_))
        throw std::out_of_range("MertensTable: t beyond table limit");
    Interval total(0.0);
    for (size_t i = 0; i < q0_divisors_.size(); ++i) {
        uint32_t d = q0_divisors_[i];
        uint64_t y = static_cast<uint64_t>(t) / d;
        if (y == 0) continue;
        double s = 0.0;
        for (size_t c = 0; c < residues_.size(); ++c) s += cls_[c][y];
        Interval cls_sum(s - cls_.size() * err_ - kEps * std::fabs(s),
                         s + cls_.size() * err_ + kEps * std::fabs(s));
        Interval w = Interval::ratio(q0_div_mu_[i], d);
        total += w * cls_sum;
    }
    return total;
}

Interval MertensTable::m_q(double X, uint64_t q) const {
    if (X < 0.0) throw std::domain_error("m_q: X >= 0 required");
    if (X < 1.0) return Interval(0.0);
    std::vector<uint64_t> ps;
    uint64_t n = q;
    for (uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);

    Interval total(0.0);
    // DFS over d | q^inf, d <= X
    struct Rec {
        const MertensTable* self;
        double X;
        const std::vector<uint64_t>* ps;
        Interval* total;
        void walk(size_t i, double d) const {
            if (i == ps->size()) {
                Interval term = self->m(X / d);
                if (d != 1.0) term /= Interval(d);
                *total += term;
                return;
            }
            for (double dd = d; dd <= X; dd *= static_cast<double>((*ps)[i])) {
                walk(i + 1, dd);
                if (dd > X / static_cast<double>((*ps)[i])) break;
            }
        }
    };
    Rec{this, X, &ps, &total}.walk(0, 1.0);
    return total;
}

void MertensTable::save(const std::string& path) const {
    std::string tmp = path + ".tmp";
    FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw std::runtime_error("MertensTable::save: cannot open " + tmp);
    const char magic[8] = {'M', 'U', 'L', 'C', 'M', 'M', 'T', '1'};
    std::fwrite(magic, 1, 8, f);
    std::fwrite(&limit_, 8, 1, f);
    uint64_t q0 = q0_, nc = residues_.size();
    std::fwrite(&q0, 8, 1, f);
    std::fwrite(&nc, 8, 1, f);
    std::fwrite(&err_, 8, 1, f);
    for (const auto& c : cls_) std::fwrite(c.data(), 8, c.size(), f);
    if (std::fclose(f) != 0) throw std::runtime_error("MertensTable::save: close failed");
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("MertensTable::save: rename failed");
}

MertensTable MertensTable::load(const std::string& path, const PrimeTables& tables) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("MertensTable::load: cannot open " + path);
    char magic[8];
    uint64_t limit = 0, q0 = 0, nc = 0;
    double err = 0;
    bool ok = std::fread(magic, 1, 8, f) == 8 && std::memcmp(magic, "MULCMMT1", 8) == 0 &&
              std::fread(&limit, 8, 1, f) == 1 && std::fread(&q0, 8, 1, f) == 1 &&
              std::fread(&nc, 8, 1, f) == 1 && std::fread(&err, 8, 1, f) == 1;
    if (!ok) {
        std::fclose(f);
        throw std::runtime_error("MertensTable::load: bad header");
    }
    MertensTable t;
    t.limit_ = limit;
    t.q0_ = static_cast<uint32_t>(q0);
    t.err_ = err;
    t.res_index_.assign(t.q0_, -1);
    for (uint32_t a = 0; a < t.q0_; ++a)
        if (std::gcd(a, t.q0_) == 1) {
            t.res_index_[a] = static_cast<int>(t.residues_.size());
            t.residues_.push_back(a);
        }
    if (t.residues_.size() != nc) {
        std::fclose(f);
        throw std::runtime_error("MertensTable::load: class count mismatch");
    }
    t.cls_.assign(nc, std::vector<double>(limit + 1));
    for (auto& c : t.cls_)
        if (std::fread(c.data(), 8, c.size(), f) != c.size()) {
            std::fclose(f);
            throw std::runtime_error("MertensTable::load: truncated file");
        }
    std::fclose(f);
    for (uint32_t d = 1; d <= t.q0_; ++d)
        if (t.q0_ % d == 0 && tables.mu(d) != 0) {
            t.q0_divisors_.push_back(d);
            t.q0_div_mu_.push_back(static_cast<int8_t>(tables.mu(d)));
        }
    return t;
}

Interval m_direct(double X, const PrimeTables& tables) {
    Interval s(0.0);
    uint64_t n = static_cast<uint64_t>(std::max(0.0, X));
    if (n > tables.hi()) throw std::out_of_range("m_direct: X beyond tables");
    for (uint64_t l = 1; l <= n; ++l) {
        int mu = tables.mu(l);
        if (mu) s += Interval::ratio(mu, static_cast<long long>(l));
    }
    return s;
}

Interval m_q_eps(double X, uint64_t q, double eps, const PrimeTables& tables) {
    if (eps < 0.0) throw std::domain_error("m_q_eps: eps >= 0 required");
    uint64_t n = static_cast<uint64_t>(std::max(0.0, X));
    if (n > tables.hi()) throw std::out_of_range("m_q_eps: X beyond tables");
    Interval s(0.0);
    Interval expo(1.0 + eps);
    for (uint64_t l = 1; l <= n; ++l) {
        int mu = tables.mu(l);
        if (!mu || std::gcd(l, q) != 1) continue;
        if (eps == 0.0) {
            s += Interval::ratio(mu, static_cast<long long>(l));
        } else {
            Interval den = pow(Interval(static_cast<double>(l)), expo);
            s += Interval(static_cast<double>(mu)) / den;
        }
    }
    return s;
}

bool verify_recombination_exact(uint64_t limit, const PrimeTables& tables) {
    // All quantities scaled by L = lcm(1..t), maintained incrementally:
    //   Mdir = m(t) L,   V[q] = m_{coprime-to-6}(floor(t/q)) L  for q | 6.
    // The q0=6 recombination identity then reads
    //   6 Mdir = 6 V1 - 3 V2 - 2 V3 + V6   at every t.
    mpz_class L = 1, Mdir = 0;
    mpz_class V[4] = {0, 0, 0, 0};  // q = 1, 2, 3, 6
    const uint32_t qs[4] = {1, 2, 3, 6};
    mpz_class tmp, rhs;

    for (uint64_t t = 1; t <= limit; ++t) {
        // lcm growth at prime powers
        uint32_t p = t == 1 ? 0 : tables.spf(t);
        if (p) {
            uint64_t r = t;
            while (r % p == 0) r /= p;
            if (r == 1) {
                L *= p;
                Mdir *= p;
                for (auto& v : V) v *= p;
            }
        }
        if (tables.mu(t) != 0) {
            mpz_divexact_ui(tmp.get_mpz_t(), L.get_mpz_t(), t);
            if (tables.mu(t) > 0) Mdir += tmp; else Mdir -= tmp;
        }
        for (int i = 0; i < 4; ++i) {
            if (t % qs[i]) continue;
            uint64_t y = t / qs[i];
            if (y % 2 == 0 || y % 3 == 0 || tables.mu(y) == 0) continue;
            mpz_divexact_ui(tmp.get_mpz_t(), L.get_mpz_t(), y);
            if (tables.mu(y) > 0) V[i] += tmp; else V[i] -= tmp;
        }
        rhs = 6 * V[0] - 3 * V[1] - 2 * V[2] + V[3];
        if (cmp(rhs, 6 * Mdir) != 0) return false;
    }
    return true;
}

}  // namespace mulcm
