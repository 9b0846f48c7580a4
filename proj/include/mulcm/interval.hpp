#ifndef MULCM_INTERVAL_HPP
#define MULCM_INTERVAL_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace mulcm {

// Closed real enclosure [lo, hi] over hardware doubles.  Every operation
// rounds outward (next-before / next-after nudges around nearest-mode
// arithmetic), so for x in a and y in b, x op y lies in a op b.
class Interval {
public:
    Interval() : lo_(0.0), hi_(0.0) {}
    explicit Interval(double exact) : lo_(exact), hi_(exact) { check(); }
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi");
        check();
    }

    // Enclosure of num / 10^exp10.  Decimal literals are not binary exact;
    // this is the standard way constants enter the pipeline.
    static Interval ratio10(long long num, int exp10);
    // Enclosure of num / den for exact integer inputs.
    static Interval ratio(long long num, long long den);

    static Interval pi();
    static Interval euler_gamma();
    static Interval ln2();
    static Interval ln10();

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return 0.5 * (lo_ + hi_); }
    double width() const { return hi_ - lo_; }

    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool intersects(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
    bool strictly_positive() const { return lo_ > 0.0; }
    bool strictly_negative() const { return hi_ < 0.0; }

    Interval operator-() const { return Interval(-hi_, -lo_, 0); }
    Interval operator+(const Interval& o) const;
    Interval operator-(const Interval& o) const;
    Interval operator*(const Interval& o) const;
    Interval operator/(const Interval& o) const;
    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }
    Interval& operator/=(const Interval& o) { return *this = *this / o; }

    static Interval hull(const Interval& a, const Interval& b) {
        return Interval(a.lo_ < b.lo_ ? a.lo_ : b.lo_, a.hi_ > b.hi_ ? a.hi_ : b.hi_, 0);
    }

    std::string str(int significand = 17) const;

private:
    friend Interval sqrt(const Interval&);
    friend Interval exp(const Interval&);
    friend Interval log(const Interval&);
    friend Interval pow(const Interval&, const Interval&);
    friend Interval abs(const Interval&);
    friend Interval min(const Interval&, const Interval&);
    friend Interval max(const Interval&, const Interval&);
    friend Interval pow_int(const Interval&, long long);

    Interval(double lo, double hi, int) : lo_(lo), hi_(hi) {}  // trusted, no checks
    void check() const {
        if (std::isnan(lo_) || std::isnan(hi_)) throw std::invalid_argument("Interval: NaN bound");
    }

    double lo_, hi_;
};

inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }
inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }

Interval sqrt(const Interval& a);
Interval exp(const Interval& a);
Interval log(const Interval& a);
Interval pow(const Interval& base, const Interval& expo);
inline Interval pow(const Interval& base, double expo) { return pow(base, Interval(expo)); }
Interval abs(const Interval& a);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);
Interval pow_int(const Interval& base, long long n);

enum class RoundMode { Up, Down, TowardZero };

// Smallest/largest/truncated multiple of 10^-d relative to x, evaluated in
// decimal space (exact expansion), never by multiply-floor in binary.
double round_decimal(double x, int digits, RoundMode mode);

inline double round_up(double x, int d) { return round_decimal(x, d, RoundMode::Up); }
inline double round_down(double x, int d) { return round_decimal(x, d, RoundMode::Down); }
inline double trunc_decimal(double x, int d) { return round_decimal(x, d, RoundMode::TowardZero); }

// (RoundDown(lo,d), RoundUp(hi,d)) -- the pair the ledger prints.
std::pair<double, double> report(const Interval& x, int digits);
inline double report_upper(const Interval& x, int d) { return round_up(x.hi(), d); }
inline double report_lower(const Interval& x, int d) { return round_down(x.lo(), d); }

}  // namespace mulcm

#endif
