/* frac.hh -- exact rational arithmetic for sampler distribution checks */

#ifndef VPLT_FRAC_HH_
#define VPLT_FRAC_HH_

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace vplt {

/// Exact fraction on 128-bit integers. Big enough for enumerating the exact
/// outcome distribution of the samplers on the small words used in tests;
/// overflow throws instead of wrapping.
class Frac {
public:
    Frac() : num_(0), den_(1) {}
    Frac(std::int64_t n) : num_(n), den_(1) {}
    Frac(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    static Frac make(__int128 n, __int128 d) {
        Frac f;
        f.num_ = n;
        f.den_ = d;
        f.normalize();
        return f;
    }

    __int128 num() const { return num_; }
    __int128 den() const { return den_; }

    Frac operator+(const Frac& o) const {
        return make(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                    checked_mul(den_, o.den_));
    }
    Frac operator-(const Frac& o) const {
        return make(checked_add(checked_mul(num_, o.den_), -checked_mul(o.num_, den_)),
                    checked_mul(den_, o.den_));
    }
    Frac operator*(const Frac& o) const {
        // cross-reduce first to keep the factors small
        __int128 g1 = gcd128(abs128(num_), o.den_);
        __int128 g2 = gcd128(abs128(o.num_), den_);
        return make(checked_mul(num_ / g1, o.num_ / g2), checked_mul(den_ / g2, o.den_ / g1));
    }
    Frac operator/(const Frac& o) const {
        if (o.num_ == 0) throw std::domain_error("Frac: division by zero");
        return *this * make(o.den_, o.num_);
    }
    Frac& operator+=(const Frac& o) { return *this = *this + o; }
    Frac& operator*=(const Frac& o) { return *this = *this * o; }

    bool operator==(const Frac& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Frac& o) const { return !(*this == o); }
    bool operator<(const Frac& o) const {
        return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
    }
    bool operator<=(const Frac& o) const { return !(o < *this); }
    bool operator>(const Frac& o) const { return o < *this; }
    bool operator>=(const Frac& o) const { return !(*this < o); }

    Frac pow(unsigned e) const {
        Frac r(1);
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string to_string() const {
        return i128_str(num_) + "/" + i128_str(den_);
    }

private:
    static __int128 abs128(__int128 v) { return v < 0 ? -v : v; }

    static __int128 gcd128(__int128 a, __int128 b) {
        a = abs128(a);
        b = abs128(b);
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    static __int128 checked_mul(__int128 a, __int128 b) {
        __int128 r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Frac: mul overflow");
        return r;
    }
    static __int128 checked_add(__int128 a, __int128 b) {
        __int128 r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Frac: add overflow");
        return r;
    }

    static std::string i128_str(__int128 v) {
        if (v == 0) return "0";
        bool neg = v < 0;
        if (neg) v = -v;
        std::string s;
        while (v) {
            s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
            v /= 10;
        }
        return neg ? "-" + s : s;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("Frac: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        __int128 g = gcd128(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    __int128 num_;
    __int128 den_;
};

} // namespace vplt

#endif // VPLT_FRAC_HH_
