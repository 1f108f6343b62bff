#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace arp {

/// Exact rational on 64-bit integers, always normalized (gcd 1, den > 0).
/// Lattice-plane arithmetic must be exact: the symmetry-point
/// classifications are integer congruences and tolerance-based tests
/// misfire on boundaries. Magnitudes here stay tiny (coordinates of
/// small lattice patches), but intermediates go through __int128 and
/// overflow of the reduced result is checked.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) { assign(n, d); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const { Rational r; r.num_ = -num_; r.den_ = den_; return r; }
    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    long long ceil() const { return -(-*this).floor(); }

    double to_double() const { return double(num_) / double(den_); }
    std::string str() const {
        return den_ == 1 ? std::to_string(num_)
                         : std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;

    static Rational make(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = (long long)n;
        r.den_ = (long long)d;
        return r;
    }
    static i128 gcd128(i128 a, i128 b) {
        while (b) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
    void assign(long long n, long long d) {
        Rational r = make(n, d);
        num_ = r.num_;
        den_ = r.den_;
    }

    long long num_;
    long long den_;
};

/// Exact point in lattice (h,k) coordinates.
struct RatVec2 {
    Rational x, y;

    RatVec2() = default;
    RatVec2(Rational px, Rational py) : x(px), y(py) {}
    RatVec2(long long px, long long py) : x(px), y(py) {}

    bool is_lattice_point() const { return x.is_integer() && y.is_integer(); }

    friend RatVec2 operator+(const RatVec2& a, const RatVec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend RatVec2 operator-(const RatVec2& a, const RatVec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend RatVec2 operator*(const Rational& s, const RatVec2& v) { return {s * v.x, s * v.y}; }
    friend bool operator==(const RatVec2& a, const RatVec2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const RatVec2& a, const RatVec2& b) { return !(a == b); }
    friend bool operator<(const RatVec2& a, const RatVec2& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

/// 2D cross product (z-component), exact.
inline Rational cross2(const RatVec2& o, const RatVec2& a, const RatVec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

struct RatVec2Hash {
    std::size_t operator()(const RatVec2& v) const noexcept {
        std::size_t h1 = std::hash<long long>()(v.x.num()) * 1000003u ^ std::hash<long long>()(v.x.den());
        std::size_t h2 = std::hash<long long>()(v.y.num()) * 1000003u ^ std::hash<long long>()(v.y.den());
        return h1 * 2654435761u ^ h2;
    }
};

}  // namespace arp
