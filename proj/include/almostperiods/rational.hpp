#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <compare>

#include "almostperiods/errors.hpp"

namespace almostperiods {

// Exact rational with int64 numerator/denominator, always normalized
// (den > 0, gcd(num, den) = 1).  All quantities in this library are tiny
// (exponents, valuations, lengths), so int64 with overflow checks is enough.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked(a.num_, b.den_) + checked(b.num_, a.den_),
                        checked(a.den_, b.den_), already_checked{});
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(checked(a.num_, b.den_) - checked(b.num_, a.den_),
                        checked(a.den_, b.den_), already_checked{});
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        long long g1 = std::gcd(a.num_, b.den_), g2 = std::gcd(b.num_, a.den_);
        return Rational(checked(a.num_ / (g1 ? g1 : 1), b.num_ / (g2 ? g2 : 1)),
                        checked(a.den_ / (g2 ? g2 : 1), b.den_ / (g1 ? g1 : 1)),
                        already_checked{});
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw input_error("rational division by zero");
        return a * Rational(b.den_, b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_, already_checked{}); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        // cross-multiply; magnitudes are small by construction
        return checked(a.num_, b.den_) <=> checked(b.num_, a.den_);
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    // canonical "a/b" form used in JSON, denominator always present
    std::string json_str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static Rational parse(const std::string& s);

    // floor of num/den (needed for precision bookkeeping)
    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

  private:
    struct already_checked {};
    Rational(long long n, long long d, already_checked) : num_(n), den_(d) { normalize(); }

    static long long checked(long long a, long long b) {
        __int128 r = static_cast<__int128>(a) * b;
        if (r > INT64_MAX || r < INT64_MIN) throw input_error("rational overflow");
        return static_cast<long long>(r);
    }

    void normalize() {
        if (den_ == 0) throw input_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    long long num_;
    long long den_;
};

inline Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw input_error("bad rational literal: " + s);
    }
}

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational abs(const Rational& a) { return a.num() < 0 ? -a : a; }

} // namespace almostperiods
