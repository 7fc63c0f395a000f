#include "almostperiods/gf.hpp"

#include <sstream>

namespace almostperiods {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Conway polynomials C_{p,s} for the supported (p, s) range, stored as
// coefficient lists of 1, x, ..., x^s.
struct ConwayEntry {
    int p, s;
    std::vector<int> coeffs;
};

const ConwayEntry kConwayTable[] = {
    {2, 1, {1, 1}},
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {3, 1, {1, 1}},
    {3, 2, {2, 2, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 0, 0, 2, 1}},
    {5, 1, {3, 1}},
    {5, 2, {2, 4, 1}},
    {5, 3, {3, 3, 0, 1}},
    {5, 4, {2, 4, 4, 0, 1}},
    {7, 1, {4, 1}},
    {7, 2, {3, 6, 1}},
    {7, 3, {4, 0, 6, 1}},
    {7, 4, {3, 4, 5, 0, 1}},
};

} // namespace

GaloisField::GaloisField(int p, int s) : p_(p), s_(s) {
    if (!is_prime(p) || p >= 256) throw input_error("p must be a prime < 256");
    if (s < 1 || s > 4) throw input_error("residue extension degree s must be in 1..4");
    for (const auto& e : kConwayTable) {
        if (e.p == p && e.s == s) { conway_ = e.coeffs; break; }
    }
    if (conway_.empty())
        throw input_error("no Conway polynomial shipped for p=" + std::to_string(p) +
                          ", s=" + std::to_string(s));
    // g^s = -(c0 + c1 g + ... + c_{s-1} g^{s-1})
    for (int i = 0; i < s_; ++i)
        gs_red_[i] = static_cast<uint8_t>((p_ - conway_[i] % p_) % p_);
}

Fq GaloisField::from_int(long long v) const {
    long long r = v % p_;
    if (r < 0) r += p_;
    Fq a;
    a.c[0] = static_cast<uint8_t>(r);
    return a;
}

Fq GaloisField::generator() const {
    if (s_ == 1) {
        // the residue class of x mod (x - root): the Conway root itself
        return from_int(-conway_[0]);
    }
    Fq a;
    a.c[1] = 1;
    return a;
}

Fq GaloisField::add(const Fq& a, const Fq& b) const {
    Fq r;
    for (int i = 0; i < s_; ++i) r.c[i] = static_cast<uint8_t>((a.c[i] + b.c[i]) % p_);
    return r;
}

Fq GaloisField::sub(const Fq& a, const Fq& b) const {
    Fq r;
    for (int i = 0; i < s_; ++i) r.c[i] = static_cast<uint8_t>((a.c[i] + p_ - b.c[i]) % p_);
    return r;
}

Fq GaloisField::neg(const Fq& a) const { return sub(zero(), a); }

Fq GaloisField::mul(const Fq& a, const Fq& b) const {
    // schoolbook product, then reduce degrees s..2s-2 with g^s = gs_red_
    std::array<int, 7> prod{};
    for (int i = 0; i < s_; ++i) {
        if (!a.c[i]) continue;
        for (int j = 0; j < s_; ++j) prod[i + j] = (prod[i + j] + a.c[i] * b.c[j]) % p_;
    }
    for (int k = 2 * s_ - 2; k >= s_; --k) {
        int v = prod[k];
        if (!v) continue;
        prod[k] = 0;
        for (int i = 0; i < s_; ++i) prod[k - s_ + i] = (prod[k - s_ + i] + v * gs_red_[i]) % p_;
    }
    Fq r;
    for (int i = 0; i < s_; ++i) r.c[i] = static_cast<uint8_t>(prod[i]);
    return r;
}

Fq GaloisField::pow(const Fq& a, long long e) const {
    if (e < 0) return pow(inv(a), -e);
    Fq acc = one(), base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

Fq GaloisField::inv(const Fq& a) const {
    if (is_zero(a)) throw input_error("inverse of zero in F_q");
    long long q = 1;
    for (int i = 0; i < s_; ++i) q *= p_;
    return pow(a, q - 2);
}

Fq GaloisField::frobenius(const Fq& a) const { return pow(a, p_); }

Fq GaloisField::frobenius_inverse(const Fq& a) const {
    Fq r = a;
    for (int i = 0; i < s_ - 1; ++i) r = frobenius(r);
    return r;
}

std::string GaloisField::to_string(const Fq& a) const {
    if (s_ == 1) return std::to_string(a.c[0]);
    std::string out = "[";
    for (int i = 0; i < s_; ++i) {
        if (i) out += ",";
        out += std::to_string(a.c[i]);
    }
    return out + "]";
}

Fq GaloisField::parse(const std::string& text) const {
    Fq r;
    if (text.empty()) throw input_error("empty coefficient");
    if (text.front() == '[') {
        if (text.back() != ']') throw input_error("bad coefficient literal: " + text);
        std::stringstream ss(text.substr(1, text.size() - 2));
        std::string part;
        int i = 0;
        while (std::getline(ss, part, ',')) {
            if (i >= s_) throw input_error("too many coefficients in " + text);
            long long v;
            try { v = std::stoll(part); } catch (const std::exception&) {
                throw input_error("bad coefficient literal: " + text);
            }
            long long m = v % p_; if (m < 0) m += p_;
            r.c[i++] = static_cast<uint8_t>(m);
        }
        return r;
    }
    try {
        return from_int(std::stoll(text));
    } catch (const std::exception&) {
        throw input_error("bad coefficient literal: " + text);
    }
}

} // namespace almostperiods
