#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "almostperiods/errors.hpp"

namespace almostperiods {

// Element of F_{p^s}, s <= 4: coefficients of 1, g, g^2, g^3 in the power
// basis of the Conway-polynomial generator g.  Plain value type; the field
// context supplies the arithmetic.
struct Fq {
    std::array<uint8_t, 4> c{0, 0, 0, 0};

    friend bool operator==(const Fq&, const Fq&) = default;
};

// F_{p^s} with a fixed Conway polynomial, so results are reproducible
// across implementations.  p prime < 256, 1 <= s <= 4.
class GaloisField {
  public:
    GaloisField(int p, int s);

    int p() const { return p_; }
    int s() const { return s_; }

    Fq zero() const { return Fq{}; }
    Fq one() const { return from_int(1); }
    Fq from_int(long long v) const;
    Fq generator() const;

    bool is_zero(const Fq& a) const { return a == Fq{}; }

    Fq add(const Fq& a, const Fq& b) const;
    Fq sub(const Fq& a, const Fq& b) const;
    Fq neg(const Fq& a) const;
    Fq mul(const Fq& a, const Fq& b) const;
    Fq inv(const Fq& a) const;
    Fq pow(const Fq& a, long long e) const;

    // x -> x^p and its inverse (x -> x^{p^{s-1}})
    Fq frobenius(const Fq& a) const;
    Fq frobenius_inverse(const Fq& a) const;

    // "7" for s = 1, "[c0,c1,...]" otherwise
    std::string to_string(const Fq& a) const;
    Fq parse(const std::string& text) const;

    // Conway polynomial coefficients (degree s, monic): c[0] + c[1] x + ... + x^s
    const std::vector<int>& conway() const { return conway_; }

  private:
    int p_;
    int s_;
    std::vector<int> conway_;
    // reduction of g^s in the power basis
    std::array<uint8_t, 4> gs_red_{};
};

} // namespace almostperiods
