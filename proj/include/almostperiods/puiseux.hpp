#pragma once

#include <optional>
#include <string>
#include <vector>

#include "almostperiods/gf.hpp"
#include "almostperiods/rational.hpp"

namespace almostperiods {

// Model parameters shared by every object in a computation.
//   p: the prime; s: residue extension degree of F_{p^s};
//   L: root level, all exponent denominators divide p^L;
//   N: t-adic precision every fresh element is constructed at;
//   m: Witt length / p-adic digit budget; d: Fil-degree for B_dR+/Fil^d.
struct ModelParams {
    int p = 2;
    int s = 1;
    int L = 1;
    Rational N = Rational(8);
    int m = 2;
    int d = 1;
};

// Truncated generalized power series sum c_e * t^e with exponents e in
// Z[1/p] cap [0, prec), denominators dividing p^L, coefficients in F_{p^s}.
// Terms are sorted by strictly increasing exponent and never zero.
// "No terms below prec" is the only zero this library has.
struct PuiseuxElem {
    struct Term {
        Rational e;
        Fq c;
    };
    std::vector<Term> terms;
    Rational prec;
};

// Arithmetic context for the characteristic-p perfectoid model
// F_{p^s}[[t^{1/p^infty}]] truncated at level L and precision N, with
// t playing the role of the topologically nilpotent pi, v(t) = 1.
class PuiseuxField {
  public:
    explicit PuiseuxField(const ModelParams& params);

    const ModelParams& params() const { return params_; }
    const GaloisField& coeff_field() const { return gf_; }

    // ---- construction ----
    PuiseuxElem zero() const { return zero_at(params_.N); }
    PuiseuxElem zero_at(const Rational& prec) const;
    PuiseuxElem one() const { return constant(gf_.one()); }
    PuiseuxElem constant(const Fq& c) const;
    PuiseuxElem monomial(const Fq& c, const Rational& e) const;
    PuiseuxElem monomial(const Fq& c, const Rational& e, const Rational& prec) const;
    PuiseuxElem t() const { return monomial(gf_.one(), Rational(1)); }

    // ---- predicates ----
    bool is_zero(const PuiseuxElem& a) const { return a.terms.empty(); }
    // nullopt means "no terms below prec": zero at this precision
    std::optional<Rational> valuation(const PuiseuxElem& a) const;
    // valuation for precision bookkeeping: prec when zero-at-precision
    Rational valuation_floor(const PuiseuxElem& a) const;
    bool is_unit(const PuiseuxElem& a) const;
    // equality at the smaller of the two precisions
    bool equal(const PuiseuxElem& a, const PuiseuxElem& b) const;

    // ---- ring operations ----
    PuiseuxElem add(const PuiseuxElem& a, const PuiseuxElem& b) const;
    PuiseuxElem sub(const PuiseuxElem& a, const PuiseuxElem& b) const;
    PuiseuxElem neg(const PuiseuxElem& a) const;
    PuiseuxElem mul(const PuiseuxElem& a, const PuiseuxElem& b) const;
    PuiseuxElem mul_coeff(const Fq& c, const PuiseuxElem& a) const;
    PuiseuxElem pow(const PuiseuxElem& a, long long e) const;

    // shift exponents by r (r may be negative; all shifted exponents must
    // stay >= 0); precision shifts along
    PuiseuxElem shift(const PuiseuxElem& a, const Rational& r) const;

    // inverse of a unit (valuation 0), correct to a.prec
    PuiseuxElem invert_unit(const PuiseuxElem& a) const;
    // a / b when v(a) >= v(b); exact in the valuation ring
    PuiseuxElem divide(const PuiseuxElem& a, const PuiseuxElem& b) const;

    // ---- semilinear operations ----
    PuiseuxElem frobenius(const PuiseuxElem& a) const;
    PuiseuxElem frobenius_inverse(const PuiseuxElem& a) const;
    // a^{1/p^k}
    PuiseuxElem root(const PuiseuxElem& a, int k) const;

    // gcd of finitely many elements: the monomial t^{min v}
    PuiseuxElem gcd(const std::vector<PuiseuxElem>& elems) const;

    // solve x^p - x = a for v(a) > 0, by x = -(a + a^p + a^{p^2} + ...)
    PuiseuxElem artin_schreier_solve(const PuiseuxElem& a) const;

    // ---- text form: "1*t^(1/2)+2*t^(3/2)+O(t^(5))" ----
    std::string to_string(const PuiseuxElem& a) const;
    PuiseuxElem parse(const std::string& text) const;

    // validate invariants (sortedness, level, prec); throws on violation
    void check(const PuiseuxElem& a) const;

  private:
    void check_level(const Rational& e) const;
    ModelParams params_;
    GaloisField gf_;
    long long level_den_; // p^L
};

} // namespace almostperiods
