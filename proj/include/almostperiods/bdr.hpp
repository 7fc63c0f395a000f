#pragma once

#include "almostperiods/witt.hpp"

namespace almostperiods {

// Equality in B_dR+/Fil^d at exhausted precision cannot always be decided;
// the third value is surfaced to callers rather than guessed.
enum class TriBool { yes, no, indeterminate };

// Class of p^{-pshift} * num modulo (xi^d).  Equality is the xi^d-divisibility
// relation on the common-denominator difference, not structural equality.
struct BdRElem {
    WittElem num;
    int pshift = 0;
};

class BdrRing {
  public:
    explicit BdrRing(const WittRing& w);

    const WittRing& witt() const { return w_; }
    int fil_degree() const { return d_; }

    BdRElem from_witt(const WittElem& x) const { return BdRElem{x, 0}; }
    BdRElem make(const WittElem& num, int pshift) const;
    BdRElem zero() const { return from_witt(w_.zero()); }
    BdRElem xi_class() const { return from_witt(w_.xi()); }

    BdRElem add(const BdRElem& a, const BdRElem& b) const;
    BdRElem sub(const BdRElem& a, const BdRElem& b) const;
    BdRElem mul(const BdRElem& a, const BdRElem& b) const;

    TriBool eq(const BdRElem& a, const BdRElem& b) const;
    TriBool is_zero(const BdRElem& a) const { return eq(a, zero()); }

    // t_dR = log([eps]) = sum_{n=1}^{d-1} (-1)^{n+1} ([eps]-1)^n / n,
    // exact modulo Fil^d because ([eps]-1)^n lies in Fil^n; needs d <= p
    // so the denominators stay invertible
    BdRElem log_epsilon() const;

    // [eps] - 1 and [eps^{1/p}] - 1, the two sides of the exact telescoping
    // identity ([eps] - 1) = xi ([eps^{1/p}] - 1)
    WittElem mu() const;
    WittElem mu_fractional() const;

  private:
    const WittRing& w_;
    int d_;
};

} // namespace almostperiods
