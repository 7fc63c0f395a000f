#pragma once

#include <vector>

#include "almostperiods/puiseux.hpp"

namespace almostperiods {

// Truncated Witt vector sum_{i<len} p^i [x_i] over the Puiseux model.
// Internally stored in Witt coordinates w_i = x_i^{p^i}: ring operations
// are then polynomial except for the one p^i-th root per carry, which
// keeps the precision ledger tight.  len <= m; operations on mixed
// lengths truncate to the shorter one.
struct WittElem {
    std::vector<PuiseuxElem> w; // Witt coordinates

    size_t len() const { return w.size(); }
};

// Arithmetic context for W_m(F_{p^s}[[t^{1/p^infty}]]).  The two-variable
// Teichmuller addition polynomials S_k ([a] + [b] has Witt coordinate k
// equal to S_k(a, b)) are precomputed once from the ghost components over
// the integers and reduced mod p.
class WittRing {
  public:
    explicit WittRing(const PuiseuxField& base);

    const PuiseuxField& base() const { return base_; }
    int length() const { return m_; }
    int prime() const { return base_.params().p; }

    // S_k(a, b) coefficient of a^alpha b^{p^k - alpha}, reduced mod p
    const std::vector<long long>& sum_table(int k) const { return tables_[k]; }

    // ---- construction ----
    WittElem zero() const;
    WittElem zero_len(size_t len) const;
    WittElem one() const { return teichmuller(base_.one()); }
    WittElem teichmuller(const PuiseuxElem& x) const;
    WittElem from_digits(const std::vector<PuiseuxElem>& digits) const;
    // Teichmuller digit expansion of the integer c in W_m(F_p)
    WittElem int_const(long long c) const;

    // ---- digits (presentation layer) ----
    PuiseuxElem digit(const WittElem& a, size_t i) const; // x_i = w_i^{1/p^i}
    std::vector<PuiseuxElem> digits(const WittElem& a) const;

    // ---- predicates ----
    bool is_zero(const WittElem& a) const;
    bool equal(const WittElem& a, const WittElem& b) const;

    // ---- ring operations ----
    WittElem add(const WittElem& a, const WittElem& b) const;
    WittElem neg(const WittElem& a) const;
    WittElem sub(const WittElem& a, const WittElem& b) const;
    WittElem mul(const WittElem& a, const WittElem& b) const;
    WittElem frobenius(const WittElem& a) const; // sum p^i [x_i^p]
    WittElem mul_p(const WittElem& a) const;     // multiply by p, length grows (cap m)
    WittElem div_p(const WittElem& a) const;     // exact, needs digit 0 zero; length drops
    WittElem truncate(const WittElem& a, size_t len) const;

    // ---- the distinguished element ----
    // xi = sum_{j<p} [eps^{j/p}] with eps = 1 + t; digit 0 is exactly
    // t^{(p-1)/p} and digit 1 is a unit (both verified at construction)
    const WittElem& xi() const { return xi_; }

    struct XiDivision {
        WittElem quotient;
        bool success = false;
        int obstruction_digit = -1;  // digit whose divisibility fails
        bool decisive = true;        // false when precision, not a visible term, blocked
    };
    // the digit-peeling division: solve y = z0 xi mod p on digit 0 by
    // dividing by t^{(p-1)/p}, subtract, divide by p, repeat
    XiDivision divide_by_xi(const WittElem& y) const;

  private:
    void add_term(WittElem& r, size_t pos, const PuiseuxElem& y) const;
    PuiseuxElem eval_sum_poly(int k, const PuiseuxElem& x, const PuiseuxElem& y) const;
    void build_tables();
    void build_xi();

    const PuiseuxField& base_;
    int m_;
    std::vector<std::vector<long long>> tables_; // tables_[k][alpha]
    WittElem xi_;
    WittElem minus_one_; // for p = 2 negation
};

} // namespace almostperiods
