#include "almostperiods/bdr.hpp"

namespace almostperiods {

BdrRing::BdrRing(const WittRing& w) : w_(w), d_(w.base().params().d) {
    if (d_ < 1) throw input_error("Fil degree d must be >= 1");
}

BdRElem BdrRing::make(const WittElem& num, int pshift) const {
    if (pshift < 0) throw input_error("negative pshift");
    if (pshift >= w_.length())
        throw precision_error("pshift leaves no meaningful p-digits");
    return BdRElem{num, pshift};
}

BdRElem BdrRing::add(const BdRElem& a, const BdRElem& b) const {
    int e = std::max(a.pshift, b.pshift);
    if (e >= w_.length()) throw precision_error("pshift overflow in add");
    WittElem na = a.num, nb = b.num;
    for (int i = a.pshift; i < e; ++i) na = w_.mul_p(na);
    for (int i = b.pshift; i < e; ++i) nb = w_.mul_p(nb);
    return BdRElem{w_.add(na, nb), e};
}

BdRElem BdrRing::sub(const BdRElem& a, const BdRElem& b) const {
    BdRElem nb{w_.neg(b.num), b.pshift};
    return add(a, nb);
}

BdRElem BdrRing::mul(const BdRElem& a, const BdRElem& b) const {
    int e = a.pshift + b.pshift;
    if (e >= w_.length()) throw precision_error("pshift overflow in mul");
    return BdRElem{w_.mul(a.num, b.num), e};
}

TriBool BdrRing::eq(const BdRElem& a, const BdRElem& b) const {
    // common denominator difference, then d successive xi-divisions
    WittElem na = a.num, nb = b.num;
    for (int i = a.pshift; i < std::max(a.pshift, b.pshift); ++i) na = w_.mul_p(na);
    for (int i = b.pshift; i < std::max(a.pshift, b.pshift); ++i) nb = w_.mul_p(nb);
    WittElem diff = w_.sub(na, nb);
    for (int i = 0; i < d_; ++i) {
        if (w_.is_zero(diff)) return TriBool::yes;
        if (diff.len() == 0) return TriBool::indeterminate;
        WittRing::XiDivision div = w_.divide_by_xi(diff);
        if (!div.success)
            return div.decisive ? TriBool::no : TriBool::indeterminate;
        diff = div.quotient;
    }
    return TriBool::yes;
}

WittElem BdrRing::mu() const {
    const PuiseuxField& F = w_.base();
    PuiseuxElem eps = F.add(F.one(), F.t());
    return w_.sub(w_.teichmuller(eps), w_.one());
}

WittElem BdrRing::mu_fractional() const {
    const PuiseuxField& F = w_.base();
    PuiseuxElem eps_root =
        F.add(F.one(), F.monomial(F.coeff_field().one(), Rational(1, w_.prime())));
    return w_.sub(w_.teichmuller(eps_root), w_.one());
}

BdRElem BdrRing::log_epsilon() const {
    if (d_ > w_.prime())
        throw input_error("log([eps]) truncation needs d <= p to keep denominators invertible");
    WittElem m = mu();
    WittElem acc = w_.zero();
    WittElem power = w_.one();
    // inverse of n modulo p^m, n < p
    long long pm = 1;
    for (int i = 0; i < w_.length(); ++i) pm *= w_.prime();
    auto inv_mod = [&](long long n) {
        long long t0 = 0, t1 = 1, r0 = pm, r1 = n % pm;
        while (r1 != 0) {
            long long q = r0 / r1;
            t0 -= q * t1; std::swap(t0, t1);
            r0 -= q * r1; std::swap(r0, r1);
        }
        return ((t0 % pm) + pm) % pm;
    };
    for (int n = 1; n <= d_ - 1; ++n) {
        power = w_.mul(power, m);
        WittElem term = w_.mul(power, w_.int_const(inv_mod(n)));
        if (n % 2 == 0) term = w_.neg(term);
        acc = w_.add(acc, term);
    }
    return BdRElem{acc, 0};
}

} // namespace almostperiods
