#pragma once

#include <optional>
#include <vector>

#include "almostperiods/rational.hpp"
#include "almostperiods/zpm.hpp"

namespace almostperiods {

// Z[zeta_{p^level}]/p^m in the power basis modulo the p^level-th cyclotomic
// polynomial Phi(x) = sum_{j<p} x^{j p^{level-1}}.  level = 0 degenerates to
// Z/p^m itself.
class CyclotomicRing {
  public:
    CyclotomicRing(long long p, int m, int level);

    long long p() const { return p_; }
    int m() const { return m_; }
    int level() const { return level_; }
    int degree() const { return deg_; } // phi(p^level), 1 for level 0
    long long modulus() const { return q_; }

    using Scalar = std::vector<long long>; // power-basis coordinates mod p^m

    Scalar zero_scalar() const { return Scalar(deg_, 0); }
    // zeta^e - delta (e taken mod p^level)
    Scalar zeta_power_minus(long long e, long long delta) const;
    Scalar zeta_minus_one() const { return zeta_power_minus(1, 1); }

    bool is_zero(const Scalar& s) const;

    // multiplication-by-s matrix on the power basis, over Z/p^m
    ZpmMatrix mult_matrix(const Scalar& s) const;

    // v(zeta_{p^lvl} - 1) in the v(p) = 1 normalization, derived from the
    // norm Phi_{p^lvl}(1) = p rather than hard-coded: v = v_p(Phi(1)) / phi(p^lvl)
    static Rational norm_valuation(long long p, int lvl);

    // lambda-adic valuation of zeta^e - 1 inside Q(zeta_{p^level}):
    // v(zeta^e - 1) / v(zeta_{p^level} - 1); nullopt for e = 0 (the scalar 0)
    std::optional<Rational> lambda_valuation(long long e) const;

  private:
    long long p_;
    int m_;
    int level_;
    int deg_;
    long long q_;
    long long pl_; // p^level
    std::vector<std::vector<long long>> zeta_pow_; // zeta^e in the power basis, e < p^level
};

} // namespace almostperiods
