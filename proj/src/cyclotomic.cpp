#include "almostperiods/cyclotomic.hpp"

namespace almostperiods {

namespace {

long long pow_ll(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

CyclotomicRing::CyclotomicRing(long long p, int m, int level)
    : p_(p), m_(m), level_(level) {
    if (level < 0) throw input_error("negative cyclotomic level");
    q_ = pow_ll(p, m);
    if (q_ > (1LL << 30)) throw input_error("modulus p^m exceeds 2^30");
    pl_ = pow_ll(p, level);
    deg_ = level == 0 ? 1 : static_cast<int>(pow_ll(p, level - 1) * (p - 1));
    // zeta^e table: repeatedly multiply by zeta and reduce with
    // zeta^deg = -(sum_{j<p-1} zeta^{j p^{level-1}})
    zeta_pow_.assign(static_cast<size_t>(pl_), std::vector<long long>(deg_, 0));
    zeta_pow_[0][0] = 1;
    long long step = level == 0 ? 1 : pow_ll(p, level - 1);
    for (long long e = 1; e < pl_; ++e) {
        std::vector<long long> prev = zeta_pow_[static_cast<size_t>(e - 1)];
        std::vector<long long> cur(deg_, 0);
        long long top = prev[deg_ - 1];
        for (int i = deg_ - 1; i > 0; --i) cur[i] = prev[i - 1];
        cur[0] = 0;
        if (top) {
            for (long long j = 0; j < p_ - 1; ++j) {
                size_t idx = static_cast<size_t>(j * step);
                cur[idx] = ((cur[idx] - top) % q_ + q_) % q_;
            }
        }
        zeta_pow_[static_cast<size_t>(e)] = std::move(cur);
    }
}

CyclotomicRing::Scalar CyclotomicRing::zeta_power_minus(long long e, long long delta) const {
    long long er = ((e % pl_) + pl_) % pl_;
    Scalar s = zeta_pow_[static_cast<size_t>(er)];
    s[0] = ((s[0] - delta) % q_ + q_) % q_;
    return s;
}

bool CyclotomicRing::is_zero(const Scalar& s) const {
    for (long long v : s)
        if (v % q_ != 0) return false;
    return true;
}

ZpmMatrix CyclotomicRing::mult_matrix(const Scalar& s) const {
    // column j = s * zeta^j reduced mod Phi
    ZpmMatrix out = zpm_make(p_, m_, deg_, deg_);
    std::vector<long long> col(s.begin(), s.end());
    long long step = level_ == 0 ? 1 : pow_ll(p_, level_ - 1);
    for (int j = 0; j < deg_; ++j) {
        for (int i = 0; i < deg_; ++i) out.at(i, j) = ((col[i] % q_) + q_) % q_;
        if (j + 1 < deg_) {
            // col *= zeta
            long long top = col[deg_ - 1];
            for (int i = deg_ - 1; i > 0; --i) col[i] = col[i - 1];
            col[0] = 0;
            if (top) {
                for (long long t = 0; t < p_ - 1; ++t) {
                    size_t idx = static_cast<size_t>(t * step);
                    col[idx] = ((col[idx] - top) % q_ + q_) % q_;
                }
            }
        }
    }
    return out;
}

Rational CyclotomicRing::norm_valuation(long long p, int lvl) {
    if (lvl < 1) throw input_error("norm_valuation needs level >= 1");
    // Phi_{p^lvl}(1) = sum_{j<p} 1 = p; v(zeta-1) = v_p(Phi(1)) / deg
    long long phi_at_one = 0;
    for (long long j = 0; j < p; ++j) phi_at_one += 1;
    int vp = 0;
    long long x = phi_at_one;
    while (x % p == 0) {
        x /= p;
        ++vp;
    }
    long long deg = pow_ll(p, lvl - 1) * (p - 1);
    return Rational(vp, deg);
}

std::optional<Rational> CyclotomicRing::lambda_valuation(long long e) const {
    long long er = ((e % pl_) + pl_) % pl_;
    if (er == 0) return std::nullopt; // the scalar zeta^0 - 1 = 0
    // zeta^e is a primitive p^{level - w}-th root, p^w = gcd(e, p^level)
    int w = 0;
    long long x = er;
    while (x % p_ == 0) {
        x /= p_;
        ++w;
    }
    int lvl_prim = level_ - w;
    // v_lambda = v(zeta_{p^lvl_prim} - 1) / v(zeta_{p^level} - 1), both from
    // the norm oracle
    return norm_valuation(p_, lvl_prim) / norm_valuation(p_, level_);
}

} // namespace almostperiods
