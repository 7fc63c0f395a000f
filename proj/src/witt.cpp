#include "almostperiods/witt.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace almostperiods {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// homogeneous polynomial in (a, b): coeffs[alpha] * a^alpha b^{deg - alpha}
using HomPoly = std::vector<BigInt>;

HomPoly hom_mul(const HomPoly& f, const HomPoly& g) {
    HomPoly r(f.size() + g.size() - 1);
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j)
            if (g[j] != 0) r[i + j] += f[i] * g[j];
    }
    return r;
}

HomPoly hom_pow(const HomPoly& f, long long e) {
    HomPoly acc{BigInt(1)};
    HomPoly base = f;
    while (e) {
        if (e & 1) acc = hom_mul(acc, base);
        e >>= 1;
        if (e) base = hom_mul(base, base);
    }
    return acc;
}

} // namespace

WittRing::WittRing(const PuiseuxField& base) : base_(base), m_(base.params().m) {
    build_tables();
    build_xi();
}

void WittRing::build_tables() {
    // ghost recursion: S_n = (a^{p^n} + b^{p^n} - sum_{i<n} p^i S_i^{p^{n-i}}) / p^n
    const long long p = prime();
    tables_.resize(m_);
    std::vector<HomPoly> exact(m_);
    long long pn = 1; // p^n
    for (int n = 0; n < m_; ++n) {
        if (n == 0) {
            exact[0] = HomPoly{BigInt(1), BigInt(1)}; // S_0 = b + a
        } else {
            pn *= p;
            HomPoly acc(static_cast<size_t>(pn) + 1);
            acc[0] = 1;
            acc[static_cast<size_t>(pn)] = 1;
            BigInt ppow = 1;
            for (int i = 0; i < n; ++i) {
                long long pow_exp = 1;
                for (int j = 0; j < n - i; ++j) pow_exp *= p;
                HomPoly si = hom_pow(exact[i], pow_exp);
                for (size_t t = 0; t < si.size(); ++t) acc[t] -= ppow * si[t];
                ppow *= p;
            }
            BigInt div = ppow; // p^n
            for (auto& c : acc) {
                if (c % div != 0) throw error("Witt table ghost division not exact");
                c /= div;
            }
            exact[n] = std::move(acc);
        }
        tables_[n].resize(exact[n].size());
        for (size_t t = 0; t < exact[n].size(); ++t) {
            BigInt r = exact[n][t] % p;
            if (r < 0) r += p;
            tables_[n][t] = r.convert_to<long long>();
        }
    }
}

WittElem WittRing::zero() const { return zero_len(static_cast<size_t>(m_)); }

WittElem WittRing::zero_len(size_t len) const {
    WittElem r;
    r.w.assign(len, base_.zero());
    return r;
}

WittElem WittRing::teichmuller(const PuiseuxElem& x) const {
    WittElem r = zero();
    if (!r.w.empty()) r.w[0] = x;
    return r;
}

WittElem WittRing::from_digits(const std::vector<PuiseuxElem>& digits) const {
    if (digits.size() > static_cast<size_t>(m_)) throw input_error("too many Witt digits");
    WittElem r;
    r.w.reserve(digits.size());
    for (size_t i = 0; i < digits.size(); ++i) {
        PuiseuxElem c = digits[i];
        for (size_t j = 0; j < i; ++j) c = base_.frobenius(c);
        r.w.push_back(c);
    }
    return r;
}

WittElem WittRing::int_const(long long c) const {
    const long long p = prime();
    long long pm = 1;
    for (int i = 0; i < m_; ++i) pm *= p;
    long long r = ((c % pm) + pm) % pm;
    // Teichmuller digit expansion of r in Z/p^m: omega(x) = x^{p^{m-1}}
    auto modpow = [&](long long b, long long e, long long mod) {
        long long acc = 1 % mod;
        b %= mod;
        while (e) {
            if (e & 1) acc = (acc * b) % mod;
            b = (b * b) % mod;
            e >>= 1;
        }
        return acc;
    };
    long long pexp = 1;
    for (int i = 0; i < m_ - 1; ++i) pexp *= p;
    std::vector<PuiseuxElem> digs;
    long long cur = r;
    for (int i = 0; i < m_; ++i) {
        long long di = cur % p;
        digs.push_back(base_.constant(base_.coeff_field().from_int(di)));
        long long omega = modpow(di, pexp, pm);
        cur = ((cur - omega) % pm + pm) % pm;
        if (cur % p != 0) throw error("Teichmuller digit expansion failed");
        cur /= p;
        pm /= p; // remaining digits live mod p^{m-1-i}
        if (pm == 0) break;
        pexp = std::max(1LL, pexp / p);
    }
    return from_digits(digs);
}

PuiseuxElem WittRing::digit(const WittElem& a, size_t i) const {
    if (i >= a.len()) throw input_error("digit index beyond Witt length");
    return base_.root(a.w[i], static_cast<int>(i));
}

std::vector<PuiseuxElem> WittRing::digits(const WittElem& a) const {
    std::vector<PuiseuxElem> out;
    out.reserve(a.len());
    for (size_t i = 0; i < a.len(); ++i) out.push_back(digit(a, i));
    return out;
}

bool WittRing::is_zero(const WittElem& a) const {
    for (const auto& c : a.w)
        if (!base_.is_zero(c)) return false;
    return true;
}

bool WittRing::equal(const WittElem& a, const WittElem& b) const { return is_zero(sub(a, b)); }

PuiseuxElem WittRing::eval_sum_poly(int k, const PuiseuxElem& x, const PuiseuxElem& y) const {
    const auto& tab = tables_[k];
    const size_t deg = tab.size() - 1; // p^k
    // powers of x and y up to deg
    std::vector<PuiseuxElem> xp(deg + 1), yp(deg + 1);
    xp[0] = base_.one();
    yp[0] = base_.one();
    for (size_t i = 1; i <= deg; ++i) {
        xp[i] = base_.mul(xp[i - 1], x);
        yp[i] = base_.mul(yp[i - 1], y);
    }
    PuiseuxElem acc;
    bool first = true;
    const auto& gf = base_.coeff_field();
    for (size_t alpha = 0; alpha <= deg; ++alpha) {
        if (tab[alpha] == 0) continue;
        PuiseuxElem term = base_.mul(xp[alpha], yp[deg - alpha]);
        term = base_.mul_coeff(gf.from_int(tab[alpha]), term);
        acc = first ? term : base_.add(acc, term);
        first = false;
    }
    if (first) {
        // all coefficients vanished mod p; value is zero at combined precision
        acc = base_.mul(x, y);
        acc.terms.clear();
    }
    return acc;
}

void WittRing::add_term(WittElem& r, size_t pos, const PuiseuxElem& y) const {
    if (pos >= r.len()) return;
    PuiseuxElem x = r.w[pos];
    // [x'] + [y'] at position pos, x'^{p^pos} = x: coordinate pos + k of the
    // sum is S_k(x', y')^{p^pos} = S_k(x, y)^{1/p^pos} (coefficients in F_p)
    std::vector<PuiseuxElem> carries;
    for (size_t k = 1; pos + k < r.len(); ++k)
        carries.push_back(base_.root(eval_sum_poly(static_cast<int>(k), x, y),
                                     static_cast<int>(pos)));
    r.w[pos] = base_.root(eval_sum_poly(0, x, y), 0); // (x + y), no root needed
    for (size_t k = 0; k < carries.size(); ++k) add_term(r, pos + k + 1, carries[k]);
}

WittElem WittRing::add(const WittElem& a, const WittElem& b) const {
    size_t len = std::min(a.len(), b.len());
    WittElem r = truncate(a, len);
    for (size_t i = 0; i < len; ++i) add_term(r, i, b.w[i]);
    return r;
}

WittElem WittRing::neg(const WittElem& a) const {
    if (prime() != 2) {
        WittElem r = a;
        for (auto& c : r.w) c = base_.neg(c);
        return r;
    }
    return mul(a, truncate(minus_one_, a.len()));
}

WittElem WittRing::sub(const WittElem& a, const WittElem& b) const { return add(a, neg(b)); }

WittElem WittRing::mul(const WittElem& a, const WittElem& b) const {
    size_t len = std::min(a.len(), b.len());
    WittElem r = zero_len(len);
    // precision floor: structural zeros should not claim more than the inputs know
    for (size_t i = 0; i < len; ++i)
        r.w[i] = base_.zero_at(min(a.w[i].prec, b.w[i].prec));
    for (size_t i = 0; i < len; ++i) {
        for (size_t j = 0; i + j < len; ++j) {
            // p^i [a_i'] p^j [b_j'] = p^{i+j} [a_i' b_j']: coordinate
            // a_i^{p^j} b_j^{p^i} at position i + j
            PuiseuxElem xa = a.w[i];
            for (size_t t = 0; t < j; ++t) xa = base_.frobenius(xa);
            PuiseuxElem xb = b.w[j];
            for (size_t t = 0; t < i; ++t) xb = base_.frobenius(xb);
            add_term(r, i + j, base_.mul(xa, xb));
        }
    }
    return r;
}

WittElem WittRing::frobenius(const WittElem& a) const {
    WittElem r = a;
    for (auto& c : r.w) c = base_.frobenius(c);
    return r;
}

WittElem WittRing::mul_p(const WittElem& a) const {
    size_t len = std::min(a.len() + 1, static_cast<size_t>(m_));
    WittElem r = zero_len(len);
    if (len == 0) return r;
    r.w[0] = base_.zero_at(a.len() ? a.w[0].prec * Rational(prime()) : base_.params().N);
    for (size_t i = 1; i < len; ++i) r.w[i] = base_.frobenius(a.w[i - 1]);
    return r;
}

WittElem WittRing::div_p(const WittElem& a) const {
    if (a.len() == 0) throw precision_error("division by p of a length-0 Witt element");
    if (!base_.is_zero(a.w[0]))
        throw input_error("division by p needs digit 0 to vanish");
    WittElem r;
    r.w.reserve(a.len() - 1);
    for (size_t i = 1; i < a.len(); ++i) r.w.push_back(base_.root(a.w[i], 1));
    return r;
}

WittElem WittRing::truncate(const WittElem& a, size_t len) const {
    WittElem r = a;
    if (r.w.size() > len) r.w.resize(len);
    return r;
}

void WittRing::build_xi() {
    const int p = prime();
    if (p == 2) {
        // -1 = 1 + 2 + 4 + ...: all Teichmuller digits 1
        minus_one_ = from_digits(std::vector<PuiseuxElem>(static_cast<size_t>(m_), base_.one()));
    }
    // eps^{1/p} = (1 + t)^{1/p} = 1 + t^{1/p} exactly in characteristic p
    PuiseuxElem eps_root = base_.add(base_.one(),
                                     base_.monomial(base_.coeff_field().one(), Rational(1, p)));
    WittElem acc = teichmuller(base_.one());
    PuiseuxElem pw = base_.one();
    for (int j = 1; j < p; ++j) {
        pw = base_.mul(pw, eps_root);
        acc = add(acc, teichmuller(pw));
    }
    xi_ = acc;
    // distinguished digit properties: x_0 = t^{(p-1)/p} exactly, x_1 a unit
    PuiseuxElem expect = base_.monomial(base_.coeff_field().one(), Rational(p - 1, p));
    if (!base_.equal(xi_.w[0], expect))
        throw error("xi digit 0 is not t^{(p-1)/p}");
    if (m_ >= 2) {
        auto v1 = base_.valuation(digit(xi_, 1));
        if (!v1 || !v1->is_zero()) throw error("xi digit 1 is not a unit");
    }
}

WittRing::XiDivision WittRing::divide_by_xi(const WittElem& y) const {
    XiDivision out;
    const Rational step(prime() - 1, prime());
    size_t len = y.len();
    out.quotient = zero_len(len);
    WittElem cur = y;
    for (size_t i = 0; i < len; ++i) {
        const PuiseuxElem& d0 = cur.w[0];
        PuiseuxElem c;
        if (base_.is_zero(d0)) {
            if (!(d0.prec > step)) {
                out.success = false;
                out.obstruction_digit = static_cast<int>(i);
                out.decisive = false; // not enough digits to certify divisibility
                return out;
            }
            c = base_.zero_at(d0.prec - step);
        } else if (!(*base_.valuation(d0) < step)) {
            c = base_.shift(d0, -step);
        } else {
            out.success = false;
            out.obstruction_digit = static_cast<int>(i);
            out.decisive = true; // a visible term below t^{(p-1)/p} obstructs
            return out;
        }
        PuiseuxElem coord = c;
        for (size_t t = 0; t < i; ++t) coord = base_.frobenius(coord);
        out.quotient.w[i] = coord;
        if (i + 1 == len) break;
        WittElem prod = mul(teichmuller(c), truncate(xi_, cur.len()));
        cur = div_p(sub(cur, prod));
    }
    out.success = true;
    return out;
}

} // namespace almostperiods
