#include "almostperiods/puiseux.hpp"

#include <algorithm>
#include <map>

namespace almostperiods {

PuiseuxField::PuiseuxField(const ModelParams& params)
    : params_(params), gf_(params.p, params.s) {
    if (params_.L < 0 || params_.L > 30) throw input_error("root level L out of range");
    if (!(params_.N > Rational(0))) throw input_error("precision N must be positive");
    if (params_.m < 1) throw input_error("Witt length m must be >= 1");
    if (params_.d < 1) throw input_error("Fil degree d must be >= 1");
    level_den_ = 1;
    for (int i = 0; i < params_.L; ++i) level_den_ *= params_.p;
}

void PuiseuxField::check_level(const Rational& e) const {
    if (e.num() < 0) throw input_error("negative exponent");
    if (level_den_ % e.den() != 0)
        throw level_error("exponent denominator " + std::to_string(e.den()) +
                          " exceeds level p^" + std::to_string(params_.L));
}

PuiseuxElem PuiseuxField::zero_at(const Rational& prec) const {
    if (!(prec > Rational(0))) throw precision_error("nonpositive precision");
    return PuiseuxElem{{}, prec};
}

PuiseuxElem PuiseuxField::constant(const Fq& c) const {
    PuiseuxElem r{{}, params_.N};
    if (!gf_.is_zero(c)) r.terms.push_back({Rational(0), c});
    return r;
}

PuiseuxElem PuiseuxField::monomial(const Fq& c, const Rational& e) const {
    return monomial(c, e, params_.N);
}

PuiseuxElem PuiseuxField::monomial(const Fq& c, const Rational& e, const Rational& prec) const {
    check_level(e);
    PuiseuxElem r{{}, prec};
    if (!gf_.is_zero(c) && e < prec) r.terms.push_back({e, c});
    return r;
}

std::optional<Rational> PuiseuxField::valuation(const PuiseuxElem& a) const {
    if (a.terms.empty()) return std::nullopt;
    return a.terms.front().e;
}

Rational PuiseuxField::valuation_floor(const PuiseuxElem& a) const {
    return a.terms.empty() ? a.prec : a.terms.front().e;
}

bool PuiseuxField::is_unit(const PuiseuxElem& a) const {
    return !a.terms.empty() && a.terms.front().e.is_zero();
}

bool PuiseuxField::equal(const PuiseuxElem& a, const PuiseuxElem& b) const {
    return is_zero(sub(a, b));
}

PuiseuxElem PuiseuxField::add(const PuiseuxElem& a, const PuiseuxElem& b) const {
    PuiseuxElem r{{}, min(a.prec, b.prec)};
    r.terms.reserve(a.terms.size() + b.terms.size());
    size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
        bool take_a;
        if (i >= a.terms.size()) take_a = false;
        else if (j >= b.terms.size()) take_a = true;
        else if (a.terms[i].e == b.terms[j].e) {
            Fq c = gf_.add(a.terms[i].c, b.terms[j].c);
            if (a.terms[i].e < r.prec && !gf_.is_zero(c)) r.terms.push_back({a.terms[i].e, c});
            ++i; ++j;
            continue;
        } else take_a = a.terms[i].e < b.terms[j].e;
        const auto& term = take_a ? a.terms[i++] : b.terms[j++];
        if (term.e < r.prec) r.terms.push_back(term);
    }
    return r;
}

PuiseuxElem PuiseuxField::neg(const PuiseuxElem& a) const {
    PuiseuxElem r = a;
    for (auto& t : r.terms) t.c = gf_.neg(t.c);
    return r;
}

PuiseuxElem PuiseuxField::sub(const PuiseuxElem& a, const PuiseuxElem& b) const {
    return add(a, neg(b));
}

PuiseuxElem PuiseuxField::mul(const PuiseuxElem& a, const PuiseuxElem& b) const {
    // guaranteed output precision: min(v(a) + prec_b, v(b) + prec_a)
    Rational prec = min(valuation_floor(a) + b.prec, valuation_floor(b) + a.prec);
    std::map<Rational, Fq> acc;
    for (const auto& ta : a.terms) {
        for (const auto& tb : b.terms) {
            Rational e = ta.e + tb.e;
            if (!(e < prec)) continue;
            auto it = acc.find(e);
            if (it == acc.end()) acc.emplace(e, gf_.mul(ta.c, tb.c));
            else it->second = gf_.add(it->second, gf_.mul(ta.c, tb.c));
        }
    }
    PuiseuxElem r{{}, prec};
    for (const auto& [e, c] : acc)
        if (!gf_.is_zero(c)) r.terms.push_back({e, c});
    return r;
}

PuiseuxElem PuiseuxField::mul_coeff(const Fq& c, const PuiseuxElem& a) const {
    if (gf_.is_zero(c)) return zero_at(a.prec);
    PuiseuxElem r = a;
    for (auto& t : r.terms) t.c = gf_.mul(c, t.c);
    return r;
}

PuiseuxElem PuiseuxField::pow(const PuiseuxElem& a, long long e) const {
    if (e < 0) throw input_error("negative power of a series");
    if (e == 0) return one();
    PuiseuxElem acc;
    PuiseuxElem base = a;
    long long k = e;
    bool first = true;
    while (k) {
        if (k & 1) {
            acc = first ? base : mul(acc, base);
            first = false;
        }
        k >>= 1;
        if (k) base = mul(base, base);
    }
    return acc;
}

PuiseuxElem PuiseuxField::shift(const PuiseuxElem& a, const Rational& r) const {
    PuiseuxElem out{{}, a.prec + r};
    if (!(out.prec > Rational(0)))
        throw precision_error("shift exhausts precision");
    out.terms.reserve(a.terms.size());
    for (const auto& t : a.terms) {
        Rational e = t.e + r;
        check_level(e);
        out.terms.push_back({e, t.c});
    }
    return out;
}

PuiseuxElem PuiseuxField::invert_unit(const PuiseuxElem& a) const {
    if (!is_unit(a)) throw input_error("inverse of a non-unit");
    // a = c0 (1 - w) with v(w) > 0; a^{-1} = c0^{-1} (1 + w + w^2 + ...)
    Fq c0inv = gf_.inv(a.terms.front().c);
    PuiseuxElem w = mul_coeff(c0inv, a);
    w.terms.erase(w.terms.begin());
    w = neg(w); // now a * c0inv = 1 - w
    PuiseuxElem acc = one();
    acc.prec = a.prec;
    PuiseuxElem term = one();
    term.prec = a.prec;
    Rational vw = valuation_floor(w);
    if (!w.terms.empty()) {
        for (Rational reached(0); reached < a.prec; reached += vw) {
            term = mul(term, w);
            term.prec = a.prec;
            if (term.terms.empty()) break;
            acc = add(acc, term);
        }
    }
    acc.prec = a.prec;
    return mul_coeff(c0inv, acc);
}

PuiseuxElem PuiseuxField::divide(const PuiseuxElem& a, const PuiseuxElem& b) const {
    auto vb = valuation(b);
    if (!vb) throw input_error("division by zero-at-precision");
    if (is_zero(a)) {
        Rational prec = a.prec - *vb;
        if (!(prec > Rational(0))) throw precision_error("division exhausts precision");
        return zero_at(prec);
    }
    if (*valuation(a) < *vb) throw input_error("division is not exact: v(a) < v(b)");
    PuiseuxElem unit = shift(b, -*vb);
    return mul(shift(a, -*vb), invert_unit(unit));
}

PuiseuxElem PuiseuxField::frobenius(const PuiseuxElem& a) const {
    PuiseuxElem r{{}, a.prec * Rational(params_.p)};
    r.terms.reserve(a.terms.size());
    for (const auto& t : a.terms)
        r.terms.push_back({t.e * Rational(params_.p), gf_.frobenius(t.c)});
    return r;
}

PuiseuxElem PuiseuxField::frobenius_inverse(const PuiseuxElem& a) const {
    PuiseuxElem r{{}, a.prec / Rational(params_.p)};
    if (!(r.prec > Rational(0))) throw precision_error("frobenius_inverse exhausts precision");
    r.terms.reserve(a.terms.size());
    for (const auto& t : a.terms) {
        Rational e = t.e / Rational(params_.p);
        check_level(e);
        r.terms.push_back({e, gf_.frobenius_inverse(t.c)});
    }
    return r;
}

PuiseuxElem PuiseuxField::root(const PuiseuxElem& a, int k) const {
    PuiseuxElem r = a;
    for (int i = 0; i < k; ++i) r = frobenius_inverse(r);
    return r;
}

PuiseuxElem PuiseuxField::gcd(const std::vector<PuiseuxElem>& elems) const {
    std::optional<Rational> minv;
    Rational minprec = params_.N;
    for (const auto& e : elems) {
        if (auto v = valuation(e); v && (!minv || *v < *minv)) minv = *v;
        minprec = min(minprec, e.prec);
    }
    if (!minv) throw input_error("gcd of all-zero input");
    return monomial(gf_.one(), *minv, minprec);
}

PuiseuxElem PuiseuxField::artin_schreier_solve(const PuiseuxElem& a) const {
    if (is_zero(a)) return zero_at(a.prec);
    Rational va = *valuation(a);
    if (!(va > Rational(0)))
        throw input_error("artin_schreier_solve needs v(a) > 0");
    // x = -(a + a^p + a^{p^2} + ...); stops once p^k v(a) >= prec
    PuiseuxElem acc = zero_at(a.prec);
    PuiseuxElem it = a;
    while (true) {
        PuiseuxElem clipped = it;
        clipped.prec = a.prec;
        clipped.terms.erase(
            std::remove_if(clipped.terms.begin(), clipped.terms.end(),
                           [&](const PuiseuxElem::Term& t) { return !(t.e < a.prec); }),
            clipped.terms.end());
        if (clipped.terms.empty()) break;
        acc = add(acc, clipped);
        it = frobenius(it);
    }
    return neg(acc);
}

std::string PuiseuxField::to_string(const PuiseuxElem& a) const {
    std::string out;
    for (const auto& t : a.terms) {
        if (!out.empty()) out += "+";
        out += gf_.to_string(t.c) + "*t^(" + t.e.str() + ")";
    }
    if (!out.empty()) out += "+";
    out += "O(t^(" + a.prec.str() + "))";
    return out;
}

PuiseuxElem PuiseuxField::parse(const std::string& text) const {
    PuiseuxElem r{{}, params_.N};
    bool saw_prec = false;
    size_t pos = 0;
    auto fail = [&](const std::string& why) -> PuiseuxElem {
        throw input_error("bad element '" + text + "': " + why);
    };
    while (pos < text.size()) {
        size_t next = text.find('+', pos);
        // '+' inside brackets [..] separates F_q coordinates, not terms
        size_t br = text.find('[', pos);
        if (br != std::string::npos && br < next) {
            size_t close = text.find(']', br);
            if (close == std::string::npos) return fail("unbalanced '['");
            next = text.find('+', close);
        }
        std::string piece = text.substr(pos, next == std::string::npos ? next : next - pos);
        pos = next == std::string::npos ? text.size() : next + 1;
        if (piece.empty()) continue;
        if (piece.rfind("O(t^(", 0) == 0) {
            if (piece.size() < 8 || piece.substr(piece.size() - 2) != "))")
                return fail("malformed O(t^(..)) tail");
            r.prec = Rational::parse(piece.substr(5, piece.size() - 7));
            saw_prec = true;
            continue;
        }
        auto star = piece.find("*t^(");
        if (star == std::string::npos) {
            // bare constant term
            Fq c = gf_.parse(piece);
            if (!gf_.is_zero(c)) r.terms.push_back({Rational(0), c});
            continue;
        }
        if (piece.back() != ')') return fail("missing ')' in exponent");
        Fq c = gf_.parse(piece.substr(0, star));
        Rational e = Rational::parse(piece.substr(star + 4, piece.size() - star - 5));
        check_level(e);
        if (!gf_.is_zero(c)) r.terms.push_back({e, c});
    }
    if (!saw_prec) r.prec = params_.N;
    std::sort(r.terms.begin(), r.terms.end(),
              [](const PuiseuxElem::Term& x, const PuiseuxElem::Term& y) { return x.e < y.e; });
    for (size_t i = 0; i + 1 < r.terms.size(); ++i)
        if (r.terms[i].e == r.terms[i + 1].e) return fail("repeated exponent");
    r.terms.erase(std::remove_if(r.terms.begin(), r.terms.end(),
                                 [&](const PuiseuxElem::Term& t) { return !(t.e < r.prec); }),
                  r.terms.end());
    check(r);
    return r;
}

void PuiseuxField::check(const PuiseuxElem& a) const {
    if (!(a.prec > Rational(0))) throw input_error("element with nonpositive precision");
    for (size_t i = 0; i < a.terms.size(); ++i) {
        check_level(a.terms[i].e);
        if (gf_.is_zero(a.terms[i].c)) throw input_error("stored zero coefficient");
        if (!(a.terms[i].e < a.prec)) throw input_error("term at or beyond precision");
        if (i && !(a.terms[i - 1].e < a.terms[i].e)) throw input_error("unsorted exponents");
    }
}

} // namespace almostperiods
