#include <doctest.h>

#include "almostperiods/puiseux.hpp"
#include "almostperiods/rng.hpp"

using namespace almostperiods;

namespace {

ModelParams mk(int p, int s = 1, int L = 2, long long N = 8) {
    ModelParams mp;
    mp.p = p;
    mp.s = s;
    mp.L = L;
    mp.N = Rational(N);
    return mp;
}

// integer-polynomial expansion oracle for products: multiply two term lists
// over Z (exponents on the p^L grid), reduce coefficients mod p at the end
PuiseuxElem slow_mul(const PuiseuxField& F, const PuiseuxElem& a, const PuiseuxElem& b) {
    REQUIRE(F.params().s == 1);
    std::vector<std::pair<Rational, long long>> acc;
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            Rational e = ta.e + tb.e;
            bool found = false;
            for (auto& [ee, c] : acc)
                if (ee == e) {
                    c += static_cast<long long>(ta.c.c[0]) * tb.c.c[0];
                    found = true;
                }
            if (!found)
                acc.emplace_back(e, static_cast<long long>(ta.c.c[0]) * tb.c.c[0]);
        }
    PuiseuxElem out = F.zero_at(min(a.prec + F.valuation_floor(b),
                                    b.prec + F.valuation_floor(a)));
    for (const auto& [e, c] : acc) {
        long long r = c % F.params().p;
        if (r && e < out.prec)
            out = F.add(out, F.monomial(F.coeff_field().from_int(r), e, out.prec));
    }
    return out;
}

PuiseuxElem random_elem(const PuiseuxField& F, SplitMix64& rng, int maxterms = 3) {
    PuiseuxElem acc = F.zero();
    int n = 1 + static_cast<int>(rng.below(maxterms));
    for (int i = 0; i < n; ++i) {
        long long den = 1;
        for (int j = static_cast<int>(rng.below(F.params().L + 1)); j > 0; --j)
            den *= F.params().p;
        Rational e(static_cast<long long>(rng.below(5 * den)), den);
        long long c = 1 + static_cast<long long>(rng.below(F.params().p - 1 ? F.params().p - 1 : 1));
        acc = F.add(acc, F.monomial(F.coeff_field().from_int(c), e));
    }
    return acc;
}

} // namespace

TEST_CASE("characteristic-p addition: t + t = 0 over p=2") {
    PuiseuxField F(mk(2));
    PuiseuxElem s = F.add(F.t(), F.t());
    CHECK(F.is_zero(s));
}

TEST_CASE("exponent addition: t^{1/2} * t^{1/2} = t") {
    PuiseuxField F(mk(2));
    PuiseuxElem h = F.monomial(F.coeff_field().one(), Rational(1, 2));
    CHECK(F.equal(F.mul(h, h), F.t()));
}

TEST_CASE("freshman's dream: (1+t)^2 = 1 + t^2 over p=2") {
    PuiseuxField F(mk(2));
    PuiseuxElem e = F.add(F.one(), F.t());
    PuiseuxElem sq = F.mul(e, e);
    CHECK(F.equal(sq, slow_mul(F, e, e)));
    PuiseuxElem expect = F.add(F.one(), F.monomial(F.coeff_field().one(), Rational(2)));
    CHECK(F.equal(sq, expect));
}

TEST_CASE("valuation basics") {
    PuiseuxField F(mk(2));
    PuiseuxElem a = F.add(F.monomial(F.coeff_field().one(), Rational(3, 2)),
                          F.monomial(F.coeff_field().one(), Rational(2)));
    REQUIRE(F.valuation(a).has_value());
    CHECK(*F.valuation(a) == Rational(3, 2));
    PuiseuxElem z = F.zero_at(Rational(5));
    CHECK(!F.valuation(z).has_value());
    CHECK(z.prec == Rational(5));
}

TEST_CASE("v(ab) = v(a) + v(b) on random elements") {
    PuiseuxField F(mk(3));
    SplitMix64 rng(11);
    for (int i = 0; i < 50; ++i) {
        PuiseuxElem a = random_elem(F, rng);
        PuiseuxElem b = random_elem(F, rng);
        if (F.is_zero(a) || F.is_zero(b)) continue;
        PuiseuxElem ab = F.mul(a, b);
        if (F.is_zero(ab)) continue; // truncated away
        CHECK(*F.valuation(ab) == *F.valuation(a) + *F.valuation(b));
        CHECK(F.equal(ab, slow_mul(F, a, b)));
    }
}

TEST_CASE("ultrametric: v(a+b) >= min, equality when valuations differ") {
    PuiseuxField F(mk(2));
    SplitMix64 rng(12);
    for (int i = 0; i < 50; ++i) {
        PuiseuxElem a = random_elem(F, rng);
        PuiseuxElem b = random_elem(F, rng);
        if (F.is_zero(a) || F.is_zero(b)) continue;
        PuiseuxElem s = F.add(a, b);
        Rational va = *F.valuation(a), vb = *F.valuation(b);
        if (!F.is_zero(s)) CHECK(!(*F.valuation(s) < min(va, vb)));
        if (!(va == vb)) CHECK(*F.valuation(s) == min(va, vb));
    }
}

TEST_CASE("ring axioms at precision on random triples") {
    PuiseuxField F(mk(3, 2)); // F_9 coefficients
    SplitMix64 rng(13);
    for (int i = 0; i < 30; ++i) {
        PuiseuxElem a = random_elem(F, rng), b = random_elem(F, rng), c = random_elem(F, rng);
        CHECK(F.equal(F.add(a, b), F.add(b, a)));
        CHECK(F.equal(F.mul(a, b), F.mul(b, a)));
        CHECK(F.equal(F.add(F.add(a, b), c), F.add(a, F.add(b, c))));
        CHECK(F.equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c))));
        CHECK(F.equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c))));
    }
}

TEST_CASE("frobenius: t^{1/p} -> t, ring homomorphism, exact inverse") {
    PuiseuxField F(mk(3));
    PuiseuxElem r = F.monomial(F.coeff_field().one(), Rational(1, 3));
    CHECK(F.equal(F.frobenius(r), F.t()));

    // (1+t)^p = 1 + t^p via the expansion oracle
    PuiseuxElem e = F.add(F.one(), F.t());
    PuiseuxElem fe = F.frobenius(e);
    PuiseuxElem expect = F.add(F.one(), F.monomial(F.coeff_field().one(), Rational(3)));
    CHECK(F.equal(fe, expect));

    SplitMix64 rng(14);
    for (int i = 0; i < 30; ++i) {
        PuiseuxElem a = random_elem(F, rng), b = random_elem(F, rng);
        CHECK(F.equal(F.frobenius(F.add(a, b)), F.add(F.frobenius(a), F.frobenius(b))));
        CHECK(F.equal(F.frobenius(F.mul(a, b)), F.mul(F.frobenius(a), F.frobenius(b))));
        CHECK(F.equal(F.frobenius_inverse(F.frobenius(a)), a));
    }
}

TEST_CASE("frobenius_inverse level overflow") {
    PuiseuxField F(mk(2, 1, 1)); // L = 1
    PuiseuxElem h = F.monomial(F.coeff_field().one(), Rational(1, 2));
    CHECK_THROWS_AS(F.frobenius_inverse(h), level_error);
}

TEST_CASE("gcd is the monomial of minimal valuation") {
    PuiseuxField F(mk(2));
    PuiseuxElem a = F.t();
    PuiseuxElem h = F.monomial(F.coeff_field().one(), Rational(1, 2));
    CHECK(F.equal(F.gcd({a, h}), h));
    PuiseuxElem b = F.add(F.t(), F.monomial(F.coeff_field().one(), Rational(2)));
    PuiseuxElem c = F.monomial(F.coeff_field().one(), Rational(3));
    CHECK(F.equal(F.gcd({b, c}), F.t()));
    CHECK_THROWS_AS(F.gcd({F.zero()}), input_error);

    SplitMix64 rng(15);
    for (int i = 0; i < 30; ++i) {
        PuiseuxElem x = random_elem(F, rng), y = random_elem(F, rng);
        if (F.is_zero(x) || F.is_zero(y)) continue;
        PuiseuxElem g = F.gcd({x, F.mul(x, y)});
        CHECK(*F.valuation(g) == *F.valuation(x));
    }
}

TEST_CASE("artin_schreier_solve: substitution oracle") {
    SUBCASE("a = t over p = 2 gives the 2-power series") {
        PuiseuxField F(mk(2));
        PuiseuxElem x = F.artin_schreier_solve(F.t());
        // x = t + t^2 + t^4 + ... below precision
        PuiseuxElem expect = F.zero();
        for (Rational e(1); e < F.params().N; e = e * Rational(2))
            expect = F.add(expect, F.monomial(F.coeff_field().one(), e));
        CHECK(F.equal(x, expect));
        PuiseuxElem residual = F.sub(F.sub(F.mul(x, x), x), F.t());
        CHECK(F.is_zero(residual));
    }
    SUBCASE("a = 0") {
        PuiseuxField F(mk(3));
        CHECK(F.is_zero(F.artin_schreier_solve(F.zero())));
    }
    SUBCASE("a = t^{1/p}") {
        PuiseuxField F(mk(3));
        PuiseuxElem a = F.monomial(F.coeff_field().one(), Rational(1, 3));
        PuiseuxElem x = F.artin_schreier_solve(a);
        PuiseuxElem residual = F.sub(F.sub(F.pow(x, 3), x), a);
        CHECK(F.is_zero(residual));
        // leading term is -t^{1/3}
        REQUIRE(!x.terms.empty());
        CHECK(x.terms.front().e == Rational(1, 3));
    }
    SUBCASE("nonpositive valuation rejected") {
        PuiseuxField F(mk(2));
        CHECK_THROWS_AS(F.artin_schreier_solve(F.one()), input_error);
    }
    SUBCASE("random substitution checks") {
        PuiseuxField F(mk(5, 1, 1));
        SplitMix64 rng(16);
        for (int i = 0; i < 20; ++i) {
            PuiseuxElem a = random_elem(F, rng);
            auto v = F.valuation(a);
            if (!v || !(*v > Rational(0))) continue;
            PuiseuxElem x = F.artin_schreier_solve(a);
            CHECK(F.is_zero(F.sub(F.sub(F.pow(x, 5), x), a)));
        }
    }
}

TEST_CASE("unit inversion and exact division") {
    PuiseuxField F(mk(3));
    SplitMix64 rng(17);
    for (int i = 0; i < 30; ++i) {
        PuiseuxElem u = F.add(F.one(), random_elem(F, rng));
        if (!F.is_unit(u)) continue;
        PuiseuxElem inv = F.invert_unit(u);
        PuiseuxElem prod = F.mul(u, inv);
        CHECK(F.equal(prod, F.one()));
    }
    // divide: (t^2 + t^3) / t = t + t^2
    PuiseuxElem num = F.add(F.monomial(F.coeff_field().one(), Rational(2)),
                            F.monomial(F.coeff_field().one(), Rational(3)));
    PuiseuxElem q = F.divide(num, F.t());
    PuiseuxElem expect = F.add(F.t(), F.monomial(F.coeff_field().one(), Rational(2)));
    CHECK(F.equal(q, expect));
    CHECK_THROWS_AS(F.divide(F.t(), num), input_error);
}

TEST_CASE("element text round trip") {
    PuiseuxField F(mk(5, 1, 2, 6));
    SplitMix64 rng(18);
    for (int i = 0; i < 40; ++i) {
        PuiseuxElem a = random_elem(F, rng);
        PuiseuxElem b = F.parse(F.to_string(a));
        CHECK(F.equal(a, b));
        CHECK(b.prec == a.prec);
    }
    PuiseuxElem c = F.parse("1*t^(1/5)+2*t^(3/5)+O(t^(4))");
    CHECK(c.prec == Rational(4));
    REQUIRE(c.terms.size() == 2);
    CHECK(c.terms[0].e == Rational(1, 5));
    CHECK_THROWS_AS(F.parse("1*t^(1/7)+O(t^(4))"), level_error);
}
