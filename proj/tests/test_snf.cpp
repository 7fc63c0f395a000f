#include <doctest.h>

#include "almostperiods/matrix_o.hpp"
#include "almostperiods/rng.hpp"
#include "almostperiods/suites.hpp"

using namespace almostperiods;

namespace {

ModelParams mk(int p, long long N = 12, int L = 2) {
    ModelParams mp;
    mp.p = p;
    mp.L = L;
    mp.N = Rational(N);
    return mp;
}

MatrixOverO diag(const PuiseuxField& F, std::vector<Rational> exps) {
    MatrixOverO m = make_matrix(F, exps.size(), exps.size());
    for (size_t i = 0; i < exps.size(); ++i)
        m.at(i, i) = F.monomial(F.coeff_field().one(), exps[i]);
    return m;
}

} // namespace

TEST_CASE("snf of a diagonal matrix") {
    PuiseuxField F(mk(2));
    MatrixOverO a = diag(F, {Rational(1), Rational(1, 2)});
    SnfResult s = smith_normal_form(F, a);
    CHECK(s.finite_divisors() == EldivSeq({Rational(1), Rational(1, 2)}));
    CHECK(s.rank == 2);
}

TEST_CASE("snf of [[t,t],[t,t^2]] is (1,1)") {
    // A = t [[1,1],[1,t]] and det [[1,1],[1,t]] = t - 1 is a unit;
    // 2x2 oracle: divisors are (v(det) - v(gcd), v(gcd))
    PuiseuxField F(mk(3));
    MatrixOverO a = make_matrix(F, 2, 2);
    a.at(0, 0) = F.t();
    a.at(0, 1) = F.t();
    a.at(1, 0) = F.t();
    a.at(1, 1) = F.monomial(F.coeff_field().one(), Rational(2));
    auto dv = det_valuation(F, a);
    REQUIRE(dv.has_value());
    Rational vg = *F.valuation(F.gcd({a.at(0, 0), a.at(0, 1), a.at(1, 0), a.at(1, 1)}));
    EldivSeq expect({*dv - vg, vg});
    SnfResult s = smith_normal_form(F, a);
    CHECK(s.finite_divisors() == expect);
    CHECK(s.finite_divisors() == EldivSeq({Rational(1), Rational(1)}));
    // u a v = d with unit-determinant transforms
    MatrixOverO uav = mat_mul(F, mat_mul(F, s.u, a), s.v);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) CHECK(F.equal(uav.at(i, j), s.d.at(i, j)));
    auto du = det_valuation(F, s.u);
    auto dvv = det_valuation(F, s.v);
    REQUIRE(du.has_value());
    REQUIRE(dvv.has_value());
    CHECK(du->is_zero());
    CHECK(dvv->is_zero());
}

TEST_CASE("construct-then-recover on random unimodular sandwiches") {
    for (int p : {2, 3}) {
        PuiseuxField F(mk(p, 14));
        RandomGen g(101 + p);
        for (int iter = 0; iter < 20; ++iter) {
            size_t n = 1 + g.rng.below(4);
            std::vector<Rational> exps;
            for (size_t i = 0; i < n; ++i)
                exps.push_back(g.exponent(F, Rational(0), Rational(2), 2));
            std::sort(exps.begin(), exps.end(),
                      [](const Rational& a, const Rational& b) { return b < a; });
            MatrixOverO a =
                mat_mul(F, mat_mul(F, g.unimodular(F, n, 2), diag(F, exps)),
                        g.unimodular(F, n, 2));
            SnfResult s = smith_normal_form(F, a);
            CHECK(s.finite_divisors() == EldivSeq(exps));
            // uniqueness under further unimodular mixing
            MatrixOverO b = mat_mul(F, mat_mul(F, g.unimodular(F, n, 2), a),
                                    g.unimodular(F, n, 2));
            CHECK(smith_normal_form(F, b).finite_divisors() == s.finite_divisors());
        }
    }
}

TEST_CASE("lambda(coker) = v(det) on random square matrices") {
    PuiseuxField F(mk(2, 14));
    RandomGen g(7);
    int done = 0;
    for (int iter = 0; iter < 60 && done < 25; ++iter) {
        size_t n = 1 + g.rng.below(4);
        MatrixOverO a = g.matrix(F, n, n, 2, Rational(2), 2);
        auto dv = det_valuation(F, a);
        if (!dv) continue;
        CokernelShape c = cokernel_divisors(F, a);
        CHECK(c.free_rank == 0);
        CHECK(lambda(c.divisors) == *dv);
        ++done;
    }
    CHECK(done >= 25);
}

TEST_CASE("block-triangular determinant multiplicativity") {
    PuiseuxField F(mk(3, 14));
    RandomGen g(8);
    for (int iter = 0; iter < 10; ++iter) {
        MatrixOverO a1 = g.matrix(F, 2, 2, 2, Rational(2), 1, 0);
        MatrixOverO a2 = g.matrix(F, 2, 2, 2, Rational(2), 1, 0);
        auto d1 = det_valuation(F, a1), d2 = det_valuation(F, a2);
        if (!d1 || !d2) continue;
        MatrixOverO a = make_matrix(F, 4, 4);
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j) {
                a.at(i, j) = a1.at(i, j);
                a.at(2 + i, 2 + j) = a2.at(i, j);
                a.at(i, 2 + j) = g.elem(F, 2, Rational(0), Rational(2), 1);
            }
        auto d = det_valuation(F, a);
        REQUIRE(d.has_value());
        CHECK(*d == *d1 + *d2);
    }
}

TEST_CASE("rank-deficient matrices report infinite divisors") {
    PuiseuxField F(mk(2));
    MatrixOverO a = make_matrix(F, 2, 2);
    a.at(0, 0) = F.t();
    a.at(0, 1) = F.t();
    // second row zero at precision
    SnfResult s = smith_normal_form(F, a);
    CHECK(s.rank == 1);
    REQUIRE(s.diag.size() == 2);
    CHECK(!s.diag[0].has_value());
    CHECK(s.diag[1].has_value());
    CokernelShape c = cokernel_divisors(F, a);
    CHECK(c.free_rank == 1);
}

TEST_CASE("snf precision exhaustion is reported") {
    PuiseuxField F(mk(2, 8));
    MatrixOverO a = make_matrix(F, 1, 1);
    // an entry that is zero at a precision too small to certify anything is
    // treated as zero: rank 0; but a visible pivot beyond its own precision
    // cannot happen by construction, so exercise the divide path instead
    a.at(0, 0) = F.zero_at(Rational(1, 2));
    SnfResult s = smith_normal_form(F, a);
    CHECK(s.rank == 0);
}

TEST_CASE("jumps uniqueness: divisors from the pi^gamma filtration") {
    // gamma_i are the jumps of gamma -> dim (pi^gamma M (x) kappa); for a
    // diagonal presentation this is the count of divisors >= gamma, checked
    // here against the SNF output on a mixed example
    PuiseuxField F(mk(2));
    RandomGen g(9);
    MatrixOverO a = mat_mul(
        F, mat_mul(F, g.unimodular(F, 3, 1), diag(F, {Rational(2), Rational(1), Rational(1, 2)})),
        g.unimodular(F, 3, 1));
    EldivSeq got = smith_normal_form(F, a).finite_divisors();
    CHECK(got == EldivSeq({Rational(2), Rational(1), Rational(1, 2)}));
}
