#include "almostperiods/suites.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace almostperiods {

// ---------------- random generators ----------------

Rational RandomGen::exponent(const PuiseuxField& f, const Rational& lo, const Rational& hi,
                             int level_cap) {
    long long den = 1;
    int j = static_cast<int>(rng.below(static_cast<uint64_t>(level_cap) + 1));
    for (int i = 0; i < j; ++i) den *= f.params().p;
    // numerators over den covering [lo, hi]
    long long nlo = (lo * Rational(den)).floor();
    long long nhi = (hi * Rational(den)).floor();
    if (nhi < nlo) nhi = nlo;
    long long num = nlo + static_cast<long long>(rng.below(static_cast<uint64_t>(nhi - nlo + 1)));
    Rational r(num, den);
    if (r < lo) r = lo;
    if (hi < r) r = hi;
    return r;
}

PuiseuxElem RandomGen::elem(const PuiseuxField& f, int terms_max, const Rational& vlo,
                            const Rational& vhi, int level_cap) {
    const auto& gf = f.coeff_field();
    int nterms = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(terms_max)));
    PuiseuxElem acc = f.zero();
    for (int t = 0; t < nterms; ++t) {
        Rational e = exponent(f, vlo, vhi + Rational(2), level_cap);
        long long q = 1;
        for (int i = 0; i < gf.s(); ++i) q *= gf.p();
        Fq c = gf.from_int(static_cast<long long>(1 + rng.below(static_cast<uint64_t>(q - 1))));
        if (gf.s() > 1) {
            // spread over the extension basis
            c = gf.mul(c, gf.pow(gf.generator(), static_cast<long long>(rng.below(7))));
        }
        acc = f.add(acc, f.monomial(c, e));
    }
    return acc;
}

PuiseuxElem RandomGen::nonzero_elem(const PuiseuxField& f, int terms_max, const Rational& vlo,
                                    const Rational& vhi, int level_cap) {
    const auto& gf = f.coeff_field();
    Rational v = exponent(f, vlo, vhi, level_cap);
    long long q = 1;
    for (int i = 0; i < gf.s(); ++i) q *= gf.p();
    Fq c = gf.from_int(static_cast<long long>(1 + rng.below(static_cast<uint64_t>(q - 1))));
    PuiseuxElem lead = f.monomial(c, v);
    PuiseuxElem tail = elem(f, terms_max, v, v + Rational(2), level_cap);
    // keep the leading term: add only strictly higher tail terms
    PuiseuxElem out = lead;
    for (const auto& t : tail.terms)
        if (v < t.e) out = f.add(out, f.monomial(t.c, t.e));
    return out;
}

PuiseuxElem RandomGen::unit(const PuiseuxField& f, int terms_max, int level_cap) {
    return nonzero_elem(f, terms_max, Rational(0), Rational(0), level_cap);
}

MatrixOverO RandomGen::matrix(const PuiseuxField& f, size_t rows, size_t cols, int terms_max,
                              const Rational& vmax, int level_cap, int zero_weight) {
    MatrixOverO m = make_matrix(f, rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) {
            if (zero_weight > 0 && rng.below(static_cast<uint64_t>(zero_weight)) == 0) continue;
            m.at(i, j) = nonzero_elem(f, terms_max, Rational(0), vmax, level_cap);
        }
    return m;
}

MatrixOverO RandomGen::unimodular(const PuiseuxField& f, size_t n, int level_cap) {
    MatrixOverO u = identity_matrix(f, n);
    if (n < 2) {
        if (n == 1) u.at(0, 0) = unit(f, 2, level_cap);
        return u;
    }
    size_t ops = 2 * n + 2;
    for (size_t t = 0; t < ops; ++t) {
        size_t i = rng.below(n), j = rng.below(n);
        if (i == j) {
            PuiseuxElem s = unit(f, 2, level_cap);
            for (size_t c = 0; c < n; ++c) u.at(i, c) = f.mul(s, u.at(i, c));
            continue;
        }
        PuiseuxElem x = elem(f, 2, Rational(0), Rational(1), level_cap);
        for (size_t c = 0; c < n; ++c)
            u.at(i, c) = f.add(u.at(i, c), f.mul(x, u.at(j, c)));
    }
    return u;
}

FPTorsionModule RandomGen::module(const PuiseuxField& f, size_t max_rank, const Rational& vmax,
                                  int level_cap) {
    size_t r = rng.below(max_rank + 1);
    std::vector<Rational> gs;
    for (size_t i = 0; i < r; ++i) {
        Rational g = exponent(f, Rational(0), vmax, level_cap);
        if (g.is_zero()) continue;
        gs.push_back(g);
    }
    std::sort(gs.begin(), gs.end(), [](const Rational& a, const Rational& b) { return b < a; });
    return make_module(std::move(gs));
}

WittElem RandomGen::witt(const WittRing& w, int terms_max, const Rational& vmax, int level_cap) {
    std::vector<PuiseuxElem> digs;
    for (int i = 0; i < w.length(); ++i)
        digs.push_back(elem(w.base(), terms_max, Rational(0), vmax, level_cap));
    return w.from_digits(digs);
}

// ---------------- suite helpers ----------------

namespace {

struct Instance {
    bool pass = true;
    std::string detail;
};

// run `count` independent instances, optionally across OpenMP threads,
// aggregating deterministically by index
template <typename Fn>
Instance run_batch(size_t count, uint64_t seed, bool parallel, Fn&& fn) {
    std::vector<Instance> results(count);
    SplitMix64 root(seed);
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
            RandomGen g(root.split(static_cast<uint64_t>(i)).state);
            results[static_cast<size_t>(i)] = fn(static_cast<size_t>(i), g);
        }
    } else {
        for (size_t i = 0; i < count; ++i) {
            RandomGen g(root.split(i).state);
            results[i] = fn(i, g);
        }
    }
    for (size_t i = 0; i < count; ++i) {
        if (!results[i].pass) {
            Instance out = results[i];
            out.detail = "instance " + std::to_string(i) + ": " + out.detail;
            return out;
        }
    }
    return Instance{};
}

std::string seq_str(const EldivSeq& s) { return s.str(); }

// ---------------- 1: SNF soundness ----------------

SuiteOutcome suite_snf(uint64_t seed, bool parallel) {
    SuiteOutcome out;
    out.name = "snf-soundness";
    const size_t count = 500;
    Instance r = run_batch(count, seed, parallel, [&](size_t i, RandomGen& g) {
        Instance inst;
        ModelParams mp;
        mp.p = (i % 2 == 0) ? 2 : 3;
        mp.s = 1;
        mp.L = 2;
        mp.N = Rational(14);
        PuiseuxField F(mp);
        size_t n = 1 + g.rng.below(5);
        MatrixOverO a;
        std::optional<Rational> dv;
        for (int attempt = 0; attempt < 64; ++attempt) {
            a = g.matrix(F, n, n, 2, Rational(2), 2);
            dv = det_valuation(F, a);
            if (dv) break;
        }
        if (!dv) {
            inst.pass = false;
            inst.detail = "could not draw a nonsingular matrix";
            return inst;
        }
        CokernelShape c = cokernel_divisors(F, a);
        if (c.free_rank != 0 || lambda(c.divisors) != *dv) {
            inst.pass = false;
            inst.detail = "lambda(coker A) != v(det A): " + seq_str(c.divisors) + " vs " +
                          dv->str();
            return inst;
        }
        // divisors invariant under unimodular multiplication
        MatrixOverO u0 = g.unimodular(F, n, 2);
        MatrixOverO v0 = g.unimodular(F, n, 2);
        MatrixOverO b = mat_mul(F, mat_mul(F, u0, a), v0);
        CokernelShape c2 = cokernel_divisors(F, b);
        if (!(c2.divisors == c.divisors) || c2.free_rank != 0) {
            inst.pass = false;
            inst.detail = "divisors changed under unimodular multiplication: " +
                          seq_str(c.divisors) + " vs " + seq_str(c2.divisors);
        }
        return inst;
    });
    out.pass = r.pass;
    out.checked = count;
    out.detail = r.detail;
    return out;
}

// ---------------- 2: exact sequence laws ----------------

SuiteOutcome suite_exact(uint64_t seed, bool parallel) {
    SuiteOutcome out;
    out.name = "exact-sequence-laws";
    const size_t count = 200;
    Instance r = run_batch(count, seed, parallel, [&](size_t i, RandomGen& g) {
        Instance inst;
        ModelParams mp;
        mp.p = (i % 2 == 0) ? 2 : 3;
        mp.L = 1;
        mp.N = Rational(16);
        PuiseuxField F(mp);
        size_t k1 = 1 + g.rng.below(2), k2 = 1 + g.rng.below(2);
        size_t k = k1 + k2;
        // block upper-triangular presentation with nonsingular diagonal blocks
        auto nonsingular = [&](size_t sz) {
            MatrixOverO m;
            for (int att = 0;; ++att) {
                m = g.matrix(F, sz, sz, 2, Rational(2), 1, 6);
                if (det_valuation(F, m)) return m;
                if (att > 64) throw error("failed to draw a nonsingular block");
            }
        };
        MatrixOverO a1 = nonsingular(k1);
        MatrixOverO a2 = nonsingular(k2);
        MatrixOverO bmix = g.matrix(F, k1, k2, 2, Rational(2), 1, 4);
        MatrixOverO a = make_matrix(F, k, k);
        for (size_t r2 = 0; r2 < k1; ++r2)
            for (size_t c = 0; c < k1; ++c) a.at(r2, c) = a1.at(r2, c);
        for (size_t r2 = 0; r2 < k1; ++r2)
            for (size_t c = 0; c < k2; ++c) a.at(r2, k1 + c) = bmix.at(r2, c);
        for (size_t r2 = 0; r2 < k2; ++r2)
            for (size_t c = 0; c < k2; ++c) a.at(k1 + r2, k1 + c) = a2.at(r2, c);

        SnfResult s1 = smith_normal_form(F, a1);
        SnfResult s2 = smith_normal_form(F, a2);
        SnfResult s = smith_normal_form(F, a);
        FPTorsionModule m1 = module_from_divisors(s1.finite_divisors());
        FPTorsionModule m2 = module_from_divisors(s2.finite_divisors());
        FPTorsionModule mm = module_from_divisors(s.finite_divisors());
        // the cyclic coordinates of coker D are U x; the inclusion of the
        // first k1 coordinates and projection to the last k2 transport to
        // U iota U1^{-1} and U2 pi U^{-1}
        MatrixOverO iota = make_matrix(F, k, k1);
        for (size_t t = 0; t < k1; ++t) iota.at(t, t) = F.one();
        MatrixOverO proj = make_matrix(F, k2, k);
        for (size_t t = 0; t < k2; ++t) proj.at(t, k1 + t) = F.one();
        MatrixOverO fmat =
            mat_mul(F, s.u, mat_mul(F, iota, inverse_unimodular(F, s1.u)));
        MatrixOverO gmat =
            mat_mul(F, s2.u, mat_mul(F, proj, inverse_unimodular(F, s.u)));
        // drop rows/cols for zero divisors: coker D coordinates with gamma=0
        // are the zero module; restrict the matrices to the nonzero factors
        auto nonzero_idx = [&](const SnfResult& sr) {
            std::vector<size_t> idx;
            for (size_t t = 0; t < sr.diag.size(); ++t)
                if (sr.diag[t] && !sr.diag[t]->is_zero()) idx.push_back(t);
            return idx;
        };
        auto i1 = nonzero_idx(s1), i2 = nonzero_idx(s2), im = nonzero_idx(s);
        MatrixOverO fr = make_matrix(F, im.size(), i1.size());
        for (size_t r2 = 0; r2 < im.size(); ++r2)
            for (size_t c = 0; c < i1.size(); ++c) fr.at(r2, c) = fmat.at(im[r2], i1[c]);
        MatrixOverO gr = make_matrix(F, i2.size(), im.size());
        for (size_t r2 = 0; r2 < i2.size(); ++r2)
            for (size_t c = 0; c < im.size(); ++c) gr.at(r2, c) = gmat.at(i2[r2], im[c]);
        ModuleMap f{m1, mm, fr};
        ModuleMap g2{mm, m2, gr};
        ExactReport rep = exact_sequence_check(F, f, g2);
        if (!rep.exact || !rep.lambda_additive || !rep.majorization_ok) {
            inst.pass = false;
            inst.detail = "block-triangular sequence failed: " +
                          (rep.failure.empty() ? std::string("unknown") : rep.failure) +
                          " modules " + m1.str() + " " + mm.str() + " " + m2.str();
        }
        return inst;
    });
    out.pass = r.pass;
    out.checked = count;
    out.detail = r.detail;
    return out;
}

// ---------------- 3: metric criterion ----------------

// independent witness search: scan diagonal exponent grids for a valid pair
bool witness_search(const PuiseuxField& F, const FPTorsionModule& m,
                    const FPTorsionModule& n, const Rational& eps) {
    size_t rm = m.rank(), rn = n.rank();
    size_t len = std::max(rm, rn);
    long long den = 1;
    for (int i = 0; i < F.params().L; ++i) den *= F.params().p;
    auto gamma_at = [](const FPTorsionModule& mod, size_t i) {
        return i < mod.rank() ? mod.gammas[i] : Rational(0);
    };
    for (size_t i = 0; i < len; ++i) {
        Rational gm = gamma_at(m, i), gn = gamma_at(n, i);
        bool found = false;
        long long steps = (eps * Rational(den)).floor();
        for (long long a = 0; a <= steps && !found; ++a) {
            Rational fa(a, den);
            Rational gb = eps - fa;
            // f_i = t^fa : O/t^gm -> O/t^gn, g_i = t^gb back
            if (fa < max(gn - gm, Rational(0))) continue;
            if (gb < max(gm - gn, Rational(0))) continue;
            found = true; // composite is t^eps by construction
        }
        if (!found) return false;
    }
    return true;
}

SuiteOutcome suite_metric(uint64_t seed, bool parallel) {
    SuiteOutcome out;
    out.name = "metric-criterion";
    const size_t count = 200;
    Instance r = run_batch(count, seed, parallel, [&](size_t i, RandomGen& g) {
        Instance inst;
        ModelParams mp;
        mp.p = (i % 2 == 0) ? 2 : 3;
        mp.L = 1;
        mp.N = Rational(12);
        PuiseuxField F(mp);
        FPTorsionModule m = g.module(F, 4, Rational(3), 1);
        FPTorsionModule n = g.module(F, 4, Rational(3), 1);
        std::vector<Rational> eps_grid{Rational(1, mp.p), Rational(1), Rational(2)};
        for (const auto& eps : eps_grid) {
            bool metric = approx_eq(m, n, eps);
            bool searched = witness_search(F, m, n, eps);
            auto witness = witness_maps(F, m, n, eps);
            if (metric != searched || metric != witness.has_value()) {
                inst.pass = false;
                inst.detail = "criterion mismatch at eps=" + eps.str() + " for " + m.str() +
                              " vs " + n.str();
                return inst;
            }
            if (witness) {
                // verify f g = g f = t^eps as maps
                ModuleMap fg = compose(F, witness->f, witness->g);
                ModuleMap gf = compose(F, witness->g, witness->f);
                MatrixOverO tn = make_matrix(F, n.rank(), n.rank());
                for (size_t t = 0; t < n.rank(); ++t)
                    tn.at(t, t) = F.monomial(F.coeff_field().one(), eps);
                MatrixOverO tm = make_matrix(F, m.rank(), m.rank());
                for (size_t t = 0; t < m.rank(); ++t)
                    tm.at(t, t) = F.monomial(F.coeff_field().one(), eps);
                if (!maps_equal(F, fg, ModuleMap{n, n, tn}) ||
                    !maps_equal(F, gf, ModuleMap{m, m, tm})) {
                    inst.pass = false;
                    inst.detail = "witness composite is not t^eps at eps=" + eps.str();
                    return inst;
                }
            }
        }
        return inst;
    });
    out.pass = r.pass;
    out.checked = count;
    out.detail = r.detail;
    return out;
}

// ---------------- 4: pi^eps shift formula ----------------

SuiteOutcome suite_shift(uint64_t seed, bool parallel) {
    SuiteOutcome out;
    out.name = "shift-formula";
    (void)seed;
    // exhaustive grid: nonincreasing sequences of length <= 4 over {k/4 : 0 <= k <= 9}
    std::vector<EldivSeq> grid;
    std::vector<long long> stack;
    struct Rec {
        std::vector<EldivSeq>& grid;
        void run(std::vector<long long>& cur, long long maxv, size_t depth) {
            if (depth > 0) {
                std::vector<Rational> entries;
                for (long long v : cur) entries.push_back(Rational(v, 4));
                grid.push_back(EldivSeq(std::move(entries)));
            }
            if (depth == 4) return;
            for (long long v = maxv; v >= 0; --v) {
                cur.push_back(v);
                run(cur, v, depth + 1);
                cur.pop_back();
            }
        }
    } rec{grid};
    rec.run(stack, 9, 0);
    grid.push_back(EldivSeq{});

    ModelParams mp;
    mp.p = 2;
    mp.L = 2;
    mp.N = Rational(12);
    PuiseuxField F(mp);
    std::vector<Rational> eps_grid{Rational(1, 4), Rational(1, 2), Rational(1), Rational(2)};

    std::vector<Instance> results(grid.size());
    auto work = [&](size_t i) {
        Instance inst;
        const EldivSeq& gseq = grid[i];
        const Rational& eps = eps_grid[i % eps_grid.size()];
        EldivSeq shifted = shift_eps(gseq, eps);
        // formula check, entry by entry
        size_t nmax = gseq.size();
        std::vector<Rational> expect;
        for (size_t t = 0; t < nmax; ++t) expect.push_back(max(gseq.at(t) - eps, Rational(0)));
        if (!(shifted == EldivSeq(expect))) {
            inst.pass = false;
            inst.detail = "formula mismatch for " + gseq.str() + " eps=" + eps.str();
            return inst;
        }
        // independent module route: divisors of the image of t^eps : M -> M
        if (!gseq.empty()) {
            FPTorsionModule m = module_from_divisors(gseq);
            MatrixOverO mat = make_matrix(F, m.rank(), m.rank());
            for (size_t t = 0; t < m.rank(); ++t)
                mat.at(t, t) = F.monomial(F.coeff_field().one(), eps);
            EldivSeq img = map_image_divisors(F, ModuleMap{m, m, mat});
            if (!(img == shifted)) {
                inst.pass = false;
                inst.detail = "image route disagrees for " + gseq.str() + " eps=" + eps.str() +
                              ": " + img.str() + " vs " + shifted.str();
            }
        }
        return inst;
    };
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < static_cast<long long>(grid.size()); ++i)
            results[static_cast<size_t>(i)] = work(static_cast<size_t>(i));
    } else {
        for (size_t i = 0; i < grid.size(); ++i) results[i] = work(i);
    }
    SuiteOutcome o;
    o.name = out.name;
    o.pass = true;
    o.checked = grid.size();
    for (size_t i = 0; i < results.size(); ++i) {
        if (!results[i].pass) {
            o.pass = false;
            o.detail = "instance " + std::to_string(i) + ": " + results[i].detail;
            break;
        }
    }
    o.data["grid_size"] = grid.size();
    return o;
}

// ---------------- 5: Frobenius tower ----------------

SuiteOutcome suite_tower(uint64_t seed, bool parallel) {
    (void)seed;
    (void)parallel;
    SuiteOutcome out;
    out.name = "frobenius-tower";
    out.pass = true;
    for (int p : {2, 3}) {
        ModelParams mp;
        mp.p = p;
        mp.L = 1;
        mp.N = Rational(2 * p * p + 6);
        PuiseuxField F(mp);
        int kmax = p * p;
        for (int r = 1; r <= 3; ++r) {
            TowerReport rep = frobenius_tower_check(F, r, kmax);
            ++out.checked;
            if (!rep.all_ok) {
                out.pass = false;
                out.detail = "canonical tower failed at p=" + std::to_string(p) +
                             " r=" + std::to_string(r) + ": " + rep.first_failure;
                return out;
            }
        }
        struct Pert {
            TowerPerturbation pert;
            const char* expect;
        };
        for (const auto& [pert, expect] :
             {Pert{TowerPerturbation::wrong_qk, "p_k q_k"},
              Pert{TowerPerturbation::broken_middle, "middle exactness"},
              Pert{TowerPerturbation::broken_phi, "phi-compatibility"}}) {
            TowerReport rep = frobenius_tower_check(F, 2, std::max(4, p + 1), pert);
            ++out.checked;
            if (rep.all_ok || rep.first_failure.find(expect) == std::string::npos) {
                out.pass = false;
                out.detail = std::string("perturbation not detected as expected: want \"") +
                             expect + "\", got \"" + rep.first_failure + "\"";
                return out;
            }
        }
    }
    return out;
}

// ---------------- 6: xi and division ----------------

SuiteOutcome suite_xi(uint64_t seed, bool parallel) {
    SuiteOutcome out;
    out.name = "xi-division";
    out.pass = true;
    for (int p : {2, 3}) {
        for (int nstep = 0; nstep < 2 && out.pass; ++nstep) {
            // stability rule: the whole block must pass at two successive precisions
            ModelParams mp;
            mp.p = p;
            mp.m = 3;
            mp.L = 5;
            mp.N = Rational(10 + 2 * nstep);
            PuiseuxField F(mp);
            WittRing W(F);

            WittRing::XiDivision dxi = W.divide_by_xi(W.xi());
            ++out.checked;
            if (!dxi.success || !W.equal(dxi.quotient, W.truncate(W.one(), dxi.quotient.len()))) {
                out.pass = false;
                out.detail = "divide_by_xi(xi) != (1, true) at p=" + std::to_string(p);
                break;
            }
            WittRing::XiDivision dt = W.divide_by_xi(W.teichmuller(F.t()));
            ++out.checked;
            if (dt.success) {
                out.pass = false;
                out.detail = "divide_by_xi([t]) unexpectedly succeeded at m=3, p=" +
                             std::to_string(p);
                break;
            }
            const size_t count = 200;
            uint64_t block_seed = seed ^ (static_cast<uint64_t>(p) << 32) ^
                                  static_cast<uint64_t>(nstep);
            Instance r = run_batch(count, block_seed, parallel, [&](size_t i, RandomGen& g) {
                Instance inst;
                (void)i;
                WittElem w = g.witt(W, 2, Rational(2), 1);
                // construct-then-recover
                WittElem y = W.mul(w, W.xi());
                WittRing::XiDivision div = W.divide_by_xi(y);
                if (!div.success) {
                    inst.pass = false;
                    inst.detail = "division of w*xi failed";
                    return inst;
                }
                if (!W.equal(div.quotient, W.truncate(w, div.quotient.len()))) {
                    inst.pass = false;
                    inst.detail = "recovered quotient differs from w";
                    return inst;
                }
                // sampled non-zero-divisor check
                WittElem wn = g.witt(W, 2, Rational(1), 1);
                if (W.is_zero(wn)) wn = W.one();
                if (W.is_zero(W.mul(wn, W.xi()))) {
                    inst.pass = false;
                    inst.detail = "xi annihilated a nonzero element";
                }
                return inst;
            });
            out.checked += count;
            if (!r.pass) {
                out.pass = false;
                out.detail = r.detail + " (p=" + std::to_string(p) + ")";
            }
        }
        if (!out.pass) break;
    }
    return out;
}

// ---------------- 7: t_dR ----------------

SuiteOutcome suite_tdr(uint64_t seed, bool parallel) {
    (void)seed;
    (void)parallel;
    SuiteOutcome out;
    out.name = "tdr-generator";
    out.pass = true;
    for (int p : {3, 5}) {
        ModelParams mp;
        mp.p = p;
        mp.m = 3;
        mp.d = 2;
        mp.L = 4;
        mp.N = Rational(8);
        PuiseuxField F(mp);
        WittRing W(F);
        BdrRing B(W);
        BdRElem tdr = B.log_epsilon();
        // d = 2: t_dR = [eps] - 1
        ++out.checked;
        if (!W.equal(tdr.num, B.mu())) {
            out.pass = false;
            out.detail = "t_dR != [eps]-1 at d=2, p=" + std::to_string(p);
            break;
        }
        WittRing::XiDivision div = W.divide_by_xi(tdr.num);
        ++out.checked;
        if (!div.success) {
            out.pass = false;
            out.detail = "log([eps]) not divisible by xi at p=" + std::to_string(p);
            break;
        }
        WittElem expect = W.truncate(B.mu_fractional(), div.quotient.len());
        ++out.checked;
        if (!W.equal(div.quotient, expect)) {
            out.pass = false;
            out.detail = "quotient of log([eps]) by xi differs from [eps^{1/p}]-1, p=" +
                         std::to_string(p);
            break;
        }
        // generator property: leading digit t^{1/p} is nonzero
        PuiseuxElem lead = W.digit(div.quotient, 0);
        auto v = F.valuation(lead);
        ++out.checked;
        if (!v || !(*v == Rational(1, p))) {
            out.pass = false;
            out.detail = "leading digit of the quotient is not t^{1/p}, p=" + std::to_string(p);
            break;
        }
    }
    return out;
}

// ---------------- 8: Koszul tables ----------------

SuiteOutcome suite_koszul(uint64_t seed, bool parallel) {
    (void)seed;
    SuiteOutcome out;
    out.name = "koszul-tables";
    out.pass = true;
    struct Cfg {
        int n, L, m;
        long long p;
    };
    for (const Cfg& cfg : {Cfg{1, 1, 1, 2}, Cfg{1, 2, 1, 2}, Cfg{2, 1, 1, 3}, Cfg{2, 1, 2, 2},
                           Cfg{3, 1, 1, 2}}) {
        TableOptions opts;
        opts.parallel = parallel;
        CohomTable t = full_table(cfg.p, cfg.n, cfg.L, cfg.m, opts);
        ++out.checked;
        if (!t.all_ok) {
            out.pass = false;
            out.detail = "table check failed for (n,L,m,p)=(" + std::to_string(cfg.n) + "," +
                         std::to_string(cfg.L) + "," + std::to_string(cfg.m) + "," +
                         std::to_string(cfg.p) + "): integral=" +
                         std::to_string(t.integral_ok) + " annih=" +
                         std::to_string(t.annihilation_ok) + " closed=" +
                         std::to_string(t.closed_form_ok) + " surv=" +
                         std::to_string(t.survivors_ok);
            break;
        }
    }
    return out;
}

// ---------------- 9: finite difference ----------------

SuiteOutcome suite_fd(uint64_t seed, bool parallel) {
    (void)seed;
    (void)parallel;
    SuiteOutcome out;
    out.name = "finite-difference";
    out.pass = true;
    for (int d : {4, 8, 12}) {
        FiniteDifferenceReport rep = finite_difference_cohomology(d);
        ++out.checked;
        if (!rep.all_ok) {
            out.pass = false;
            out.detail = "deg_bound=" + std::to_string(d) + ": " +
                         (rep.kernel_is_constants ? "" : "kernel != constants; ") +
                         (rep.surjective_below_bound ? "" : "not surjective below bound; ") +
                         rep.detail;
            break;
        }
    }
    return out;
}

// ---------------- 10: Artin-Schreier ----------------

SuiteOutcome suite_artin_schreier(uint64_t seed, bool parallel) {
    SuiteOutcome out;
    out.name = "artin-schreier";
    const size_t count = 200;
    Instance r = run_batch(count, seed, parallel, [&](size_t i, RandomGen& g) {
        Instance inst;
        ModelParams mp;
        const int primes[3] = {2, 3, 5};
        mp.p = primes[i % 3];
        mp.s = 1 + static_cast<int>(i % 2); // exercise the extension field too
        mp.L = 2;
        mp.N = Rational(10);
        PuiseuxField F(mp);
        // v(a) in (0, 2]
        Rational v = g.exponent(F, Rational(1, mp.p), Rational(2), 1);
        if (v.is_zero()) v = Rational(1, mp.p);
        PuiseuxElem a = g.nonzero_elem(F, 3, v, v, 1);
        PuiseuxElem x = F.artin_schreier_solve(a);
        PuiseuxElem residual = F.sub(F.sub(F.pow(x, mp.p), x), a);
        if (!F.is_zero(residual)) {
            inst.pass = false;
            inst.detail = "x^p - x - a nonzero below guaranteed precision for a = " +
                          F.to_string(a);
        }
        return inst;
    });
    out.pass = r.pass;
    out.checked = count;
    out.detail = r.detail;
    return out;
}

} // namespace

// ---------------- driver ----------------

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "snf-soundness",    "exact-sequence-laws", "metric-criterion", "shift-formula",
        "frobenius-tower",  "xi-division",         "tdr-generator",    "koszul-tables",
        "finite-difference", "artin-schreier"};
    return names;
}

SuiteOutcome run_suite(const std::string& name, uint64_t seed, bool parallel) {
    if (name == "snf-soundness") return suite_snf(seed, parallel);
    if (name == "exact-sequence-laws") return suite_exact(seed, parallel);
    if (name == "metric-criterion") return suite_metric(seed, parallel);
    if (name == "shift-formula") return suite_shift(seed, parallel);
    if (name == "frobenius-tower") return suite_tower(seed, parallel);
    if (name == "xi-division") return suite_xi(seed, parallel);
    if (name == "tdr-generator") return suite_tdr(seed, parallel);
    if (name == "koszul-tables") return suite_koszul(seed, parallel);
    if (name == "finite-difference") return suite_fd(seed, parallel);
    if (name == "artin-schreier") return suite_artin_schreier(seed, parallel);
    throw input_error("unknown suite: " + name);
}

Json run_all_suites(uint64_t seed, bool parallel) {
    Json report;
    report["schema_version"] = kSchemaVersion;
    report["seed"] = seed;
    Json suites = Json::array();
    bool all = true;
    for (const auto& name : suite_names()) {
        SuiteOutcome o = run_suite(name, seed, parallel);
        Json j;
        j["name"] = o.name;
        j["pass"] = o.pass;
        j["checked"] = o.checked;
        if (!o.detail.empty()) j["detail"] = o.detail;
        if (!o.data.is_null()) j["data"] = o.data;
        suites.push_back(j);
        all = all && o.pass;
    }
    report["suites"] = suites;
    report["all_pass"] = all;
    return report;
}

bool report_all_pass(const Json& report) { return report.at("all_pass").get<bool>(); }

} // namespace almostperiods
