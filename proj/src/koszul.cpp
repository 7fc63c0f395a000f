#include "almostperiods/koszul.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace almostperiods {

namespace {

long long pow_ll(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// size-q subsets of {0..n-1} in lexicographic order
std::vector<std::vector<int>> subsets(int n, int q) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    struct Rec {
        int n, q;
        std::vector<std::vector<int>>& out;
        void run(std::vector<int>& cur, int start) {
            if (static_cast<int>(cur.size()) == q) {
                out.push_back(cur);
                return;
            }
            for (int i = start; i < n; ++i) {
                cur.push_back(i);
                run(cur, i + 1);
                cur.pop_back();
            }
        }
    } rec{n, q, out};
    rec.run(cur, 0);
    return out;
}

size_t subset_index(const std::vector<std::vector<int>>& list, const std::vector<int>& s) {
    auto it = std::lower_bound(list.begin(), list.end(), s);
    if (it == list.end() || *it != s) throw error("subset index lookup failed");
    return static_cast<size_t>(it - list.begin());
}

} // namespace

std::vector<ZpmMatrix> koszul_matrices(const KoszulSpec& spec) {
    const int n = spec.n;
    if (n < 1 || n > 4) throw input_error("koszul_matrices supports 1 <= n <= 4");
    if (static_cast<int>(spec.scalars.size()) != n)
        throw input_error("scalar count does not match n");
    const CyclotomicRing& ring = spec.ring;
    const int deg = ring.degree();
    std::vector<ZpmMatrix> mult;
    mult.reserve(n);
    for (const auto& s : spec.scalars) mult.push_back(ring.mult_matrix(s));

    std::vector<ZpmMatrix> ds;
    for (int q = 0; q < n; ++q) {
        auto src = subsets(n, q);
        auto tgt = subsets(n, q + 1);
        ZpmMatrix d = zpm_make(ring.p(), ring.m(), tgt.size() * deg, src.size() * deg);
        for (size_t si = 0; si < src.size(); ++si) {
            for (int k = 0; k < n; ++k) {
                const auto& s = src[si];
                if (std::find(s.begin(), s.end(), k) != s.end()) continue;
                int sign_count = 0;
                for (int j : s)
                    if (j < k) ++sign_count;
                std::vector<int> t = s;
                t.insert(std::lower_bound(t.begin(), t.end(), k), k);
                size_t ti = subset_index(tgt, t);
                for (int r = 0; r < deg; ++r)
                    for (int c = 0; c < deg; ++c) {
                        long long v = mult[k].at(r, c);
                        if (sign_count % 2) v = (ring.modulus() - v) % ring.modulus();
                        d.at(ti * deg + r, si * deg + c) = v;
                    }
            }
        }
        ds.push_back(std::move(d));
    }
    return ds;
}

CohomologyShape koszul_cohomology_q(const KoszulSpec& spec, int q) {
    if (q < 0 || q > spec.n) throw input_error("degree out of range");
    auto ds = koszul_matrices(spec);
    const int deg = spec.ring.degree();
    size_t dim_q = static_cast<size_t>(binom(spec.n, q)) * deg;
    ZpmMatrix d_in = q == 0 ? zpm_make(spec.ring.p(), spec.ring.m(), dim_q, 0)
                            : ds[static_cast<size_t>(q - 1)];
    ZpmMatrix d_out = q == spec.n ? zpm_make(spec.ring.p(), spec.ring.m(), 0, dim_q)
                                  : ds[static_cast<size_t>(q)];
    return zpm_cohomology(d_in, d_out);
}

CohomologyShape koszul_closed_form(const CyclotomicRing& ring,
                                   const std::vector<std::optional<Rational>>& lambda_vals,
                                   int n, int q) {
    const int m = ring.m();
    const int phi = ring.degree();
    const long long big_m = static_cast<long long>(m) * phi;
    long long w = big_m;
    for (const auto& lv : lambda_vals) {
        if (!lv) continue; // zero scalar: no constraint
        if (!lv->is_integer()) throw error("lambda valuation must be integral");
        w = std::min(w, lv->num());
    }
    // each cyclic piece O/lambda^w flattens to r factors Z/p^{a+1} and
    // phi - r factors Z/p^a, where w = a phi + r
    long long copies = binom(n, q);
    long long a = w / phi, r = w % phi;
    CohomologyShape out;
    for (long long c = 0; c < copies; ++c) {
        for (long long i = 0; i < r; ++i) {
            int e = static_cast<int>(a + 1);
            if (e >= m) ++out.free_rank;
            else if (e > 0) out.torsion_exponents.push_back(e);
        }
        for (long long i = 0; i < phi - r; ++i) {
            int e = static_cast<int>(a);
            if (e >= m) ++out.free_rank;
            else if (e > 0) out.torsion_exponents.push_back(e);
        }
    }
    std::sort(out.torsion_exponents.rbegin(), out.torsion_exponents.rend());
    return out;
}

KoszulLine line_cohomology(long long p, int m, int n, int L,
                           const std::vector<long long>& tuple_num) {
    if (static_cast<int>(tuple_num.size()) != n) throw input_error("tuple arity mismatch");
    const long long den = pow_ll(p, L);
    KoszulLine line;
    line.tuple_num = tuple_num;
    line.tuple_den = den;
    // level = max p-adic level of the reduced fractions a_k / p^L
    int level = 0;
    for (long long a : tuple_num) {
        if (a < 0 || a >= den) throw input_error("tuple entries must satisfy 0 <= a < p^L");
        if (a == 0) continue;
        long long g = a;
        int drop = 0;
        while (g % p == 0) {
            g /= p;
            ++drop;
        }
        level = std::max(level, L - drop);
    }
    line.level = level;

    CyclotomicRing ring(p, m, level);
    const long long pl = pow_ll(p, level);
    KoszulSpec spec{n, ring, {}};
    std::vector<std::optional<Rational>> lambda_vals;
    for (long long a : tuple_num) {
        // zeta^{i_k} = zeta_{p^level}^{i_k p^level}; i_k p^level = a p^level / p^L
        long long e = a * pl / den;
        spec.scalars.push_back(ring.zeta_power_minus(e, 1));
        lambda_vals.push_back(ring.lambda_valuation(e));
    }

    auto ds = koszul_matrices(spec);
    const int deg = ring.degree();
    bool all_match = true;
    bool annihilated = true;
    ZpmMatrix zeta1 = ring.mult_matrix(ring.zeta_minus_one());
    for (int q = 0; q <= n; ++q) {
        size_t dim_q = static_cast<size_t>(binom(n, q)) * deg;
        ZpmMatrix d_in = q == 0 ? zpm_make(p, m, dim_q, 0) : ds[static_cast<size_t>(q - 1)];
        ZpmMatrix d_out = q == n ? zpm_make(p, m, 0, dim_q) : ds[static_cast<size_t>(q)];
        CohomologyShape shape = zpm_cohomology(d_in, d_out);
        CohomologyShape closed = koszul_closed_form(ring, lambda_vals, n, q);
        if (!(shape == closed)) all_match = false;
        line.matrix_shapes.push_back(shape);
        line.closed_shapes.push_back(closed);
        if (level > 0) {
            // (zeta_{p^level} - 1) sends every cocycle into the coboundaries
            ZpmMatrix z = kernel_basis_cols(d_out);
            for (size_t c = 0; c < z.cols && annihilated; ++c) {
                std::vector<long long> v(dim_q, 0);
                size_t blocks = dim_q / deg;
                for (size_t blk = 0; blk < blocks; ++blk)
                    for (int r = 0; r < deg; ++r) {
                        long long acc = 0;
                        for (int cc = 0; cc < deg; ++cc)
                            acc = (acc + zeta1.at(r, cc) * z.at(blk * deg + cc, c)) %
                                  ring.modulus();
                        v[blk * deg + r] = acc;
                    }
                std::vector<long long> sol;
                if (!zpm_solve(d_in, v, sol)) annihilated = false;
            }
        }
    }
    line.annihilated = annihilated;
    line.matches_closed_form = all_match;
    if (level > 0) line.annihilator_val = CyclotomicRing::norm_valuation(p, level);
    return line;
}

namespace {

void table_summary(CohomTable& table) {
    const int n = table.n, L = table.L, m = table.m;
    const long long p = table.p;
    table.integral_ok = false;
    table.annihilation_ok = true;
    table.closed_form_ok = true;
    for (const auto& line : table.lines) {
        bool integral = line.level == 0;
        if (integral) {
            bool ok = true;
            for (int q = 0; q <= n; ++q) {
                const auto& s = line.matrix_shapes[static_cast<size_t>(q)];
                ok = ok && s.torsion_exponents.empty() &&
                     s.free_rank == static_cast<size_t>(binom(n, q));
            }
            table.integral_ok = ok;
        } else {
            if (!line.annihilated) table.annihilation_ok = false;
        }
        if (!line.matches_closed_form) table.closed_form_ok = false;
    }
    // survivors of multiplication by p^eps at eps = v(zeta_{p^l} - 1):
    // exactly the lines of level < l, i.e. p^{(l-1)n} tuples
    table.survivors_ok = true;
    for (int l = 1; l <= L; ++l) {
        CohomTable::Survivors s;
        s.eps = CyclotomicRing::norm_valuation(p, l);
        for (const auto& line : table.lines) {
            if (!line.annihilator_val) {
                ++s.count; // integral line: never killed
            } else if (s.eps < *line.annihilator_val) {
                ++s.count;
            }
        }
        s.expected = static_cast<size_t>(pow_ll(p, (l - 1) * n));
        if (s.count != s.expected) table.survivors_ok = false;
        table.survivors.push_back(s);
    }
    table.all_ok = table.integral_ok && table.annihilation_ok && table.closed_form_ok &&
                   table.survivors_ok;
}

} // namespace

CohomTable full_table(long long p, int n, int L, int m, const TableOptions& opts) {
    if (n < 1 || n > 4) throw input_error("full_table supports 1 <= n <= 4");
    long long tuples = 1;
    for (int i = 0; i < n; ++i) {
        tuples *= pow_ll(p, L);
        if (tuples > static_cast<long long>(1) << 40) throw budget_error("table too large");
    }
    long long cells = tuples << n;
    if (cells > static_cast<long long>(opts.budget))
        throw budget_error("table needs " + std::to_string(cells) + " cells, budget " +
                           std::to_string(opts.budget));
    CohomTable table;
    table.p = p;
    table.n = n;
    table.L = L;
    table.m = m;
    table.lines.resize(static_cast<size_t>(tuples));
    const long long den = pow_ll(p, L);

    auto tuple_of = [&](long long flat) {
        std::vector<long long> t(n);
        for (int k = n - 1; k >= 0; --k) {
            t[static_cast<size_t>(k)] = flat % den;
            flat /= den;
        }
        return t;
    };

    if (opts.parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long idx = 0; idx < tuples; ++idx)
            table.lines[static_cast<size_t>(idx)] =
                line_cohomology(p, m, n, L, tuple_of(idx));
    } else {
        for (long long idx = 0; idx < tuples; ++idx)
            table.lines[static_cast<size_t>(idx)] =
                line_cohomology(p, m, n, L, tuple_of(idx));
    }
    table_summary(table);
    return table;
}

// ---------------- finite difference operator ----------------

namespace {

using Poly = std::vector<Rational>; // coeffs of 1, V, V^2, ...

Poly poly_trim(Poly f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    return f;
}

Poly poly_sub(const Poly& f, const Poly& g) {
    Poly r = f;
    if (g.size() > r.size()) r.resize(g.size(), Rational(0));
    for (size_t i = 0; i < g.size(); ++i) r[i] -= g[i];
    return poly_trim(r);
}

// P(V + 1)
Poly poly_shift_one(const Poly& f) {
    Poly r(f.size(), Rational(0));
    for (size_t e = 0; e < f.size(); ++e) {
        if (f[e].is_zero()) continue;
        // V^e -> sum_j C(e, j) V^j
        for (size_t j = 0; j <= e; ++j) {
            long long c = 1;
            for (size_t t = 0; t < j; ++t) c = c * static_cast<long long>(e - t) / (t + 1);
            r[j] += f[e] * Rational(c);
        }
    }
    return poly_trim(r);
}

Poly delta_op(const Poly& f) { return poly_sub(poly_shift_one(f), f); }

// falling factorial V (V-1) ... (V-k+1)
Poly falling_factorial(int k) {
    Poly r{Rational(1)};
    for (int i = 0; i < k; ++i) {
        Poly next(r.size() + 1, Rational(0));
        for (size_t j = 0; j < r.size(); ++j) {
            next[j + 1] += r[j];
            next[j] -= r[j] * Rational(i);
        }
        r = std::move(next);
    }
    return poly_trim(r);
}

} // namespace

FiniteDifferenceReport finite_difference_cohomology(int deg_bound) {
    if (deg_bound < 1 || deg_bound > 12)
        throw input_error("deg_bound must be in 1..12");
    FiniteDifferenceReport rep;
    rep.deg_bound = deg_bound;

    // kernel: set up Delta on monomials and row-reduce over Q
    size_t dim = static_cast<size_t>(deg_bound) + 1;
    std::vector<std::vector<Rational>> mat(dim, std::vector<Rational>(dim, Rational(0)));
    for (size_t e = 0; e < dim; ++e) {
        Poly v(e + 1, Rational(0));
        v[e] = Rational(1);
        Poly col = delta_op(v);
        for (size_t i = 0; i < col.size(); ++i) mat[i][e] = col[i];
    }
    // Gaussian elimination to find the kernel dimension and a basis
    std::vector<std::vector<Rational>> a = mat;
    std::vector<int> pivot_col(dim, -1);
    size_t rank = 0;
    for (size_t col = 0; col < dim && rank < dim; ++col) {
        size_t piv = dim;
        for (size_t i = rank; i < dim; ++i)
            if (!a[i][col].is_zero()) { piv = i; break; }
        if (piv == dim) continue;
        std::swap(a[piv], a[rank]);
        Rational s = a[rank][col];
        for (size_t j = 0; j < dim; ++j) a[rank][j] /= s;
        for (size_t i = 0; i < dim; ++i) {
            if (i == rank || a[i][col].is_zero()) continue;
            Rational f = a[i][col];
            for (size_t j = 0; j < dim; ++j) a[i][j] -= f * a[rank][j];
        }
        pivot_col[rank] = static_cast<int>(col);
        ++rank;
    }
    // kernel dimension 1 and the free column is the constant coordinate
    bool col0_free = true;
    for (size_t r = 0; r < rank; ++r)
        if (pivot_col[r] == 0) col0_free = false;
    rep.kernel_is_constants = (dim - rank == 1) && col0_free;

    // surjectivity below the bound: V^e = Delta(sum_j S(e,j)/(j+1) FF_{j+1}),
    // with V^e = sum_j S(e, j) FF_j (Stirling numbers of the second kind)
    bool surj = true;
    std::vector<std::vector<Rational>> stirling(dim, std::vector<Rational>(dim, Rational(0)));
    stirling[0][0] = Rational(1);
    for (size_t e = 1; e < dim; ++e)
        for (size_t j = 1; j <= e; ++j)
            stirling[e][j] = stirling[e - 1][j - 1] + Rational(static_cast<long long>(j)) *
                                                          stirling[e - 1][j];
    for (int e = 0; e <= deg_bound - 1; ++e) {
        Poly target(static_cast<size_t>(e) + 1, Rational(0));
        target[static_cast<size_t>(e)] = Rational(1);
        Poly pre;
        for (int j = 0; j <= e; ++j) {
            if (stirling[static_cast<size_t>(e)][static_cast<size_t>(j)].is_zero()) continue;
            Poly ff = falling_factorial(j + 1);
            Rational c = stirling[static_cast<size_t>(e)][static_cast<size_t>(j)] /
                         Rational(j + 1);
            if (ff.size() > pre.size()) pre.resize(ff.size(), Rational(0));
            for (size_t t = 0; t < ff.size(); ++t) pre[t] += c * ff[t];
        }
        Poly check = poly_sub(delta_op(pre), target);
        if (!check.empty()) {
            surj = false;
            rep.detail = "no preimage found for V^" + std::to_string(e);
            break;
        }
        if (static_cast<int>(pre.size()) - 1 > deg_bound) {
            surj = false;
            rep.detail = "preimage exceeds the degree bound";
            break;
        }
    }
    rep.surjective_below_bound = surj;
    rep.all_ok = rep.kernel_is_constants && rep.surjective_below_bound;
    return rep;
}

} // namespace almostperiods
