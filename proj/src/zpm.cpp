#include "almostperiods/zpm.hpp"

#include <algorithm>

namespace almostperiods {

namespace {

long long pow_ll(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

long long mod_inv_unit(long long u, long long q) {
    // u a unit mod q (q a prime power): extended Euclid
    long long t0 = 0, t1 = 1, r0 = q, r1 = u % q;
    while (r1 != 0) {
        long long k = r0 / r1;
        t0 -= k * t1;
        std::swap(t0, t1);
        r0 -= k * r1;
        std::swap(r0, r1);
    }
    if (r0 != 1) throw input_error("not a unit mod p^m");
    return ((t0 % q) + q) % q;
}

void check_compat(const ZpmMatrix& x, const ZpmMatrix& y) {
    if (x.p != y.p || x.m != y.m) throw input_error("Z/p^m modulus mismatch");
}

} // namespace

ZpmMatrix zpm_make(long long p, int m, size_t rows, size_t cols) {
    if (m < 1) throw input_error("m must be >= 1");
    long long q = pow_ll(p, m);
    if (q > (1LL << 30)) throw input_error("modulus p^m exceeds 2^30");
    ZpmMatrix r;
    r.p = p;
    r.m = m;
    r.q = q;
    r.rows = rows;
    r.cols = cols;
    r.a.assign(rows * cols, 0);
    return r;
}

ZpmMatrix zpm_identity(long long p, int m, size_t n) {
    ZpmMatrix r = zpm_make(p, m, n, n);
    for (size_t i = 0; i < n; ++i) r.at(i, i) = 1;
    return r;
}

ZpmMatrix zpm_mul(const ZpmMatrix& x, const ZpmMatrix& y) {
    check_compat(x, y);
    if (x.cols != y.rows) throw input_error("shape mismatch in Z/p^m product");
    ZpmMatrix r = zpm_make(x.p, x.m, x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k) {
            long long v = x.at(i, k);
            if (!v) continue;
            for (size_t j = 0; j < y.cols; ++j)
                r.at(i, j) = (r.at(i, j) + v * y.at(k, j)) % x.q;
        }
    return r;
}

bool zpm_is_zero(const ZpmMatrix& x) {
    return std::all_of(x.a.begin(), x.a.end(), [](long long v) { return v == 0; });
}

int zpm_val(long long x, long long p, int m) {
    if (x == 0) return m;
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

HowellResult howell_form(const ZpmMatrix& input) {
    const long long p = input.p, q = input.q;
    const int m = input.m;
    // pad generously: each pivot of positive valuation can spawn a chain of
    // saturation rows of length < m
    size_t pad = input.cols * static_cast<size_t>(m) + 1;
    size_t R = input.rows + pad;
    ZpmMatrix w = zpm_make(p, m, R, input.cols);
    for (size_t i = 0; i < input.rows; ++i)
        for (size_t j = 0; j < input.cols; ++j) w.at(i, j) = ((input.at(i, j) % q) + q) % q;
    ZpmMatrix u = zpm_identity(p, m, R);
    size_t used = input.rows; // first unused padding row

    auto row_addmul = [&](ZpmMatrix& mat, size_t dst, size_t src, long long c) {
        c = ((c % q) + q) % q;
        if (!c) return;
        for (size_t j = 0; j < mat.cols; ++j)
            mat.at(dst, j) = (mat.at(dst, j) + c * mat.at(src, j)) % q;
    };
    auto row_scale = [&](ZpmMatrix& mat, size_t i, long long c) {
        for (size_t j = 0; j < mat.cols; ++j) mat.at(i, j) = (mat.at(i, j) * c) % q;
    };
    auto row_swap = [&](ZpmMatrix& mat, size_t i, size_t j) {
        for (size_t c = 0; c < mat.cols; ++c) std::swap(mat.at(i, c), mat.at(j, c));
    };

    size_t row = 0;
    std::vector<std::pair<size_t, int>> pivots; // (col, val) per pivot row
    for (size_t col = 0; col < input.cols && row < R; ++col) {
        // minimal-valuation pivot in this column among rows >= row
        size_t best = R;
        int best_val = m;
        for (size_t i = row; i < used; ++i) {
            int v = zpm_val(w.at(i, col), p, m);
            if (v < best_val) {
                best_val = v;
                best = i;
            }
        }
        if (best == R) continue;
        if (best != row) {
            row_swap(w, best, row);
            row_swap(u, best, row);
        }
        // normalize the pivot to exactly p^a
        long long a = best_val;
        long long unit = w.at(row, col) / pow_ll(p, static_cast<int>(a));
        long long s = mod_inv_unit(unit, q);
        row_scale(w, row, s);
        row_scale(u, row, s);
        // eliminate below
        for (size_t i = row + 1; i < used; ++i) {
            long long e = w.at(i, col);
            if (!e) continue;
            long long f = e / pow_ll(p, static_cast<int>(a));
            row_addmul(w, i, row, q - f);
            row_addmul(u, i, row, q - f);
        }
        // saturation: p^{m-a} * pivot row joins the span representatives
        if (a > 0) {
            if (used >= R) throw error("Howell padding exhausted");
            row_addmul(w, used, row, pow_ll(p, m - static_cast<int>(a)));
            row_addmul(u, used, row, pow_ll(p, m - static_cast<int>(a)));
            ++used;
        }
        pivots.emplace_back(col, static_cast<int>(a));
        ++row;
    }
    // entries above each pivot reduced mod p^a
    for (size_t r2 = 0; r2 < pivots.size(); ++r2) {
        auto [col, a] = pivots[r2];
        long long pa = pow_ll(p, a);
        for (size_t i = 0; i < r2; ++i) {
            long long e = w.at(i, col);
            long long f = e / pa;
            if (!f) continue;
            row_addmul(w, i, r2, q - f);
            row_addmul(u, i, r2, q - f);
        }
    }
    HowellResult out;
    out.padded_rows = R;
    out.u = std::move(u);
    out.h = zpm_make(p, m, pivots.size(), input.cols);
    for (size_t i = 0; i < pivots.size(); ++i)
        for (size_t j = 0; j < input.cols; ++j) out.h.at(i, j) = w.at(i, j);
    // everything past the pivot rows must have been absorbed
    for (size_t i = pivots.size(); i < used; ++i)
        for (size_t j = 0; j < input.cols; ++j)
            if (w.at(i, j) != 0) throw error("Howell reduction left a nonzero residual row");
    return out;
}

ZpmDiagResult zpm_diagonalize(const ZpmMatrix& a) {
    const long long p = a.p, q = a.q;
    const int m = a.m;
    ZpmDiagResult res;
    res.d = a;
    for (auto& v : res.d.a) v = ((v % q) + q) % q;
    res.u = zpm_identity(p, m, a.rows);
    res.v = zpm_identity(p, m, a.cols);
    size_t k = std::min(a.rows, a.cols);
    for (size_t step = 0; step < k; ++step) {
        // minimal valuation pivot in the block [step..)
        size_t pi = a.rows, pj = a.cols;
        int best = m;
        for (size_t i = step; i < a.rows; ++i)
            for (size_t j = step; j < a.cols; ++j) {
                int v = zpm_val(res.d.at(i, j), p, m);
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi == a.rows) break; // all zero
        if (pi != step)
            for (size_t j = 0; j < a.cols; ++j) std::swap(res.d.at(pi, j), res.d.at(step, j));
        if (pi != step)
            for (size_t j = 0; j < a.rows; ++j) std::swap(res.u.at(pi, j), res.u.at(step, j));
        if (pj != step) {
            for (size_t i = 0; i < a.rows; ++i) std::swap(res.d.at(i, pj), res.d.at(i, step));
            for (size_t i = 0; i < a.cols; ++i) std::swap(res.v.at(i, pj), res.v.at(i, step));
        }
        long long pa = pow_ll(p, best);
        long long unit = res.d.at(step, step) / pa;
        long long s = mod_inv_unit(unit, q);
        for (size_t j = 0; j < a.cols; ++j) res.d.at(step, j) = (res.d.at(step, j) * s) % q;
        for (size_t j = 0; j < a.rows; ++j) res.u.at(step, j) = (res.u.at(step, j) * s) % q;
        for (size_t i = step + 1; i < a.rows; ++i) {
            long long f = res.d.at(i, step) / pa;
            if (!f) continue;
            for (size_t j = 0; j < a.cols; ++j)
                res.d.at(i, j) = (res.d.at(i, j) + (q - f) * res.d.at(step, j)) % q;
            for (size_t j = 0; j < a.rows; ++j)
                res.u.at(i, j) = (res.u.at(i, j) + (q - f) * res.u.at(step, j)) % q;
        }
        for (size_t j = step + 1; j < a.cols; ++j) {
            long long f = res.d.at(step, j) / pa;
            if (!f) continue;
            for (size_t i = 0; i < a.rows; ++i)
                res.d.at(i, j) = (res.d.at(i, j) + (q - f) * res.d.at(i, step)) % q;
            for (size_t i = 0; i < a.cols; ++i)
                res.v.at(i, j) = (res.v.at(i, j) + (q - f) * res.v.at(i, step)) % q;
        }
    }
    res.exponents.assign(k, m);
    res.rank = 0;
    for (size_t i = 0; i < k; ++i) {
        res.exponents[i] = zpm_val(res.d.at(i, i), p, m);
        if (res.exponents[i] < m) ++res.rank;
    }
    return res;
}

ZpmMatrix kernel_basis_cols(const ZpmMatrix& a) {
    if (a.cols == 0) return zpm_make(a.p, a.m, 0, 0);
    if (a.rows == 0) return zpm_identity(a.p, a.m, a.cols);
    ZpmDiagResult d = zpm_diagonalize(a);
    // ker(diag) is spanned by p^{m - e_i} e_i (e_i > 0) and e_j past the diagonal
    std::vector<std::pair<size_t, long long>> gens; // (coordinate, scalar)
    size_t k = std::min(a.rows, a.cols);
    for (size_t i = 0; i < k; ++i) {
        int e = d.exponents[i];
        if (e == 0) continue;
        gens.emplace_back(i, pow_ll(a.p, a.m - e));
    }
    for (size_t j = k; j < a.cols; ++j) gens.emplace_back(j, 1);
    ZpmMatrix out = zpm_make(a.p, a.m, a.cols, gens.size());
    for (size_t g = 0; g < gens.size(); ++g)
        for (size_t i = 0; i < a.cols; ++i)
            out.at(i, g) = (d.v.at(i, gens[g].first) * gens[g].second) % a.q;
    return out;
}

bool zpm_solve(const ZpmMatrix& a, const std::vector<long long>& b, std::vector<long long>& x) {
    if (b.size() != a.rows) throw input_error("solve: rhs size mismatch");
    if (a.cols == 0) {
        for (long long v : b)
            if (((v % a.q) + a.q) % a.q != 0) return false;
        x.clear();
        return true;
    }
    ZpmDiagResult d = zpm_diagonalize(a);
    // d = u a v, so a x = b <=> diag y = u b with x = v y
    std::vector<long long> ub(a.rows, 0);
    for (size_t i = 0; i < a.rows; ++i) {
        long long acc = 0;
        for (size_t j = 0; j < a.rows; ++j)
            acc = (acc + d.u.at(i, j) * (((b[j] % a.q) + a.q) % a.q)) % a.q;
        ub[i] = acc;
    }
    size_t k = std::min(a.rows, a.cols);
    std::vector<long long> y(a.cols, 0);
    for (size_t i = 0; i < a.rows; ++i) {
        if (i >= k || d.exponents[i] == a.m) {
            if (ub[i] != 0) return false;
            continue;
        }
        long long pe = pow_ll(a.p, d.exponents[i]);
        if (ub[i] % pe != 0) return false;
        y[i] = ub[i] / pe;
    }
    x.assign(a.cols, 0);
    for (size_t i = 0; i < a.cols; ++i) {
        long long acc = 0;
        for (size_t j = 0; j < a.cols; ++j) acc = (acc + d.v.at(i, j) * y[j]) % a.q;
        x[i] = acc;
    }
    return true;
}

std::vector<int> CohomologyShape::all_exponents(int m) const {
    std::vector<int> out(free_rank, m);
    out.insert(out.end(), torsion_exponents.begin(), torsion_exponents.end());
    return out;
}

CohomologyShape zpm_coker_shape(const ZpmMatrix& rel, size_t gens) {
    if (rel.rows != gens) throw input_error("relation matrix row count mismatch");
    std::vector<int> quotient_exps(gens, rel.m);
    if (rel.cols > 0 && gens > 0) {
        ZpmDiagResult d = zpm_diagonalize(rel);
        size_t k = std::min(rel.rows, rel.cols);
        for (size_t i = 0; i < k; ++i) quotient_exps[i] = std::min(d.exponents[i], rel.m);
    }
    CohomologyShape out;
    for (int e : quotient_exps) {
        if (e == 0) continue;
        if (e >= rel.m) ++out.free_rank;
        else out.torsion_exponents.push_back(e);
    }
    std::sort(out.torsion_exponents.rbegin(), out.torsion_exponents.rend());
    return out;
}

CohomologyShape zpm_cohomology(const ZpmMatrix& d_in, const ZpmMatrix& d_out) {
    check_compat(d_in, d_out);
    if (d_in.cols > 0 && d_out.rows > 0) {
        if (d_out.cols != d_in.rows) throw input_error("complex dimension mismatch");
        if (!zpm_is_zero(zpm_mul(d_out, d_in))) throw input_error("not a complex: d d != 0");
    }
    ZpmMatrix z = kernel_basis_cols(d_out); // columns generate ker(d_out)
    size_t g = z.cols;
    // relations: preimages of the d_in columns under z, plus syzygies of z
    ZpmMatrix syz = kernel_basis_cols(z);
    size_t extra = d_in.cols;
    ZpmMatrix rel = zpm_make(d_in.p, d_in.m, g, extra + syz.cols);
    for (size_t c = 0; c < extra; ++c) {
        std::vector<long long> b(d_in.rows);
        for (size_t i = 0; i < d_in.rows; ++i) b[i] = d_in.at(i, c);
        std::vector<long long> y;
        if (!zpm_solve(z, b, y)) throw error("image column not inside the kernel");
        for (size_t i = 0; i < g; ++i) rel.at(i, c) = y.size() ? y[i] : 0;
    }
    for (size_t c = 0; c < syz.cols; ++c)
        for (size_t i = 0; i < g; ++i) rel.at(i, extra + c) = syz.at(i, c);
    return zpm_coker_shape(rel, g);
}

} // namespace almostperiods
