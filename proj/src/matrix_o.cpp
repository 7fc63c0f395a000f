#include "almostperiods/matrix_o.hpp"

#include <algorithm>

namespace almostperiods {

MatrixOverO make_matrix(const PuiseuxField& F, size_t rows, size_t cols) {
    MatrixOverO m;
    m.rows = rows;
    m.cols = cols;
    m.entries.assign(rows * cols, F.zero());
    return m;
}

MatrixOverO identity_matrix(const PuiseuxField& F, size_t n) {
    MatrixOverO m = make_matrix(F, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = F.one();
    return m;
}

MatrixOverO mat_mul(const PuiseuxField& F, const MatrixOverO& a, const MatrixOverO& b) {
    if (a.cols != b.rows) throw input_error("matrix shape mismatch in product");
    MatrixOverO r = make_matrix(F, a.rows, b.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < b.cols; ++j) {
            PuiseuxElem acc = F.zero();
            for (size_t k = 0; k < a.cols; ++k)
                acc = F.add(acc, F.mul(a.at(i, k), b.at(k, j)));
            r.at(i, j) = acc;
        }
    return r;
}

MatrixOverO mat_sub(const PuiseuxField& F, const MatrixOverO& a, const MatrixOverO& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw input_error("matrix shape mismatch");
    MatrixOverO r = a;
    for (size_t i = 0; i < r.entries.size(); ++i) r.entries[i] = F.sub(a.entries[i], b.entries[i]);
    return r;
}

void check_integral(const PuiseuxField& F, const MatrixOverO& a) {
    for (const auto& e : a.entries) {
        F.check(e);
        if (auto v = F.valuation(e); v && *v < Rational(0))
            throw input_error("matrix entry with negative valuation");
    }
}

EldivSeq SnfResult::finite_divisors() const {
    std::vector<Rational> out;
    for (const auto& dv : diag)
        if (dv) out.push_back(*dv);
    return EldivSeq(std::move(out));
}

SnfResult smith_normal_form(const PuiseuxField& F, const MatrixOverO& a) {
    SnfResult res;
    res.d = a;
    res.u = identity_matrix(F, a.rows);
    res.v = identity_matrix(F, a.cols);
    MatrixOverO& d = res.d;
    MatrixOverO& u = res.u;
    MatrixOverO& v = res.v;

    size_t k = std::min(a.rows, a.cols);
    size_t corner = k; // active block is rows/cols [0, corner)
    while (corner > 0) {
        // pivot: least valuation over the active block, lowest (row, col) tie-break
        std::optional<Rational> best;
        size_t pi = 0, pj = 0;
        size_t active_rows = a.rows - (k - corner);
        size_t active_cols = a.cols - (k - corner);
        for (size_t i = 0; i < active_rows; ++i)
            for (size_t j = 0; j < active_cols; ++j) {
                auto val = F.valuation(d.at(i, j));
                if (!val) continue;
                if (!best || *val < *best) { best = *val; pi = i; pj = j; }
            }
        if (!best) break; // all remaining entries are zero at precision: infinite divisors
        {
            const auto& piv = d.at(pi, pj);
            if (!(*best < piv.prec))
                throw precision_error("SNF pivot valuation not below its precision; raise N");
        }
        // move pivot to the lower-right corner of the active block
        size_t ri = active_rows - 1, rj = active_cols - 1;
        if (pi != ri) {
            for (size_t j = 0; j < a.cols; ++j) std::swap(d.at(pi, j), d.at(ri, j));
            for (size_t j = 0; j < a.rows; ++j) std::swap(u.at(pi, j), u.at(ri, j));
        }
        if (pj != rj) {
            for (size_t i = 0; i < a.rows; ++i) std::swap(d.at(i, pj), d.at(i, rj));
            for (size_t i = 0; i < a.cols; ++i) std::swap(v.at(i, pj), v.at(i, rj));
        }
        // normalize the pivot to the monomial t^gamma
        PuiseuxElem unit = F.shift(d.at(ri, rj), -*best); // valuation-0 unit
        PuiseuxElem unit_inv = F.invert_unit(unit);
        for (size_t j = 0; j < a.cols; ++j) d.at(ri, j) = F.mul(unit_inv, d.at(ri, j));
        for (size_t j = 0; j < a.rows; ++j) u.at(ri, j) = F.mul(unit_inv, u.at(ri, j));
        // clear the pivot column by row operations
        for (size_t i = 0; i + 1 < active_rows; ++i) {
            if (F.is_zero(d.at(i, rj))) continue;
            PuiseuxElem q = F.divide(d.at(i, rj), d.at(ri, rj));
            for (size_t j = 0; j < a.cols; ++j)
                d.at(i, j) = F.sub(d.at(i, j), F.mul(q, d.at(ri, j)));
            for (size_t j = 0; j < a.rows; ++j)
                u.at(i, j) = F.sub(u.at(i, j), F.mul(q, u.at(ri, j)));
        }
        // clear the pivot row by column operations
        for (size_t j = 0; j + 1 < active_cols; ++j) {
            if (F.is_zero(d.at(ri, j))) continue;
            PuiseuxElem q = F.divide(d.at(ri, j), d.at(ri, rj));
            for (size_t i = 0; i < a.rows; ++i)
                d.at(i, j) = F.sub(d.at(i, j), F.mul(q, d.at(i, rj)));
            for (size_t i = 0; i < a.cols; ++i)
                v.at(i, j) = F.sub(v.at(i, j), F.mul(q, v.at(i, rj)));
        }
        --corner;
    }

    // pivots were placed at (rows-P+i, cols-P+i); move them onto the main
    // diagonal behind the zero block so diag reads infinite-then-nonincreasing
    size_t processed = k - corner;
    size_t zeros = k - processed;
    if (a.rows != a.cols && processed > 0) {
        auto permute = [&](size_t total, size_t start_old) {
            std::vector<size_t> perm(total);
            std::vector<bool> used(total, false);
            for (size_t j = 0; j < processed; ++j) {
                perm[zeros + j] = start_old + j;
                used[start_old + j] = true;
            }
            size_t fill = 0;
            for (size_t pos = 0; pos < total; ++pos) {
                if (pos >= zeros && pos < zeros + processed) continue;
                while (used[fill]) ++fill;
                perm[pos] = fill;
                used[fill] = true;
            }
            return perm;
        };
        std::vector<size_t> rperm = permute(a.rows, a.rows - processed);
        std::vector<size_t> cperm = permute(a.cols, a.cols - processed);
        MatrixOverO nd = make_matrix(F, a.rows, a.cols);
        MatrixOverO nu = make_matrix(F, a.rows, a.rows);
        MatrixOverO nv = make_matrix(F, a.cols, a.cols);
        for (size_t i = 0; i < a.rows; ++i)
            for (size_t j = 0; j < a.cols; ++j) nd.at(i, j) = d.at(rperm[i], cperm[j]);
        for (size_t i = 0; i < a.rows; ++i)
            for (size_t j = 0; j < a.rows; ++j) nu.at(i, j) = u.at(rperm[i], j);
        for (size_t i = 0; i < a.cols; ++i)
            for (size_t j = 0; j < a.cols; ++j) nv.at(i, j) = v.at(i, cperm[j]);
        d = std::move(nd);
        u = std::move(nu);
        v = std::move(nv);
    }

    res.diag.resize(k);
    res.rank = 0;
    for (size_t i = 0; i < k; ++i) {
        auto val = F.valuation(res.d.at(i, i));
        res.diag[i] = val;
        if (val) ++res.rank;
    }
    // nonincreasing with infinite entries first, by construction
    for (size_t i = 0; i + 1 < k; ++i) {
        if (!res.diag[i]) continue;
        if (res.diag[i + 1] && *res.diag[i] < *res.diag[i + 1])
            throw error("SNF postcondition violated: diagonal not sorted");
        if (!res.diag[i + 1]) throw error("SNF postcondition violated: zero after nonzero");
    }
    return res;
}

namespace {

std::optional<Rational> det_valuation_rec(const PuiseuxField& F, const MatrixOverO& a) {
    // exact determinant by cofactor expansion along the first row
    size_t n = a.rows;
    std::vector<size_t> cols(n);
    for (size_t j = 0; j < n; ++j) cols[j] = j;

    struct Rec {
        const PuiseuxField& F;
        const MatrixOverO& a;
        PuiseuxElem run(size_t row, std::vector<size_t>& cs) {
            if (cs.size() == 1) return a.at(row, cs[0]);
            PuiseuxElem acc = F.zero_at(Rational(1));
            bool first = true;
            for (size_t idx = 0; idx < cs.size(); ++idx) {
                size_t j = cs[idx];
                std::vector<size_t> rest;
                rest.reserve(cs.size() - 1);
                for (size_t t = 0; t < cs.size(); ++t)
                    if (t != idx) rest.push_back(cs[t]);
                PuiseuxElem term = F.mul(a.at(row, j), run(row + 1, rest));
                if (idx % 2) term = F.neg(term);
                acc = first ? term : F.add(acc, term);
                first = false;
            }
            return acc;
        }
    } rec{F, a};

    PuiseuxElem det = rec.run(0, cols);
    return F.valuation(det);
}

} // namespace

std::optional<Rational> det_valuation(const PuiseuxField& F, const MatrixOverO& a) {
    if (a.rows != a.cols) throw input_error("det_valuation needs a square matrix");
    if (a.rows == 0) return Rational(0);
    if (a.rows > 7) throw input_error("det_valuation limited to size <= 7");
    return det_valuation_rec(F, a);
}

CokernelShape cokernel_divisors(const PuiseuxField& F, const MatrixOverO& a) {
    SnfResult s = smith_normal_form(F, a);
    CokernelShape out;
    out.divisors = s.finite_divisors();
    out.free_rank = a.rows - s.rank;
    return out;
}

MatrixOverO inverse_unimodular(const PuiseuxField& F, const MatrixOverO& m) {
    if (m.rows != m.cols) throw input_error("inverse of a non-square matrix");
    size_t n = m.rows;
    MatrixOverO a = m;
    MatrixOverO inv = identity_matrix(F, n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = n;
        for (size_t i = col; i < n; ++i)
            if (F.is_unit(a.at(i, col))) { piv = i; break; }
        if (piv == n) throw input_error("matrix is not invertible over O");
        if (piv != col) {
            for (size_t j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        }
        PuiseuxElem s = F.invert_unit(a.at(col, col));
        for (size_t j = 0; j < n; ++j) {
            a.at(col, j) = F.mul(s, a.at(col, j));
            inv.at(col, j) = F.mul(s, inv.at(col, j));
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || F.is_zero(a.at(i, col))) continue;
            PuiseuxElem q = a.at(i, col);
            for (size_t j = 0; j < n; ++j) {
                a.at(i, j) = F.sub(a.at(i, j), F.mul(q, a.at(col, j)));
                inv.at(i, j) = F.sub(inv.at(i, j), F.mul(q, inv.at(col, j)));
            }
        }
    }
    return inv;
}

MatrixOverO column_lattice_basis(const PuiseuxField& F, const MatrixOverO& gens) {
    size_t n = gens.rows;
    SnfResult s = smith_normal_form(F, gens);
    if (s.rank < n)
        throw input_error("column lattice is not of full rank");
    // span(gens) = span(u^{-1} dtilde) with dtilde the left n x n block of d
    MatrixOverO uinv = inverse_unimodular(F, s.u);
    MatrixOverO dt = make_matrix(F, n, n);
    for (size_t i = 0; i < n; ++i) dt.at(i, i) = s.d.at(i, i);
    return mat_mul(F, uinv, dt);
}

MatrixOverO preimage_lattice(const PuiseuxField& F, const MatrixOverO& h,
                             const std::vector<Rational>& delta) {
    size_t b = h.rows, a = h.cols;
    if (delta.size() != b) throw input_error("presentation size mismatch");
    // solutions (x, y) of h x = diag(t^delta) y; project onto x
    MatrixOverO w = make_matrix(F, b, a + b);
    for (size_t i = 0; i < b; ++i) {
        for (size_t j = 0; j < a; ++j) w.at(i, j) = h.at(i, j);
        w.at(i, a + i) = F.neg(F.monomial(F.coeff_field().one(), delta[i]));
    }
    SnfResult s = smith_normal_form(F, w);
    // kernel of the diagonalized map: coordinates past the rank
    std::vector<size_t> free_cols;
    for (size_t j = 0; j < a + b; ++j) {
        if (j < s.diag.size() && s.diag[j]) continue;
        free_cols.push_back(j);
    }
    MatrixOverO gens = make_matrix(F, a, free_cols.size());
    for (size_t c = 0; c < free_cols.size(); ++c)
        for (size_t i = 0; i < a; ++i) gens.at(i, c) = s.v.at(i, free_cols[c]);
    return column_lattice_basis(F, gens);
}

CokernelShape lattice_quotient(const PuiseuxField& F, const MatrixOverO& outer,
                               const MatrixOverO& inner) {
    if (outer.rows != outer.cols || inner.rows != inner.cols || outer.rows != inner.rows)
        throw input_error("lattice bases must be square of equal size");
    size_t n = outer.rows;
    if (n == 0) return CokernelShape{EldivSeq{}, 0};
    // outer = u^{-1} dtilde from its own SNF; express inner in that basis:
    // outer^{-1} inner = dtilde^{-1} u inner, computed by exact monomial shifts
    SnfResult s = smith_normal_form(F, outer);
    if (s.rank < n) throw input_error("outer lattice not of full rank");
    MatrixOverO ui = mat_mul(F, s.u, inner);
    MatrixOverO rel = make_matrix(F, n, n);
    for (size_t i = 0; i < n; ++i) {
        Rational g = *s.diag[i];
        for (size_t j = 0; j < n; ++j) {
            const PuiseuxElem& e = ui.at(i, j);
            if (F.is_zero(e)) {
                if (!(e.prec - g > Rational(0)))
                    throw precision_error("lattice quotient exhausts precision; raise N");
                rel.at(i, j) = F.zero_at(e.prec - g);
                continue;
            }
            if (*F.valuation(e) < g)
                throw input_error("inner lattice is not contained in outer lattice");
            rel.at(i, j) = F.shift(e, -g);
        }
    }
    return cokernel_divisors(F, rel);
}

} // namespace almostperiods
