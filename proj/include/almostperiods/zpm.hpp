#pragma once

#include <cstdint>
#include <vector>

#include "almostperiods/errors.hpp"

namespace almostperiods {

// Dense matrix over Z/p^m, entries reduced to [0, p^m).  p^m <= 2^30 so
// products fit in int64.  Zero-dimensional shapes are allowed internally.
struct ZpmMatrix {
    long long p = 2;
    int m = 1;
    long long q = 2; // p^m
    size_t rows = 0, cols = 0;
    std::vector<long long> a; // row-major

    long long& at(size_t i, size_t j) { return a[i * cols + j]; }
    long long at(size_t i, size_t j) const { return a[i * cols + j]; }
};

ZpmMatrix zpm_make(long long p, int m, size_t rows, size_t cols);
ZpmMatrix zpm_identity(long long p, int m, size_t n);
ZpmMatrix zpm_mul(const ZpmMatrix& x, const ZpmMatrix& y);
bool zpm_is_zero(const ZpmMatrix& x);
// p-adic valuation of x in [0, q), capped at m for x = 0
int zpm_val(long long x, long long p, int m);

struct HowellResult {
    ZpmMatrix h;        // nonzero Howell rows (canonical for the row span)
    ZpmMatrix u;        // invertible over Z/p^m, u * [input; 0 padding] = [h; 0]
    size_t padded_rows; // row count the transform u acts on
};

// Howell normal form: canonical row form over Z/p^m whose row span equals
// that of the input and is closed under the leading-coefficient structure.
// Internally the matrix is padded with zero rows so the span-saturation
// rows p^{m-a} * (pivot row) have somewhere to live; u is square of size
// padded_rows.
HowellResult howell_form(const ZpmMatrix& a);

// diagonal form u a v = diag(p^{e_i}) with u, v invertible over Z/p^m
struct ZpmDiagResult {
    ZpmMatrix d, u, v;
    std::vector<int> exponents; // e_i per diagonal position, m for zero entries
    size_t rank = 0;            // entries with e_i < m
};
ZpmDiagResult zpm_diagonalize(const ZpmMatrix& a);

// columns generate {x : a x = 0}
ZpmMatrix kernel_basis_cols(const ZpmMatrix& a);

// particular solution of a x = b (column vectors); empty when unsolvable
bool zpm_solve(const ZpmMatrix& a, const std::vector<long long>& b,
               std::vector<long long>& x);

// invariants of a finite Z/p^m-module: cyclic factors Z/p^{e}
struct CohomologyShape {
    std::vector<int> torsion_exponents; // 0 < e < m, nonincreasing
    size_t free_rank = 0;               // factors Z/p^m

    friend bool operator==(const CohomologyShape&, const CohomologyShape&) = default;
    // all cyclic exponents including the free ones, nonincreasing
    std::vector<int> all_exponents(int m) const;
};

// ker(d_out) / im(d_in) for consecutive maps of free Z/p^m-modules
// (d_out * d_in = 0 is checked)
CohomologyShape zpm_cohomology(const ZpmMatrix& d_in, const ZpmMatrix& d_out);

// invariants of coker(rel : (Z/p^m)^k -> (Z/p^m)^g), rel columns = relations
CohomologyShape zpm_coker_shape(const ZpmMatrix& rel, size_t gens);

} // namespace almostperiods
