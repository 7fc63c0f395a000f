#pragma once

#include <optional>
#include <vector>

#include "almostperiods/eldiv.hpp"
#include "almostperiods/puiseux.hpp"

namespace almostperiods {

// Dense matrix over the valuation ring O (all entries of valuation >= 0,
// or zero-at-precision).  Zero-dimensional shapes are allowed internally;
// the JSON surface requires positive dimensions.
struct MatrixOverO {
    size_t rows = 0, cols = 0;
    std::vector<PuiseuxElem> entries; // row-major

    PuiseuxElem& at(size_t i, size_t j) { return entries[i * cols + j]; }
    const PuiseuxElem& at(size_t i, size_t j) const { return entries[i * cols + j]; }
};

MatrixOverO make_matrix(const PuiseuxField& F, size_t rows, size_t cols);
MatrixOverO identity_matrix(const PuiseuxField& F, size_t n);
MatrixOverO mat_mul(const PuiseuxField& F, const MatrixOverO& a, const MatrixOverO& b);
MatrixOverO mat_sub(const PuiseuxField& F, const MatrixOverO& a, const MatrixOverO& b);
// throws input_error if some entry has negative valuation
void check_integral(const PuiseuxField& F, const MatrixOverO& a);

// Result of the Smith normal form u * a * v = d with d diagonal of monomials
// t^gamma, unit-determinant u, v.  Diagonal valuations are nonincreasing from
// the top-left; rank deficiency shows up as zero diagonal entries (reported
// as nullopt = "infinite divisor"), which sort before all finite ones.
struct SnfResult {
    MatrixOverO d, u, v;
    std::vector<std::optional<Rational>> diag; // per diagonal position
    size_t rank = 0;                           // number of finite entries

    // finite part, nonincreasing
    EldivSeq finite_divisors() const;
};

// The Cartan-decomposition algorithm: the pivot is the entry of least
// valuation (the gcd of all entries), ties broken by lowest (row, col);
// it is moved to the lower-right corner of the active block, its row and
// column are cleared, and the block shrinks.  Works for rectangular shapes.
SnfResult smith_normal_form(const PuiseuxField& F, const MatrixOverO& a);

// Valuation of the exact determinant, computed by cofactor expansion so it
// stays an independent route from the SNF diagonal.  nullopt when the
// determinant is zero at the working precision.
std::optional<Rational> det_valuation(const PuiseuxField& F, const MatrixOverO& a);

struct CokernelShape {
    EldivSeq divisors; // torsion part
    size_t free_rank;  // corank of the presentation
};

// Divisors of coker(a : O^cols -> O^rows).
CokernelShape cokernel_divisors(const PuiseuxField& F, const MatrixOverO& a);

// Inverse of a matrix that is invertible over O (unit determinant).
MatrixOverO inverse_unimodular(const PuiseuxField& F, const MatrixOverO& u);

// Basis of the full-rank column lattice spanned by gens (rows x k, k >= rank
// = rows); returns a square rows x rows matrix whose columns are a basis.
MatrixOverO column_lattice_basis(const PuiseuxField& F, const MatrixOverO& gens);

// Basis of the preimage lattice {x in O^a : h x in diag(t^delta) O^b}.
// delta entries are the target presentation exponents.
MatrixOverO preimage_lattice(const PuiseuxField& F, const MatrixOverO& h,
                             const std::vector<Rational>& delta);

// Divisors of the quotient of two full-rank lattices inner <= outer in O^n,
// given by their basis matrices.
CokernelShape lattice_quotient(const PuiseuxField& F, const MatrixOverO& outer,
                               const MatrixOverO& inner);

} // namespace almostperiods
