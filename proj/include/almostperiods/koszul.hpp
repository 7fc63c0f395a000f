#pragma once

#include <optional>
#include <string>
#include <vector>

#include "almostperiods/cyclotomic.hpp"

namespace almostperiods {

// Koszul complex on n commuting scalars over the cyclotomic coefficient ring,
// flattened to Z/p^m via multiplication matrices.
struct KoszulSpec {
    int n = 1;
    CyclotomicRing ring;
    std::vector<CyclotomicRing::Scalar> scalars; // size n
};

// boundary maps d^q : wedge^q -> wedge^{q+1}, q = 0..n-1, with the first map
// (c_1, ..., c_n)^T; subsets of {1..n} ordered lexicographically
std::vector<ZpmMatrix> koszul_matrices(const KoszulSpec& spec);

// cohomology at degree q of the Koszul complex, matrix route
CohomologyShape koszul_cohomology_q(const KoszulSpec& spec, int q);

// closed form: every H^q is (O/lambda^w)^{binom(n,q)} with
// w = min(m * phi, min_k v_lambda(c_k)); converted to Z/p^m invariants
CohomologyShape koszul_closed_form(const CyclotomicRing& ring,
                                   const std::vector<std::optional<Rational>>& lambda_vals,
                                   int n, int q);

struct KoszulLine {
    std::vector<long long> tuple_num; // i_k = tuple_num[k] / p^L
    long long tuple_den = 1;
    int level = 0;
    std::vector<CohomologyShape> matrix_shapes; // per q = 0..n
    std::vector<CohomologyShape> closed_shapes; // per q = 0..n
    std::optional<Rational> annihilator_val;    // v(zeta_{p^level} - 1); nullopt on the integral line
    bool annihilated = true;                    // (zeta_{p^level}-1) H^q = 0, all q (vacuous on the integral line)
    bool matches_closed_form = false;
};

// cohomology of one monomial line; tuple entries are a_k / p^L in [0, 1)
KoszulLine line_cohomology(long long p, int m, int n, int L,
                           const std::vector<long long>& tuple_num);

struct CohomTable {
    long long p = 2;
    int n = 1, L = 1, m = 1;
    std::vector<KoszulLine> lines; // lexicographic in tuple_num
    bool integral_ok = false;      // zero line contributes free ranks binom(n, q)
    bool annihilation_ok = false;  // every other line killed by zeta_{p^level} - 1
    bool closed_form_ok = false;   // matrix route equals the closed form everywhere
    // almost-finite-presentation witness: for eps = v(zeta_{p^l} - 1) the
    // lines surviving multiplication by p^eps are exactly those of level < l,
    // p^{(l-1)n} of them
    struct Survivors {
        Rational eps;
        size_t count = 0;
        size_t expected = 0;
    };
    std::vector<Survivors> survivors;
    bool survivors_ok = false;
    bool all_ok = false;
};

struct TableOptions {
    size_t budget = 1u << 20; // cell cap: p^{Ln} * 2^n
    bool parallel = false;
};

// per-line table over all tuples in ([0,1) cap p^{-L} Z)^n.  The parallel
// path distributes lines over OpenMP threads and assembles the summary in
// deterministic tuple order; the serial path is the reference.
CohomTable full_table(long long p, int n, int L, int m, const TableOptions& opts = {});

struct FiniteDifferenceReport {
    int deg_bound = 0;
    bool kernel_is_constants = false;
    bool surjective_below_bound = false;
    bool all_ok = false;
    std::string detail;
};

// the operator P -> P(V+1) - P(V) on rational polynomials of degree <=
// deg_bound: kernel = constants, surjective onto degree < deg_bound with
// explicit falling-factorial preimages
FiniteDifferenceReport finite_difference_cohomology(int deg_bound);

} // namespace almostperiods
