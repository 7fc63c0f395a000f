#pragma once

#include <optional>
#include <string>
#include <vector>

#include "almostperiods/matrix_o.hpp"

namespace almostperiods {

// closed = O/pi^gamma, open = O/I_gamma.  The distinction is invisible to
// the approx-equivalence classes and is erased in EldivSeq; it is carried
// here so duality can swap it.
enum class DivisorFlag { closed, open };

// Finitely presented torsion module + sum of O/pi^gamma_i (closed) and
// O/I_gamma_i (open) factors.  A zero gamma is allowed only when flagged
// open (O/I_0 = O/m, almost zero); a closed zero factor is the zero module
// and is never stored.
struct FPTorsionModule {
    std::vector<Rational> gammas; // nonincreasing, >= 0
    std::vector<DivisorFlag> flags;

    size_t rank() const { return gammas.size(); }
    EldivSeq divisors() const;
    std::string str() const;
};

FPTorsionModule make_module(std::vector<Rational> gammas,
                            std::vector<DivisorFlag> flags = {});
FPTorsionModule module_from_divisors(const EldivSeq& d);

// Map of torsion modules relative to the standard cyclic decompositions:
// entry (i, j) acts O/pi^{gamma_src,j} -> O/pi^{gamma_tgt,i}.  Well-defined
// iff v(x_ij) >= max(gamma_tgt,i - gamma_src,j, 0) wherever x_ij is visible.
struct ModuleMap {
    FPTorsionModule source, target;
    MatrixOverO matrix; // target.rank() x source.rank()
};

ModuleMap make_map(const PuiseuxField& F, FPTorsionModule source,
                   FPTorsionModule target, MatrixOverO matrix);
bool map_well_defined(const PuiseuxField& F, const ModuleMap& f);

// composite g after f
ModuleMap compose(const PuiseuxField& F, const ModuleMap& g, const ModuleMap& f);
// equality as maps: entries agree modulo the target presentation
bool maps_equal(const PuiseuxField& F, const ModuleMap& f, const ModuleMap& g);
bool is_zero_map(const PuiseuxField& F, const ModuleMap& f);

// duality Hom(-, K/O) at the bookkeeping level: divisors kept, flags swapped
FPTorsionModule dual(const FPTorsionModule& m);

// almost-zero test: gamma_M = 0
bool almost_zero(const FPTorsionModule& m);

FPTorsionModule map_cokernel(const PuiseuxField& F, const ModuleMap& f);
EldivSeq map_image_divisors(const PuiseuxField& F, const ModuleMap& f);
EldivSeq map_kernel_divisors(const PuiseuxField& F, const ModuleMap& f);

// metric criterion for M approx_eps M'
bool approx_eq(const FPTorsionModule& m, const FPTorsionModule& n, const Rational& eps);

// diagonal witness pair (f : M -> N, g : N -> M) with f g = g f = t^eps,
// or nullopt when approx_eq fails
struct WitnessPair {
    ModuleMap f, g;
};
std::optional<WitnessPair> witness_maps(const PuiseuxField& F, const FPTorsionModule& m,
                                        const FPTorsionModule& n, const Rational& eps);

// full report for a candidate short exact sequence 0 -> M' -f-> M -g-> M'' -> 0
struct ExactReport {
    bool is_complex = false;    // g f = 0
    bool f_injective = false;
    bool g_surjective = false;
    bool middle_exact = false;  // ker g = im f
    EldivSeq middle_homology;   // divisors of ker g / im f (when a complex)
    Rational lambda_mid;        // lambda(M)
    Rational lambda_sum;        // lambda(M') + lambda(M'')
    bool lambda_additive = false;
    bool majorization_ok = false; // gamma_M <= gamma_M' + gamma_M''
    bool exact = false;
    std::string failure;        // first failing check, empty when exact
};

ExactReport exact_sequence_check(const PuiseuxField& F, const ModuleMap& f,
                                 const ModuleMap& g);

} // namespace almostperiods
