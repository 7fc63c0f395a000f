#pragma once

#include <string>
#include <vector>

#include "almostperiods/modules.hpp"

namespace almostperiods {

enum class TowerPerturbation { none, wrong_qk, broken_middle, broken_phi };

// Tower data M_1, ..., M_kmax with reduction maps p_k : M_{k+1} -> M_k,
// multiplication maps q_k : M_k -> M_{k+1}, and the declared divisors of
// the Frobenius base changes M_k (x)_phi O/pi^{pk}.
struct TowerData {
    std::vector<FPTorsionModule> modules; // modules[k-1] = M_k
    std::vector<ModuleMap> p_maps;        // p_maps[k-1] = p_k, k = 1..kmax-1
    std::vector<ModuleMap> q_maps;        // q_maps[k-1] = q_k
    std::vector<EldivSeq> phi_declared;   // per k with pk <= kmax
};

struct TowerLevelReport {
    int k = 0;
    bool pq_is_pi = false;        // p_k q_k = multiplication by pi
    bool middle_exact = false;    // M_1 -> M_{k+1} -> M_k exact in the middle
    bool ses_exact = false;       // 0 -> M_1 -> M_{k+1} -> M_k -> 0
    bool lambda_additive = false;
    bool majorization_ok = false;
    bool divisor_growth = false;  // gamma_{M_{k+1}} = (k+1) gamma_{M_1}
};

struct TowerPhiReport {
    int k = 0;
    bool compatible = false; // declared divisors of M_k (x)_phi O/pi^{pk} equal gamma_{M_{pk}}
};

struct TowerReport {
    bool m1_finitely_generated = false;
    std::vector<TowerLevelReport> levels;
    std::vector<TowerPhiReport> phi;
    bool all_ok = false;
    std::string first_failure;
};

// canonical tower M_k = (O/pi^k)^r, optionally perturbed by one script
TowerData canonical_tower(const PuiseuxField& F, int r, int kmax,
                          TowerPerturbation pert = TowerPerturbation::none);

TowerReport frobenius_tower_check(const PuiseuxField& F, const TowerData& tower);

// convenience: build + check in one call
TowerReport frobenius_tower_check(const PuiseuxField& F, int r, int kmax,
                                  TowerPerturbation pert = TowerPerturbation::none);

} // namespace almostperiods
