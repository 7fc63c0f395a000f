#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "almostperiods/json_io.hpp"
#include "almostperiods/rng.hpp"

namespace almostperiods {

// Deterministic randomized verification suites.  Each suite checks one of
// the library's load-bearing identities on seeded random instances and
// reports the first violating input when it fails.
struct SuiteOutcome {
    std::string name;
    bool pass = false;
    size_t checked = 0;
    std::string detail;        // first failing invariant + minimal reproducing input
    Json data;                 // suite-specific counters
};

const std::vector<std::string>& suite_names();

// runs one suite; parallel toggles OpenMP over independent instances
// (the outcome is identical either way)
SuiteOutcome run_suite(const std::string& name, uint64_t seed, bool parallel = false);

// all suites in order; the report is byte-stable for a fixed seed
Json run_all_suites(uint64_t seed, bool parallel = false);
bool report_all_pass(const Json& report);

// ---- deterministic random generators shared by the suites ----
struct RandomGen {
    SplitMix64 rng;

    explicit RandomGen(uint64_t seed) : rng(seed) {}

    // rational v + k/p^j with denominator dividing p^level_cap
    Rational exponent(const PuiseuxField& f, const Rational& lo, const Rational& hi,
                      int level_cap);
    // element with terms_max terms, valuation in [vlo, vhi]
    PuiseuxElem elem(const PuiseuxField& f, int terms_max, const Rational& vlo,
                     const Rational& vhi, int level_cap);
    PuiseuxElem nonzero_elem(const PuiseuxField& f, int terms_max, const Rational& vlo,
                             const Rational& vhi, int level_cap);
    PuiseuxElem unit(const PuiseuxField& f, int terms_max, int level_cap);
    MatrixOverO matrix(const PuiseuxField& f, size_t rows, size_t cols, int terms_max,
                       const Rational& vmax, int level_cap, int zero_weight = 8);
    MatrixOverO unimodular(const PuiseuxField& f, size_t n, int level_cap);
    FPTorsionModule module(const PuiseuxField& f, size_t max_rank, const Rational& vmax,
                           int level_cap);
    WittElem witt(const WittRing& w, int terms_max, const Rational& vmax, int level_cap);
};

} // namespace almostperiods
