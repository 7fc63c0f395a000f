// Compares the serial reference path of the Koszul table builder against the
// OpenMP-parallel one on a few growing configurations, checking that both
// produce identical tables.
//
//   ./koszul_bench [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "almostperiods/json_io.hpp"
#include "almostperiods/koszul.hpp"

namespace ap = almostperiods;

namespace {

double run_once(long long p, int n, int L, int m, bool parallel, std::string& digest) {
    ap::TableOptions opts;
    opts.budget = 1u << 26;
    opts.parallel = parallel;
    auto start = std::chrono::steady_clock::now();
    ap::CohomTable t = ap::full_table(p, n, L, m, opts);
    auto stop = std::chrono::steady_clock::now();
    digest = ap::cohom_table_to_json(t).dump();
    return std::chrono::duration<double>(stop - start).count();
}

} // namespace

int main(int argc, char** argv) {
    int reps = argc > 1 ? std::atoi(argv[1]) : 3;
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both paths run serially\n");
#endif
    struct Cfg {
        long long p;
        int n, L, m;
    };
    const Cfg cfgs[] = {{2, 2, 2, 2}, {3, 2, 2, 1}, {2, 3, 2, 1}, {2, 4, 1, 2}};
    std::printf("%-18s %12s %12s %8s %s\n", "config (p,n,L,m)", "serial[s]", "parallel[s]",
                "speedup", "tables");
    for (const Cfg& c : cfgs) {
        double ts = 0, tp = 0;
        bool match = true;
        for (int r = 0; r < reps; ++r) {
            std::string ds, dp;
            ts += run_once(c.p, c.n, c.L, c.m, false, ds);
            tp += run_once(c.p, c.n, c.L, c.m, true, dp);
            match = match && ds == dp;
        }
        ts /= reps;
        tp /= reps;
        std::printf("(%lld,%d,%d,%d)%9s %12.4f %12.4f %8.2f %s\n", c.p, c.n, c.L, c.m, "", ts,
                    tp, tp > 0 ? ts / tp : 0.0, match ? "identical" : "MISMATCH");
        if (!match) return 1;
    }
    return 0;
}
