// Serial reference sweeps against the OpenMP sweeps on the census and
// box kernels. Prints wall time per run and checks that the outputs agree.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

#include <omp.h>

#include "ecff/census.hpp"
#include "ecff/experiments.hpp"

using namespace ecff;

namespace {

template <class Fn>
double time_it(Fn&& fn)
{
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const std::string& name, double serial, double parallel, bool same)
{
    std::cout << name << ": serial " << serial << " s, omp(" << omp_get_max_threads() << ") " << parallel
              << " s, speedup " << serial / parallel << (same ? "" : "  MISMATCH") << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    const unsigned n = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 4;
    bool ok = true;

    for (std::uint32_t ell : {2u, 3u}) {
        CensusOptions s, par;
        s.serial = true;
        CensusTable a, b;
        const double ts = time_it([&] { a = omega_ell_census(5, ell == 2 ? n : n - 1, ell, s); });
        const double tp = time_it([&] { b = omega_ell_census(5, ell == 2 ? n : n - 1, ell, par); });
        report("census q=5 ell=" + std::to_string(ell), ts, tp, a.counts == b.counts);
        ok = ok && a.counts == b.counts;
    }

    RunConfig cfg;
    cfg.q = 11;
    cfg.x_min = cfg.x_max = 1;
    cfg.ells = std::vector<std::uint32_t>{2};
    DensityReport da, db;
    cfg.serial = true;
    const double ts = time_it([&] { da = cmd_density(cfg); });
    cfg.serial = false;
    const double tp = time_it([&] { db = cmd_density(cfg); });
    const bool same = da.rows[0].per_ell[0].not_certified == db.rows[0].per_ell[0].not_certified &&
                      da.rows[0].union_count == db.rows[0].union_count;
    report("density q=11 x=1 ell=2", ts, tp, same);
    ok = ok && same;
    return ok ? 0 : 1;
}
