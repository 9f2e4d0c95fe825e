#pragma once

// Exhaustive Frobenius censuses over F_{q^n}^2 and their comparison with
// the finite-field Chebotarev estimate.

#include <cstdint>
#include <string>
#include <vector>

#include "ecff/gl2.hpp"

namespace ecff {

inline constexpr std::uint64_t kDefaultCensusBudget = std::uint64_t{1} << 26;

struct CensusOptions {
    enum class Path { automatic, fast, generic };

    std::uint64_t budget = kDefaultCensusBudget;
    int threads = 0;          // <= 0: OpenMP default
    bool serial = false;      // run the serial reference sweep
    Path path = Path::automatic;
};

struct CensusTable {
    std::uint64_t q;
    unsigned n;
    std::uint32_t ell;        // equals the characteristic for a mod-p census
    bool mod_p;
    std::uint64_t field_order;                 // q^n
    std::vector<std::uint64_t> counts;         // by class id, or by t - 1 for mod p
    std::uint64_t supersingular = 0;
    std::uint64_t total = 0;                   // nonsingular pairs
    std::vector<std::string> warnings;
};

/// Omega_{ell,C}(n) for every class C of GL_2(Z/ell). For ell = 2 the
/// automatic path classifies by the number of roots of x^3 + ax + b.
CensusTable omega_ell_census(std::uint64_t q, unsigned n, std::uint32_t ell, const CensusOptions& opts = {});

/// Omega_{p,t}(n): ordinary curves land on t = trace mod p, supersingular
/// ones on t = 1 and in the separate supersingular tally.
CensusTable omega_p_census(std::uint64_t q, unsigned n, const CensusOptions& opts = {});

struct DeviationRow {
    int class_id;            // t for a mod-p census
    std::uint32_t trace;
    std::uint32_t det;       // 1 for a mod-p census
    std::uint64_t count;
    double density;          // count / q^{2n}
    double target;           // #C / #SL_2 or 1/(p-1)
    double deviation;
    double envelope;         // q^{3n/2} sqrt(#C #GL_2^3) / q^{2n}, or q^{3n/2}(p-1)^{3/2} / q^{2n}
};

struct DeviationReport {
    std::vector<DeviationRow> rows;   // eligible classes only
    double fitted_constant = 0.0;     // max deviation / envelope
    double max_deviation = 0.0;
};

DeviationReport chebotarev_report(const CensusTable& census);

} // namespace ecff
