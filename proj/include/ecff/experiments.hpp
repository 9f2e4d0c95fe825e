#pragma once

// Drivers behind the CLI subcommands. Each returns a plain report struct and
// has a CSV and a JSON writer; CSV files open with '#' lines holding the run
// configuration, so the body alone is comparable across thread counts.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ecff/census.hpp"
#include "ecff/galois_sampler.hpp"
#include "ecff/gl2.hpp"
#include "ecff/sieve.hpp"

namespace ecff {

enum class Format { csv, json };

struct RunConfig {
    std::uint64_t q = 11;
    unsigned x_min = 0;
    unsigned x_max = 2;
    unsigned D = 0;                      // 0: default_scan_depth, capped at kMaxDefaultDepth
    std::optional<std::vector<std::uint32_t>> ells;   // unset: every prime below c_of_g(g), p included
    unsigned g = 0;
    int threads = 0;
    bool serial = false;
    std::uint64_t budget = kDefaultBoxBudget;
    std::uint64_t sample = 100000;       // curves drawn when the box exceeds the budget
    std::uint64_t seed = 1;
    Format format = Format::csv;

    /// "key=value ..." line for output headers.
    std::string describe() const;
};

/// The uncapped default depth can reach ord_13(q) = 12 for q = 11; the
/// drivers cap it here and say so in the output header.
inline constexpr unsigned kMaxDefaultDepth = 3;

/// The ell list after defaults (sorted, duplicates removed, validated).
std::vector<std::uint32_t> resolve_ells(const RunConfig& cfg);
/// The scan depth after defaults.
unsigned resolve_depth(const RunConfig& cfg, const std::vector<std::uint32_t>& ells);

struct EllCount {
    std::uint32_t ell;
    std::uint64_t not_certified;
    std::optional<std::uint64_t> exact;   // ell = 2 only
};

struct DensityRow {
    unsigned x;
    std::uint64_t box;          // q^{2x+2}
    std::uint64_t curves;       // #C(x), or nonsingular curves in the sample
    bool sampled;
    std::vector<EllCount> per_ell;
    std::uint64_t union_count;  // not certified for at least one ell
    double reference;           // x / q^{x/2}
};

struct DensityReport {
    std::uint64_t q;
    unsigned D;
    std::vector<std::uint32_t> ells;
    HypothesisResult hypothesis;
    std::vector<DensityRow> rows;
    double fitted_constant;     // union ratio / reference at the largest x > 0
    std::vector<std::string> warnings;
};

DensityReport cmd_density(const RunConfig& cfg);
void write_density(std::ostream& os, const DensityReport& rep, const RunConfig& cfg);

struct CensusRun {
    CensusTable table;
    DeviationReport deviation;
};

CensusRun cmd_census(const RunConfig& cfg, unsigned n, std::uint32_t ell);
void write_census(std::ostream& os, const CensusRun& run, const RunConfig& cfg);

void write_classes(std::ostream& os, std::uint32_t ell, Format format);

struct SieveRun {
    SieveParams params;
    std::uint32_t ell;
    int cls;
    OmegaProfile profile;
    SieveReport report;
    bool with_w;
};

/// Profile from censuses; with `with_w` and ell = 2, also builds
/// W = {(a, b) in C(R) : exact mod-2 image misses the class} and verifies it.
SieveRun cmd_sieve(const RunConfig& cfg, unsigned R, unsigned Q, std::uint32_t ell, int cls, bool with_w);
void write_sieve(std::ostream& os, const SieveRun& run, const RunConfig& cfg);

/// Curves in C(x) whose exact mod-2 image misses the GL_2(F_2) class `cls`.
std::vector<CurvePair> w_mod2(std::uint64_t q, unsigned x, int cls, const RunConfig& cfg);

HypothesisResult cmd_check(std::uint64_t p, std::uint64_t g);
void write_check(std::ostream& os, std::uint64_t p, std::uint64_t g, const HypothesisResult& r, Format format);

struct TorsionRow {
    unsigned x;
    std::uint64_t curves;
    std::uint64_t nontrivial;          // bound > 1
    std::uint64_t b_zero;              // curves with b = 0
    std::uint64_t b_zero_odd;          // of those, odd bound (must be 0)
    std::uint64_t early_stops;
    std::map<std::uint64_t, std::uint64_t> histogram;
};

struct TorsionReport {
    std::uint64_t q;
    unsigned D;
    std::vector<TorsionRow> rows;
};

TorsionReport cmd_torsion(const RunConfig& cfg);
void write_torsion(std::ostream& os, const TorsionReport& rep, const RunConfig& cfg);

/// One JSON object: the curve, its records and the image report.
void write_scan(std::ostream& os, const GlobalCurve& E, unsigned D, const std::vector<std::uint32_t>& ells);

} // namespace ecff
