#pragma once

// The two-dimensional large sieve over F_q[T].

#include <cstdint>
#include <optional>
#include <vector>

#include "ecff/arith.hpp"
#include "ecff/census.hpp"
#include "ecff/error.hpp"
#include "ecff/function_field.hpp"

namespace ecff {

struct SieveParams {
    std::uint64_t q;
    unsigned R;   // box exponent: |a|, |b| <= q^R
    unsigned Q;   // modulus degree cutoff
    unsigned g;   // genus parameter; enters the exponent only
};

/// omega[d] for d = 0..Q (index 0 unused); included[d] filters primes of
/// degree d in or out.
struct OmegaProfile {
    std::vector<double> omega;
    std::vector<bool> included;

    static OmegaProfile constant(unsigned Q, double w);
    unsigned max_degree() const { return static_cast<unsigned>(omega.size()) - 1; }
};

/// omega(d) = #Omega_{ell,C}(d) / q^{2d} for d <= Q, restricted to degrees
/// with q^d = det C (mod ell). For ell = p, `cls` is t in 1..p-1 and every
/// degree is included.
OmegaProfile omega_from_census(std::uint64_t q, std::uint32_t ell, int cls, unsigned Q,
                               const CensusOptions& opts = {});

/// L(Q) by a DP over the prime counts per degree: the generating function
/// prod_d (1 + w_d z^d)^{pi(d)}, w = omega/(1 - omega), summed over z^0..z^Q.
/// Num is double or an exact rational type.
template <class Num>
Num l_of_q(const std::vector<Num>& omega, const std::vector<bool>& included, std::uint64_t q, unsigned Q)
{
    if (omega.size() < Q + 1u || included.size() < Q + 1u) throw InvalidArgument("profile shorter than Q");
    std::vector<Num> c(Q + 1, Num(0));
    c[0] = Num(1);
    for (unsigned d = 1; d <= Q; ++d) {
        if (!included[d] || omega[d] == Num(0)) continue;
        if (omega[d] == Num(1)) throw DivisionByZero("omega = 1 at degree " + std::to_string(d));
        const Num w = omega[d] / (Num(1) - omega[d]);
        const std::uint64_t pi = necklace_count(q, d);
        // Terms with k d <= Q of sum_k binom(pi, k) w^k z^{dk}.
        std::vector<Num> next(c);
        Num coef(1);
        for (std::uint64_t k = 1; k * d <= Q && k <= pi; ++k) {
            coef = coef * Num(pi - k + 1) / Num(k) * w;
            for (unsigned n = Q; n >= k * d; --n) next[n] += coef * c[n - k * d];
        }
        c = std::move(next);
    }
    Num L(0);
    for (const auto& v : c) L += v;
    return L;
}

double l_of_q(const OmegaProfile& profile, std::uint64_t q, unsigned Q);

/// 1 + sum over included primes of degree <= Q of omega(deg P).
double l_lower(const OmegaProfile& profile, std::uint64_t q, unsigned Q);

/// q^{2 max(R + 1, 2Q + 2g)} / L.
double sieve_bound(const SieveParams& params, double L);

struct SieveReport {
    double L_exact;
    double L_lower;
    double bound;
    std::optional<std::uint64_t> actual;
    bool pass = true;
    std::optional<std::size_t> violation;      // index into prime_list(base, Q)
    std::uint64_t violation_residues = 0;      // #W_P at the offending prime
};

SieveReport sieve_report(const SieveParams& params, const OmegaProfile& profile);

/// Checks #W_P <= (1 - omega_P) q^{2 deg P} for every included prime of
/// degree <= Q, counts the points of W in the box of exponent R and compares
/// with the bound.
SieveReport verify_sieve(const std::vector<CurvePair>& W, const SieveParams& params, const OmegaProfile& profile);

} // namespace ecff
