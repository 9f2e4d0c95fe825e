#include "ecff/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ecff {

OmegaProfile OmegaProfile::constant(unsigned Q, double w)
{
    OmegaProfile p{std::vector<double>(Q + 1, w), std::vector<bool>(Q + 1, true)};
    p.omega[0] = 0;
    p.included[0] = false;
    return p;
}

OmegaProfile omega_from_census(std::uint64_t q, std::uint32_t ell, int cls, unsigned Q, const CensusOptions& opts)
{
    auto pk = prime_power(q);
    if (!pk) throw UnsupportedField(std::to_string(q) + " is not a prime power");
    OmegaProfile prof{std::vector<double>(Q + 1, 0.0), std::vector<bool>(Q + 1, false)};
    const bool mod_p = ell == pk->first;
    if (mod_p && (cls < 1 || cls >= static_cast<int>(ell))) throw InvalidArgument("t must lie in 1..p-1");
    std::uint32_t det = 1;
    if (!mod_p) {
        const ClassTable& t = class_table(ell);
        if (cls < 0 || cls >= static_cast<int>(t.classes().size())) throw InvalidArgument("no such class");
        det = t[cls].det;
    }
    for (unsigned d = 1; d <= Q; ++d) {
        if (!mod_p && powmod(q % ell, d, ell) != det) continue;
        const CensusTable c = mod_p ? omega_p_census(q, d, opts) : omega_ell_census(q, d, ell, opts);
        const std::uint64_t count = c.counts.at(static_cast<std::size_t>(mod_p ? cls - 1 : cls));
        prof.omega[d] = static_cast<double>(count) / std::pow(static_cast<double>(c.field_order), 2.0);
        prof.included[d] = true;
    }
    return prof;
}

double l_of_q(const OmegaProfile& profile, std::uint64_t q, unsigned Q)
{
    return l_of_q<double>(profile.omega, profile.included, q, Q);
}

double l_lower(const OmegaProfile& profile, std::uint64_t q, unsigned Q)
{
    double L = 1.0;
    for (unsigned d = 1; d <= Q && d < profile.omega.size(); ++d)
        if (profile.included[d]) L += static_cast<double>(necklace_count(q, d)) * profile.omega[d];
    return L;
}

double sieve_bound(const SieveParams& params, double L)
{
    if (L < 1.0) throw InvalidArgument("L(Q) is at least 1");
    const unsigned e = std::max(params.R + 1, 2 * params.Q + 2 * params.g);
    return std::pow(static_cast<double>(params.q), 2.0 * e) / L;
}

SieveReport sieve_report(const SieveParams& params, const OmegaProfile& profile)
{
    SieveReport r{};
    r.L_exact = l_of_q(profile, params.q, params.Q);
    r.L_lower = l_lower(profile, params.q, params.Q);
    r.bound = sieve_bound(params, r.L_exact);
    return r;
}

SieveReport verify_sieve(const std::vector<CurvePair>& W, const SieveParams& params, const OmegaProfile& profile)
{
    SieveReport r = sieve_report(params, profile);
    if (W.empty()) {
        r.actual = 0;
        return r;
    }
    const Field& base = W.front().a.field();
    if (base.order() != params.q) throw InvalidArgument("W lives over a different field");
    const auto& primes = prime_list(base, std::max(params.Q, 1u));
    for (std::size_t i = 0; i < primes.size() && !r.violation; ++i) {
        const PrimeIdeal& P = primes[i];
        if (P.degree > params.Q || !profile.included[P.degree]) continue;
        std::set<std::pair<std::uint64_t, std::uint64_t>> residues;
        for (const auto& w : W) residues.insert({reduce_mod_prime(w.a, P).v, reduce_mod_prime(w.b, P).v});
        const double cap = (1.0 - profile.omega[P.degree]) * std::pow(static_cast<double>(params.q), 2.0 * P.degree);
        // Counts are integers; allow for rounding in the product.
        if (static_cast<double>(residues.size()) > cap + 1e-9) {
            r.violation = i;
            r.violation_residues = residues.size();
        }
    }
    std::uint64_t actual = 0;
    for (const auto& w : W)
        if (w.a.degree() <= static_cast<int>(params.R) && w.b.degree() <= static_cast<int>(params.R)) ++actual;
    r.actual = actual;
    r.pass = !r.violation && static_cast<double>(actual) <= r.bound;
    return r;
}

} // namespace ecff
