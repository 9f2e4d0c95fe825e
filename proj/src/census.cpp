#include "ecff/census.hpp"

#include <cmath>

#include "ecff/arith.hpp"
#include "ecff/ec_finite.hpp"
#include "ecff/error.hpp"
#include "ecff/finite_field.hpp"
#include "ecff/kernels.hpp"

namespace ecff {

namespace {

const Field& census_field(std::uint64_t q, unsigned n, std::uint64_t budget)
{
    auto pk = prime_power(q);
    if (!pk) throw UnsupportedField(std::to_string(q) + " is not a prime power");
    if (n == 0) throw InvalidArgument("census degree must be positive");
    auto pairs = checked_pow(q, 2 * std::uint64_t{n}, budget);
    if (!pairs)
        throw BudgetExceeded("census over F_{" + std::to_string(q) + "^" + std::to_string(n) +
                             "}^2 exceeds the budget of " + std::to_string(budget) + " pairs");
    return *make_field(pk->first, pk->second * n);
}

Elem four_a_cubed(const Field& f, Elem a)
{
    return f.mul(f.from_int(4), f.mul(f.sqr(a), a));
}

bool singular(const Field& f, Elem four_a3, Elem b)
{
    return f.add(four_a3, f.mul(f.from_int(27), f.sqr(b))).v == 0;
}

std::int64_t mod_signed(std::int64_t v, std::int64_t m)
{
    std::int64_t r = v % m;
    return r < 0 ? r + m : r;
}

} // namespace

CensusTable omega_ell_census(std::uint64_t q, unsigned n, std::uint32_t ell, const CensusOptions& opts)
{
    const Field& F = census_field(q, n, opts.budget);
    const std::uint64_t p = F.characteristic();
    if (ell % p == 0) throw InvalidArgument("use omega_p_census for ell = p");
    const ClassTable& table = class_table(ell);
    const std::uint64_t Q = F.order();
    const std::uint32_t det = static_cast<std::uint32_t>(Q % ell);

    CensusTable out{q, n, ell, false, Q, {}, 0, 0, {}};
    const std::uint64_t sl2 = std::uint64_t{ell} * (ell + 1) * (ell - 1);
    if (sl2 % p == 0)
        out.warnings.push_back("p = " + std::to_string(p) + " divides #SL_2(Z/" + std::to_string(ell) +
                               "); the Chebotarev comparison is unsupported here");

    const bool fast = opts.path == CensusOptions::Path::fast ||
                      (opts.path == CensusOptions::Path::automatic && ell == 2);
    if (fast && ell != 2) throw InvalidArgument("the fast path exists for ell = 2 only");
    const std::size_t width = table.classes().size();

    kernels::Counters counts;
    if (fast) {
        const int id_split = *table.lookup(0, 1, true);
        const int id_one = *table.lookup(0, 1, false);
        const int id_none = *table.lookup(1, 1, false);
        counts = kernels::sweep(opts.serial, Q, width, opts.threads, [&](std::uint64_t row, kernels::Counters& acc) {
            const Elem a = F.element(row);
            const Elem a4 = four_a_cubed(F, a);
            std::vector<std::uint8_t> roots(Q, 0);
            for (std::uint64_t i = 0; i < Q; ++i) {
                const Elem x = F.element(i);
                const Elem b = F.neg(F.add(F.mul(F.sqr(x), x), F.mul(a, x)));
                ++roots[b.v];
            }
            for (std::uint64_t j = 0; j < Q; ++j) {
                if (singular(F, a4, F.element(j))) continue;
                const int id = roots[j] == 3 ? id_split : roots[j] == 1 ? id_one : id_none;
                ++acc[static_cast<std::size_t>(id)];
            }
        });
    } else {
        counts = kernels::sweep(opts.serial, Q, width, opts.threads, [&](std::uint64_t row, kernels::Counters& acc) {
            const Elem a = F.element(row);
            const Elem a4 = four_a_cubed(F, a);
            for (std::uint64_t j = 0; j < Q; ++j) {
                const Elem b = F.element(j);
                if (singular(F, a4, b)) continue;
                const std::int64_t trace = -character_sum(F, a, b);
                const std::uint32_t tr = static_cast<std::uint32_t>(mod_signed(trace, ell));
                const std::uint32_t disc = (tr * tr + 4 * ell * ell - 4 * det) % ell;
                std::optional<bool> scalar;
                if (disc == 0) {
                    const auto m = static_cast<unsigned>(mult_order(repeated_eigenvalue(ell, trace), ell));
                    scalar = torsion_rank(Curve{&F, a, b}, ell, m) == 2;
                }
                ++acc[static_cast<std::size_t>(frobenius_class(table, trace, det, scalar))];
            }
        });
    }
    out.counts = std::move(counts);
    for (auto c : out.counts) out.total += c;
    return out;
}

CensusTable omega_p_census(std::uint64_t q, unsigned n, const CensusOptions& opts)
{
    const Field& F = census_field(q, n, opts.budget);
    const std::uint32_t p = F.characteristic();
    const std::uint64_t Q = F.order();
    CensusTable out{q, n, p, true, Q, {}, 0, 0, {}};
    // Slot p - 1 carries the supersingular tally.
    auto counts = kernels::sweep(opts.serial, Q, p, opts.threads, [&](std::uint64_t row, kernels::Counters& acc) {
        const Elem a = F.element(row);
        const Elem a4 = four_a_cubed(F, a);
        for (std::uint64_t j = 0; j < Q; ++j) {
            const Elem b = F.element(j);
            if (singular(F, a4, b)) continue;
            const std::int64_t t = mod_signed(-character_sum(F, a, b), p);
            if (t == 0) {
                ++acc[0];
                ++acc[p - 1];
            } else {
                ++acc[static_cast<std::size_t>(t - 1)];
            }
        }
    });
    out.supersingular = counts[p - 1];
    counts.pop_back();
    out.counts = std::move(counts);
    for (auto c : out.counts) out.total += c;
    return out;
}

DeviationReport chebotarev_report(const CensusTable& census)
{
    DeviationReport rep;
    const double Q = static_cast<double>(census.field_order);
    const double pairs = Q * Q;
    if (census.mod_p) {
        const double pm1 = census.ell - 1.0;
        const double env = std::pow(pm1, 1.5) / std::sqrt(Q);
        for (std::uint32_t t = 1; t < census.ell; ++t) {
            DeviationRow r{static_cast<int>(t), t, 1, census.counts[t - 1], 0, 1.0 / pm1, 0, env};
            r.density = static_cast<double>(r.count) / pairs;
            r.deviation = std::abs(r.density - r.target);
            rep.rows.push_back(r);
        }
    } else {
        const ClassTable& table = class_table(census.ell);
        const std::uint32_t det = static_cast<std::uint32_t>(census.field_order % census.ell);
        const double gl3 = std::pow(static_cast<double>(table.group_order()), 3.0);
        for (const auto& c : table.classes()) {
            if (c.det != det) continue;
            DeviationRow r{c.id, c.trace, c.det, census.counts[static_cast<std::size_t>(c.id)], 0,
                           static_cast<double>(c.size) / static_cast<double>(table.sl2_order()), 0,
                           std::sqrt(static_cast<double>(c.size) * gl3) / std::sqrt(Q)};
            r.density = static_cast<double>(r.count) / pairs;
            r.deviation = std::abs(r.density - r.target);
            rep.rows.push_back(r);
        }
    }
    for (const auto& r : rep.rows) {
        rep.max_deviation = std::max(rep.max_deviation, r.deviation);
        rep.fitted_constant = std::max(rep.fitted_constant, r.deviation / r.envelope);
    }
    return rep;
}

} // namespace ecff
