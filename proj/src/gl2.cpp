#include "ecff/gl2.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

#include "ecff/arith.hpp"
#include "ecff/error.hpp"

namespace ecff {

Mat2 mat_mul(const Mat2& x, const Mat2& y, std::uint32_t ell)
{
    return {(x.a * y.a + x.b * y.c) % ell, (x.a * y.b + x.b * y.d) % ell, (x.c * y.a + x.d * y.c) % ell,
            (x.c * y.b + x.d * y.d) % ell};
}

std::uint32_t mat_det(const Mat2& m, std::uint32_t ell)
{
    return (m.a * m.d + ell * ell - m.b * m.c % ell) % ell;
}

std::uint32_t mat_trace(const Mat2& m, std::uint32_t ell)
{
    return (m.a + m.d) % ell;
}

Mat2 mat_inv(const Mat2& m, std::uint32_t ell)
{
    const std::uint32_t det = mat_det(m, ell);
    if (det == 0) throw DivisionByZero("singular matrix");
    const auto di = static_cast<std::uint32_t>(powmod(det, ell - 2, ell));
    return {m.d * di % ell, (ell - m.b) % ell * di % ell, (ell - m.c) % ell * di % ell, m.a * di % ell};
}

std::uint32_t mat_index(const Mat2& m, std::uint32_t ell)
{
    return m.a + ell * (m.b + ell * (m.c + ell * m.d));
}

Mat2 mat_from_index(std::uint32_t i, std::uint32_t ell)
{
    Mat2 m;
    m.a = i % ell;
    i /= ell;
    m.b = i % ell;
    i /= ell;
    m.c = i % ell;
    m.d = i / ell;
    return m;
}

ClassTable::ClassTable(std::uint32_t ell) : ell_(ell)
{
    if (!is_prime(ell) || ell > kMaxEll)
        throw InvalidArgument("class tables need a prime ell <= " + std::to_string(kMaxEll));
    const std::uint32_t total = ell * ell * ell * ell;
    std::vector<Mat2> group;
    std::vector<Mat2> inverses;
    for (std::uint32_t i = 0; i < total; ++i) {
        Mat2 m = mat_from_index(i, ell);
        if (mat_det(m, ell) == 0) continue;
        group.push_back(m);
        inverses.push_back(mat_inv(m, ell));
    }
    class_of_.assign(total, -1);
    for (const Mat2& m : group) {
        const std::uint32_t idx = mat_index(m, ell);
        if (class_of_[idx] >= 0) continue;
        const int id = static_cast<int>(classes_.size());
        std::uint64_t size = 0;
        for (std::size_t s = 0; s < group.size(); ++s) {
            Mat2 conj = mat_mul(mat_mul(group[s], m, ell), inverses[s], ell);
            int& slot = class_of_[mat_index(conj, ell)];
            if (slot < 0) {
                slot = id;
                ++size;
            }
        }
        const bool scalar = m.b == 0 && m.c == 0 && m.a == m.d;
        classes_.push_back({id, m, size, mat_trace(m, ell), mat_det(m, ell), scalar});
    }
    for (const auto& c : classes_) {
        const std::uint32_t disc = (c.trace * c.trace + 4 * ell * ell - 4 * c.det) % ell;
        // Non-scalar classes with a repeated eigenvalue share (trace, det) with the scalar class.
        const bool key_scalar = disc == 0 ? c.scalar : false;
        index_[{c.trace, c.det, key_scalar}] = c.id;
    }
}

std::optional<int> ClassTable::lookup(std::uint32_t trace, std::uint32_t det, bool scalar) const
{
    auto it = index_.find({trace % ell_, det % ell_, scalar});
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t ClassTable::group_order() const
{
    const std::uint64_t l = ell_;
    return (l * l - 1) * (l * l - l);
}

std::uint64_t ClassTable::sl2_order() const
{
    const std::uint64_t l = ell_;
    return l * (l + 1) * (l - 1);
}

const ClassTable& class_table(std::uint32_t ell)
{
    static std::mutex m;
    static std::map<std::uint32_t, std::unique_ptr<ClassTable>> cache;
    std::lock_guard lock(m);
    auto it = cache.find(ell);
    if (it == cache.end()) it = cache.emplace(ell, std::make_unique<ClassTable>(ell)).first;
    return *it->second;
}

std::vector<int> det1_classes(const ClassTable& t)
{
    std::vector<int> out;
    for (const auto& c : t.classes())
        if (c.det == 1 % t.ell()) out.push_back(c.id);
    return out;
}

GammaEll gamma_ell(std::uint32_t ell, std::uint64_t q)
{
    if (q % ell == 0) throw InvalidArgument("ell equals the characteristic; the mod-p image is handled separately");
    const ClassTable& t = class_table(ell);
    GammaEll g{ell, static_cast<std::uint32_t>(q % ell), {}, {}, 0};
    for (std::uint64_t d : cyclic_subgroup(q % ell, ell)) g.det_subgroup.push_back(static_cast<std::uint32_t>(d));
    for (const auto& c : t.classes())
        if (std::binary_search(g.det_subgroup.begin(), g.det_subgroup.end(), c.det)) g.member_classes.push_back(c.id);
    g.order = t.sl2_order() * g.det_subgroup.size();
    return g;
}

namespace {

std::uint32_t residue(std::int64_t v, std::uint32_t ell)
{
    std::int64_t r = v % static_cast<std::int64_t>(ell);
    return static_cast<std::uint32_t>(r < 0 ? r + ell : r);
}

} // namespace

std::uint32_t repeated_eigenvalue(std::uint32_t ell, std::int64_t trace)
{
    if (ell == 2) return 1;
    const std::uint32_t t = residue(trace, ell);
    return static_cast<std::uint32_t>(t * powmod(2, ell - 2, ell) % ell);
}

int frobenius_class(const ClassTable& t, std::int64_t trace, std::int64_t det, std::optional<bool> scalar)
{
    const std::uint32_t ell = t.ell();
    const std::uint32_t tr = residue(trace, ell), dt = residue(det, ell);
    if (dt == 0) throw InvalidArgument("determinant must be a unit mod ell");
    const std::uint32_t disc = (tr * tr + 4 * ell * ell - 4 * dt) % ell;
    bool key = false;
    if (disc == 0) {
        if (!scalar) throw AmbiguousClass("repeated eigenvalue: scalar flag required");
        key = *scalar;
    }
    auto id = t.lookup(tr, dt, key);
    if (!id) throw InvariantViolation("no class with the requested invariants");
    return *id;
}

SurjectivityVerdict surjectivity_criterion(std::uint32_t ell, std::uint64_t q, const std::set<int>& observed,
                                           const std::set<std::uint32_t>& observed_dets)
{
    const ClassTable& t = class_table(ell);
    SurjectivityVerdict v{false, {}, false};
    for (int id : det1_classes(t))
        if (!observed.count(id)) v.missing.push_back(id);
    std::set<std::uint32_t> generated{1 % ell};
    // Close the observed determinants under multiplication.
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::uint32_t a : std::vector<std::uint32_t>(generated.begin(), generated.end()))
            for (std::uint32_t d : observed_dets)
                if (generated.insert(a * (d % ell) % ell).second) grew = true;
    }
    auto target = cyclic_subgroup(q % ell, ell);
    v.dets_generate = std::includes(generated.begin(), generated.end(), target.begin(), target.end());
    v.certified = v.missing.empty() && v.dets_generate;
    return v;
}

std::uint64_t c_of_g(std::uint64_t g)
{
    std::uint64_t best = 0;
    for (std::uint64_t ell : primes_below(12 * g + 14)) {
        const std::int64_t e4 = ell % 4 == 1 ? 1 : -1;
        const std::int64_t e3 = ell % 3 == 1 ? 1 : -1;
        const std::int64_t threshold = 6 + 3 * e4 + 4 * e3;
        if (static_cast<std::int64_t>(ell) - threshold <= 12 * static_cast<std::int64_t>(g)) best = ell;
    }
    return 2 + best;
}

HypothesisResult hypothesis_check(std::uint64_t p, std::uint64_t g)
{
    if (!is_prime(p) || p <= 3) throw InvalidArgument("p must be a prime above 3");
    for (std::uint64_t ell : primes_below(c_of_g(g))) {
        if (ell == p) continue;
        if ((ell - 1) % p == 0 || (ell + 1) % p == 0) return {false, ell};
    }
    return {true, std::nullopt};
}

std::vector<std::uint32_t> generated_subgroup(const std::vector<Mat2>& gens, std::uint32_t ell)
{
    const std::uint32_t total = ell * ell * ell * ell;
    std::vector<char> seen(total, 0);
    std::vector<std::uint32_t> members;
    const Mat2 id{1, 0, 0, 1 % ell};
    members.push_back(mat_index(id, ell));
    seen[members.back()] = 1;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const Mat2 m = mat_from_index(members[i], ell);
        for (const Mat2& g : gens) {
            const std::uint32_t k = mat_index(mat_mul(m, g, ell), ell);
            if (!seen[k]) {
                seen[k] = 1;
                members.push_back(k);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

} // namespace ecff
