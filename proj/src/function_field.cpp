#include "ecff/function_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "ecff/arith.hpp"
#include "ecff/error.hpp"

namespace ecff {

std::uint64_t AbsInf::value() const
{
    if (degree < 0) return 0;
    return ipow(q, static_cast<std::uint64_t>(degree));
}

AbsInf abs_inf(const PolyOverFq& f)
{
    return {f.field().order(), f.degree()};
}

namespace {

bool coeff_less(const PolyOverFq& a, const PolyOverFq& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                        b.coeffs().end());
}

} // namespace

std::vector<PrimeIdeal> enumerate_primes(const Field& base, unsigned max_deg)
{
    if (max_deg < 1) throw InvalidArgument("max_deg must be at least 1");
    const std::uint64_t q = base.order();
    std::vector<PrimeIdeal> out;
    for (unsigned d = 1; d <= max_deg; ++d) {
        const Field& ext = *make_field(base.characteristic(), base.degree() * d);
        const Embedding& emb = embedding(base, ext);
        std::unordered_map<std::uint64_t, Elem> pullback;
        for (std::uint64_t i = 0; i < q; ++i) pullback.emplace(emb(base.element(i)).v, base.element(i));

        const std::size_t first = out.size();
        std::vector<Elem> orbit;
        for (std::uint64_t i = 0; i < ext.order(); ++i) {
            Elem alpha = ext.element(i);
            orbit.assign(1, alpha);
            bool minimal = true;
            Elem y = ext.pow(alpha, q);
            while (y != alpha) {
                if (y < alpha) {
                    minimal = false;
                    break;
                }
                orbit.push_back(y);
                y = ext.pow(y, q);
            }
            if (!minimal || orbit.size() != d) continue;
            Poly minpoly = Poly::constant(ext, ext.one());
            for (Elem r : orbit) minpoly = minpoly * Poly(ext, {ext.neg(r), ext.one()});
            std::vector<Elem> c;
            for (Elem e : minpoly.coeffs()) {
                auto it = pullback.find(e.v);
                if (it == pullback.end()) throw InvariantViolation("minimal polynomial not over base field");
                c.push_back(it->second);
            }
            out.push_back({Poly(base, std::move(c)), d, &ext, alpha});
        }
        std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(),
                  [](const PrimeIdeal& x, const PrimeIdeal& y) { return coeff_less(x.gen, y.gen); });
        if (out.size() - first != necklace_count(q, d))
            throw InvariantViolation("prime count disagrees with the necklace formula");
    }
    return out;
}

std::vector<PrimeIdeal> enumerate_primes(std::uint64_t q, unsigned max_deg)
{
    return enumerate_primes(*field_of_order(q), max_deg);
}

const std::vector<PrimeIdeal>& prime_list(const Field& base, unsigned max_deg)
{
    static std::mutex m;
    static std::map<std::pair<const Field*, unsigned>, std::unique_ptr<std::vector<PrimeIdeal>>> cache;
    std::lock_guard lock(m);
    auto key = std::make_pair(&base, max_deg);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<std::vector<PrimeIdeal>>(enumerate_primes(base, max_deg))).first;
    return *it->second;
}

SigmaReport sigma_count(std::uint64_t q, unsigned Q, std::uint64_t ell, std::uint64_t d)
{
    if (!is_prime(ell)) throw InvalidArgument("ell must be prime");
    if (q % ell == 0) throw InvalidArgument("ell must differ from the characteristic");
    d %= ell;
    if (d == 0) throw InvalidArgument("d must be a unit mod ell");
    auto image = cyclic_subgroup(q % ell, ell);
    SigmaReport r{0, std::binary_search(image.begin(), image.end(), d), false, 0.0};
    for (unsigned e = 1; e <= Q; ++e)
        if (powmod(q, e, ell) == d) r.count += necklace_count(q, e);
    r.congruent_at_top = Q > 0 && powmod(q, Q, ell) == d;
    if (r.count > 0 && Q > 0)
        r.fitted_constant = static_cast<double>(ipow(q, Q)) / (static_cast<double>(Q) * static_cast<double>(r.count));
    return r;
}

Elem reduce_mod_prime(const PolyOverFq& f, const PrimeIdeal& P)
{
    const Field& base = f.field();
    const Field& res = *P.residue;
    const Embedding& emb = embedding(base, res);
    Elem r = res.zero();
    const auto& c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) r = res.add(res.mul(r, P.root), emb(c[i]));
    return r;
}

Poly curve_discriminant(const Poly& a, const Poly& b)
{
    const Field& f = a.field();
    Poly s = (a * a * a).scaled(f.from_int(4)) + (b * b).scaled(f.from_int(27));
    return s.scaled(f.from_int(-16));
}

std::uint64_t CurveBoxSpec::size(std::uint64_t budget) const
{
    auto n = checked_pow(q, 2 * std::uint64_t{x} + 2, budget);
    if (!n)
        throw BudgetExceeded("curve box q=" + std::to_string(q) + " x=" + std::to_string(x) +
                             " exceeds the enumeration budget of " + std::to_string(budget));
    return *n;
}

CurveBox::CurveBox(const CurveBoxSpec& spec, std::uint64_t budget)
    : spec_(spec), base_(field_of_order(spec.q)), size_(spec.size(budget))
{
}

CurvePair CurveBox::pair(std::uint64_t index) const
{
    const std::uint64_t q = spec_.q;
    std::vector<Elem> a(spec_.x + 1), b(spec_.x + 1);
    for (auto& c : a) {
        c = {index % q};
        index /= q;
    }
    for (auto& c : b) {
        c = {index % q};
        index /= q;
    }
    return {Poly(*base_, std::move(a)), Poly(*base_, std::move(b))};
}

bool CurveBox::nonsingular(const CurvePair& c) const
{
    const Field& f = *base_;
    Poly s = (c.a * c.a * c.a).scaled(f.from_int(4)) + (c.b * c.b).scaled(f.from_int(27));
    return !s.is_zero();
}

std::uint64_t enumerate_box(const CurveBoxSpec& spec, const std::function<void(const CurvePair&)>& visit,
                            std::uint64_t budget)
{
    CurveBox box(spec, budget);
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < box.size(); ++i) {
        CurvePair c = box.pair(i);
        if (!box.nonsingular(c)) continue;
        ++count;
        visit(c);
    }
    return count;
}

namespace {

void squarefree_dfs(const std::vector<PrimeIdeal>& primes, std::size_t start, unsigned budget, Poly& gen,
                    std::vector<std::size_t>& factors, const std::function<void(const SquarefreeIdeal&)>& visit)
{
    for (std::size_t i = start; i < primes.size(); ++i) {
        if (primes[i].degree > budget) break;
        Poly next = gen * primes[i].gen;
        factors.push_back(i);
        visit({next, factors});
        squarefree_dfs(primes, i + 1, budget - primes[i].degree, next, factors, visit);
        factors.pop_back();
    }
}

} // namespace

void squarefree_ideals(const Field& base, unsigned Q, const std::function<void(const SquarefreeIdeal&)>& visit)
{
    if (Q == 0) return;
    const auto& primes = prime_list(base, Q);
    Poly one = Poly::constant(base, base.one());
    std::vector<std::size_t> factors;
    squarefree_dfs(primes, 0, Q, one, factors, visit);
}

} // namespace ecff
