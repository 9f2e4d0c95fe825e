#include "ecff/galois_sampler.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "ecff/arith.hpp"
#include "ecff/ec_finite.hpp"
#include "ecff/error.hpp"

namespace ecff {

GlobalCurve GlobalCurve::make(PolyOverFq a, PolyOverFq b)
{
    PolyOverFq disc = curve_discriminant(a, b);
    if (disc.is_zero()) throw SingularCurve("4a^3 + 27b^2 vanishes in F_q[T]");
    PolyOverFq hasse = hasse_invariant(a, b);
    return {std::move(a), std::move(b), std::move(disc), std::move(hasse)};
}

void for_each_frobenius(const GlobalCurve& E, unsigned D, const std::function<bool(const FrobRecord&)>& visit)
{
    if (D == 0) throw InvalidArgument("scan depth must be at least 1");
    const Field& base = E.a.field();
    const auto& primes = prime_list(base, D);
    const std::uint32_t p = base.characteristic();
    // Constant and isotrivial curves repeat reductions; count each once.
    std::map<std::tuple<unsigned, std::uint64_t, std::uint64_t>, PointCount> seen;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const PrimeIdeal& P = primes[i];
        const Field& F = *P.residue;
        const Elem a = reduce_mod_prime(E.a, P);
        const Elem b = reduce_mod_prime(E.b, P);
        if (discriminant(F, a, b).v == 0) continue;
        auto key = std::make_tuple(P.degree, a.v, b.v);
        auto it = seen.find(key);
        if (it == seen.end()) it = seen.emplace(key, point_count(Curve{&F, a, b})).first;
        const PointCount pc = it->second;
        const std::int64_t tp = pc.trace % static_cast<std::int64_t>(p);
        FrobRecord r{i, P.degree, &F, a, b, pc.N, pc.trace, true, tp != 0};
        if (!visit(r)) return;
    }
}

std::vector<FrobRecord> frobenius_scan(const GlobalCurve& E, unsigned D)
{
    std::vector<FrobRecord> out;
    for_each_frobenius(E, D, [&](const FrobRecord& r) {
        out.push_back(r);
        return true;
    });
    return out;
}

int frobenius_class_of(const FrobRecord& r, std::uint32_t ell, std::uint64_t q)
{
    const ClassTable& table = class_table(ell);
    const std::uint64_t det = powmod(q % ell, r.degree, ell);
    const std::int64_t l = ell;
    const std::int64_t tr = ((r.trace % l) + l) % l;
    const std::int64_t disc = (tr * tr + 4 * l * l - 4 * static_cast<std::int64_t>(det)) % l;
    std::optional<bool> scalar;
    if (disc == 0) {
        const auto m = static_cast<unsigned>(mult_order(repeated_eigenvalue(ell, r.trace), ell));
        scalar = torsion_rank(Curve{r.residue, r.a, r.b}, ell, m) == 2;
    }
    return frobenius_class(table, r.trace, static_cast<std::int64_t>(det), scalar);
}

EllImage classify_image_ell(const std::vector<FrobRecord>& records, std::uint32_t ell, std::uint64_t q,
                            unsigned max_degree)
{
    if (q % ell == 0) throw InvalidArgument("classify_image_ell needs ell != p");
    const ClassTable& table = class_table(ell);
    EllImage img{ell, false, {}, false, {}, {}, 0};
    for (const auto& r : records) {
        if (max_degree != 0 && r.degree > max_degree) continue;
        const int id = frobenius_class_of(r, ell, q);
        img.observed.insert(id);
        img.dets.insert(table[id].det);
        img.max_degree = std::max(img.max_degree, r.degree);
    }
    if (max_degree != 0) img.max_degree = max_degree;
    const SurjectivityVerdict v = surjectivity_criterion(ell, q, img.observed, img.dets);
    img.certified = v.certified;
    img.missing = v.missing;
    img.dets_generate = v.dets_generate;
    return img;
}

PImage classify_image_p(const GlobalCurve& E, const std::vector<FrobRecord>& records, unsigned max_degree)
{
    if (E.hasse.is_zero()) return {PImage::Status::supersingular, {1}};
    const std::int64_t p = E.a.field().characteristic();
    std::vector<char> in(static_cast<std::size_t>(p), 0);
    std::vector<std::uint32_t> members{1};
    in[1] = 1;
    auto close_with = [&](std::uint32_t g) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            const auto k = static_cast<std::uint32_t>(std::uint64_t{members[i]} * g % p);
            if (!in[k]) {
                in[k] = 1;
                members.push_back(k);
            }
        }
    };
    for (const auto& r : records) {
        if (!r.ordinary || (max_degree != 0 && r.degree > max_degree)) continue;
        const auto t = static_cast<std::uint32_t>(((r.trace % p) + p) % p);
        if (!in[t]) close_with(t);
    }
    std::sort(members.begin(), members.end());
    const bool full = members.size() == static_cast<std::size_t>(p - 1);
    return {full ? PImage::Status::certified : PImage::Status::candidate, members};
}

ImageTracker::ImageTracker(const GlobalCurve& E, std::vector<std::uint32_t> ells)
    : q_(E.a.field().order()),
      p_(E.a.field().characteristic()),
      supersingular_(E.hasse.is_zero()),
      ells_(std::move(ells)),
      observed_(ells_.size()),
      dets_(ells_.size()),
      certified_at_(ells_.size(), 0),
      units_(p_, 0)
{
    units_[1] = 1;
}

void ImageTracker::add(const FrobRecord& r)
{
    for (std::size_t i = 0; i < ells_.size(); ++i) {
        if (certified_at_[i] != 0) continue;
        const std::uint32_t ell = ells_[i];
        if (ell == p_) {
            if (supersingular_ || !r.ordinary) continue;
            const std::int64_t p = p_;
            const auto t = static_cast<std::uint32_t>(((r.trace % p) + p) % p);
            if (units_[t]) continue;
            std::vector<std::uint32_t> members;
            for (std::uint32_t u = 1; u < p_; ++u)
                if (units_[u]) members.push_back(u);
            for (std::size_t k = 0; k < members.size(); ++k) {
                const auto m = static_cast<std::uint32_t>(std::uint64_t{members[k]} * t % p_);
                if (!units_[m]) {
                    units_[m] = 1;
                    members.push_back(m);
                }
            }
            units_size_ = members.size();
            if (units_size_ == p_ - 1) certified_at_[i] = r.degree;
            continue;
        }
        const int id = frobenius_class_of(r, ell, q_);
        const bool new_class = observed_[i].insert(id).second;
        const bool new_det = dets_[i].insert(class_table(ell)[id].det).second;
        if ((new_class || new_det) && surjectivity_criterion(ell, q_, observed_[i], dets_[i]).certified)
            certified_at_[i] = r.degree;
    }
}

bool ImageTracker::all_certified() const
{
    return std::all_of(certified_at_.begin(), certified_at_.end(), [](unsigned d) { return d != 0; });
}

namespace {

Poly interpolate(const Field& F, const std::vector<Elem>& xs, const std::vector<Elem>& ys)
{
    Poly out(F);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Poly basis = Poly::constant(F, F.one());
        Elem denom = F.one();
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = basis * Poly(F, {F.neg(xs[j]), F.one()});
            denom = F.mul(denom, F.sub(xs[i], xs[j]));
        }
        out = out + basis.scaled(F.div(ys[i], denom));
    }
    return out;
}

std::vector<Elem> cubic_roots_fq(const Field& F, Elem a, Elem b)
{
    if (F.order() > 256) return roots(Poly(F, {b, a, F.zero(), F.one()}));
    std::vector<Elem> out;
    for (std::uint64_t i = 0; i < F.order(); ++i) {
        const Elem x = F.element(i);
        if (F.add(F.mul(F.add(F.sqr(x), a), x), b).v == 0) out.push_back(x);
    }
    return out;
}

bool is_cubic_root(const Poly& r, const Poly& a, const Poly& b)
{
    return (r * r * r + a * r + b).is_zero();
}

} // namespace

std::vector<PolyOverFq> cubic_roots(const PolyOverFq& a, const PolyOverFq& b)
{
    const Field& F = a.field();
    // 3 deg r <= max(deg a + deg r, deg b) for any root r.
    int e = -1;
    if (!a.is_zero()) e = std::max(e, a.degree() / 2);
    if (!b.is_zero()) e = std::max(e, b.degree() / 3);
    if (e < 0) return {Poly(F)};   // a = b = 0: only r = 0, singular anyway

    const std::uint64_t q = F.order();
    std::vector<std::vector<Elem>> fibre(q);
    for (std::uint64_t i = 0; i < q; ++i) {
        const Elem t = F.element(i);
        fibre[i] = cubic_roots_fq(F, a.eval(t), b.eval(t));
        if (fibre[i].empty()) return {};
    }
    const std::size_t npts = static_cast<std::size_t>(e) + 1;
    std::vector<PolyOverFq> found;
    auto record = [&](const Poly& r) {
        if (std::find(found.begin(), found.end(), r) == found.end() && is_cubic_root(r, a, b)) found.push_back(r);
    };
    if (npts > q) {
        // Too few evaluation points to pin r down; enumerate the degree range.
        auto total = checked_pow(q, npts, std::uint64_t{1} << 24);
        if (!total) throw UnsupportedField("root search space too large for F_" + std::to_string(q));
        for (std::uint64_t idx = 0; idx < *total; ++idx) {
            std::vector<Elem> c(npts);
            std::uint64_t v = idx;
            for (auto& ci : c) {
                ci = F.element(v % q);
                v /= q;
            }
            record(Poly(F, c));
        }
        return found;
    }
    // Use the points with the fewest candidate roots.
    std::vector<std::uint64_t> order(q);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint64_t x, std::uint64_t y) { return fibre[x].size() < fibre[y].size(); });
    order.resize(npts);
    std::vector<Elem> xs, ys(npts);
    for (auto i : order) xs.push_back(F.element(i));
    std::vector<std::size_t> pick(npts, 0);
    while (true) {
        for (std::size_t k = 0; k < npts; ++k) ys[k] = fibre[order[k]][pick[k]];
        const Poly r = interpolate(F, xs, ys);
        bool consistent = true;
        for (std::uint64_t i = 0; i < q && consistent; ++i) {
            const Elem v = r.eval(F.element(i));
            consistent = std::find(fibre[i].begin(), fibre[i].end(), v) != fibre[i].end();
        }
        if (consistent) record(r);
        std::size_t k = 0;
        while (k < npts && ++pick[k] == fibre[order[k]].size()) pick[k++] = 0;
        if (k == npts) break;
    }
    std::sort(found.begin(), found.end(), [](const Poly& x, const Poly& y) { return x.coeffs() < y.coeffs(); });
    return found;
}

bool is_square_poly(const PolyOverFq& f)
{
    if (f.is_zero()) return true;
    if (f.degree() % 2 != 0) return false;
    const Field& F = f.field();
    if (!F.is_square(f.lead())) return false;
    const std::size_t m = static_cast<std::size_t>(f.degree()) / 2;
    std::vector<Elem> s(m + 1);
    s[m] = F.sqrt(f.lead());
    const Elem inv2s = F.inv(F.add(s[m], s[m]));
    // Match coefficients of T^{2m-k} from the top down.
    for (std::size_t k = 1; k <= m; ++k) {
        Elem acc = f.coeff(2 * m - k);
        for (std::size_t j = 1; j < k; ++j) acc = F.sub(acc, F.mul(s[m - j], s[m - k + j]));
        s[m - k] = F.mul(acc, inv2s);
    }
    const Poly r(F, s);
    return r * r == f;
}

Mod2Image exact_mod2(const GlobalCurve& E)
{
    if (E.a.field().characteristic() <= 3) throw UnsupportedField("exact_mod2 needs characteristic > 3");
    const auto rts = cubic_roots(E.a, E.b);
    if (rts.size() == 3) return Mod2Image::trivial;
    if (!rts.empty()) return Mod2Image::order2;
    const Field& F = E.a.field();
    const Poly a3 = E.a * E.a * E.a;
    const Poly disc = (a3.scaled(F.from_int(-4))) - (E.b * E.b).scaled(F.from_int(27));
    return is_square_poly(disc) ? Mod2Image::cyclic3 : Mod2Image::full;
}

bool mod2_image_meets(Mod2Image img, std::uint32_t trace, bool scalar)
{
    const bool identity = trace % 2 == 0 && scalar;
    const bool involution = trace % 2 == 0 && !scalar;
    switch (img) {
    case Mod2Image::trivial: return identity;
    case Mod2Image::order2: return trace % 2 == 0;
    case Mod2Image::cyclic3: return !involution;
    case Mod2Image::full: return true;
    }
    return false;
}

std::uint64_t torsion_bound(const std::vector<FrobRecord>& records)
{
    if (records.empty()) throw InvalidArgument("torsion_bound needs at least one record");
    const std::uint64_t p = records.front().residue->characteristic();
    std::uint64_t g = 0;
    for (const auto& r : records) g = std::gcd(g, r.N);
    return prime_to_part(g, p);
}

TorsionScan torsion_scan(const GlobalCurve& E, unsigned D)
{
    const std::uint64_t known = 1 + cubic_roots(E.a, E.b).size();
    const std::uint64_t p = E.a.field().characteristic();
    TorsionScan out{0, 0, false};
    std::uint64_t g = 0;
    for_each_frobenius(E, D, [&](const FrobRecord& r) {
        g = std::gcd(g, r.N);
        ++out.records_used;
        const std::uint64_t bound = prime_to_part(g, p);
        if (bound % known != 0) throw InvariantViolation("rational 2-torsion does not divide a reduction");
        if (bound == known) {
            out.stopped_early = true;
            return false;
        }
        return true;
    });
    if (out.records_used == 0) throw InvalidArgument("no good primes up to the scan depth");
    out.bound = prime_to_part(g, p);
    return out;
}

ImageReport image_report(const GlobalCurve& E, const std::vector<FrobRecord>& records,
                         const std::vector<std::uint32_t>& ells)
{
    const std::uint64_t q = E.a.field().order();
    const std::uint64_t p = E.a.field().characteristic();
    ImageReport rep;
    for (auto ell : ells)
        if (ell != p) rep.ell.push_back(classify_image_ell(records, ell, q));
    rep.p = classify_image_p(E, records);
    rep.torsion_bound = records.empty() ? 0 : torsion_bound(records);
    return rep;
}

unsigned default_scan_depth(std::uint64_t q, const std::vector<std::uint32_t>& ells)
{
    unsigned D = 1;
    for (auto ell : ells) {
        if (q % ell == 0) continue;
        D = std::max(D, static_cast<unsigned>(mult_order(q % ell, ell)));
    }
    return D;
}

} // namespace ecff
