#include "ecff/ec_finite.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <unordered_map>

#include "ecff/arith.hpp"
#include "ecff/error.hpp"

namespace ecff {

Elem discriminant(const Field& f, Elem a, Elem b)
{
    Elem a3 = f.mul(f.sqr(a), a);
    Elem s = f.add(f.mul(f.from_int(4), a3), f.mul(f.from_int(27), f.sqr(b)));
    return f.mul(f.from_int(-16), s);
}

Curve Curve::make(const Field& f, Elem a, Elem b)
{
    if (discriminant(f, a, b).v == 0) throw SingularCurve("curve has zero discriminant");
    return {&f, a, b};
}

std::int64_t character_sum(const Field& f, Elem a, Elem b)
{
    if (!f.has_tables()) throw UnsupportedField("character_sum needs a tabled field");
    std::int64_t s = 0;
    if (f.degree() == 1) {
        const std::uint64_t p = f.order();
        for (std::uint64_t x = 0; x < p; ++x) {
            std::uint64_t v = (x * x % p * x + a.v * x + b.v) % p;
            if (v) s += (f.log({v}) & 1) ? -1 : 1;
        }
        return s;
    }
    // Log-domain loop over x = g^i; x = 0 contributes chi(b).
    const std::int64_t n = static_cast<std::int64_t>(f.order() - 1);
    s += f.chi(b);
    const bool has_a = a.v != 0, has_b = b.v != 0;
    const std::int64_t la = has_a ? f.log(a) : 0;
    const std::int64_t lb = has_b ? f.log(b) : 0;
    std::int64_t l3 = 0, lax = la;
    for (std::int64_t i = 0; i < n; ++i) {
        // s = x^3 + a x
        bool s_zero = false;
        std::int64_t ls = l3;
        if (has_a) {
            std::int64_t d = lax - l3;
            if (d < 0) d += n;
            std::uint32_t z = f.zech(static_cast<std::uint64_t>(d));
            if (z == Field::kNoLog) {
                s_zero = true;
            } else {
                ls = l3 + z;
                if (ls >= n) ls -= n;
            }
        }
        if (s_zero) {
            s += has_b ? ((lb & 1) ? -1 : 1) : 0;
        } else if (!has_b) {
            s += (ls & 1) ? -1 : 1;
        } else {
            std::int64_t d = lb - ls;
            if (d < 0) d += n;
            std::uint32_t z = f.zech(static_cast<std::uint64_t>(d));
            if (z != Field::kNoLog) s += ((ls + z) & 1) ? -1 : 1;
        }
        l3 += 3;
        if (l3 >= n) l3 -= n;
        if (l3 >= n) l3 -= n;
        if (l3 >= n) l3 -= n;
        if (++lax >= n) lax -= n;
    }
    return s;
}

PointCount point_count_naive(const Curve& c)
{
    const std::uint64_t q = c.field->order();
    const std::int64_t s = character_sum(*c.field, c.a, c.b);
    const std::uint64_t N = static_cast<std::uint64_t>(static_cast<std::int64_t>(q + 1) + s);
    return {N, -s};
}

namespace {

struct Point {
    Elem x, y;
    bool inf = false;
};

class Group {
public:
    Group(const Field& f, Elem a, Elem b) : f_(f), a_(a), b_(b) {}

    Point neg(const Point& P) const { return P.inf ? P : Point{P.x, f_.neg(P.y)}; }

    Point add(const Point& P, const Point& Q) const
    {
        if (P.inf) return Q;
        if (Q.inf) return P;
        Elem lambda;
        if (P.x == Q.x) {
            if (f_.add(P.y, Q.y).v == 0) return {{}, {}, true};
            Elem num = f_.add(f_.mul(f_.from_int(3), f_.sqr(P.x)), a_);
            lambda = f_.div(num, f_.add(P.y, P.y));
        } else {
            lambda = f_.div(f_.sub(Q.y, P.y), f_.sub(Q.x, P.x));
        }
        Elem x3 = f_.sub(f_.sub(f_.sqr(lambda), P.x), Q.x);
        Elem y3 = f_.sub(f_.mul(lambda, f_.sub(P.x, x3)), P.y);
        return {x3, y3};
    }

    Point mul(Point P, std::uint64_t k) const
    {
        Point R{{}, {}, true};
        while (k) {
            if (k & 1) R = add(R, P);
            k >>= 1;
            if (k) P = add(P, P);
        }
        return R;
    }

    Point random_point(std::mt19937_64& rng) const
    {
        std::uniform_int_distribution<std::uint64_t> dist(0, f_.order() - 1);
        for (;;) {
            Elem x = f_.element(dist(rng));
            Elem rhs = f_.add(f_.add(f_.mul(f_.sqr(x), x), f_.mul(a_, x)), b_);
            if (!f_.is_square(rhs)) continue;
            Elem y = f_.sqrt(rhs);
            if (rng() & 1) y = f_.neg(y);
            return {x, y};
        }
    }

private:
    const Field& f_;
    Elem a_, b_;
};

struct PointKey {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const
    {
        return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
    }
};

/// All m in [lo, hi] with mP = O.
std::vector<std::uint64_t> annihilators(const Group& G, const Point& P, std::uint64_t lo, std::uint64_t hi)
{
    const std::uint64_t width = hi - lo + 1;
    const std::uint64_t s = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(width)))) + 1;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t, PointKey> baby;
    std::optional<std::uint64_t> small_order;
    Point R{{}, {}, true};
    for (std::uint64_t j = 0; j < s; ++j) {
        if (R.inf) {
            if (j > 0) {
                small_order = j;
                break;
            }
        } else {
            baby.emplace(std::make_pair(R.x.v, R.y.v), j);
        }
        R = G.add(R, P);
    }
    std::vector<std::uint64_t> out;
    if (small_order) {
        const std::uint64_t o = *small_order;
        for (std::uint64_t m = (lo + o - 1) / o * o; m <= hi; m += o) out.push_back(m);
        return out;
    }
    // Giant steps: -(lo + i s) P against the baby table.
    const Point step = G.neg(G.mul(P, s));
    Point C = G.neg(G.mul(P, lo));
    for (std::uint64_t i = 0; i * s <= width; ++i) {
        if (C.inf) {
            out.push_back(lo + i * s);
        } else if (auto it = baby.find({C.x.v, C.y.v}); it != baby.end()) {
            std::uint64_t m = lo + i * s + it->second;
            if (m <= hi) out.push_back(m);
        }
        C = G.add(C, step);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t order_lcm(std::uint64_t lambda, const std::vector<std::uint64_t>& hits)
{
    // Hits are the multiples of ord(P) inside the interval.
    if (hits.size() >= 2) return std::lcm(lambda, hits[1] - hits[0]);
    return lambda;
}

} // namespace

PointCount point_count_bsgs(const Curve& c, std::uint64_t seed)
{
    const Field& f = *c.field;
    const std::uint64_t q = f.order();
    const std::uint64_t w = static_cast<std::uint64_t>(std::floor(2.0 * std::sqrt(static_cast<double>(q))));
    const std::uint64_t lo = q + 1 - w, hi = q + 1 + w;

    Elem d{2};
    while (f.chi(d) != -1) ++d.v;
    Group E(f, c.a, c.b);
    Group T(f, f.mul(c.a, f.sqr(d)), f.mul(c.b, f.mul(f.sqr(d), d)));

    std::mt19937_64 rng(seed);
    std::uint64_t lam = 1, lam_twist = 1;
    std::vector<std::uint64_t> single;   // when one point pins N directly
    for (int round = 0; round < 200; ++round) {
        const bool twist = round % 2 == 1;
        const Group& G = twist ? T : E;
        Point P = G.random_point(rng);
        auto hits = annihilators(G, P, lo, hi);
        if (hits.empty()) throw InvariantViolation("no group order in the Hasse interval");
        if (!twist && hits.size() == 1) single = hits;
        if (twist) lam_twist = order_lcm(lam_twist, hits);
        else lam = order_lcm(lam, hits);
        if (twist && hits.size() == 1) {
            const std::uint64_t N = 2 * q + 2 - hits[0];
            return {N, static_cast<std::int64_t>(q + 1) - static_cast<std::int64_t>(N)};
        }
        if (!single.empty()) {
            const std::uint64_t N = single[0];
            return {N, static_cast<std::int64_t>(q + 1) - static_cast<std::int64_t>(N)};
        }
        std::vector<std::uint64_t> cand;
        for (std::uint64_t N = (lo + lam - 1) / lam * lam; N <= hi; N += lam)
            if ((2 * q + 2 - N) % lam_twist == 0) cand.push_back(N);
        if (cand.size() == 1)
            return {cand[0], static_cast<std::int64_t>(q + 1) - static_cast<std::int64_t>(cand[0])};
    }
    throw InvariantViolation("BSGS could not pin the group order");
}

PointCount point_count(const Curve& c)
{
    PointCount pc = c.field->has_tables() ? point_count_naive(c) : point_count_bsgs(c);
    const double bound = 2.0 * std::sqrt(static_cast<double>(c.field->order()));
    if (static_cast<double>(std::llabs(pc.trace)) > bound + 1e-9)
        throw InvariantViolation("Hasse bound violated");
    return pc;
}

bool is_supersingular(const Curve& c)
{
    const std::int64_t p = c.field->characteristic();
    return point_count(c).trace % p == 0;
}

Poly hasse_invariant(const Poly& a, const Poly& b)
{
    const Field& f = a.field();
    const std::uint64_t p = f.characteristic();
    const std::uint64_t m = (p - 1) / 2;
    std::vector<Elem> fact(m + 1);
    fact[0] = f.one();
    for (std::uint64_t i = 1; i <= m; ++i) fact[i] = f.mul(fact[i - 1], f.from_int(static_cast<std::int64_t>(i)));

    auto power = [&](const Poly& base, std::uint64_t e) {
        Poly r = Poly::constant(f, f.one());
        for (std::uint64_t i = 0; i < e; ++i) r = r * base;
        return r;
    };
    // x^{3i} (a x)^j b^k with i + j + k = m and 3i + j = p - 1.
    Poly out(f);
    for (std::uint64_t i = 0; 3 * i <= p - 1 && i <= m; ++i) {
        const std::uint64_t j = p - 1 - 3 * i;
        if (i + j > m) continue;
        const std::uint64_t k = m - i - j;
        Elem coef = f.div(fact[m], f.mul(fact[i], f.mul(fact[j], fact[k])));
        out = out + (power(a, j) * power(b, k)).scaled(coef);
    }
    return out;
}

Poly division_poly(unsigned ell, const Curve& c)
{
    if (ell % 2 == 0) throw InvalidArgument("division_poly needs odd ell");
    const Field& f = *c.field;
    if (ell % f.characteristic() == 0) throw InvalidArgument("ell must differ from the characteristic");
    auto k = [&](std::int64_t n) { return f.from_int(n); };
    const Elem a = c.a, b = c.b;
    const Elem a2 = f.sqr(a);
    // psi_n = g_n for odd n, y * g_n for even n; y^2 = F.
    const Poly F(f, {b, a, f.zero(), f.one()});
    const Poly F2 = F * F;
    std::vector<Poly> g;
    g.push_back(Poly(f));
    g.push_back(Poly::constant(f, f.one()));
    g.push_back(Poly::constant(f, k(2)));
    g.push_back(Poly(f, {f.neg(a2), f.mul(k(12), b), f.mul(k(6), a), f.zero(), k(3)}));
    g.push_back(Poly(f, {f.sub(f.neg(f.mul(k(8), f.sqr(b))), f.mul(a2, a)), f.neg(f.mul(k(4), f.mul(a, b))),
                         f.neg(f.mul(k(5), a2)), f.mul(k(20), b), f.mul(k(5), a), f.zero(), f.one()})
                    .scaled(k(4)));
    const Elem half = f.inv(k(2));
    for (unsigned n = 5; n <= ell; ++n) {
        const unsigned m = n / 2;
        if (n % 2 == 1) {
            Poly t1 = g[m + 2] * g[m] * g[m] * g[m];
            Poly t2 = g[m - 1] * g[m + 1] * g[m + 1] * g[m + 1];
            if (m % 2 == 0) t1 = t1 * F2;
            else t2 = t2 * F2;
            g.push_back(t1 - t2);
        } else {
            Poly inner = g[m + 2] * g[m - 1] * g[m - 1] - g[m - 2] * g[m + 1] * g[m + 1];
            g.push_back((g[m] * inner).scaled(half));
        }
    }
    return g[ell];
}

unsigned torsion_rank(const Curve& c, unsigned ell, unsigned m)
{
    const Field& f = *c.field;
    if (ell % f.characteristic() == 0) throw InvalidArgument("ell must differ from the characteristic");
    if (m == 0) throw InvalidArgument("extension degree must be positive");
    const std::uint64_t q = f.order();
    const Poly F(f, {c.b, c.a, f.zero(), f.one()});
    const Poly psi = ell == 2 ? F : division_poly(ell, c);
    const Poly X = Poly::x(f);

    Poly h = X % psi;
    for (unsigned i = 0; i < m; ++i) h = powmod(h, q, psi);
    const Poly G = gcd(psi, h - X);
    const int roots_ext = G.degree();
    if (ell == 2) {
        switch (roots_ext) {
        case 0: return 0;
        case 1: return 1;
        case 3: return 2;
        default: throw InvariantViolation("separable cubic with two roots");
        }
    }
    if (roots_ext <= 0) return 0;
    // Roots x0 of G with F(x0) a square in F_{q^m}: F^{(q^m - 1)/2} = 1 there.
    const Poly g0 = powmod(F, (q - 1) / 2, G);
    Poly acc = g0, cur = g0;
    for (unsigned i = 1; i < m; ++i) {
        cur = powmod(cur, q, G);
        acc = mulmod(acc, cur, G);
    }
    const int with_y = gcd(G, acc - Poly::constant(f, f.one())).degree();
    const std::uint64_t points = 1 + 2 * static_cast<std::uint64_t>(with_y);
    if (points == 1) return 0;
    if (points == ell) return 1;
    if (points == std::uint64_t{ell} * ell) return 2;
    throw InvariantViolation("ell-torsion count is not a power of ell");
}

} // namespace ecff
