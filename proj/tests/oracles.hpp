#pragma once

// Brute-force reference computations used only by the tests. Everything
// here avoids the library's fast paths: elements are handled as coefficient
// vectors, points are enumerated, subgroups are closed by hand.

#include <cstdint>
#include <optional>
#include <vector>

#include "ecff/finite_field.hpp"

namespace oracle {

using ecff::Elem;
using ecff::Field;

/// Schoolbook product of packed elements, reduced by the field modulus.
inline Elem mul(const Field& F, Elem a, Elem b)
{
    const std::uint32_t p = F.characteristic();
    const unsigned k = F.degree();
    auto ca = F.coeffs(a), cb = F.coeffs(b);
    ca.resize(k, 0);
    cb.resize(k, 0);
    std::vector<std::uint64_t> prod(2 * k, 0);
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % p;
    const auto& m = F.modulus();
    for (unsigned d = 2 * k; d-- > k;) {
        const std::uint64_t c = prod[d];
        if (c == 0) continue;
        for (unsigned i = 0; i <= k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - c) * m[i]) % p;
    }
    std::vector<std::uint32_t> out(k);
    for (unsigned i = 0; i < k; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return F.from_coeffs(out);
}

/// Affine points plus infinity, counted by enumerating (x, y).
inline std::uint64_t count_points(const Field& F, Elem a, Elem b)
{
    std::vector<std::uint32_t> squares(F.order(), 0);
    for (std::uint64_t y = 0; y < F.order(); ++y) ++squares[mul(F, Elem{y}, Elem{y}).v];
    std::uint64_t n = 1;
    for (std::uint64_t x = 0; x < F.order(); ++x) {
        const Elem X{x};
        const Elem rhs = F.add(F.add(mul(F, mul(F, X, X), X), mul(F, a, X)), b);
        n += squares[rhs.v];
    }
    return n;
}

struct Pt {
    Elem x, y;
    bool inf = false;
};

inline Pt add(const Field& F, Elem a, const Pt& P, const Pt& Q)
{
    if (P.inf) return Q;
    if (Q.inf) return P;
    Elem lam;
    if (P.x == Q.x) {
        if (F.add(P.y, Q.y).v == 0) return {{0}, {0}, true};
        const Elem num = F.add(F.mul(F.from_int(3), F.sqr(P.x)), a);
        lam = F.div(num, F.add(P.y, P.y));
    } else {
        lam = F.div(F.sub(Q.y, P.y), F.sub(Q.x, P.x));
    }
    const Elem x3 = F.sub(F.sub(F.sqr(lam), P.x), Q.x);
    const Elem y3 = F.sub(F.mul(lam, F.sub(P.x, x3)), P.y);
    return {x3, y3, false};
}

inline Pt times(const Field& F, Elem a, Pt P, std::uint64_t n)
{
    Pt R{{0}, {0}, true};
    while (n) {
        if (n & 1) R = add(F, a, R, P);
        P = add(F, a, P, P);
        n >>= 1;
    }
    return R;
}

/// #E[n](F) by enumerating every point and multiplying by n.
inline std::uint64_t torsion_count(const Field& F, Elem a, Elem b, std::uint64_t n)
{
    std::uint64_t count = 1;
    for (std::uint64_t x = 0; x < F.order(); ++x)
        for (std::uint64_t y = 0; y < F.order(); ++y) {
            const Elem X{x}, Y{y};
            if (F.sqr(Y) != F.add(F.add(F.mul(F.sqr(X), X), F.mul(a, X)), b)) continue;
            if (times(F, a, {X, Y, false}, n).inf) ++count;
        }
    return count;
}

/// Monic irreducibility over F_p by trial division with every monic of
/// degree <= deg/2 (coefficients constant term first).
inline bool irreducible_trial(const std::vector<std::uint32_t>& f, std::uint32_t p)
{
    const unsigned n = static_cast<unsigned>(f.size()) - 1;
    for (unsigned d = 1; 2 * d <= n; ++d) {
        std::uint64_t total = 1;
        for (unsigned i = 0; i < d; ++i) total *= p;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::vector<std::int64_t> g(d + 1, 0);
            std::uint64_t v = idx;
            for (unsigned i = 0; i < d; ++i, v /= p) g[i] = static_cast<std::int64_t>(v % p);
            g[d] = 1;
            std::vector<std::int64_t> r(f.begin(), f.end());
            for (unsigned top = n; top >= d; --top) {
                const std::int64_t c = r[top] % p;
                if (c != 0)
                    for (unsigned i = 0; i <= d; ++i) r[top - d + i] = ((r[top - d + i] - c * g[i]) % p + p) % p;
                if (top == d) break;
            }
            bool zero = true;
            for (unsigned i = 0; i < d; ++i) zero = zero && r[i] % p == 0;
            if (zero) return false;
        }
    }
    return true;
}

} // namespace oracle
