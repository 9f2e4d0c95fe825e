#pragma once

// Short Weierstrass curves y^2 = x^3 + ax + b over finite fields.

#include <cstdint>

#include "ecff/finite_field.hpp"
#include "ecff/poly.hpp"

namespace ecff {

/// -16(4a^3 + 27b^2).
Elem discriminant(const Field& f, Elem a, Elem b);

struct Curve {
    const Field* field;
    Elem a;
    Elem b;

    /// Throws SingularCurve when the discriminant vanishes.
    static Curve make(const Field& f, Elem a, Elem b);
};

struct PointCount {
    std::uint64_t N;
    std::int64_t trace;   // q + 1 - N
};

/// x-loop over the field: 1 + sum_x (1 + chi(x^3 + ax + b)). Needs a tabled field.
PointCount point_count_naive(const Curve& c);
/// Baby-step giant-step order search in the Hasse interval, falling back on
/// the quadratic twist when a single point leaves the order ambiguous.
PointCount point_count_bsgs(const Curve& c, std::uint64_t seed = 0x5eed);
/// Naive for tabled fields (order <= Field::kTableLimit), BSGS above.
PointCount point_count(const Curve& c);

/// sum over x in F of chi(x^3 + ax + b); the hot loop behind point_count_naive.
std::int64_t character_sum(const Field& f, Elem a, Elem b);

/// trace = 0 (mod p).
bool is_supersingular(const Curve& c);

/// Coefficient of x^{p-1} in (x^3 + ax + b)^{(p-1)/2}, for a, b in F_q[T]
/// (or constants). Zero exactly when the generic fiber is supersingular.
Poly hasse_invariant(const Poly& a, const Poly& b);

/// psi_ell for odd ell != p, degree (ell^2 - 1)/2.
Poly division_poly(unsigned ell, const Curve& c);

/// r with #E[ell](F_{q^m}) = ell^r, q = #c.field. Root counting over the
/// curve's own field (gcd with x^{q^m} - x); never enumerates points.
unsigned torsion_rank(const Curve& c, unsigned ell, unsigned m);

} // namespace ecff
