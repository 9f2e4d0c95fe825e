#pragma once

// The ring O_K = F_q[T] of K = F_q(T), with infinity the degree place.

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "ecff/finite_field.hpp"
#include "ecff/poly.hpp"

namespace ecff {

/// Element of F_q[T].
using PolyOverFq = Poly;

/// |f|_inf = q^{deg f} reported as the pair (q, deg f); |0|_inf = 0.
struct AbsInf {
    std::uint64_t q;
    int degree;   // -1 encodes |0| = 0

    /// The value itself; throws UnsupportedField on 64-bit overflow.
    std::uint64_t value() const;
};

AbsInf abs_inf(const PolyOverFq& f);

/// A monic irreducible P in F_q[T] together with its residue field
/// F_{q^deg} and the canonical root of P (smallest packed index) that
/// fixes the isomorphism O_K/(P) -> F_{q^deg}.
struct PrimeIdeal {
    PolyOverFq gen;
    unsigned degree;
    const Field* residue;
    Elem root;
};

/// Monic irreducibles of degree 1..max_deg, ordered by degree and then by
/// coefficient sequence compared from the constant term.
std::vector<PrimeIdeal> enumerate_primes(const Field& base, unsigned max_deg);
std::vector<PrimeIdeal> enumerate_primes(std::uint64_t q, unsigned max_deg);

/// Shared, cached prime list for (base, max_deg); safe to read concurrently.
const std::vector<PrimeIdeal>& prime_list(const Field& base, unsigned max_deg);

struct SigmaReport {
    std::uint64_t count;       // #{P : deg P <= Q, q^deg P = d mod ell}
    bool d_in_image;           // d lies in <q mod ell>
    bool congruent_at_top;     // q^Q = d mod ell
    double fitted_constant;    // q^Q / (Q * count), 0 when count = 0
};

/// Exact prime count in the congruence class; uses the necklace count per
/// degree since membership depends on deg P only.
SigmaReport sigma_count(std::uint64_t q, unsigned Q, std::uint64_t ell, std::uint64_t d);

/// Image of f in the residue field of P: T -> P.root, coefficients embedded.
Elem reduce_mod_prime(const PolyOverFq& f, const PrimeIdeal& P);

/// Discriminant -16(4a^3 + 27b^2) of the curve y^2 = x^3 + ax + b, over any
/// coefficient field (so over F_q[T] when a and b are in F_q[T]).
Poly curve_discriminant(const Poly& a, const Poly& b);

/// The box {(a, b) : deg a <= x, deg b <= x} in F_q[T]^2.
struct CurveBoxSpec {
    std::uint64_t q;
    unsigned x;

    /// q^{2x+2}; throws BudgetExceeded beyond `budget`.
    std::uint64_t size(std::uint64_t budget = UINT64_MAX) const;
};

struct CurvePair {
    PolyOverFq a;
    PolyOverFq b;
};

/**
 * Index-addressable view of the curve box. Index i enumerates pairs with the
 * constant term of a fastest, then higher coefficients of a, then those of b.
 * Callers partition [0, size) into chunks for parallel sweeps.
 */
class CurveBox {
public:
    CurveBox(const CurveBoxSpec& spec, std::uint64_t budget);

    const Field& base() const { return *base_; }
    std::uint64_t size() const { return size_; }
    unsigned x() const { return spec_.x; }
    CurvePair pair(std::uint64_t index) const;
    /// True when 4a^3 + 27b^2 != 0.
    bool nonsingular(const CurvePair& c) const;

private:
    CurveBoxSpec spec_;
    FieldRef base_;
    std::uint64_t size_;
};

inline constexpr std::uint64_t kDefaultBoxBudget = std::uint64_t{1} << 26;

/// The set C(x) in enumeration order; returns #C(x).
std::uint64_t enumerate_box(const CurveBoxSpec& spec, const std::function<void(const CurvePair&)>& visit,
                            std::uint64_t budget = kDefaultBoxBudget);

struct SquarefreeIdeal {
    PolyOverFq gen;
    std::vector<std::size_t> factors;   // indices into the prime list
};

/// Nonunit squarefree monic polynomials of degree <= Q with factorizations
/// (indices into prime_list(base, Q)).
void squarefree_ideals(const Field& base, unsigned Q, const std::function<void(const SquarefreeIdeal&)>& visit);

} // namespace ecff
