#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ecff {

/// An element of F_{p^k}, packed as the base-p integer sum c_i p^i of its
/// coefficients in the polynomial basis 1, x, ..., x^{k-1}. Prime-field
/// elements are therefore the integers 0..p-1. Arithmetic goes through the
/// owning Field.
struct Elem {
    std::uint64_t v = 0;

    friend constexpr bool operator==(Elem, Elem) = default;
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Field;
using FieldRef = std::shared_ptr<const Field>;

/**
 * The finite field F_p[x]/(m(x)), m monic irreducible of degree k.
 *
 * Immutable once built. Fields of order up to kTableLimit carry discrete
 * log / exponent / Zech tables, which the counting kernels use directly;
 * larger fields fall back to dense coefficient arithmetic.
 */
class Field {
public:
    static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;
    static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 62;
    static constexpr std::uint32_t kNoLog = UINT32_MAX;

    std::uint32_t characteristic() const { return p_; }
    unsigned degree() const { return k_; }
    std::uint64_t order() const { return q_; }
    /// c_0, ..., c_k of the modulus (c_k = 1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Elem zero() const { return {0}; }
    Elem one() const { return {1}; }
    Elem from_int(std::int64_t n) const;
    Elem from_coeffs(std::span<const std::uint32_t> c) const;
    std::vector<std::uint32_t> coeffs(Elem a) const;
    /// Element with packed index i (0 <= i < order()).
    Elem element(std::uint64_t i) const { return {i}; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem sqr(Elem a) const { return mul(a, a); }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;

    /// Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise.
    int chi(Elem a) const;
    bool is_square(Elem a) const { return chi(a) >= 0; }
    /// A square root of a; throws NotASquare.
    Elem sqrt(Elem a) const;

    bool has_tables() const { return !log_.empty(); }
    /// Discrete log base generator(); requires tables and a != 0.
    std::uint32_t log(Elem a) const { return log_[a.v]; }
    /// generator()^i for 0 <= i < 2(q-1); requires tables.
    Elem exp(std::uint64_t i) const { return {exp_[i]}; }
    /// log(1 + g^i), or kNoLog when 1 + g^i = 0; requires tables.
    std::uint32_t zech(std::uint64_t i) const { return zech_[i]; }
    Elem generator() const { return generator_; }

    std::string to_string(Elem a) const;

    Field(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus);

private:
    Elem dense_mul(Elem a, Elem b) const;
    Elem dense_pow(Elem a, std::uint64_t e) const;
    Elem dense_add(Elem a, Elem b) const;
    Elem dense_neg(Elem a) const;
    void unpack(Elem a, std::uint32_t* out) const;
    Elem pack(const std::uint32_t* d) const;
    void build_tables();
    Elem tonelli_shanks(Elem a) const;

    std::uint32_t p_;
    unsigned k_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;
    Elem generator_{0};
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> zech_;
};

/// F_{p^k} with the lexicographically smallest monic irreducible modulus
/// (coefficients compared constant term first). Cached: the same (p, k)
/// always returns the same object.
FieldRef make_field(std::uint64_t p, unsigned k);

/// make_field for q = p^k given as an integer.
FieldRef field_of_order(std::uint64_t q);

/// Rabin's irreducibility test for a monic polynomial over F_p
/// (coefficients constant term first).
bool is_irreducible_mod_p(std::span<const std::uint32_t> monic, std::uint32_t p);

/// The embedding F_{p^k} -> F_{p^{km}} sending x to the smallest root (by
/// packed index) of the source modulus in the target. Field homomorphism,
/// identity on F_p.
class Embedding {
public:
    Embedding(const Field& src, const Field& dst);
    Elem operator()(Elem a) const;
    const Field& source() const { return *src_; }
    const Field& target() const { return *dst_; }

private:
    const Field* src_;
    const Field* dst_;
    std::vector<Elem> basis_;   // images of 1, x, ..., x^{k-1}
};

/// Cached embedding between two fields of the same characteristic; throws
/// InvalidArgument unless src.degree() divides dst.degree().
const Embedding& embedding(const Field& src, const Field& dst);

inline Elem embed(const Field& src, Elem a, const Field& dst) { return embedding(src, dst)(a); }

} // namespace ecff
