#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ecff/finite_field.hpp"

namespace ecff {

/// Dense univariate polynomial over a Field, constant term first, with no
/// trailing zero coefficients. The field must outlive the polynomial (fields
/// from make_field live for the whole process).
class Poly {
public:
    explicit Poly(const Field& f) : field_(&f) {}
    Poly(const Field& f, std::vector<Elem> c);

    static Poly constant(const Field& f, Elem c) { return Poly(f, {c}); }
    static Poly monomial(const Field& f, Elem c, unsigned deg);
    static Poly x(const Field& f) { return monomial(f, f.one(), 1); }
    /// Parse "c0,c1,..." (packed element indices).
    static Poly parse(const Field& f, std::string_view text);

    const Field& field() const { return *field_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Elem{0}; }
    Elem lead() const { return c_.empty() ? Elem{0} : c_.back(); }
    const std::vector<Elem>& coeffs() const { return c_; }

    Elem eval(Elem x) const;
    Poly scaled(Elem s) const;
    Poly monic() const;
    Poly derivative() const;
    std::string to_string() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator%(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    Poly operator-() const;

private:
    void normalize();

    const Field* field_;
    std::vector<Elem> c_;
};

/// Quotient and remainder; throws DivisionByZero on a zero divisor.
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
/// Monic gcd (zero if both inputs are zero).
Poly gcd(Poly a, Poly b);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(Poly base, std::uint64_t e, const Poly& m);
/// Distinct roots in the coefficient field, sorted by packed index.
std::vector<Elem> roots(const Poly& f);
/// Number of distinct roots in the coefficient field (degree of gcd with x^q - x).
int root_count(const Poly& f);

} // namespace ecff
