#include "ecff/poly.hpp"

#include <algorithm>
#include <charconv>

#include "ecff/error.hpp"

namespace ecff {

Poly::Poly(const Field& f, std::vector<Elem> c) : field_(&f), c_(std::move(c))
{
    normalize();
}

void Poly::normalize()
{
    while (!c_.empty() && c_.back().v == 0) c_.pop_back();
}

Poly Poly::monomial(const Field& f, Elem c, unsigned deg)
{
    std::vector<Elem> v(deg + 1, f.zero());
    v[deg] = c;
    return Poly(f, std::move(v));
}

Poly Poly::parse(const Field& f, std::string_view text)
{
    std::vector<Elem> c;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) end = text.size();
        auto tok = text.substr(pos, end - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || v >= f.order())
            throw InvalidArgument("bad polynomial coefficient '" + std::string(tok) + "'");
        c.push_back({v});
        pos = end + 1;
    }
    return Poly(f, std::move(c));
}

Elem Poly::eval(Elem x) const
{
    Elem r = field_->zero();
    for (std::size_t i = c_.size(); i-- > 0;) r = field_->add(field_->mul(r, x), c_[i]);
    return r;
}

Poly Poly::scaled(Elem s) const
{
    std::vector<Elem> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_->mul(c_[i], s);
    return Poly(*field_, std::move(v));
}

Poly Poly::monic() const
{
    if (c_.empty()) return *this;
    return scaled(field_->inv(lead()));
}

Poly Poly::derivative() const
{
    std::vector<Elem> v;
    for (std::size_t i = 1; i < c_.size(); ++i)
        v.push_back(field_->mul(field_->from_int(static_cast<std::int64_t>(i)), c_[i]));
    return Poly(*field_, std::move(v));
}

std::string Poly::to_string() const
{
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c_[i].v);
    }
    return s;
}

Poly operator+(const Poly& a, const Poly& b)
{
    const Field& f = a.field();
    std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(a.coeff(i), b.coeff(i));
    return Poly(f, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b)
{
    const Field& f = a.field();
    std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.sub(a.coeff(i), b.coeff(i));
    return Poly(f, std::move(v));
}

Poly Poly::operator-() const
{
    std::vector<Elem> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_->neg(c_[i]);
    return Poly(*field_, std::move(v));
}

Poly operator*(const Poly& a, const Poly& b)
{
    const Field& f = a.field();
    if (a.is_zero() || b.is_zero()) return Poly(f);
    std::vector<Elem> v(a.c_.size() + b.c_.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].v == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            v[i + j] = f.add(v[i + j], f.mul(a.c_[i], b.c_[j]));
    }
    return Poly(f, std::move(v));
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b)
{
    const Field& f = a.field();
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(f), a};
    std::vector<Elem> r = a.coeffs();
    const auto& d = b.coeffs();
    const std::size_t db = d.size() - 1;
    std::vector<Elem> quot(r.size() - db, f.zero());
    const Elem lead_inv = f.inv(b.lead());
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i].v == 0) continue;
        Elem c = f.mul(r[i], lead_inv);
        quot[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = f.sub(r[i - db + j], f.mul(c, d[j]));
    }
    r.resize(db);
    return {Poly(f, std::move(quot)), Poly(f, std::move(r))};
}

Poly operator%(const Poly& a, const Poly& b)
{
    return divrem(a, b).second;
}

Poly gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m)
{
    return (a * b) % m;
}

Poly powmod(Poly base, std::uint64_t e, const Poly& m)
{
    const Field& f = m.field();
    Poly r = Poly::constant(f, f.one()) % m;
    base = base % m;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        e >>= 1;
        if (e) base = mulmod(base, base, m);
    }
    return r;
}

namespace {

void split_roots(const Poly& g, std::vector<Elem>& out)
{
    const Field& f = g.field();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        out.push_back(f.neg(f.div(g.coeff(0), g.coeff(1))));
        return;
    }
    // Equal-degree splitting of a product of distinct linear factors.
    const std::uint64_t half = (f.order() - 1) / 2;
    for (std::uint64_t s = 0; s < f.order(); ++s) {
        Poly shift(f, {f.element(s), f.one()});
        Poly h = powmod(shift, half, g) - Poly::constant(f, f.one());
        Poly d = gcd(g, h);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_roots(d, out);
            split_roots(divrem(g, d).first, out);
            return;
        }
    }
    throw InvariantViolation("root splitting failed");
}

} // namespace

int root_count(const Poly& fpoly)
{
    if (fpoly.degree() <= 0) return 0;
    const Field& f = fpoly.field();
    Poly xq = powmod(Poly::x(f), f.order(), fpoly);
    return gcd(fpoly, xq - Poly::x(f)).degree();
}

std::vector<Elem> roots(const Poly& fpoly)
{
    std::vector<Elem> out;
    if (fpoly.degree() <= 0) return out;
    const Field& f = fpoly.field();
    if (f.order() <= 256) {
        for (std::uint64_t i = 0; i < f.order(); ++i)
            if (fpoly.eval(f.element(i)).v == 0) out.push_back(f.element(i));
        return out;
    }
    Poly xq = powmod(Poly::x(f), f.order(), fpoly);
    Poly g = gcd(fpoly, xq - Poly::x(f));
    split_roots(g, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ecff
