#include "ecff/finite_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "ecff/arith.hpp"
#include "ecff/error.hpp"
#include "ecff/poly.hpp"

namespace ecff {

namespace {

using Coeffs = std::vector<std::uint64_t>;

void trim(Coeffs& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p)
{
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr) {
        std::int64_t qt = r / nr;
        t -= qt * nt;
        std::swap(t, nt);
        r -= qt * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw DivisionByZero("inverse of zero in prime field");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

// Polynomial helpers over F_p used only while searching for a modulus.
Coeffs mod_poly(Coeffs a, const Coeffs& m, std::uint64_t p)
{
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        std::uint64_t c = a.back() * lead_inv % p;
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j)
            a[shift + j] = (a[shift + j] + p - c * m[j] % p) % p;
        trim(a);
    }
    return a;
}

Coeffs mulmod_poly(const Coeffs& a, const Coeffs& b, const Coeffs& m, std::uint64_t p)
{
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return mod_poly(std::move(r), m, p);
}

Coeffs powmod_poly(Coeffs base, std::uint64_t e, const Coeffs& m, std::uint64_t p)
{
    Coeffs r{1};
    base = mod_poly(std::move(base), m, p);
    while (e) {
        if (e & 1) r = mulmod_poly(r, base, m, p);
        base = mulmod_poly(base, base, m, p);
        e >>= 1;
    }
    return r;
}

Coeffs gcd_poly(Coeffs a, Coeffs b, std::uint64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = mod_poly(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

std::mutex& registry_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace

bool is_irreducible_mod_p(std::span<const std::uint32_t> monic, std::uint32_t p)
{
    Coeffs f(monic.begin(), monic.end());
    trim(f);
    if (f.size() < 2) return false;
    const unsigned k = static_cast<unsigned>(f.size() - 1);
    if (k == 1) return true;
    const Coeffs x{0, 1};
    // x^{p^j} mod f for j = 0..k
    std::vector<Coeffs> frob{mod_poly(x, f, p)};
    for (unsigned j = 1; j <= k; ++j) frob.push_back(powmod_poly(frob.back(), p, f, p));
    auto minus_x = [&](Coeffs g) {
        g.resize(std::max<std::size_t>(g.size(), 2), 0);
        g[1] = (g[1] + p - 1) % p;
        trim(g);
        return g;
    };
    if (!minus_x(frob[k]).empty()) return false;
    for (std::uint64_t r : prime_divisors(k)) {
        Coeffs g = gcd_poly(f, minus_x(frob[k / r]), p);
        if (g.size() != 1) return false;
    }
    return true;
}

Field::Field(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), q_(ipow(p, k)), modulus_(std::move(modulus))
{
    if (q_ <= kTableLimit) build_tables();
}

void Field::unpack(Elem a, std::uint32_t* out) const
{
    std::uint64_t v = a.v;
    for (unsigned i = 0; i < k_; ++i) {
        out[i] = static_cast<std::uint32_t>(v % p_);
        v /= p_;
    }
}

Elem Field::pack(const std::uint32_t* d) const
{
    std::uint64_t v = 0;
    for (unsigned i = k_; i-- > 0;) v = v * p_ + d[i];
    return {v};
}

Elem Field::from_int(std::int64_t n) const
{
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint64_t>(r)};
}

Elem Field::from_coeffs(std::span<const std::uint32_t> c) const
{
    if (c.size() > k_) throw InvalidArgument("too many coefficients for field element");
    std::uint32_t d[64] = {};
    for (std::size_t i = 0; i < c.size(); ++i) d[i] = c[i] % p_;
    return pack(d);
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const
{
    std::vector<std::uint32_t> out(k_);
    unpack(a, out.data());
    return out;
}

Elem Field::dense_add(Elem a, Elem b) const
{
    std::uint64_t x = a.v, y = b.v, r = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
        std::uint64_t d = (x % p_ + y % p_) % p_;
        r += d * scale;
        scale *= p_;
        x /= p_;
        y /= p_;
    }
    return {r};
}

Elem Field::dense_neg(Elem a) const
{
    std::uint64_t x = a.v, r = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
        std::uint64_t d = (p_ - x % p_) % p_;
        r += d * scale;
        scale *= p_;
        x /= p_;
    }
    return {r};
}

Elem Field::dense_mul(Elem a, Elem b) const
{
    if (k_ == 1) return {a.v * b.v % p_};
    std::uint32_t da[64], db[64];
    std::uint64_t prod[128] = {};
    unpack(a, da);
    unpack(b, db);
    for (unsigned i = 0; i < k_; ++i) {
        if (!da[i]) continue;
        for (unsigned j = 0; j < k_; ++j) prod[i + j] += std::uint64_t{da[i]} * db[j];
    }
    for (unsigned i = 0; i < 2 * k_ - 1; ++i) prod[i] %= p_;
    for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
        std::uint64_t c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < k_; ++j)
            prod[i - k_ + j] = (prod[i - k_ + j] + c * (p_ - modulus_[j])) % p_;
    }
    std::uint32_t d[64];
    for (unsigned i = 0; i < k_; ++i) d[i] = static_cast<std::uint32_t>(prod[i]);
    return pack(d);
}

Elem Field::dense_pow(Elem a, std::uint64_t e) const
{
    Elem r = one();
    while (e) {
        if (e & 1) r = dense_mul(r, a);
        a = dense_mul(a, a);
        e >>= 1;
    }
    return r;
}

void Field::build_tables()
{
    const std::uint64_t n = q_ - 1;
    const auto divisors = prime_divisors(n);
    for (std::uint64_t g = 1; g < q_; ++g) {
        bool primitive = true;
        for (std::uint64_t r : divisors) {
            if (dense_pow({g}, n / r) == one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            generator_ = {g};
            break;
        }
    }
    log_.assign(q_, kNoLog);
    exp_.assign(2 * n, 0);
    Elem x = one();
    for (std::uint64_t i = 0; i < n; ++i) {
        exp_[i] = exp_[i + n] = static_cast<std::uint32_t>(x.v);
        log_[x.v] = static_cast<std::uint32_t>(i);
        x = dense_mul(x, generator_);
    }
    zech_.assign(n, kNoLog);
    for (std::uint64_t i = 0; i < n; ++i) {
        Elem s = dense_add({exp_[i]}, one());
        zech_[i] = s.v == 0 ? kNoLog : log_[s.v];
    }
}

Elem Field::add(Elem a, Elem b) const
{
    if (k_ == 1) {
        std::uint64_t s = a.v + b.v;
        return {s >= p_ ? s - p_ : s};
    }
    if (!has_tables()) return dense_add(a, b);
    if (a.v == 0) return b;
    if (b.v == 0) return a;
    const std::uint64_t n = q_ - 1;
    const std::uint32_t la = log_[a.v], lb = log_[b.v];
    const std::uint64_t d = lb >= la ? lb - la : lb + n - la;
    const std::uint32_t z = zech_[d];
    if (z == kNoLog) return zero();
    return {exp_[la + z]};
}

Elem Field::neg(Elem a) const
{
    if (a.v == 0) return a;
    if (k_ == 1) return {p_ - a.v};
    if (!has_tables()) return dense_neg(a);
    return {exp_[log_[a.v] + (q_ - 1) / 2]};
}

Elem Field::mul(Elem a, Elem b) const
{
    if (k_ == 1) return {a.v * b.v % p_};
    if (!has_tables()) return dense_mul(a, b);
    if (a.v == 0 || b.v == 0) return zero();
    return {exp_[std::uint64_t{log_[a.v]} + log_[b.v]]};
}

Elem Field::inv(Elem a) const
{
    if (a.v == 0) throw DivisionByZero("inverse of zero");
    if (k_ == 1) return {inv_mod(a.v, p_)};
    if (has_tables()) {
        std::uint32_t l = log_[a.v];
        return {exp_[l == 0 ? 0 : (q_ - 1) - l]};
    }
    return dense_pow(a, q_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const
{
    if (has_tables()) {
        if (a.v == 0) return e == 0 ? one() : zero();
        std::uint64_t n = q_ - 1;
        return {exp_[mulmod(log_[a.v], e % n, n)]};
    }
    return dense_pow(a, e);
}

int Field::chi(Elem a) const
{
    if (a.v == 0) return 0;
    if (has_tables()) return (log_[a.v] & 1) ? -1 : 1;
    return dense_pow(a, (q_ - 1) / 2) == one() ? 1 : -1;
}

Elem Field::tonelli_shanks(Elem a) const
{
    std::uint64_t t = q_ - 1;
    unsigned s = 0;
    while (!(t & 1)) {
        t >>= 1;
        ++s;
    }
    Elem z{2};
    while (chi(z) != -1) ++z.v;
    Elem c = pow(z, t);
    Elem x = pow(a, (t + 1) / 2);
    Elem b = pow(a, t);
    unsigned m = s;
    while (b != one()) {
        unsigned i = 0;
        Elem bb = b;
        while (bb != one()) {
            bb = mul(bb, bb);
            ++i;
        }
        Elem w = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) w = mul(w, w);
        x = mul(x, w);
        c = mul(w, w);
        b = mul(b, c);
        m = i;
    }
    return x;
}

Elem Field::sqrt(Elem a) const
{
    int c = chi(a);
    if (c == 0) return zero();
    if (c < 0) throw NotASquare("sqrt of a non-square");
    if (has_tables()) return {exp_[log_[a.v] / 2]};
    return tonelli_shanks(a);
}

std::string Field::to_string(Elem a) const
{
    if (k_ == 1) return std::to_string(a.v);
    std::string s;
    auto c = coeffs(a);
    for (unsigned i = 0; i < k_; ++i) {
        if (i) s += ':';
        s += std::to_string(c[i]);
    }
    return s;
}

FieldRef make_field(std::uint64_t p, unsigned k)
{
    if (!is_prime(p)) throw UnsupportedField("characteristic " + std::to_string(p) + " is not prime");
    if (p <= 3) throw UnsupportedField("characteristic must exceed 3");
    if (p >= (1u << 16)) throw UnsupportedField("characteristic must be below 2^16");
    if (k == 0) throw InvalidArgument("extension degree must be positive");
    if (!checked_pow(p, k, Field::kMaxOrder)) throw UnsupportedField("field order exceeds 2^62");

    std::lock_guard lock(registry_mutex());
    static std::map<std::pair<std::uint64_t, unsigned>, FieldRef> cache;
    auto key = std::make_pair(p, k);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    // Enumerate monic degree-k polynomials with c_0 most significant, so the
    // first irreducible hit is lexicographically smallest from the constant term.
    std::vector<std::uint32_t> m(k + 1, 0);
    m[k] = 1;
    if (k > 1) {
        for (;;) {
            if (m[0] != 0 && is_irreducible_mod_p(m, static_cast<std::uint32_t>(p))) break;
            int i = static_cast<int>(k) - 1;
            while (i >= 0 && ++m[i] == p) m[i--] = 0;
            if (i < 0) throw InvariantViolation("no irreducible polynomial found");
        }
    }
    auto f = std::make_shared<const Field>(static_cast<std::uint32_t>(p), k, std::move(m));
    cache.emplace(key, f);
    return f;
}

FieldRef field_of_order(std::uint64_t q)
{
    auto pk = prime_power(q);
    if (!pk) throw UnsupportedField(std::to_string(q) + " is not a prime power");
    return make_field(pk->first, pk->second);
}

Embedding::Embedding(const Field& src, const Field& dst) : src_(&src), dst_(&dst)
{
    if (src.characteristic() != dst.characteristic() || dst.degree() % src.degree() != 0)
        throw InvalidArgument("no embedding between these fields");
    const unsigned k = src.degree();
    if (k == 1) return;
    std::vector<Elem> m;
    for (std::uint32_t c : src.modulus()) m.push_back(dst.from_int(c));
    auto rs = roots(Poly(dst, std::move(m)));
    if (rs.empty()) throw InvariantViolation("source modulus has no root in target");
    Elem beta = *std::min_element(rs.begin(), rs.end());
    Elem x = dst.one();
    for (unsigned i = 0; i < k; ++i) {
        basis_.push_back(x);
        x = dst.mul(x, beta);
    }
}

Elem Embedding::operator()(Elem a) const
{
    if (src_->degree() == 1) return a;
    auto c = src_->coeffs(a);
    Elem r = dst_->zero();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i]) r = dst_->add(r, dst_->mul(dst_->from_int(c[i]), basis_[i]));
    return r;
}

const Embedding& embedding(const Field& src, const Field& dst)
{
    static std::mutex m;
    static std::map<std::pair<const Field*, const Field*>, std::unique_ptr<Embedding>> cache;
    std::lock_guard lock(m);
    auto key = std::make_pair(&src, &dst);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<Embedding>(src, dst)).first;
    return *it->second;
}

} // namespace ecff
