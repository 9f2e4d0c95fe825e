#pragma once

// Small integer number theory shared by every module.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "ecff/error.hpp"

namespace ecff {

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> primes_below(std::uint64_t bound)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n < bound; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

/// Distinct prime divisors in increasing order.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline int mobius(std::uint64_t n)
{
    int mu = 1;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

/// base^e, or nullopt when the result does not fit below `limit`.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t e,
                                                std::uint64_t limit = UINT64_MAX)
{
    unsigned __int128 r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        r *= base;
        if (r > limit) return std::nullopt;
    }
    return static_cast<std::uint64_t>(r);
}

inline std::uint64_t ipow(std::uint64_t base, std::uint64_t e)
{
    auto r = checked_pow(base, e);
    if (!r) throw UnsupportedField("integer power overflows 64 bits");
    return *r;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

/// Multiplicative order of a modulo m (gcd(a, m) = 1 assumed).
inline std::uint64_t mult_order(std::uint64_t a, std::uint64_t m)
{
    a %= m;
    std::uint64_t x = a, k = 1;
    while (x != 1 % m) {
        x = mulmod(x, a, m);
        ++k;
    }
    return k;
}

/// The cyclic subgroup <a> of (Z/m)^x, sorted.
inline std::vector<std::uint64_t> cyclic_subgroup(std::uint64_t a, std::uint64_t m)
{
    std::vector<std::uint64_t> out;
    std::uint64_t x = 1 % m;
    do {
        out.push_back(x);
        x = mulmod(x, a % m, m);
    } while (x != 1 % m);
    std::sort(out.begin(), out.end());
    return out;
}

/// Decompose q = p^k; nullopt if q is not a prime power.
inline std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q)
{
    if (q < 2) return std::nullopt;
    auto ps = prime_divisors(q);
    if (ps.size() != 1) return std::nullopt;
    unsigned k = 0;
    while (q > 1) {
        q /= ps[0];
        ++k;
    }
    return std::make_pair(ps[0], k);
}

/// Number of monic irreducible polynomials of degree d over F_q.
inline std::uint64_t necklace_count(std::uint64_t q, unsigned d)
{
    __int128 s = 0;
    for (unsigned e = 1; e <= d; ++e) {
        if (d % e) continue;
        int mu = mobius(e);
        if (mu) s += static_cast<__int128>(mu) * static_cast<__int128>(ipow(q, d / e));
    }
    return static_cast<std::uint64_t>(s / d);
}

/// Largest divisor of n coprime to p.
inline std::uint64_t prime_to_part(std::uint64_t n, std::uint64_t p)
{
    if (n == 0) return 0;
    while (n % p == 0) n /= p;
    return n;
}

} // namespace ecff
