#include <doctest.h>

#include <random>

#include "ecff/arith.hpp"
#include "ecff/error.hpp"
#include "ecff/finite_field.hpp"
#include "ecff/poly.hpp"
#include "oracles.hpp"

using namespace ecff;

TEST_CASE("make_field rejects unsupported characteristics")
{
    CHECK_THROWS_AS(make_field(2, 1), UnsupportedField);
    CHECK_THROWS_AS(make_field(3, 2), UnsupportedField);
    CHECK_THROWS_AS(make_field(9, 1), UnsupportedField);
    CHECK_THROWS_AS(make_field(5, 0), InvalidArgument);
    CHECK_THROWS_AS(field_of_order(12), UnsupportedField);
}

TEST_CASE("moduli are irreducible and cached")
{
    for (std::uint32_t p : {5u, 7u, 11u})
        for (unsigned k = 1; k <= 4; ++k) {
            auto F = make_field(p, k);
            CHECK(F->order() == ipow(p, k));
            CHECK(oracle::irreducible_trial(F->modulus(), p));
            CHECK(make_field(p, k).get() == F.get());
        }
}

TEST_CASE("modulus is the smallest irreducible, constant term compared first")
{
    // Oracle: scan monic degree-k polynomials in that order and take the first
    // irreducible one with nonzero constant term.
    for (unsigned k = 2; k <= 3; ++k) {
        const std::uint32_t p = 5;
        std::vector<std::uint32_t> best;
        const std::uint64_t total = ipow(p, k);
        for (std::uint64_t idx = 0; idx < total && best.empty(); ++idx) {
            // idx enumerated so that c0 is the most significant digit.
            std::vector<std::uint32_t> c(k + 1, 0);
            std::uint64_t v = idx;
            for (unsigned i = k; i-- > 0;) {
                c[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            c[k] = 1;
            if (c[0] != 0 && oracle::irreducible_trial(c, p)) best = c;
        }
        CHECK(make_field(p, k)->modulus() == best);
    }
}

TEST_CASE("Rabin test agrees with trial division")
{
    const std::uint32_t p = 5;
    for (unsigned n = 1; n <= 4; ++n) {
        const std::uint64_t total = ipow(p, n);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::vector<std::uint32_t> c(n + 1, 0);
            std::uint64_t v = idx;
            for (unsigned i = 0; i < n; ++i, v /= p) c[i] = static_cast<std::uint32_t>(v % p);
            c[n] = 1;
            CHECK(is_irreducible_mod_p(c, p) == oracle::irreducible_trial(c, p));
        }
    }
}

TEST_CASE("table and dense multiplication agree with schoolbook products")
{
    std::mt19937_64 rng(7);
    for (auto [p, k] : {std::pair{5u, 2u}, {7u, 3u}, {5u, 9u}, {11u, 6u}}) {
        auto F = make_field(p, k);
        CHECK(F->has_tables() == (F->order() <= Field::kTableLimit));
        std::uniform_int_distribution<std::uint64_t> pick(0, F->order() - 1);
        for (int i = 0; i < 300; ++i) {
            const Elem a{pick(rng)}, b{pick(rng)};
            CHECK(F->mul(a, b) == oracle::mul(*F, a, b));
            if (a.v != 0) CHECK(F->mul(a, F->inv(a)) == F->one());
            CHECK(F->sub(F->add(a, b), b) == a);
        }
    }
}

TEST_CASE("field axioms exhaustively on F_25")
{
    auto F = make_field(5, 2);
    for (std::uint64_t i = 0; i < 25; ++i)
        for (std::uint64_t j = 0; j < 25; ++j) {
            const Elem a{i}, b{j};
            CHECK(F->mul(a, b) == F->mul(b, a));
            for (std::uint64_t k = 0; k < 25; k += 6) {
                const Elem c{k};
                CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            }
        }
    CHECK_THROWS_AS(F->inv(F->zero()), DivisionByZero);
}

TEST_CASE("quadratic character and square roots")
{
    for (auto [p, k] : {std::pair{7u, 1u}, {5u, 2u}, {5u, 9u}}) {
        auto F = make_field(p, k);
        std::mt19937_64 rng(k);
        std::uniform_int_distribution<std::uint64_t> pick(1, F->order() - 1);
        for (int i = 0; i < 200; ++i) {
            const Elem a{pick(rng)}, b{pick(rng)};
            CHECK(F->chi(F->mul(a, b)) == F->chi(a) * F->chi(b));
            const Elem s = F->sqr(a);
            CHECK(F->chi(s) == 1);
            const Elem r = F->sqrt(s);
            CHECK(F->sqr(r) == s);
            if (F->chi(a) < 0) CHECK_THROWS_AS(F->sqrt(a), NotASquare);
        }
    }
}

TEST_CASE("embeddings are ring homomorphisms fixing F_p")
{
    for (auto [k, m] : {std::pair{1u, 2u}, {2u, 4u}, {1u, 3u}, {2u, 6u}}) {
        auto S = make_field(5, k), T = make_field(5, m);
        const Embedding& e = embedding(*S, *T);
        for (std::uint64_t i = 0; i < S->order(); ++i)
            for (std::uint64_t j = 0; j < S->order(); j += 3) {
                const Elem a{i}, b{j};
                CHECK(e(S->mul(a, b)) == T->mul(e(a), e(b)));
                CHECK(e(S->add(a, b)) == T->add(e(a), e(b)));
            }
        for (std::uint64_t c = 0; c < 5; ++c) CHECK(e(Elem{c}) == Elem{c});
    }
    CHECK_THROWS_AS(embedding(*make_field(5, 2), *make_field(5, 3)), InvalidArgument);
}

TEST_CASE("polynomial roots match brute force")
{
    std::mt19937_64 rng(3);
    for (auto [p, k] : {std::pair{11u, 1u}, {5u, 4u}, {7u, 4u}}) {
        auto F = make_field(p, k);
        std::uniform_int_distribution<std::uint64_t> pick(0, F->order() - 1);
        for (int t = 0; t < 20; ++t) {
            std::vector<Elem> c(5);
            for (auto& x : c) x = Elem{pick(rng)};
            c.back() = F->one();
            const Poly f(*F, c);
            std::vector<Elem> brute;
            for (std::uint64_t i = 0; i < F->order(); ++i)
                if (f.eval(Elem{i}).v == 0) brute.push_back(Elem{i});
            CHECK(roots(f) == brute);
            CHECK(root_count(f) == static_cast<int>(brute.size()));
        }
    }
}

TEST_CASE("polynomial division identity")
{
    auto F = make_field(7, 2);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> pick(0, F->order() - 1);
    for (int t = 0; t < 50; ++t) {
        std::vector<Elem> a(7), b(3);
        for (auto& x : a) x = Elem{pick(rng)};
        for (auto& x : b) x = Elem{pick(rng)};
        b.back() = F->one();
        const Poly A(*F, a), B(*F, b);
        auto [quo, rem] = divrem(A, B);
        CHECK(quo * B + rem == A);
        CHECK(rem.degree() < B.degree());
    }
    CHECK_THROWS_AS(divrem(Poly::x(*F), Poly(*F)), DivisionByZero);
}
