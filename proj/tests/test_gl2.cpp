#include <doctest.h>

#include <algorithm>
#include <random>

#include "ecff/arith.hpp"
#include "ecff/error.hpp"
#include "ecff/gl2.hpp"

using namespace ecff;

TEST_CASE("class table sizes")
{
    for (std::uint32_t ell : {2u, 3u, 5u, 7u, 11u, 13u}) {
        const ClassTable& t = class_table(ell);
        CHECK(t.classes().size() == ell * ell - 1);
        std::uint64_t total = 0, det1 = 0;
        for (const auto& c : t.classes()) {
            total += c.size;
            if (c.det == 1 % ell) det1 += c.size;
        }
        CHECK(total == t.group_order());
        CHECK(det1 == t.sl2_order());
    }
    std::vector<std::uint64_t> sizes;
    for (int id : det1_classes(class_table(3))) sizes.push_back(class_table(3)[id].size);
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::uint64_t>{1, 1, 6, 8, 8});
}

TEST_CASE("class_of is constant on conjugacy classes")
{
    for (std::uint32_t ell : {3u, 5u}) {
        const ClassTable& t = class_table(ell);
        std::mt19937 rng(ell);
        std::uniform_int_distribution<std::uint32_t> pick(0, ell * ell * ell * ell - 1);
        for (int i = 0; i < 200; ++i) {
            const Mat2 m = mat_from_index(pick(rng), ell), g = mat_from_index(pick(rng), ell);
            if (mat_det(m, ell) == 0 || mat_det(g, ell) == 0) continue;
            const Mat2 c = mat_mul(mat_mul(g, m, ell), mat_inv(g, ell), ell);
            CHECK(t.class_of(c) == t.class_of(m));
            const auto& cls = t[t.class_of(m)];
            CHECK(cls.trace == mat_trace(m, ell));
            CHECK(cls.det == mat_det(m, ell));
        }
    }
}

TEST_CASE("frobenius_class needs the scalar flag only for repeated eigenvalues")
{
    const ClassTable& t = class_table(5);
    // trace 2, det 1: eigenvalue 1 repeated.
    CHECK_THROWS_AS(frobenius_class(t, 2, 1, std::nullopt), AmbiguousClass);
    CHECK(t[frobenius_class(t, 2, 1, true)].scalar);
    CHECK_FALSE(t[frobenius_class(t, 2, 1, false)].scalar);
    CHECK(t[frobenius_class(t, 2, 1, false)].size == 24);
    // trace 0, det 1: x^2 + 1 splits mod 5, no ambiguity.
    CHECK_NOTHROW(frobenius_class(t, 0, 1, std::nullopt));
    CHECK(repeated_eigenvalue(5, 2) == 1);
    CHECK(repeated_eigenvalue(7, -4) == 5);
    CHECK(repeated_eigenvalue(2, 0) == 1);
}

TEST_CASE("Gamma_ell")
{
    const GammaEll g = gamma_ell(7, 5);
    CHECK(g.det_subgroup.size() == 6);
    CHECK(g.order == class_table(7).group_order());
    const GammaEll h = gamma_ell(5, 11);
    CHECK(h.det_subgroup == std::vector<std::uint32_t>{1});
    CHECK(h.order == 120);
    CHECK_THROWS_AS(gamma_ell(5, 25), InvalidArgument);
}

TEST_CASE("generated subgroups")
{
    for (std::uint32_t ell : {3u, 5u, 7u}) {
        const Mat2 u{1, 1, 0, 1}, l{1, 0, 1, 1};
        CHECK(generated_subgroup({u, l}, ell).size() == class_table(ell).sl2_order());
        CHECK(generated_subgroup({u}, ell).size() == ell);
    }
}

TEST_CASE("criterion soundness: no proper subgroup is certified (ell <= 7)")
{
    // Random subgroups from pairs of generators, plus Borel and both Cartan
    // normalizers' determinant-one parts.
    for (std::uint32_t ell : {2u, 3u, 5u, 7u}) {
        const ClassTable& t = class_table(ell);
        const std::uint64_t q = ell == 2 ? 5 : 2;   // any q prime to ell
        const auto target = cyclic_subgroup(q % ell, ell);
        std::mt19937 rng(ell * 31);
        std::uniform_int_distribution<std::uint32_t> pick(0, ell * ell * ell * ell - 1);
        int proper = 0;
        for (int trial = 0; trial < 150; ++trial) {
            std::vector<Mat2> gens;
            while (gens.size() < (trial % 3 == 0 ? 1u : 2u)) {
                Mat2 m = mat_from_index(pick(rng), ell);
                if (mat_det(m, ell) == 0) continue;
                if (trial % 2 == 0) m.c = 0;   // upper triangular: stays in a Borel
                if (mat_det(m, ell) != 0) gens.push_back(m);
            }
            const auto H = generated_subgroup(gens, ell);
            std::set<int> observed;
            std::set<std::uint32_t> dets;
            std::uint64_t sl2_part = 0;
            for (auto idx : H) {
                const Mat2 m = mat_from_index(idx, ell);
                observed.insert(t.class_of(m));
                dets.insert(mat_det(m, ell));
                if (mat_det(m, ell) == 1 % ell) ++sl2_part;
            }
            const bool contains_sl2 = sl2_part == t.sl2_order();
            const auto v = surjectivity_criterion(ell, q, observed, dets);
            if (!contains_sl2) {
                ++proper;
                CHECK_FALSE(v.missing.empty());
                CHECK_FALSE(v.certified);
            }
        }
        CHECK(proper > 0);
    }
}

TEST_CASE("c(g) and the hypothesis check")
{
    CHECK(c_of_g(0) == 15);
    auto r5 = hypothesis_check(5, 0);
    CHECK_FALSE(r5.pass);
    CHECK(r5.witness == 11u);
    CHECK(hypothesis_check(11, 0).pass);
    CHECK(hypothesis_check(13, 0).pass);
    CHECK(c_of_g(1) >= c_of_g(0));
}
