#include <doctest.h>

#include <sstream>

#include "ecff/error.hpp"
#include "ecff/experiments.hpp"

using namespace ecff;

namespace {

std::string body(const std::string& csv)
{
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') out += line + '\n';
    return out;
}

RunConfig small()
{
    RunConfig cfg;
    cfg.q = 5;
    cfg.x_min = 0;
    cfg.x_max = 1;
    cfg.ells = std::vector<std::uint32_t>{2, 3, 5};
    cfg.D = 2;
    return cfg;
}

} // namespace

TEST_CASE("cmd_check")
{
    CHECK_FALSE(cmd_check(5, 0).pass);
    CHECK(cmd_check(5, 0).witness == 11u);
    CHECK(cmd_check(11, 0).pass);
    std::ostringstream os;
    write_check(os, 5, 0, cmd_check(5, 0), Format::csv);
    CHECK(os.str().find("fail witness ell=11") != std::string::npos);
}

TEST_CASE("density report invariants")
{
    const RunConfig cfg = small();
    const auto rep = cmd_density(cfg);
    CHECK_FALSE(rep.hypothesis.pass);
    CHECK_FALSE(rep.warnings.empty());
    REQUIRE(rep.rows.size() == 2);
    for (const auto& r : rep.rows) {
        std::uint64_t sum = 0;
        for (const auto& e : r.per_ell) {
            CHECK(e.not_certified <= r.curves);
            if (e.exact) CHECK(*e.exact <= e.not_certified);
            sum += e.not_certified;
        }
        CHECK(r.union_count <= sum);
        for (const auto& e : r.per_ell) CHECK(r.union_count >= e.not_certified);
    }
    CHECK(rep.rows[0].curves == 20);
    CHECK(rep.rows[1].curves == 620);
}

TEST_CASE("deeper scans never raise a not-certified count")
{
    RunConfig cfg = small();
    cfg.x_min = 1;
    cfg.D = 1;
    const auto lo = cmd_density(cfg);
    cfg.D = 3;
    const auto hi = cmd_density(cfg);
    for (std::size_t i = 0; i < lo.rows[0].per_ell.size(); ++i)
        CHECK(hi.rows[0].per_ell[i].not_certified <= lo.rows[0].per_ell[i].not_certified);
    CHECK(hi.rows[0].union_count <= lo.rows[0].union_count);
}

TEST_CASE("empty ell list gives an empty union")
{
    RunConfig cfg = small();
    cfg.ells = std::vector<std::uint32_t>{};
    const auto rep = cmd_density(cfg);
    for (const auto& r : rep.rows) CHECK(r.union_count == 0);
}

TEST_CASE("thread count does not change CSV bodies")
{
    RunConfig cfg = small();
    std::string ref;
    for (int threads : {1, 3, 8}) {
        cfg.threads = threads;
        std::ostringstream os;
        write_density(os, cmd_density(cfg), cfg);
        if (ref.empty()) ref = body(os.str());
        CHECK(body(os.str()) == ref);
    }
    cfg.serial = true;
    std::ostringstream os;
    write_density(os, cmd_density(cfg), cfg);
    CHECK(body(os.str()) == ref);
}

TEST_CASE("sampling above the budget is seeded and reproducible")
{
    RunConfig cfg = small();
    cfg.ells = std::vector<std::uint32_t>{2};
    cfg.x_min = cfg.x_max = 1;
    cfg.budget = 100;
    cfg.sample = 80;
    const auto a = cmd_density(cfg), b = cmd_density(cfg);
    CHECK(a.rows[0].sampled);
    CHECK(a.rows[0].curves == b.rows[0].curves);
    CHECK(a.rows[0].per_ell[0].not_certified == b.rows[0].per_ell[0].not_certified);
    cfg.sample = 0;
    CHECK_THROWS_AS(cmd_density(cfg), BudgetExceeded);
}

TEST_CASE("torsion: b = 0 curves have even bounds")
{
    RunConfig cfg = small();
    cfg.D = 3;
    const auto rep = cmd_torsion(cfg);
    for (const auto& r : rep.rows) {
        CHECK(r.b_zero_odd == 0);
        std::uint64_t total = 0;
        for (auto [b, k] : r.histogram) total += k;
        CHECK(total == r.curves);
    }
    CHECK(rep.rows[1].b_zero == 24);   // b = 0, a != 0
}

TEST_CASE("census and sieve drivers")
{
    RunConfig cfg = small();
    const auto run = cmd_census(cfg, 1, 5);
    CHECK(run.table.mod_p);
    std::ostringstream os;
    write_census(os, run, cfg);
    CHECK(os.str().find("class,trace,det,count") != std::string::npos);
    const auto sv = cmd_sieve(cfg, 1, 1, 2, *class_table(2).lookup(0, 1, true), true);
    CHECK(sv.report.pass);
    CHECK_THROWS_AS(cmd_sieve(cfg, 1, 1, 3, 0, true), InvalidArgument);
}
