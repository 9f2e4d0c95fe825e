// ecff: command-line front end for the census, sampler, sieve and density
// drivers. Exit status: 0 on success, 2 when a budget refuses the run,
// 1 on an invariant violation or bad input.

#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "ecff/arith.hpp"
#include "ecff/error.hpp"
#include "ecff/experiments.hpp"

using namespace ecff;

int main(int argc, char** argv)
{
    CLI::App app{"Elliptic curves over F_q(T): Frobenius censuses, image sampling, sieve bounds"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string output;
    std::vector<std::uint32_t> ells;
    std::string format = "csv";
    app.add_option("--q", cfg.q, "Base field order (prime power, characteristic > 3)");
    app.add_option("--threads", cfg.threads, "OpenMP threads (0 = default)");
    app.add_option("--budget", cfg.budget, "Largest pair/curve count to enumerate exhaustively");
    app.add_option("--output,-o", output, "Write to this file instead of stdout");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", cfg.seed, "Seed for box sampling");
    app.add_flag("--serial", cfg.serial, "Use the serial reference kernels");

    auto* census = app.add_subcommand("census", "Frobenius class counts over F_{q^n}^2");
    unsigned n = 1;
    std::uint32_t ell = 2;
    census->add_option("--n", n, "Extension degree")->required();
    census->add_option("--ell", ell, "Prime ell (ell = p gives the mod-p census)")->required();

    auto* classes = app.add_subcommand("classes", "Conjugacy classes of GL_2(Z/ell)");
    classes->add_option("--ell", ell, "Prime ell <= 13")->required();

    auto* density = app.add_subcommand("density", "Non-certified and exact-exceptional ratios over C(x)");
    density->add_option("--x-min", cfg.x_min);
    density->add_option("--x-max", cfg.x_max);
    density->add_option("--max-degree,-D", cfg.D, "Scan depth (0 = default)");
    density->add_option("--ell", ells, "Primes ell to test (default: all below c(g))");
    density->add_option("--genus", cfg.g);
    density->add_option("--sample", cfg.sample, "Sample size when a box exceeds the budget");

    auto* sieve = app.add_subcommand("sieve-bound", "Large sieve bound from census densities");
    unsigned R = 1, Q = 1;
    int cls = 0;
    bool with_w = false;
    sieve->add_option("--R", R);
    sieve->add_option("--Q", Q);
    sieve->add_option("--ell", ell)->required();
    sieve->add_option("--class", cls, "Class id (or t for ell = p)")->required();
    sieve->add_option("--genus", cfg.g);
    sieve->add_flag("--verify", with_w, "Build W_C(R) with the exact mod-2 image and verify (ell = 2)");

    auto* check = app.add_subcommand("check", "Hypothesis check for (p, g)");
    std::uint64_t p = 11, g = 0;
    check->add_option("--p", p)->required();
    check->add_option("--genus", g);

    auto* scan = app.add_subcommand("scan", "Frobenius records and image report for one curve");
    std::string a_text, b_text;
    scan->add_option("--a", a_text, "Coefficients of a, constant term first (e.g. 0,1)")->required();
    scan->add_option("--b", b_text, "Coefficients of b")->required();
    scan->add_option("--max-degree,-D", cfg.D);
    scan->add_option("--ell", ells);

    auto* torsion = app.add_subcommand("torsion", "Torsion bounds over C(x)");
    torsion->add_option("--x-min", cfg.x_min);
    torsion->add_option("--x-max", cfg.x_max);
    torsion->add_option("--max-degree,-D", cfg.D, "Scan depth (default 4)");
    torsion->add_option("--sample", cfg.sample);

    CLI11_PARSE(app, argc, argv);
    cfg.format = format == "json" ? Format::json : Format::csv;
    if (!ells.empty()) cfg.ells = ells;

    std::unique_ptr<std::ofstream> file;
    if (!output.empty()) {
        file = std::make_unique<std::ofstream>(output);
        if (!*file) {
            std::cerr << "cannot open " << output << '\n';
            return 1;
        }
    }
    std::ostream& os = file ? *file : std::cout;

    try {
        if (*census) {
            const CensusRun run = cmd_census(cfg, n, ell);
            for (const auto& w : run.table.warnings) std::cerr << "warning: " << w << '\n';
            write_census(os, run, cfg);
        } else if (*classes) {
            write_classes(os, ell, cfg.format);
        } else if (*density) {
            const DensityReport rep = cmd_density(cfg);
            for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
            write_density(os, rep, cfg);
        } else if (*sieve) {
            write_sieve(os, cmd_sieve(cfg, R, Q, ell, cls, with_w), cfg);
        } else if (*check) {
            write_check(os, p, g, cmd_check(p, g), cfg.format);
        } else if (*scan) {
            const FieldRef base = field_of_order(cfg.q);
            const GlobalCurve E = GlobalCurve::make(Poly::parse(*base, a_text), Poly::parse(*base, b_text));
            const auto ells = resolve_ells(cfg);
            write_scan(os, E, resolve_depth(cfg, ells), ells);
        } else if (*torsion) {
            write_torsion(os, cmd_torsion(cfg), cfg);
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
