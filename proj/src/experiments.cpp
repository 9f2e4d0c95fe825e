#include "ecff/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ecff/arith.hpp"
#include "ecff/ec_finite.hpp"
#include "ecff/error.hpp"
#include "ecff/kernels.hpp"

namespace ecff {

using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kChunk = 512;

std::string join(const std::vector<std::uint32_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ":" : "") + std::to_string(v[i]);
    return s;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

std::uint64_t chunks(std::uint64_t n)
{
    return (n + kChunk - 1) / kChunk;
}

/// Indices of the box to visit: all of them, or a seeded sample.
struct BoxPlan {
    std::uint64_t box;
    bool sampled;
    std::vector<std::uint64_t> picks;

    std::uint64_t count() const { return sampled ? picks.size() : box; }
    std::uint64_t index(std::uint64_t i) const { return sampled ? picks[i] : i; }
};

BoxPlan plan_box(std::uint64_t q, unsigned x, const RunConfig& cfg)
{
    auto box = checked_pow(q, 2 * std::uint64_t{x} + 2, UINT64_MAX / 2);
    if (!box) throw BudgetExceeded("box C(" + std::to_string(x) + ") does not fit in 64 bits");
    BoxPlan plan{*box, false, {}};
    if (*box <= cfg.budget) return plan;
    if (cfg.sample == 0 || cfg.sample > cfg.budget)
        throw BudgetExceeded("C(" + std::to_string(x) + ") has " + std::to_string(*box) +
                             " pairs, above the budget of " + std::to_string(cfg.budget));
    plan.sampled = true;
    std::mt19937_64 rng(cfg.seed + x);
    std::uniform_int_distribution<std::uint64_t> pick(0, *box - 1);
    plan.picks.resize(cfg.sample);
    for (auto& v : plan.picks) v = pick(rng);
    return plan;
}

template <class PerCurve>
kernels::Counters sweep_box(const CurveBox& box, const BoxPlan& plan, std::size_t width, const RunConfig& cfg,
                            PerCurve&& per_curve)
{
    const std::uint64_t n = plan.count();
    return kernels::sweep(cfg.serial, chunks(n), width, cfg.threads, [&](std::uint64_t chunk, kernels::Counters& acc) {
        const std::uint64_t end = std::min(n, (chunk + 1) * kChunk);
        for (std::uint64_t i = chunk * kChunk; i < end; ++i) {
            CurvePair c = box.pair(plan.index(i));
            if (!box.nonsingular(c)) continue;
            per_curve(c, acc);
        }
    });
}

void csv_header(std::ostream& os, const std::string& what, const RunConfig& cfg,
                const std::vector<std::string>& extra = {})
{
    os << "# ecff " << what << ' ' << cfg.describe() << '\n';
    for (const auto& e : extra) os << "# " << e << '\n';
}

} // namespace

std::string RunConfig::describe() const
{
    std::ostringstream os;
    os << "q=" << q << " x=" << x_min << ".." << x_max << " D=" << D << " ells=" << (ells ? join(*ells) : "default")
       << " g=" << g << " threads=" << threads << " serial=" << serial << " budget=" << budget << " sample=" << sample
       << " seed=" << seed;
    return os.str();
}

std::vector<std::uint32_t> resolve_ells(const RunConfig& cfg)
{
    const std::uint64_t limit = c_of_g(cfg.g);
    std::vector<std::uint32_t> out;
    if (!cfg.ells) {
        for (auto l : primes_below(limit)) out.push_back(static_cast<std::uint32_t>(l));
        return out;
    }
    out = *cfg.ells;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (auto l : out)
        if (!is_prime(l) || l >= limit)
            throw InvalidArgument("ell = " + std::to_string(l) + " is not a prime below c(g) = " + std::to_string(limit));
    return out;
}

unsigned resolve_depth(const RunConfig& cfg, const std::vector<std::uint32_t>& ells)
{
    if (cfg.D != 0) return cfg.D;
    return std::min(default_scan_depth(cfg.q, ells), kMaxDefaultDepth);
}

DensityReport cmd_density(const RunConfig& cfg)
{
    auto pk = prime_power(cfg.q);
    if (!pk) throw UnsupportedField(std::to_string(cfg.q) + " is not a prime power");
    const std::uint64_t p = pk->first;
    DensityReport rep{cfg.q, 0, resolve_ells(cfg), hypothesis_check(p, cfg.g), {}, 0.0, {}};
    rep.D = resolve_depth(cfg, rep.ells);
    if (!rep.hypothesis.pass)
        rep.warnings.push_back("hypothesis fails: p = " + std::to_string(p) + " divides ell^2 - 1 for ell = " +
                               std::to_string(*rep.hypothesis.witness));
    if (cfg.D == 0 && default_scan_depth(cfg.q, rep.ells) > kMaxDefaultDepth)
        rep.warnings.push_back("scan depth capped at " + std::to_string(kMaxDefaultDepth) + " (uncapped default " +
                               std::to_string(default_scan_depth(cfg.q, rep.ells)) + ")");

    const std::size_t n = rep.ells.size();
    const bool need_hasse = std::find(rep.ells.begin(), rep.ells.end(), p) != rep.ells.end();
    const std::size_t width = 2 * n + 3;   // curves | per ell: open, exact | union | unsound
    for (unsigned x = cfg.x_min; x <= cfg.x_max; ++x) {
        const BoxPlan plan = plan_box(cfg.q, x, cfg);
        const CurveBox box({cfg.q, x}, UINT64_MAX);
        auto acc = sweep_box(box, plan, width, cfg, [&](const CurvePair& c, kernels::Counters& out) {
            const Field& F = c.a.field();
            GlobalCurve E{c.a, c.b, curve_discriminant(c.a, c.b), need_hasse ? hasse_invariant(c.a, c.b) : Poly(F)};
            ImageTracker track(E, rep.ells);
            for_each_frobenius(E, rep.D, [&](const FrobRecord& r) {
                track.add(r);
                return !track.all_certified();
            });
            ++out[0];
            bool any_open = false;
            for (std::size_t i = 0; i < n; ++i) {
                const bool certified = track.certified(i);
                if (!certified) {
                    ++out[1 + 2 * i];
                    any_open = true;
                }
                if (rep.ells[i] == 2 && exact_mod2(E) != Mod2Image::full) {
                    ++out[2 + 2 * i];
                    if (certified) ++out[2 * n + 2];
                }
            }
            if (any_open) ++out[2 * n + 1];
        });
        if (acc[2 * n + 2] != 0)
            throw InvariantViolation(std::to_string(acc[2 * n + 2]) + " curves certified at ell = 2 with a proper exact image");
        DensityRow row{x, plan.box, acc[0], plan.sampled, {}, acc[2 * n + 1],
                       x / std::pow(static_cast<double>(cfg.q), x / 2.0)};
        for (std::size_t i = 0; i < n; ++i) {
            EllCount e{rep.ells[i], acc[1 + 2 * i], std::nullopt};
            if (rep.ells[i] == 2) e.exact = acc[2 + 2 * i];
            row.per_ell.push_back(e);
        }
        rep.rows.push_back(std::move(row));
    }
    if (rep.rows.empty()) return rep;
    const DensityRow& last = rep.rows.back();
    if (last.x > 0 && last.curves > 0)
        rep.fitted_constant = static_cast<double>(last.union_count) / static_cast<double>(last.curves) / last.reference;
    return rep;
}

void write_density(std::ostream& os, const DensityReport& rep, const RunConfig& cfg)
{
    auto ratio = [](std::uint64_t k, std::uint64_t n) { return n ? static_cast<double>(k) / static_cast<double>(n) : 0.0; };
    auto stderr_of = [](double r, std::uint64_t n) { return n ? std::sqrt(r * (1 - r) / static_cast<double>(n)) : 0.0; };
    if (cfg.format == Format::json) {
        json j{{"q", rep.q}, {"D", rep.D}, {"ells", rep.ells}, {"hypothesis_pass", rep.hypothesis.pass},
               {"fitted_constant", rep.fitted_constant}, {"warnings", rep.warnings}, {"rows", json::array()}};
        for (const auto& r : rep.rows) {
            json row{{"x", r.x}, {"box", r.box}, {"curves", r.curves}, {"sampled", r.sampled},
                     {"union", r.union_count}, {"union_ratio", ratio(r.union_count, r.curves)},
                     {"reference", r.reference}, {"per_ell", json::array()}};
            for (const auto& e : r.per_ell) {
                json je{{"ell", e.ell}, {"not_certified", e.not_certified},
                        {"ratio_not_certified", ratio(e.not_certified, r.curves)}};
                if (e.exact) {
                    je["exact_nonsurjective"] = *e.exact;
                    je["ratio_exact"] = ratio(*e.exact, r.curves);
                }
                row["per_ell"].push_back(je);
            }
            j["rows"].push_back(row);
        }
        os << j.dump(2) << '\n';
        return;
    }
    csv_header(os, "density", cfg, rep.warnings);
    os << "# D=" << rep.D << " ells=" << join(rep.ells) << " fitted_constant=" << fmt(rep.fitted_constant) << '\n';
    os << "x,ell,curves,sampled,not_certified,exact_nonsurjective,ratio_not_certified,ratio_exact,stderr,reference\n";
    for (const auto& r : rep.rows) {
        for (const auto& e : r.per_ell) {
            const double rn = ratio(e.not_certified, r.curves);
            os << r.x << ',' << e.ell << ',' << r.curves << ',' << r.sampled << ',' << e.not_certified << ',';
            if (e.exact) os << *e.exact;
            os << ',' << fmt(rn) << ',';
            if (e.exact) os << fmt(ratio(*e.exact, r.curves));
            os << ',' << (r.sampled ? fmt(stderr_of(rn, r.curves)) : "") << ',' << fmt(r.reference) << '\n';
        }
        const double ru = ratio(r.union_count, r.curves);
        os << r.x << ",union," << r.curves << ',' << r.sampled << ',' << r.union_count << ",," << fmt(ru) << ",,"
           << (r.sampled ? fmt(stderr_of(ru, r.curves)) : "") << ',' << fmt(r.reference) << '\n';
    }
}

CensusRun cmd_census(const RunConfig& cfg, unsigned n, std::uint32_t ell)
{
    auto pk = prime_power(cfg.q);
    if (!pk) throw UnsupportedField(std::to_string(cfg.q) + " is not a prime power");
    CensusOptions opts;
    opts.budget = cfg.budget;
    opts.threads = cfg.threads;
    opts.serial = cfg.serial;
    CensusTable t = ell == pk->first ? omega_p_census(cfg.q, n, opts) : omega_ell_census(cfg.q, n, ell, opts);
    DeviationReport dev = chebotarev_report(t);
    return {std::move(t), std::move(dev)};
}

void write_census(std::ostream& os, const CensusRun& run, const RunConfig& cfg)
{
    const CensusTable& t = run.table;
    if (cfg.format == Format::json) {
        json j{{"q", t.q}, {"n", t.n}, {"ell", t.ell}, {"mod_p", t.mod_p}, {"total", t.total},
               {"supersingular", t.supersingular}, {"counts", t.counts}, {"warnings", t.warnings},
               {"fitted_constant", run.deviation.fitted_constant}, {"max_deviation", run.deviation.max_deviation},
               {"rows", json::array()}};
        for (const auto& r : run.deviation.rows)
            j["rows"].push_back({{"class", r.class_id}, {"trace", r.trace}, {"det", r.det}, {"count", r.count},
                                 {"density", r.density}, {"target", r.target}, {"deviation", r.deviation},
                                 {"envelope", r.envelope}});
        os << j.dump(2) << '\n';
        return;
    }
    std::vector<std::string> extra = t.warnings;
    extra.push_back("n=" + std::to_string(t.n) + " ell=" + std::to_string(t.ell) + " total=" + std::to_string(t.total) +
                    " supersingular=" + std::to_string(t.supersingular) +
                    " fitted_constant=" + fmt(run.deviation.fitted_constant));
    csv_header(os, "census", cfg, extra);
    os << "class,trace,det,count,density,target,deviation,envelope\n";
    for (const auto& r : run.deviation.rows)
        os << r.class_id << ',' << r.trace << ',' << r.det << ',' << r.count << ',' << fmt(r.density) << ','
           << fmt(r.target) << ',' << fmt(r.deviation) << ',' << fmt(r.envelope) << '\n';
}

void write_classes(std::ostream& os, std::uint32_t ell, Format format)
{
    const ClassTable& t = class_table(ell);
    if (format == Format::json) {
        json j = json::array();
        for (const auto& c : t.classes())
            j.push_back({{"id", c.id}, {"rep", {c.rep.a, c.rep.b, c.rep.c, c.rep.d}}, {"size", c.size},
                         {"trace", c.trace}, {"det", c.det}, {"scalar", c.scalar}});
        os << j.dump(2) << '\n';
        return;
    }
    os << "# ecff classes ell=" << ell << '\n' << "id,a,b,c,d,size,trace,det,scalar\n";
    for (const auto& c : t.classes())
        os << c.id << ',' << c.rep.a << ',' << c.rep.b << ',' << c.rep.c << ',' << c.rep.d << ',' << c.size << ','
           << c.trace << ',' << c.det << ',' << c.scalar << '\n';
}

std::vector<CurvePair> w_mod2(std::uint64_t q, unsigned x, int cls, const RunConfig& cfg)
{
    const ConjClass& C = class_table(2)[cls];
    std::vector<CurvePair> W;
    enumerate_box(
        {q, x},
        [&](const CurvePair& c) {
            const GlobalCurve E = GlobalCurve::make(c.a, c.b);
            if (!mod2_image_meets(exact_mod2(E), C.trace, C.scalar)) W.push_back(c);
        },
        cfg.budget);
    return W;
}

SieveRun cmd_sieve(const RunConfig& cfg, unsigned R, unsigned Q, std::uint32_t ell, int cls, bool with_w)
{
    CensusOptions opts;
    opts.budget = cfg.budget;
    opts.threads = cfg.threads;
    opts.serial = cfg.serial;
    SieveRun run{{cfg.q, R, Q, cfg.g}, ell, cls, omega_from_census(cfg.q, ell, cls, Q, opts), {}, with_w};
    if (with_w) {
        if (ell != 2) throw InvalidArgument("explicit W sets are built for ell = 2 only");
        run.report = verify_sieve(w_mod2(cfg.q, R, cls, cfg), run.params, run.profile);
    } else {
        run.report = sieve_report(run.params, run.profile);
    }
    return run;
}

void write_sieve(std::ostream& os, const SieveRun& run, const RunConfig& cfg)
{
    const SieveReport& r = run.report;
    json j{{"q", run.params.q}, {"R", run.params.R}, {"Q", run.params.Q}, {"g", run.params.g}, {"ell", run.ell},
           {"class", run.cls}, {"omega", run.profile.omega}, {"L_exact", r.L_exact}, {"L_lower", r.L_lower},
           {"bound", r.bound}};
    j["actual"] = r.actual ? json(*r.actual) : json(nullptr);
    j["pass"] = r.pass;
    if (r.violation) j["violation_prime"] = *r.violation;
    if (cfg.format == Format::json) {
        os << j.dump(2) << '\n';
        return;
    }
    csv_header(os, "sieve-bound", cfg);
    os << "R,Q,ell,class,L_exact,L_lower,bound,actual,pass\n"
       << run.params.R << ',' << run.params.Q << ',' << run.ell << ',' << run.cls << ',' << fmt(r.L_exact) << ','
       << fmt(r.L_lower) << ',' << fmt(r.bound) << ',' << (r.actual ? std::to_string(*r.actual) : "") << ','
       << r.pass << '\n';
}

HypothesisResult cmd_check(std::uint64_t p, std::uint64_t g)
{
    return hypothesis_check(p, g);
}

void write_check(std::ostream& os, std::uint64_t p, std::uint64_t g, const HypothesisResult& r, Format format)
{
    if (format == Format::json) {
        json j{{"p", p}, {"g", g}, {"c", c_of_g(g)}, {"pass", r.pass}};
        j["witness"] = r.witness ? json(*r.witness) : json(nullptr);
        os << j.dump(2) << '\n';
        return;
    }
    os << "p=" << p << " g=" << g << " c(g)=" << c_of_g(g) << ' ' << (r.pass ? "pass" : "fail");
    if (r.witness) os << " witness ell=" << *r.witness;
    os << '\n';
}

TorsionReport cmd_torsion(const RunConfig& cfg)
{
    auto pk = prime_power(cfg.q);
    if (!pk) throw UnsupportedField(std::to_string(cfg.q) + " is not a prime power");
    TorsionReport rep{cfg.q, cfg.D ? cfg.D : 4u, {}};
    // Every bound divides some N <= q + 1 + 2 sqrt(q).
    const auto cap = static_cast<std::size_t>(cfg.q + 2 + 2 * std::sqrt(static_cast<double>(cfg.q)));
    const std::size_t width = 5 + cap + 1;
    for (unsigned x = cfg.x_min; x <= cfg.x_max; ++x) {
        const BoxPlan plan = plan_box(cfg.q, x, cfg);
        const CurveBox box({cfg.q, x}, UINT64_MAX);
        auto acc = sweep_box(box, plan, width, cfg, [&](const CurvePair& c, kernels::Counters& out) {
            const Field& F = c.a.field();
            GlobalCurve E{c.a, c.b, curve_discriminant(c.a, c.b), Poly(F)};
            const TorsionScan s = torsion_scan(E, rep.D);
            ++out[0];
            if (s.bound > 1) ++out[1];
            if (c.b.is_zero()) {
                ++out[2];
                if (s.bound % 2 != 0) ++out[3];
            }
            if (s.stopped_early) ++out[4];
            if (s.bound > cap) throw InvariantViolation("torsion bound above the Hasse range");
            ++out[5 + s.bound];
        });
        TorsionRow row{x, acc[0], acc[1], acc[2], acc[3], acc[4], {}};
        for (std::size_t b = 0; b <= cap; ++b)
            if (acc[5 + b]) row.histogram[b] = acc[5 + b];
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

void write_torsion(std::ostream& os, const TorsionReport& rep, const RunConfig& cfg)
{
    auto frac = [](const TorsionRow& r) { return r.curves ? static_cast<double>(r.nontrivial) / r.curves : 0.0; };
    if (cfg.format == Format::json) {
        json j{{"q", rep.q}, {"D", rep.D}, {"rows", json::array()}};
        for (const auto& r : rep.rows) {
            json h = json::object();
            for (auto [b, k] : r.histogram) h[std::to_string(b)] = k;
            j["rows"].push_back({{"x", r.x}, {"curves", r.curves}, {"nontrivial", r.nontrivial},
                                 {"fraction", frac(r)}, {"b_zero", r.b_zero}, {"b_zero_odd", r.b_zero_odd},
                                 {"early_stops", r.early_stops}, {"histogram", h}});
        }
        os << j.dump(2) << '\n';
        return;
    }
    csv_header(os, "torsion", cfg, {"D=" + std::to_string(rep.D)});
    os << "x,curves,nontrivial,fraction,b_zero,b_zero_odd,bound,count\n";
    for (const auto& r : rep.rows)
        for (auto [b, k] : r.histogram)
            os << r.x << ',' << r.curves << ',' << r.nontrivial << ',' << fmt(frac(r)) << ',' << r.b_zero << ','
               << r.b_zero_odd << ',' << b << ',' << k << '\n';
}

void write_scan(std::ostream& os, const GlobalCurve& E, unsigned D, const std::vector<std::uint32_t>& ells)
{
    const auto records = frobenius_scan(E, D);
    const Field& base = E.a.field();
    const auto& primes = prime_list(base, D);
    const ImageReport rep = image_report(E, records, ells);
    json j{{"q", base.order()}, {"a", E.a.to_string()}, {"b", E.b.to_string()}, {"disc", E.disc.to_string()},
           {"hasse", E.hasse.to_string()}, {"D", D}, {"records", json::array()}};
    for (const auto& r : records)
        j["records"].push_back({{"prime", primes[r.prime_index].gen.to_string()}, {"degree", r.degree}, {"N", r.N},
                                {"trace", r.trace}, {"ordinary", r.ordinary}});
    json img = json::array();
    for (const auto& e : rep.ell)
        img.push_back({{"ell", e.ell}, {"status", e.certified ? "certified_surjective" : "candidate_exceptional"},
                       {"missing", e.missing}, {"max_degree", e.max_degree}});
    j["images"] = img;
    const char* st = rep.p.status == PImage::Status::supersingular ? "supersingular"
                     : rep.p.status == PImage::Status::certified   ? "certified_surjective"
                                                                   : "candidate_exceptional";
    j["mod_p"] = {{"status", st}, {"subgroup", rep.p.subgroup}};
    j["torsion_bound"] = rep.torsion_bound;
    if (base.characteristic() > 3) {
        static const char* names[] = {"trivial", "order2", "cyclic3", "full"};
        j["exact_mod2"] = names[static_cast<int>(exact_mod2(E))];
    }
    os << j.dump() << '\n';
}

} // namespace ecff
