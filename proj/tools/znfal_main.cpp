// znfal: squared-distance statistics, CRT lifting diagnostics, structure
// certificates and polynomial vanishing checks for point sets in Z_n^d.
//
// Exit codes: 0 success (including negative results such as
// "unstructured"), 1 a verified identity was violated (counterexample
// printed), 2 input error, 3 budget exceeded, 4 internal invariant
// violation.
//
// All randomness is seeded and all reported numbers are exact; reports
// are byte-identical for any --threads value.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "znfal/classify.hpp"
#include "znfal/construct.hpp"
#include "znfal/energy.hpp"
#include "znfal/json_io.hpp"
#include "znfal/lifting.hpp"
#include "znfal/poly.hpp"

namespace {

using namespace znfal;

// ---------------------------------------------------------------------
// Soft time budget (ZNFAL_BUDGET_MS). Checked between pipeline stages;
// when it expires, report sections computed so far are emitted with
// "partial": true and the process exits 3.
// ---------------------------------------------------------------------

const std::chrono::steady_clock::time_point g_start = std::chrono::steady_clock::now();

std::optional<long long> budget_ms() {
    const char* env = std::getenv("ZNFAL_BUDGET_MS");
    if (env == nullptr || *env == '\0') return std::nullopt;
    try {
        return std::stoll(env);
    } catch (const std::exception&) {
        throw input_error("ZNFAL_BUDGET_MS must be an integer (milliseconds)");
    }
}

void check_deadline() {
    static const std::optional<long long> limit = budget_ms();
    if (!limit) return;
    auto elapsed =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - g_start);
    if (elapsed.count() > *limit * 1000) throw budget_error("soft time budget ZNFAL_BUDGET_MS exceeded");
}

void emit(const Json& report, const std::string& report_path) {
    std::string text = report.dump(2) + "\n";
    if (report_path.empty())
        std::cout << text;
    else
        write_file(report_path, text);
}

Json point_list_strings(const std::vector<Int>& xs) {
    Json arr = Json::array();
    for (Int x : xs) arr.push_back(std::to_string(x));
    return arr;
}

Json poly_to_json(const MultivariatePoly& f) {
    // Graded-lex ascending list of (exponent vector, coefficient).
    Json arr = Json::array();
    for (const auto& [m, c] : f.terms) {
        Json term;
        Json exps = Json::array();
        for (int e : m) exps.push_back(e);
        term["exponents"] = std::move(exps);
        term["coeff"] = std::to_string(c);
        arr.push_back(std::move(term));
    }
    return arr;
}

struct CommonInput {
    LoadedPointSet loaded;
    Json descriptor;
};

CommonInput load_input(const std::string& path, Int max_points, Int max_n) {
    LoadedPointSet loaded = load_point_set(path);
    if (loaded.set.mod.n > max_n)
        throw budget_error("modulus " + std::to_string(loaded.set.mod.n) + " exceeds --max-n " +
                           std::to_string(max_n));
    if (loaded.set.size() > max_points)
        throw budget_error("point count " + std::to_string(loaded.set.size()) +
                           " exceeds --max-points " + std::to_string(max_points));
    Json desc;
    desc["path"] = path;
    desc["digest"] = loaded.digest;
    desc["n"] = std::to_string(loaded.set.mod.n);
    desc["d"] = std::to_string(loaded.set.dim);
    desc["size"] = std::to_string(loaded.set.size());
    return CommonInput{std::move(loaded), std::move(desc)};
}

// ---------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------

struct AnalyzeOpts {
    std::string input;
    std::string report_path;
    bool shells = false;
    bool local = false;
    std::string ratio_threshold = "2/1";
    std::string density_threshold = "1/10";
    int threads = 1;
    Int max_points = 5000;
    Int max_n = 1000000;
};

int run_analyze(const AnalyzeOpts& opt) {
    ZNFAL_REQUIRE(opt.threads >= 1, "--threads must be positive");
    const Rat K = rat_from_string(opt.ratio_threshold);
    const Rat C = rat_from_string(opt.density_threshold);
    CommonInput in = load_input(opt.input, opt.max_points, opt.max_n);
    const PointSet& e = in.loaded.set;

    Json report;
    report["version"] = "1";
    report["command"] = "analyze";
    // --threads and --report are execution parameters, not semantics, and
    // are deliberately left out so output bytes do not depend on them.
    Json flags;
    flags["shells"] = opt.shells;
    flags["local"] = opt.local;
    flags["K"] = rat_to_string(K);
    flags["C"] = rat_to_string(C);
    flags["max_points"] = std::to_string(opt.max_points);
    flags["max_n"] = std::to_string(opt.max_n);
    report["flags"] = std::move(flags);
    report["input"] = in.descriptor;

    bool partial = false;
    try {
        check_deadline();
        PairScan scan = pair_scan(e, opt.threads);
        BigInt energy = profile_energy(scan.profile);
        std::vector<Int> delta = profile_support(scan.profile);

        report["size"] = std::to_string(e.size());
        report["distance_set_size"] = std::to_string(delta.size());
        if (delta.size() <= 1024) report["distance_set"] = point_list_strings(delta);
        report["energy"] = big_to_string(energy);
        report["energy_ratio"] = rat_to_string(make_rat(energy * big(e.mod.n), big_pow(big(e.size()), 4)));
        report["distance_density"] =
            rat_to_string(make_rat(static_cast<Int>(delta.size()), e.mod.n));
        report["size_exponent"] = size_exponent_millis(e.size(), e.mod.n);
        report["near_extremal"] = make_rat(energy * big(e.mod.n), big_pow(big(e.size()), 4)) >= K &&
                                  make_rat(static_cast<Int>(delta.size()), e.mod.n) <= C;

        if (opt.shells) {
            check_deadline();
            EnergyDecomposition dec = decomposition_from_scan(scan);
            Json table = Json::array();
            for (const auto& [k, s] : dec.shells) {
                Json row;
                row["scale"] = std::to_string(k);
                row["energy"] = big_to_string(s);
                table.push_back(std::move(row));
            }
            Json shells;
            shells["table"] = std::move(table);
            shells["mixed"] = big_to_string(dec.mixed);
            shells["total"] = big_to_string(dec.total);
            report["shells"] = std::move(shells);
        }

        if (opt.local) {
            check_deadline();
            LocalDistanceDiagnostics diag = local_distance_diagnostics(e);
            LocalEnergyRatios ratios = local_energy_ratios(e);
            Json components = Json::array();
            for (std::size_t i = 0; i < diag.components.size(); ++i) {
                const auto& c = diag.components[i];
                FiberStats fs = fiber_stats(e, c.q);
                Json jc;
                jc["q"] = std::to_string(c.q);
                jc["size"] = std::to_string(c.local_size);
                jc["distance_set_size"] = std::to_string(c.distance_set_size);
                jc["density"] = rat_to_string(c.density);
                jc["heavy"] = c.heavy;
                jc["energy_ratio"] = rat_to_string(ratios.per_component[i].second);
                jc["max_fiber"] = std::to_string(fs.max_multiplicity);
                jc["uniform_core_fraction"] = rat_to_string(fs.uniform_core_fraction);
                Json hist = Json::array();
                for (const auto& [size, count] : fs.histogram) {
                    Json h;
                    h["fiber_size"] = std::to_string(size);
                    h["fibers"] = std::to_string(count);
                    hist.push_back(std::move(h));
                }
                jc["fiber_histogram"] = std::move(hist);
                components.push_back(std::move(jc));
            }
            Json local;
            local["components"] = std::move(components);
            local["global_energy_ratio"] = rat_to_string(ratios.global);
            local["heavy_threshold"] = rat_to_string(diag.heavy_threshold);
            local["heavy_distance_product"] = big_to_string(diag.heavy_product);
            local["global_distance_set_size"] = std::to_string(diag.global_distance_set_size);
            local["global_distance_sq"] = big_to_string(diag.global_square);
            FiberEnergyBound fb = fiber_energy_bound(e);
            Json bound;
            bound["lhs_energy"] = big_to_string(fb.lhs);
            bound["rhs_fiber_product"] = big_to_string(fb.rhs);
            bound["max_fiber"] = std::to_string(fb.max_multiplicity);
            bound["holds"] = fb.holds;
            local["fiber_energy_bound"] = std::move(bound);
            report["local"] = std::move(local);
        }
    } catch (const budget_error& ex) {
        report["partial_reason"] = ex.what();
        partial = true;
    }
    report["partial"] = partial;
    emit(report, opt.report_path);
    return partial ? 3 : 0;
}

// ---------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------

Point parse_point(const std::string& text, int dim) {
    Point v;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            ZNFAL_REQUIRE(!cur.empty(), "empty coordinate in \"" + text + "\"");
            try {
                v.push_back(std::stoll(cur));
            } catch (const std::exception&) {
                throw input_error("bad coordinate \"" + cur + "\"");
            }
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    ZNFAL_REQUIRE(static_cast<int>(v.size()) == dim,
                  "expected " + std::to_string(dim) + " coordinates in \"" + text + "\"");
    return v;
}

SkewMatrix parse_skew(const std::string& text, Int p, int dim) {
    SkewMatrix m{p, dim, {}};
    std::string row;
    for (char ch : text + ";") {
        if (ch == ';') {
            m.a.push_back(parse_point(row, dim));
            row.clear();
        } else {
            row.push_back(ch);
        }
    }
    ZNFAL_REQUIRE(static_cast<int>(m.a.size()) == dim, "matrix needs " + std::to_string(dim) + " rows");
    for (auto& r : m.a)
        for (Int& c : r) c = mod_reduce(c, p);
    return m;
}

struct ConstructOpts {
    std::string out;
    Int p = 3;
    int d = 2;
    std::string matrix;
    bool random_matrix = false;
    Int n = 6;
    Int K = 2;
    std::string offset;
    Int size = 1;
    std::uint64_t seed = 0;
    std::string sizes;
};

int run_construct(const std::string& kind, const ConstructOpts& opt) {
    ZNFAL_REQUIRE(!opt.out.empty(), "--out is required");
    PointSet result = [&]() -> PointSet {
        if (kind == "example-2-3") return mixed_scale_quartet();
        if (kind == "appendix-b") {
            SkewMatrix a = opt.random_matrix   ? random_skew_matrix(opt.p, opt.d, opt.seed)
                           : opt.matrix.empty() ? default_skew_matrix(opt.p, opt.d)
                                                : parse_skew(opt.matrix, opt.p, opt.d);
            return skew_lift_set(opt.p, opt.d, a);
        }
        if (kind == "coset") {
            Modulus m = factorize(opt.n);
            Point v = opt.offset.empty() ? Point(static_cast<std::size_t>(opt.d), 0)
                                         : parse_point(opt.offset, opt.d);
            return annihilator_coset(m, opt.d, opt.K, v);
        }
        if (kind == "random") return random_point_set(factorize(opt.n), opt.d, opt.size, opt.seed);
        if (kind == "product") {
            Modulus m = factorize(opt.n);
            ZNFAL_REQUIRE(m.squarefree, "product construction requires a square-free modulus");
            std::vector<Int> sizes;
            for (const std::string& tok : [&] {
                     std::vector<std::string> toks;
                     std::string cur;
                     for (char ch : opt.sizes + ",") {
                         if (ch == ',') {
                             if (!cur.empty()) toks.push_back(cur);
                             cur.clear();
                         } else
                             cur.push_back(ch);
                     }
                     return toks;
                 }()) {
                try {
                    sizes.push_back(std::stoll(tok));
                } catch (const std::exception&) {
                    throw input_error("bad component size \"" + tok + "\" in --sizes");
                }
            }
            ZNFAL_REQUIRE(sizes.size() == m.factors.size(),
                          "--sizes needs one entry per prime factor (ascending primes)");
            Rng master(opt.seed);
            std::vector<LocalSet> locals;
            for (std::size_t i = 0; i < sizes.size(); ++i) {
                Int p = m.factors[i].first;
                PointSet a = random_point_set(factorize(p), opt.d, sizes[i], master.raw());
                locals.push_back(LocalSet::make(p, opt.d, a.pts));
            }
            return product_set(locals);
        }
        throw input_error("unknown construction kind: " + kind);
    }();
    save_point_set(result, opt.out);
    return 0;
}

// ---------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------

struct ClassifyOpts {
    std::string input;
    std::string report_path;
    std::string alpha_min = "1/2";
    bool peel = false;
    bool no_require_isotropy = false;
    std::string affine_threshold = "1/1";
    Int affine_budget = 100000000;
    Int max_points = 5000;
    Int max_n = 1000000;
};

int run_classify(const ClassifyOpts& opt) {
    ClassifyConfig config;
    config.alpha_min = rat_from_string(opt.alpha_min);
    config.require_isotropy = !opt.no_require_isotropy;
    config.affine_threshold = rat_from_string(opt.affine_threshold);
    config.affine_budget = opt.affine_budget;
    CommonInput in = load_input(opt.input, opt.max_points, opt.max_n);
    const PointSet& e = in.loaded.set;

    Json report;
    report["version"] = "1";
    report["command"] = "classify";
    Json flags;
    flags["alpha_min"] = rat_to_string(config.alpha_min);
    flags["peel"] = opt.peel;
    flags["require_isotropy"] = config.require_isotropy;
    flags["affine_threshold"] = rat_to_string(config.affine_threshold);
    flags["affine_budget"] = std::to_string(config.affine_budget);
    report["flags"] = std::move(flags);
    report["input"] = in.descriptor;

    bool partial = false;
    try {
        check_deadline();
        std::vector<StructureCertificate> certs;
        if (opt.peel)
            certs = classify_peel(e, config);
        else if (auto cert = classify(e, config))
            certs.push_back(std::move(*cert));

        // Peel-mode certificates refer to successively smaller remainders,
        // so only the single-shot result is re-validated against e here.
        if (!opt.peel)
            for (const StructureCertificate& c : certs)
                ZNFAL_INVARIANT(validate_certificate(e, c),
                                "emitted certificate failed re-validation");

        report["result"] = certs.empty() ? "unstructured" : "structured";
        Json arr = Json::array();
        for (const StructureCertificate& c : certs) arr.push_back(certificate_to_json(c));
        report["certificates"] = std::move(arr);

        if (certs.empty()) {
            check_deadline();
            Json locals = Json::array();
            for (const LocalSet& local : all_projections(e)) {
                Json entry = affine_summary_to_json(affine_concentration(
                    local, e.dim - 1, config.affine_threshold, config.affine_budget));
                entry["q"] = std::to_string(local.q);
                locals.push_back(std::move(entry));
            }
            report["local_summaries"] = std::move(locals);
        }
    } catch (const budget_error& ex) {
        report["partial_reason"] = ex.what();
        partial = true;
    }
    report["partial"] = partial;
    emit(report, opt.report_path);
    return partial ? 3 : 0;
}

// ---------------------------------------------------------------------
// pit
// ---------------------------------------------------------------------

struct PitOpts {
    std::string input;
    std::string report_path;
    int degree = 2;
    Int max_monomials = 5000;
    Int p = 3;
    int d = 2;
    std::string matrix;
    std::uint64_t seed = 0;
    Int max_points = 5000;
    Int max_n = 1000000;
};

int run_pit_psi(const PitOpts& opt) {
    CommonInput in = load_input(opt.input, opt.max_points, opt.max_n);
    check_deadline();
    PsiCheck check = psi_vanishing_check(in.loaded.set);

    Json report;
    report["version"] = "1";
    report["command"] = "pit psi-check";
    report["input"] = in.descriptor;
    report["vanishes"] = check.vanishes;
    report["annihilator_degree"] = std::to_string(check.annihilator_degree);
    report["pairs_checked"] = std::to_string(check.pairs_checked);
    report["partial"] = false;
    emit(report, opt.report_path);
    ZNFAL_INVARIANT(check.vanishes, "distance annihilator failed to vanish on its own set");
    return 0;
}

int run_pit_vanish(const PitOpts& opt) {
    CommonInput in = load_input(opt.input, opt.max_points, opt.max_n);
    check_deadline();
    VanishingBasis vb = vanishing_space(in.loaded.set, opt.degree, opt.max_monomials);

    Json report;
    report["version"] = "1";
    report["command"] = "pit vanish";
    Json flags;
    flags["degree"] = std::to_string(opt.degree);
    flags["max_monomials"] = std::to_string(opt.max_monomials);
    report["flags"] = std::move(flags);
    report["input"] = in.descriptor;
    report["monomials"] = std::to_string(vb.monomials.size());
    report["basis_size"] = std::to_string(vb.basis.size());
    report["complete"] = vb.complete;
    report["degree_warning"] = vb.degree_warning;
    report["degree_power_threshold"] = big_to_string(vb.degree_power_threshold);
    report["set_exceeds_threshold"] = vb.set_exceeds_threshold;
    Json locals = Json::array();
    for (const auto& [q, flag] : vb.local_threshold) {
        Json row;
        row["q"] = std::to_string(q);
        row["local_sq_exceeds"] = flag;
        locals.push_back(std::move(row));
    }
    report["local_threshold"] = std::move(locals);
    Json basis = Json::array();
    for (const MultivariatePoly& f : vb.basis) basis.push_back(poly_to_json(f));
    report["basis"] = std::move(basis);
    report["partial"] = false;
    emit(report, opt.report_path);
    return 0;
}

int run_pit_bchecks(const PitOpts& opt) {
    SkewMatrix a = opt.matrix.empty() ? default_skew_matrix(opt.p, opt.d)
                                      : parse_skew(opt.matrix, opt.p, opt.d);
    check_deadline();
    TwistChecks checks = skew_lift_identity_checks(opt.p, a, 1000000, 10000, opt.seed);

    Json report;
    report["version"] = "1";
    report["command"] = "pit b-checks";
    Json flags;
    flags["p"] = std::to_string(opt.p);
    flags["d"] = std::to_string(opt.d);
    flags["A"] = opt.matrix.empty() ? "default" : opt.matrix;
    flags["seed"] = std::to_string(opt.seed);
    report["flags"] = std::move(flags);
    report["skew"] = checks.skew;
    report["isotropic_form"] = checks.isotropic_form;
    report["distance_identity"] = checks.distance_identity;
    report["vectors_exhaustive"] = checks.vectors_exhaustive;
    report["pairs_exhaustive"] = checks.pairs_exhaustive;
    report["vectors_checked"] = std::to_string(checks.vectors_checked);
    report["pairs_checked"] = std::to_string(checks.pairs_checked);
    report["partial"] = false;
    emit(report, opt.report_path);
    return 0;
}

// ---------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------

struct VerifyOpts {
    Int trials = 100;
    std::uint64_t seed = 1;
    std::string ratio_threshold = "2/1";
};

int run_verify(const std::string& lemma, const VerifyOpts& opt) {
    Rng master(opt.seed);
    Int violations = 0;
    Int qualifying = 0;

    auto report_violation = [&](const std::string& what, const PointSet& e) {
        ++violations;
        std::cerr << "violation (" << what << "): " << point_set_to_json(e).dump() << "\n";
    };

    if (lemma == "product-energy") {
        const Int ns[] = {6, 15, 30};
        for (Int t = 0; t < opt.trials; ++t) {
            check_deadline();
            Modulus m = factorize(ns[master.below(3)]);
            int d = 1 + static_cast<int>(master.below(2));
            std::vector<LocalSet> locals;
            for (auto [p, a] : m.factors) {
                (void)a;
                Int max_size = std::min<Int>(6, static_cast<Int>(big_pow(big(p), d).get_si()));
                Int size = 1 + static_cast<Int>(master.below(static_cast<std::uint64_t>(max_size)));
                PointSet comp = random_point_set(factorize(p), d, size, master.raw());
                locals.push_back(LocalSet::make(p, d, comp.pts));
            }
            ProductEnergyCheck check = verify_product_energy(locals);
            if (!check.equal) report_violation("product-energy", product_set(locals));
        }
        std::cout << "product-energy: trials=" << opt.trials << " violations=" << violations << "\n";
    } else if (lemma == "pigeonhole") {
        const Rat K = rat_from_string(opt.ratio_threshold);
        Int attempts = 0;
        while (qualifying < opt.trials && attempts < opt.trials * 1000) {
            check_deadline();
            ++attempts;
            Modulus m = factorize(30);
            int d = 1 + static_cast<int>(master.below(2));
            std::vector<LocalSet> locals;
            for (auto [p, a] : m.factors) {
                (void)a;
                Int max_size = std::min<Int>(3, p);
                Int size = 1 + static_cast<Int>(master.below(static_cast<std::uint64_t>(max_size)));
                PointSet comp = random_point_set(factorize(p), d, size, master.raw());
                locals.push_back(LocalSet::make(p, d, comp.pts));
            }
            PointSet e = product_set(locals);
            LocalEnergyRatios ratios = local_energy_ratios(e);
            if (ratios.global < K) continue;
            ++qualifying;
            Rat best = ratios.per_component.front().second;
            for (const auto& [q, r] : ratios.per_component) best = std::max(best, r);
            if (rat_pow(best, static_cast<unsigned long>(ratios.per_component.size())) < K)
                report_violation("pigeonhole", e);
        }
        std::cout << "pigeonhole: qualifying=" << qualifying << " attempts=" << attempts
                  << " violations=" << violations << "\n";
        if (qualifying < opt.trials) {
            std::cerr << "pigeonhole: could not reach " << opt.trials << " qualifying sets\n";
            return 1;
        }
    } else if (lemma == "cs-bound") {
        const Int ns[] = {6, 9, 15, 30};
        for (Int t = 0; t < opt.trials; ++t) {
            check_deadline();
            Modulus m = factorize(ns[master.below(4)]);
            int d = 1 + static_cast<int>(master.below(2));
            Int cap = std::min<Int>(12, d == 1 ? m.n : m.n * m.n);
            Int size = 1 + static_cast<Int>(master.below(static_cast<std::uint64_t>(cap)));
            PointSet e = random_point_set(m, d, size, master.raw());
            BigInt energy = incidence_energy(e);
            BigInt support = big(static_cast<Int>(distance_set(e).size()));
            if (energy * support < big_pow(big(e.size()), 4)) report_violation("cs-bound", e);
        }
        std::cout << "cs-bound: trials=" << opt.trials << " violations=" << violations << "\n";
    } else if (lemma == "shell-sum") {
        const Int ns[] = {6, 9, 15, 30};
        for (Int t = 0; t < opt.trials; ++t) {
            check_deadline();
            Modulus m = factorize(ns[master.below(4)]);
            int d = 1 + static_cast<int>(master.below(2));
            Int cap = std::min<Int>(12, d == 1 ? m.n : m.n * m.n);
            Int size = 1 + static_cast<Int>(master.below(static_cast<std::uint64_t>(cap)));
            PointSet e = random_point_set(m, d, size, master.raw());
            PairScan scan = pair_scan(e);
            EnergyDecomposition dec = decomposition_from_scan(scan);
            BigInt shell_sum = 0;
            for (const auto& [k, s] : dec.shells) shell_sum += s;
            bool ok = dec.total == shell_sum + dec.mixed;
            // Cross-term form of the mixed term.
            BigInt cross = 0;
            for (std::size_t t1 = 0; t1 < scan.profile.nu.size(); ++t1) {
                if (scan.profile.nu[t1] == 0) continue;
                BigInt square_sum = 0;
                for (const auto& [k, hist] : scan.scale_hist) {
                    auto it = hist.find(static_cast<Int>(t1));
                    if (it != hist.end()) square_sum += big(it->second) * big(it->second);
                }
                cross += big(scan.profile.nu[t1]) * big(scan.profile.nu[t1]) - square_sum;
            }
            ok = ok && cross == dec.mixed;
            if (!ok) report_violation("shell-sum", e);
        }
        std::cout << "shell-sum: trials=" << opt.trials << " violations=" << violations << "\n";
    } else {
        throw input_error("unknown lemma: " + lemma +
                          " (expected product-energy | pigeonhole | cs-bound | shell-sum)");
    }
    return violations == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"squared-distance statistics and structure certificates over Z_n^d"};
    app.require_subcommand(1);

    AnalyzeOpts analyze;
    CLI::App* cmd_analyze = app.add_subcommand("analyze", "distance profile, energy, shells");
    cmd_analyze->add_option("input", analyze.input, "point-set JSON file")->required();
    cmd_analyze->add_flag("--shells", analyze.shells, "include the divisor-scale shell table");
    cmd_analyze->add_flag("--local", analyze.local, "include per-prime-power diagnostics");
    cmd_analyze->add_option("--report", analyze.report_path, "write the report here (default stdout)");
    cmd_analyze->add_option("--K", analyze.ratio_threshold, "near-extremality energy-ratio threshold");
    cmd_analyze->add_option("--C", analyze.density_threshold, "near-extremality density threshold");
    cmd_analyze->add_option("--threads", analyze.threads, "pair-loop worker count");
    cmd_analyze->add_option("--max-points", analyze.max_points, "point budget");
    cmd_analyze->add_option("--max-n", analyze.max_n, "modulus budget");

    ConstructOpts construct;
    std::string construct_kind;
    CLI::App* cmd_construct = app.add_subcommand("construct", "write a generated point-set file");
    cmd_construct->add_option("kind", construct_kind,
                              "example-2-3 | appendix-b | coset | random | product")
        ->required();
    cmd_construct->add_option("--out", construct.out, "output path")->required();
    cmd_construct->add_option("--p", construct.p, "odd prime (appendix-b)");
    cmd_construct->add_option("--d", construct.d, "dimension");
    cmd_construct->add_option("--A", construct.matrix, "skew matrix rows 'a,b;c,d' (appendix-b)");
    cmd_construct->add_flag("--random-A", construct.random_matrix, "draw the skew matrix from --seed");
    cmd_construct->add_option("--n", construct.n, "modulus");
    cmd_construct->add_option("--K", construct.K, "annihilated divisor (coset)");
    cmd_construct->add_option("--v", construct.offset, "coset offset, comma separated");
    cmd_construct->add_option("--size", construct.size, "point count (random)");
    cmd_construct->add_option("--seed", construct.seed, "64-bit seed");
    cmd_construct->add_option("--sizes", construct.sizes, "component sizes, ascending primes (product)");

    ClassifyOpts classify_opts;
    CLI::App* cmd_classify = app.add_subcommand("classify", "annihilator-coset structure certificates");
    cmd_classify->add_option("input", classify_opts.input, "point-set JSON file")->required();
    cmd_classify->add_option("--alpha-min", classify_opts.alpha_min, "concentration threshold");
    cmd_classify->add_flag("--peel", classify_opts.peel, "greedily peel certified subsets");
    cmd_classify->add_flag("--no-require-isotropy", classify_opts.no_require_isotropy,
                           "certify concentration without an isotropy divisor");
    cmd_classify->add_option("--affine-threshold", classify_opts.affine_threshold,
                             "local affine concentration target");
    cmd_classify->add_option("--affine-budget", classify_opts.affine_budget,
                             "candidate budget for the affine search");
    cmd_classify->add_option("--report", classify_opts.report_path, "write the report here");
    cmd_classify->add_option("--max-points", classify_opts.max_points, "point budget");
    cmd_classify->add_option("--max-n", classify_opts.max_n, "modulus budget");

    PitOpts pit;
    CLI::App* cmd_pit = app.add_subcommand("pit", "polynomial vanishing checks");
    cmd_pit->require_subcommand(1);
    CLI::App* pit_psi = cmd_pit->add_subcommand("psi-check", "distance annihilator vanishes on E x E");
    pit_psi->add_option("input", pit.input, "point-set JSON file")->required();
    pit_psi->add_option("--report", pit.report_path, "write the report here");
    CLI::App* pit_vanish = cmd_pit->add_subcommand("vanish", "bounded-degree vanishing module");
    pit_vanish->add_option("input", pit.input, "point-set JSON file")->required();
    pit_vanish->add_option("--degree", pit.degree, "total degree bound")->required();
    pit_vanish->add_option("--max-monomials", pit.max_monomials, "monomial budget");
    pit_vanish->add_option("--report", pit.report_path, "write the report here");
    CLI::App* pit_b = cmd_pit->add_subcommand("b-checks", "skew-lift identity checks over Z_{p^2}");
    pit_b->add_option("--p", pit.p, "odd prime")->required();
    pit_b->add_option("--d", pit.d, "dimension")->required();
    pit_b->add_option("--A", pit.matrix, "skew matrix rows 'a,b;c,d'");
    pit_b->add_option("--seed", pit.seed, "sampling seed");
    pit_b->add_option("--report", pit.report_path, "write the report here");

    VerifyOpts verify;
    std::string lemma;
    CLI::App* cmd_verify = app.add_subcommand("verify", "randomized identity verification");
    cmd_verify->add_option("lemma", lemma, "product-energy | pigeonhole | cs-bound | shell-sum")
        ->required();
    cmd_verify->add_option("--trials", verify.trials, "number of trials");
    cmd_verify->add_option("--seed", verify.seed, "master seed");
    cmd_verify->add_option("--K", verify.ratio_threshold, "near-extremality threshold (pigeonhole)");

    try {
        app.parse(argc, argv);
        if (*cmd_analyze) return run_analyze(analyze);
        if (*cmd_construct) return run_construct(construct_kind, construct);
        if (*cmd_classify) return run_classify(classify_opts);
        if (*cmd_pit) {
            if (*pit_psi) return run_pit_psi(pit);
            if (*pit_vanish) return run_pit_vanish(pit);
            if (*pit_b) return run_pit_bchecks(pit);
        }
        if (*cmd_verify) return run_verify(lemma, verify);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const internal_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
