// Batch experiment runner: shape construction, valuation evaluation,
// relation testing, quadratic fitting, dimension checks, simplex experiments,
// and counterexample reproduction, with seeded reproducibility and
// machine-readable reports.

#include <chrono>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "angval/extendability.hpp"
#include "angval/io.hpp"
#include "angval/simplex_lab.hpp"
#include "angval/valuation.hpp"

using namespace angval;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string out;
    std::string format = "json";
    bool assert_verdict = false;
    int workers = 1;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--out", c.out, "write the report to this file instead of stdout");
    cmd->add_option("--format", c.format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    // --report is accepted as an alias for --format
    cmd->add_option("--report", c.format)->check(CLI::IsMember({"json", "csv"}))->group("");
    cmd->add_flag("--assert", c.assert_verdict,
                  "exit nonzero when the scientific verdict is 'fail'");
    cmd->add_option("--workers", c.workers, "Monte Carlo worker count (recorded in the report)")
        ->check(CLI::PositiveNumber);
}

void emit(const CommonOpts& c, const json& j, const std::string& csv = "") {
    std::string text;
    if (c.format == "csv") {
        if (csv.empty())
            throw Error("csv output is not available for this command; use --format json");
        text = csv;
    } else {
        text = j.dump(2) + "\n";
    }
    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.out);
        if (!f) throw Error("cannot write to " + c.out);
        f << text;
    }
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

std::string echo_command(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

struct ShapeOpts {
    std::string shape;
    std::string polytope_path;
    int n = 3;
    double t = 1.0;
    double length = 1.0;
    std::vector<double> lengths;
    std::uint64_t basis_seed = 0;
    bool random_basis = false;
};

void add_shape(CLI::App* cmd, ShapeOpts& s, bool allow_file = true) {
    auto* shape = cmd->add_option(
        "--shape", s.shape,
        "built-in shape: cube, simplex, regular-simplex, cross, segment, box, simplex-s");
    cmd->add_option("--n", s.n, "ambient dimension");
    cmd->add_option("--t", s.t, "apex parameter of simplex-s")->check(CLI::PositiveNumber);
    cmd->add_option("--length", s.length, "segment length")->check(CLI::PositiveNumber);
    cmd->add_option("--lengths", s.lengths, "box side lengths")->delimiter(',');
    cmd->add_option("--basis-seed", s.basis_seed, "seed for a random orthonormal basis");
    cmd->add_flag("--random-basis", s.random_basis, "use a Haar-random basis for simplex-s");
    if (allow_file) {
        auto* file =
            cmd->add_option("--polytope", s.polytope_path, "load a polytope from a JSON file");
        file->excludes(shape);
    }
}

Polytope build_shape(const ShapeOpts& s) {
    if (!s.polytope_path.empty()) return io::load_polytope(s.polytope_path);
    if (s.shape == "cube") return shapes::cube(s.n);
    if (s.shape == "simplex") return shapes::simplex(s.n);
    if (s.shape == "regular-simplex") return shapes::regular_simplex(s.n);
    if (s.shape == "cross") return shapes::cross_polytope(s.n);
    if (s.shape == "segment") return shapes::segment(s.length, s.n);
    if (s.shape == "box") return shapes::box(s.lengths);
    if (s.shape == "simplex-s") {
        Frame basis = s.random_basis ? random_onb(s.n, s.basis_seed)
                                     : Frame(Mat::Identity(s.n, s.n));
        return shapes::simplex_s(basis, s.t);
    }
    throw Error("unknown shape '" + s.shape + "'; run the 'shapes' command for the list");
}

json valuation_to_json(const ValuationResult& r) {
    json faces = json::array();
    for (const auto& t : r.faces) {
        faces.push_back(json{{"face", t.face_index},
                             {"vertices", t.vertex_ids},
                             {"volume", t.volume},
                             {"angle", t.angle.value},
                             {"angle_stderr", t.angle.std_error},
                             {"angle_method", t.angle.method},
                             {"klain", io::complex_to_json(t.klain)},
                             {"term", io::complex_to_json(t.term)}});
    }
    return json{{"value", io::complex_to_json(r.value)},
                {"stderr", r.std_error},
                {"faces", std::move(faces)}};
}

int run(int argc, char** argv) {
    CLI::App app{"angular valuations on convex polytopes"};
    app.require_subcommand(1);

    // ---- shapes ----------------------------------------------------------
    auto* cmd_shapes = app.add_subcommand("shapes", "list or dump built-in shape generators");
    CommonOpts shapes_common;
    ShapeOpts shapes_opts;
    add_common(cmd_shapes, shapes_common);
    add_shape(cmd_shapes, shapes_opts, false);

    // ---- evaluate --------------------------------------------------------
    auto* cmd_eval = app.add_subcommand("evaluate", "evaluate an angular valuation mu_f(P)");
    CommonOpts eval_common;
    ShapeOpts eval_shape;
    std::string eval_f = "const:1";
    int eval_k = 0;
    long eval_samples = 200000;
    std::uint64_t eval_seed = 0;
    add_common(cmd_eval, eval_common);
    add_shape(cmd_eval, eval_shape);
    cmd_eval->add_option("--k", eval_k, "homogeneity degree")->required();
    cmd_eval->add_option("--f", eval_f,
                         "Klain function spec (const:, quad:, hw:, sph:, p4:, dual:)");
    cmd_eval->add_option("--samples", eval_samples, "Monte Carlo samples per angle");
    cmd_eval->add_option("--seed", eval_seed, "master RNG seed");

    // ---- intrinsic -------------------------------------------------------
    auto* cmd_intr = app.add_subcommand("intrinsic", "intrinsic volume V_k(P)");
    CommonOpts intr_common;
    ShapeOpts intr_shape;
    int intr_k = 0;
    long intr_samples = 200000;
    std::uint64_t intr_seed = 0;
    add_common(cmd_intr, intr_common);
    add_shape(cmd_intr, intr_shape);
    cmd_intr->add_option("--k", intr_k)->required();
    cmd_intr->add_option("--samples", intr_samples);
    cmd_intr->add_option("--seed", intr_seed);

    // ---- relation --------------------------------------------------------
    auto* cmd_rel = app.add_subcommand("relation", "sign-average relation test on Gr_2");
    CommonOpts rel_common;
    std::string rel_f;
    int rel_n = 4, rel_trials = 50;
    std::uint64_t rel_seed = 1;
    double rel_tol = 1e-8;
    add_common(cmd_rel, rel_common);
    cmd_rel->add_option("--f", rel_f)->required();
    cmd_rel->add_option("--n", rel_n)->required();
    cmd_rel->add_option("--trials", rel_trials);
    cmd_rel->add_option("--seed", rel_seed);
    cmd_rel->add_option("--tol", rel_tol, "pass tolerance (fail threshold is fixed at 1e-3)");

    // ---- relation-k ------------------------------------------------------
    auto* cmd_relk = app.add_subcommand(
        "relation-k", "general-k relation test via (k+2)-dimensional restrictions");
    CommonOpts relk_common;
    std::string relk_f;
    int relk_n = 5, relk_k = 2, relk_trials = 20;
    std::uint64_t relk_seed = 1;
    double relk_tol = 1e-8;
    add_common(cmd_relk, relk_common);
    cmd_relk->add_option("--f", relk_f)->required();
    cmd_relk->add_option("--n", relk_n)->required();
    cmd_relk->add_option("--k", relk_k)->required();
    cmd_relk->add_option("--trials", relk_trials);
    cmd_relk->add_option("--seed", relk_seed);
    cmd_relk->add_option("--tol", relk_tol);

    // ---- fit -------------------------------------------------------------
    auto* cmd_fit = app.add_subcommand("fit", "least-squares quadratic form fit on Gr_k");
    CommonOpts fit_common;
    std::string fit_f;
    int fit_n = 4, fit_k = 2;
    long fit_train = 0, fit_test = 0;
    std::uint64_t fit_seed = 1;
    add_common(cmd_fit, fit_common);
    cmd_fit->add_option("--f", fit_f)->required();
    cmd_fit->add_option("--n", fit_n)->required();
    cmd_fit->add_option("--k", fit_k)->required();
    cmd_fit->add_option("--train", fit_train, "training sample count (default 2x space dim)");
    cmd_fit->add_option("--test", fit_test, "held-out sample count (default space dim)");
    cmd_fit->add_option("--seed", fit_seed);

    // ---- dimension -------------------------------------------------------
    auto* cmd_dim = app.add_subcommand("dimension", "numerical rank of the quadratic space");
    CommonOpts dim_common;
    int dim_n = 4, dim_k = 2;
    long dim_samples = 0;
    std::uint64_t dim_seed = 1;
    add_common(cmd_dim, dim_common);
    cmd_dim->add_option("--n", dim_n)->required();
    cmd_dim->add_option("--k", dim_k)->required();
    cmd_dim->add_option("--samples", dim_samples, "sample count (default 2x monomials + 10)");
    cmd_dim->add_option("--seed", dim_seed);

    // ---- simplex ---------------------------------------------------------
    auto* cmd_simp =
        app.add_subcommand("simplex", "averaged-derivative experiment on the simplex family");
    CommonOpts simp_common;
    std::string simp_f = "const:1";
    int simp_n = 4;
    std::string simp_grid = "1e-2:1e-4";
    std::uint64_t simp_basis_seed = 0;
    bool simp_random_basis = false;
    double simp_tol = 1e-5;
    add_common(cmd_simp, simp_common);
    cmd_simp->add_option("--n", simp_n)->required();
    cmd_simp->add_option("--f", simp_f, "Klain function on Gr_{n-2}");
    cmd_simp->add_option("--t-grid", simp_grid, "geometric grid 'from:to', halving steps");
    cmd_simp->add_option("--basis-seed", simp_basis_seed);
    cmd_simp->add_flag("--random-basis", simp_random_basis);
    cmd_simp->add_option("--tol", simp_tol, "extrapolation stability tolerance");

    // ---- counterexample --------------------------------------------------
    auto* cmd_ce = app.add_subcommand("counterexample",
                                      "reproduce the highest-weight counterexample sweeps");
    CommonOpts ce_common;
    std::string ce_case = "n4-hw20";
    add_common(cmd_ce, ce_common);
    cmd_ce->add_option("--case", ce_case, "n4-hw20 or n5-hw33")
        ->check(CLI::IsMember({"n4-hw20", "n5-hw33"}));

    CLI11_PARSE(app, argc, argv);

    Timer timer;
    json report;
    report["command"] = echo_command(argc, argv);
    int exit_code = 0;

    if (*cmd_shapes) {
        if (shapes_opts.shape.empty()) {
            report["shapes"] = json::array({
                json{{"name", "cube"}, {"params", "--n"}},
                json{{"name", "simplex"}, {"params", "--n (conv{0, e_1..e_n})"}},
                json{{"name", "regular-simplex"}, {"params", "--n (conv{e_1..e_n})"}},
                json{{"name", "cross"}, {"params", "--n"}},
                json{{"name", "segment"}, {"params", "--n --length"}},
                json{{"name", "box"}, {"params", "--lengths l1,l2,..."}},
                json{{"name", "simplex-s"}, {"params", "--n --t [--random-basis --basis-seed]"}},
            });
        } else {
            Polytope p = build_shape(shapes_opts);
            report["polytope"] = io::polytope_to_json(p);
            report["dim"] = p.dim();
            json fv = json::array();
            for (int k = 0; k <= p.dim(); ++k) fv.push_back(p.faces(k).size());
            report["f_vector"] = std::move(fv);
        }
        report["wall_clock_ms"] = timer.ms();
        emit(shapes_common, report);
        return 0;
    }

    if (*cmd_eval) {
        Polytope p = build_shape(eval_shape);
        KlainFunction f = io::parse_klain(eval_f, p.ambient_dim(), eval_k);
        MonteCarloConfig mc{eval_samples, eval_seed, eval_common.workers};
        auto r = mu_angular(f, p, eval_k, mc);
        report.update(valuation_to_json(r));
        report["f"] = eval_f;
        report["k"] = eval_k;
        report["seed"] = eval_seed;
        report["samples"] = eval_samples;
        report["workers"] = eval_common.workers;
        report["wall_clock_ms"] = timer.ms();
        emit(eval_common, report);
        return 0;
    }

    if (*cmd_intr) {
        Polytope p = build_shape(intr_shape);
        MonteCarloConfig mc{intr_samples, intr_seed, intr_common.workers};
        auto r = intrinsic_volume(p, intr_k, mc);
        report["value"] = r.value.real();
        report["stderr"] = r.std_error;
        report["k"] = intr_k;
        report["seed"] = intr_seed;
        report["samples"] = intr_samples;
        report["workers"] = intr_common.workers;
        report["wall_clock_ms"] = timer.ms();
        emit(intr_common, report);
        return 0;
    }

    if (*cmd_rel || *cmd_relk) {
        bool general = static_cast<bool>(*cmd_relk);
        const CommonOpts& common = general ? relk_common : rel_common;
        int n = general ? relk_n : rel_n;
        int k = general ? relk_k : 2;
        KlainFunction f = io::parse_klain(general ? relk_f : rel_f, n, k);
        RelationReport rep = general
                                 ? relation_test_general_k(f, relk_trials, relk_seed, relk_tol)
                                 : relation_test(f, rel_trials, rel_seed, rel_tol);
        report.update(io::relation_report_to_json(rep));
        report["f"] = general ? relk_f : rel_f;
        report["n"] = n;
        report["k"] = k;
        report["trials"] = general ? relk_trials : rel_trials;
        report["wall_clock_ms"] = timer.ms();
        emit(common, report, io::relation_report_to_csv(rep));
        if (common.assert_verdict && rep.verdict == Verdict::fail) exit_code = 1;
        return exit_code;
    }

    if (*cmd_fit) {
        KlainFunction f = io::parse_klain(fit_f, fit_n, fit_k);
        long space_dim = quadratic_restriction_dim(fit_n, fit_k);
        long train = fit_train > 0 ? fit_train : 2 * space_dim;
        long test = fit_test > 0 ? fit_test : space_dim;
        auto r = quadratic_fit(f, train, test, fit_seed);
        report["f"] = fit_f;
        report["n"] = fit_n;
        report["k"] = fit_k;
        report["train_count"] = train;
        report["test_count"] = test;
        report["seed"] = fit_seed;
        report["train_residual"] = r.train_residual;
        report["test_residual"] = r.test_residual;
        report["quadratic_space_dim"] = space_dim;
        report["matrix"] = io::quadratic_to_json(r.form)["matrix"];
        report["wall_clock_ms"] = timer.ms();
        emit(fit_common, report);
        return 0;
    }

    if (*cmd_dim) {
        long mono = binomial(dim_n, dim_k) * (binomial(dim_n, dim_k) + 1) / 2;
        long samples = dim_samples > 0 ? dim_samples : 2 * mono + 10;
        json ranks = json::array();
        int first = 0;
        bool stable = true;
        for (std::uint64_t s = 0; s < 5; ++s) {
            int r = quadratic_space_dimension(dim_n, dim_k, samples, dim_seed + s);
            if (s == 0)
                first = r;
            else if (r != first)
                stable = false;
            ranks.push_back(r);
        }
        long closed = quadratic_restriction_dim(dim_n, dim_k);
        report["n"] = dim_n;
        report["k"] = dim_k;
        report["samples"] = samples;
        report["seed"] = dim_seed;
        report["rank"] = first;
        report["ranks_by_seed"] = std::move(ranks);
        report["stable_across_seeds"] = stable;
        report["closed_form"] = closed;
        report["verdict"] = (stable && first == closed) ? "pass" : "fail";
        report["wall_clock_ms"] = timer.ms();
        emit(dim_common, report);
        if (dim_common.assert_verdict && report["verdict"] != "pass") exit_code = 1;
        return exit_code;
    }

    if (*cmd_simp) {
        auto colon = simp_grid.find(':');
        if (colon == std::string::npos)
            throw Error("--t-grid expects 'from:to', e.g. 1e-2:1e-4");
        auto grid = default_t_grid(std::stod(simp_grid.substr(0, colon)),
                                   std::stod(simp_grid.substr(colon + 1)));
        Frame basis = simp_random_basis ? random_onb(simp_n, simp_basis_seed)
                                        : Frame(Mat::Identity(simp_n, simp_n));
        KlainFunction f = io::parse_klain(simp_f, simp_n, simp_n - 2);
        Complex c1 = comp1_closed_form(f, basis);
        Complex c2 = comp2_closed_form(f, basis);
        auto exp = averaged_derivative_experiment(f, basis, grid, simp_tol);
        auto lim = theta_limits(simp_n);
        report["n"] = simp_n;
        report["f"] = simp_f;
        report["t_grid"] = grid;
        report["basis"] = simp_random_basis ? "random" : "standard";
        report["basis_seed"] = simp_basis_seed;
        report["comp1"] = io::complex_to_json(c1);
        report["comp2"] = io::complex_to_json(c2);
        report["fd_estimate"] = io::complex_to_json(exp.estimate);
        report["fd_vs_comp2_abs"] = std::abs(exp.estimate - c2);
        report["comp1_vs_comp2_abs"] = std::abs(c1 - c2);
        report["stable"] = exp.stable;
        report["instability"] = exp.instability;
        report["verdict"] = exp.stable
                                ? (std::abs(exp.estimate - c2) < 1e-4 ? "pass" : "fail")
                                : "inconclusive";
        report["theta_limits"] = json{{"theta0n", lim.theta0n},
                                      {"theta0n_prime", lim.theta0n_prime},
                                      {"theta0i", lim.theta0i},
                                      {"theta0i_prime", lim.theta0i_prime}};
        json samples = json::array();
        std::ostringstream csv;
        csv.precision(17);
        csv << "t,d_re,d_im\n";
        for (const auto& [t, d] : exp.samples) {
            samples.push_back(json{{"t", t}, {"d", io::complex_to_json(d)}});
            csv << t << "," << d.real() << "," << d.imag() << "\n";
        }
        report["derivatives"] = std::move(samples);
        report["wall_clock_ms"] = timer.ms();
        emit(simp_common, report, csv.str());
        if (simp_common.assert_verdict && report["verdict"] == "fail") exit_code = 1;
        return exit_code;
    }

    if (*cmd_ce) {
        std::ostringstream csv;
        csv.precision(17);
        csv << "family,phi,psi,lhs_re,lhs_im,rhs_re,rhs_im,closed_resid_abs,eval_resid_abs\n";
        json sweep = json::array();
        double max_resid = 0.0, oracle_mismatch = 0.0;
        auto push = [&](const std::string& family, double phi, double psi, Complex lhs,
                        Complex rhs, Complex eval_resid) {
            double cr = std::abs(lhs - rhs);
            max_resid = std::max(max_resid, cr);
            oracle_mismatch = std::max(oracle_mismatch, std::abs(eval_resid - (lhs - rhs)));
            sweep.push_back(json{{"family", family},
                                 {"phi", phi},
                                 {"psi", psi},
                                 {"lhs", io::complex_to_json(lhs)},
                                 {"rhs", io::complex_to_json(rhs)},
                                 {"closed_resid_abs", cr},
                                 {"eval_resid_abs", std::abs(eval_resid)}});
            csv << family << "," << phi << "," << psi << "," << lhs.real() << "," << lhs.imag()
                << "," << rhs.real() << "," << rhs.imag() << "," << cr << ","
                << std::abs(eval_resid) << "\n";
        };

        if (ce_case == "n4-hw20") {
            auto f = KlainFunction::highest_weight(4, 2, 0);
            for (int j = 0; j < 32; ++j) {
                double phi = j * std::numbers::pi / 32.0;
                auto [lhs, rhs] = hw_relation_sides(2, 0, 4, phi);
                push("phi", phi, 0.0, lhs, rhs,
                     relation_residual(f, structured_basis(4, phi)));
            }
            report["reproduced"] = (max_resid > 1e-2) && (oracle_mismatch < 1e-9);
        } else {  // n5-hw33
            auto f = KlainFunction::highest_weight(5, 3, 3);
            double max_first = 0.0, max_second = 0.0;
            for (int j = 0; j < 16; ++j) {
                double phi = j * std::numbers::pi / 16.0;
                auto [lhs, rhs] = hw_relation_sides(3, 3, 5, phi);
                push("phi", phi, 0.0, lhs, rhs,
                     relation_residual(f, structured_basis(5, phi)));
                max_first = std::max(max_first, std::abs(lhs - rhs));
            }
            for (int j = 0; j < 8; ++j)
                for (int l = 0; l < 8; ++l) {
                    double phi = j * std::numbers::pi / 8.0;
                    double psi = l * std::numbers::pi / 8.0;
                    auto [lhs, rhs] = hw_relation_sides_n5(3, 1, phi, psi);
                    push("phipsi", phi, psi, lhs, rhs,
                         relation_residual(f, structured_basis_n5(phi, psi)));
                    max_second = std::max(max_second, std::abs(lhs - rhs));
                }
            report["first_family_max"] = max_first;
            report["second_family_max"] = max_second;
            // The documented expectation is a violation on the second family;
            // numerically both displayed sides coincide identically for this
            // weight, so the expected separation does not occur.
            report["reproduced"] =
                (max_first < 1e-9) && (max_second > 1e-2) && (oracle_mismatch < 1e-9);
            report["note"] =
                "for weight (6,6) at n=5 the two closed forms agree identically; "
                "the relation holds on every tested basis although the function "
                "is not a quadratic restriction (see 'fit --f hw:3,3 --n 5 --k 2')";
        }
        report["case"] = ce_case;
        report["max_closed_resid"] = max_resid;
        report["oracle_mismatch"] = oracle_mismatch;
        report["sweep"] = std::move(sweep);
        report["verdict"] = report["reproduced"].get<bool>() ? "pass" : "fail";
        report["wall_clock_ms"] = timer.ms();
        emit(ce_common, report, csv.str());
        if (ce_common.assert_verdict && !report["reproduced"].get<bool>()) exit_code = 1;
        return exit_code;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
