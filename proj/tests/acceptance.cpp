// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Every tolerance is pinned here.

#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "angval/extendability.hpp"
#include "angval/io.hpp"
#include "angval/simplex_lab.hpp"
#include "angval/valuation.hpp"

using namespace angval;

namespace {

struct Check {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

QuadraticForm random_form(int n, int k, std::uint64_t seed) {
    Rng rng(seed);
    long d = binomial(n, k);
    Eigen::MatrixXcd m(d, d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
    return QuadraticForm(n, k, m);
}

double factorial(int m) {
    double f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

// ---------------------------------------------------------------------------

Check criterion1_exterior_algebra() {
    Check c;
    // Hodge involution sign, exact on all basis vectors up to n = 6
    for (int n = 1; n <= 6 && c.pass; ++n)
        for (int k = 0; k <= n && c.pass; ++k) {
            double sgn = ((k * (n - k)) % 2 == 0) ? 1.0 : -1.0;
            for (const auto& mi : MultiIndex::all(n, k)) {
                KVector xi = KVector::basis(n, k, mi);
                KVector twice = hodge(hodge(xi));
                c.require((twice - xi * Complex(sgn)).norm() == 0.0,
                          "hodge involution not exact at n=" + std::to_string(n) +
                              " k=" + std::to_string(k));
            }
        }
    // psi(E^perp) = * psi(E) on 100 random frames, compatibly oriented
    int count = 0;
    for (std::uint64_t seed = 0; count < 100; ++seed) {
        int n = 3 + static_cast<int>(seed % 4);
        int k = 1 + static_cast<int>(seed % (n - 1));
        Frame b = random_onb(n, 7000 + seed);
        Mat cols = b.columns();
        if (cols.determinant() < 0) cols.col(n - 1) *= -1.0;
        Frame e_part(Mat(cols.leftCols(k))), perp(Mat(cols.rightCols(n - k)));
        double err = (pluecker(perp) - hodge(pluecker(e_part))).norm();
        c.require(err < 1e-10, "psi(E^perp) != *psi(E), error " + std::to_string(err));
        ++count;
    }
    // norm of a simple wedge vs sqrt(det Gram)
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + trial % 4, k = 1 + trial % 3;
        if (k > n) continue;
        Mat m(n, k);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < n; ++i) m(i, j) = rng.normal();
        double gram = (m.transpose() * m).determinant();
        double err = std::abs(simple(m).norm() - std::sqrt(std::max(0.0, gram)));
        c.require(err < 1e-12, "Gram identity error " + std::to_string(err));
    }
    return c;
}

Check criterion2_simplex_volume() {
    Check c;
    for (int n : {3, 4, 5, 6}) {
        Polytope s = shapes::regular_simplex(n);
        double vol = face_volume(s, s.whole_as_face());
        double expect = std::sqrt(static_cast<double>(n)) / factorial(n - 1);
        double rel = std::abs(vol / expect - 1.0);
        c.require(rel < 1e-12, "n=" + std::to_string(n) + " relative error " +
                                   std::to_string(rel));
    }
    return c;
}

Check criterion3_external_angles() {
    Check c;
    MonteCarloConfig mc;
    mc.samples = 200000;
    for (int n : {3, 4, 5}) {
        Polytope cube = shapes::cube(n);
        auto vertex = cube.faces(0)[0];
        auto exact = external_angle(cube, vertex);
        c.require(exact.exact && exact.value == std::ldexp(1.0, -n),
                  "orthant branch wrong at n=" + std::to_string(n));
        mc.seed = derive_stream(31, n);
        auto est = external_angle_mc(cube, vertex, mc);
        c.require(std::abs(est.value - exact.value) <= 4 * est.std_error,
                  "cube vertex MC off by " + std::to_string(est.value - exact.value) +
                      " at n=" + std::to_string(n));
    }
    int done = 0;
    for (std::uint64_t seed = 0; done < 20; ++seed) {
        int n = 3 + static_cast<int>(seed % 3);
        Rng rng(500 + seed);
        Polytope p(random_gaussian_matrix(n, n + 1, rng));
        if (p.dim() != n) continue;
        auto faces = p.faces(n - 2);
        const auto& f = faces[done % faces.size()];
        auto exact = external_angle(p, f);
        mc.seed = derive_stream(32, seed);
        auto est = external_angle_mc(p, f, mc);
        c.require(std::abs(est.value - exact.value) <= 4 * est.std_error,
                  "codim-2 simplex " + std::to_string(done) + " MC mismatch");
        ++done;
    }
    return c;
}

Check criterion4_intrinsic_volumes() {
    Check c;
    for (int n = 1; n <= 5; ++n) {
        Polytope cube = shapes::cube(n);
        for (int k = 0; k <= n; ++k) {
            auto r = intrinsic_volume(cube, k);
            c.require(r.std_error == 0.0, "cube V_k not on the exact path");
            double err = std::abs(r.value.real() - static_cast<double>(binomial(n, k)));
            c.require(err < 1e-12, "V_" + std::to_string(k) + "([0,1]^" + std::to_string(n) +
                                       ") error " + std::to_string(err));
        }
    }
    MonteCarloConfig mc;
    mc.samples = 200000;
    int idx = 0;
    for (const auto& p : {shapes::cube(3), shapes::simplex(3), shapes::cross_polytope(3)}) {
        mc.seed = derive_stream(41, idx++);
        auto r = intrinsic_volume(p, 0, mc);
        c.require(std::abs(r.value.real() - 1.0) <= 4 * r.std_error + 1e-12,
                  "Euler characteristic off for shape " + std::to_string(idx - 1));
    }
    return c;
}

Check criterion5_forward_direction() {
    Check c;
    double max_resid = 0.0;
    for (int n : {3, 4, 5, 6}) {
        for (int form = 0; form < 50; ++form) {
            auto f = KlainFunction::quadratic(
                random_form(n, 2, 1000 * n + form));
            for (int b = 0; b < 50; ++b) {
                Complex r = relation_residual(
                    f, random_onb(n, derive_stream(2000 * n + form, b)));
                max_resid = std::max(max_resid, std::abs(r));
            }
        }
    }
    c.require(max_resid < 1e-9, "max quadratic residual " + std::to_string(max_resid));
    return c;
}

Check criterion6_counterexamples() {
    Check c;
    // f_{2,0} at n = 4: the structured sweep must exhibit a violation and the
    // evaluator must agree with the closed forms
    auto f20 = KlainFunction::highest_weight(4, 2, 0);
    double max_resid = 0.0, oracle_gap = 0.0;
    for (int j = 0; j < 16; ++j) {
        double phi = j * std::numbers::pi / 16.0;
        auto [lhs, rhs] = hw_relation_sides(2, 0, 4, phi);
        Complex ev = relation_residual(f20, structured_basis(4, phi));
        max_resid = std::max(max_resid, std::abs(lhs - rhs));
        oracle_gap = std::max(oracle_gap, std::abs(ev - (lhs - rhs)));
    }
    c.require(max_resid > 1e-2, "f_{2,0} sweep residual only " + std::to_string(max_resid));
    c.require(oracle_gap < 1e-9, "f_{2,0} oracle mismatch " + std::to_string(oracle_gap));

    // f_{3,3} at n = 5: first family silent; the second family is required to
    // separate at some (phi, psi)
    auto f33 = KlainFunction::highest_weight(5, 3, 3);
    double max_first = 0.0;
    for (int j = 0; j < 16; ++j) {
        double phi = j * std::numbers::pi / 16.0;
        auto [lhs, rhs] = hw_relation_sides(3, 3, 5, phi);
        max_first = std::max(max_first, std::abs(lhs - rhs));
        oracle_gap = std::max(
            oracle_gap,
            std::abs(relation_residual(f33, structured_basis(5, phi)) - (lhs - rhs)));
    }
    c.require(max_first < 1e-9, "f_{3,3} first family residual " + std::to_string(max_first));
    double max_second = 0.0;
    for (int j = 0; j < 8; ++j)
        for (int l = 0; l < 8; ++l) {
            double phi = j * std::numbers::pi / 8.0, psi = l * std::numbers::pi / 8.0;
            auto [lhs, rhs] = hw_relation_sides_n5(3, 1, phi, psi);
            max_second = std::max(max_second, std::abs(lhs - rhs));
            oracle_gap = std::max(
                oracle_gap,
                std::abs(relation_residual(f33, structured_basis_n5(phi, psi)) - (lhs - rhs)));
        }
    c.require(oracle_gap < 1e-9, "oracle mismatch " + std::to_string(oracle_gap));
    c.require(max_second > 1e-2,
              "f_{3,3} second-family separation did not occur (max residual " +
                  std::to_string(max_second) +
                  "; both closed forms coincide identically for this weight, see notes)");
    return c;
}

Check criterion7_dimension_formula() {
    Check c;
    for (auto [n, k, expect] : {std::tuple{3, 1, 6}, {4, 2, 20}, {5, 2, 50}, {5, 3, 50}}) {
        long mono = binomial(n, k) * (binomial(n, k) + 1) / 2;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            int rank = quadratic_space_dimension(n, k, 2 * mono + 10, seed);
            c.require(rank == expect, "(n,k)=(" + std::to_string(n) + "," + std::to_string(k) +
                                          ") rank " + std::to_string(rank) + " != " +
                                          std::to_string(expect) + " at seed " +
                                          std::to_string(seed));
        }
    }
    return c;
}

Check criterion8_round_trip() {
    Check c;
    for (int n : {4, 5}) {
        std::vector<std::pair<std::string, KlainFunction>> battery;
        battery.emplace_back("const", KlainFunction::constant(n, 2, Complex(2.0, 0.5)));
        for (int q = 0; q < 20; ++q)
            battery.emplace_back("quad" + std::to_string(q),
                                 KlainFunction::quadratic(random_form(n, 2, 300 + q)));
        battery.emplace_back("hw:1,0", KlainFunction::highest_weight(n, 1, 0));
        battery.emplace_back("hw:1,1", KlainFunction::highest_weight(n, 1, 1));
        battery.emplace_back("hw:1,-1", KlainFunction::highest_weight(n, 1, -1));
        battery.emplace_back("hw:2,0", KlainFunction::highest_weight(n, 2, 0));
        battery.emplace_back("hw:2,2", KlainFunction::highest_weight(n, 2, 2));
        battery.emplace_back("hw:3,3", KlainFunction::highest_weight(n, 3, 3));
        auto q1 = random_form(n, 2, 777), q2 = random_form(n, 2, 778);
        battery.emplace_back("quartic",
                             KlainFunction(n, 2, "quartic", [q1, q2](const KVector& xi) {
                                 return q1(xi) * q2(xi);
                             }));
        long train = 2 * quadratic_restriction_dim(n, 2);
        for (const auto& [name, f] : battery) {
            bool rel_pass = relation_test(f, 100, 11, 1e-8).verdict == Verdict::pass;
            bool fit_pass = quadratic_fit(f, train, train / 2, 13).test_residual < 1e-6;
            c.require(rel_pass == fit_pass,
                      name + " at n=" + std::to_string(n) + ": relation " +
                          (rel_pass ? "pass" : "fail") + " but fit " +
                          (fit_pass ? "pass" : "fail") +
                          (name == "hw:3,3" && n == 5
                               ? " (this weight satisfies the relation identically at n=5 "
                                 "while not being a quadratic restriction, see notes)"
                               : ""));
        }
    }
    return c;
}

Check criterion9_derivative_experiment() {
    Check c;
    const int n = 4;
    auto grid = default_t_grid();
    {
        Frame basis(Mat::Identity(n, n));
        auto one = KlainFunction::constant(n, n - 2, 1.0);
        auto exp = averaged_derivative_experiment(one, basis, grid);
        double err = std::abs(exp.estimate - comp2_closed_form(one, basis));
        c.require(exp.stable && err < 1e-5, "f == 1 FD error " + std::to_string(err));
    }
    for (std::uint64_t s = 0; s < 5; ++s) {
        Frame basis = random_onb(n, 600 + s);
        auto f = KlainFunction::hodge_dual(
            KlainFunction::quadratic(random_form(n, 2, 650 + s)));
        auto exp = averaged_derivative_experiment(f, basis, grid);
        double err = std::abs(exp.estimate - comp2_closed_form(f, basis));
        c.require(exp.stable && err < 1e-5,
                  "quadratic pullback " + std::to_string(s) + " FD error " +
                      std::to_string(err));
    }
    {
        Frame basis = random_onb(n, 615);
        auto f20 = KlainFunction::highest_weight(n, 2, 0);
        auto f = KlainFunction::hodge_dual(f20);
        Complex gap = comp1_closed_form(f, basis) - comp2_closed_form(f, basis);
        c.require(std::abs(gap) > 1e-3, "comp1/comp2 gap only " + std::to_string(std::abs(gap)));
        Complex resid = relation_residual(f20, basis);
        double scale = 2 * std::numbers::pi * factorial(n - 2);
        double err = std::abs(gap * scale - resid);
        c.require(err < 1e-6, "gap does not match the scaled relation residual, error " +
                                  std::to_string(err));
    }
    return c;
}

Check criterion10_theta_limits() {
    Check c;
    for (int n : {3, 4, 5}) {
        auto lim = theta_limits(n);
        c.require(std::abs(lim.theta0n - std::numbers::pi) < 1e-6, "theta0n limit");
        c.require(std::abs(lim.theta0n_prime + std::sqrt(n - 1.0)) < 1e-6,
                  "theta0n derivative at n=" + std::to_string(n));
        c.require(std::abs(lim.theta0i - std::numbers::pi / 2) < 1e-6, "theta0i limit");
        c.require(std::abs(lim.theta0i_prime - 1.0) < 1e-6, "theta0i derivative");
    }
    return c;
}

Check criterion11_valuation_axioms() {
    Check c;
    // translation invariance and homogeneity on exact paths
    Rng rng(88);
    for (int n : {2, 3}) {
        Polytope cube = shapes::cube(n);
        for (int k = 0; k <= n; ++k) {
            auto f = KlainFunction::quadratic(random_form(n, k, 900 + 10 * n + k));
            Vec shift(n);
            for (int i = 0; i < n; ++i) shift[i] = rng.normal();
            Complex a = mu_angular(f, cube, k).value;
            Complex b = mu_angular(f, Polytope(Mat(cube.vertices().colwise() + shift)), k).value;
            c.require(std::abs(a - b) < 1e-10, "translation invariance, cube n=" +
                                                   std::to_string(n) + " k=" + std::to_string(k));
            double t = 1.7;
            Complex scaled = mu_angular(f, Polytope(Mat(t * cube.vertices())), k).value;
            c.require(std::abs(scaled - std::pow(t, k) * a) < 1e-10 * (1.0 + std::abs(scaled)),
                      "homogeneity, cube n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    }
    // simplex and cross-polytope at exact-branch degrees
    for (const Polytope& p : {shapes::simplex(3), shapes::cross_polytope(3)}) {
        for (int k = 1; k <= 3; ++k) {
            auto f = KlainFunction::quadratic(random_form(3, k, 950 + k));
            Vec shift(3);
            for (int i = 0; i < 3; ++i) shift[i] = rng.normal();
            Complex a = mu_angular(f, p, k).value;
            Complex b = mu_angular(f, Polytope(Mat(p.vertices().colwise() + shift)), k).value;
            c.require(std::abs(a - b) < 1e-10, "translation invariance at k=" + std::to_string(k));
        }
    }
    // translation invariance on a Monte Carlo path (vertices of the simplex)
    {
        Polytope s = shapes::simplex(3);
        MonteCarloConfig mc{200000, 71, 1};
        auto f = KlainFunction::quadratic(random_form(3, 0, 960));
        auto a = mu_angular(f, s, 0, mc);
        Vec shift(3);
        for (int i = 0; i < 3; ++i) shift[i] = rng.normal();
        auto b = mu_angular(f, Polytope(Mat(s.vertices().colwise() + shift)), 0, mc);
        c.require(std::abs(a.value - b.value) <= 4 * (a.std_error + b.std_error) + 1e-12,
                  "translation invariance on the MC path");
    }
    // split-box valuation identity, exact paths
    {
        int n = 3;
        Polytope b = shapes::cube(n);
        Mat v1 = b.vertices(), v2 = b.vertices();
        for (int i = 0; i < v1.cols(); ++i) {
            if (v1(0, i) > 0.5) v1(0, i) = 0.5;
            if (v2(0, i) < 0.5) v2(0, i) = 0.5;
        }
        Mat vm(n, 4);
        int cidx = 0;
        for (int i = 0; i < v1.cols(); ++i)
            if (v1(0, i) == 0.5) vm.col(cidx++) = v1.col(i);
        Polytope b1(v1), b2(v2), mid(vm);
        for (int k = 0; k < n; ++k) {
            auto f = KlainFunction::quadratic(random_form(n, k, 970 + k));
            Complex whole = mu_angular(f, b, k).value;
            Complex split = mu_angular(f, b1, k).value + mu_angular(f, b2, k).value -
                            mu_angular(f, mid, k).value;
            c.require(std::abs(whole - split) < 1e-10,
                      "split-box identity at k=" + std::to_string(k));
        }
    }
    // split-simplex valuation identity at k = 0, Monte Carlo path
    {
        Mat b1(3, 6), b2(3, 4), mid(3, 3);
        b1 << 0, 0, 0, 0.25, 0.25, 0.25, 0, 1, 0, 0, 0.75, 0, 0, 0, 1, 0, 0, 0.75;
        b2 << 1, 0.25, 0.25, 0.25, 0, 0, 0.75, 0, 0, 0, 0, 0.75;
        mid << 0.25, 0.25, 0.25, 0, 0.75, 0, 0, 0, 0.75;
        MonteCarloConfig mc{200000, 81, 1};
        auto f = KlainFunction::constant(3, 0, 1.0);
        auto whole = mu_angular(f, shapes::simplex(3), 0, mc);
        auto p1 = mu_angular(f, Polytope(b1), 0, mc);
        auto p2 = mu_angular(f, Polytope(b2), 0, mc);
        auto pm = mu_angular(f, Polytope(mid), 0, mc);
        double sigma = whole.std_error + p1.std_error + p2.std_error + pm.std_error;
        c.require(std::abs(whole.value - (p1.value + p2.value - pm.value)) <=
                      4 * sigma + 1e-12,
                  "split-simplex identity on the MC path");
    }
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Check()> run;
    };
    std::vector<Criterion> criteria = {
        {1, "exterior algebra: hodge involution, complement identity, Gram norms",
         criterion1_exterior_algebra},
        {2, "regular simplex volume sqrt(n)/(n-1)!", criterion2_simplex_volume},
        {3, "external angles: orthant and arccos branches vs Monte Carlo",
         criterion3_external_angles},
        {4, "intrinsic volumes of the cube and Euler characteristic",
         criterion4_intrinsic_volumes},
        {5, "relation holds for random quadratic forms", criterion5_forward_direction},
        {6, "counterexample sweeps against the closed-form oracles",
         criterion6_counterexamples},
        {7, "quadratic space dimension 6/20/50/50, seed-stable", criterion7_dimension_formula},
        {8, "relation test and quadratic fit agree on the battery", criterion8_round_trip},
        {9, "averaged derivative: finite differences vs closed forms",
         criterion9_derivative_experiment},
        {10, "dihedral angle limits (pi, -sqrt(n-1), pi/2, 1)", criterion10_theta_limits},
        {11, "valuation axioms: translation, homogeneity, split box",
         criterion11_valuation_axioms},
    };

    int failures = 0;
    for (const auto& cr : criteria) {
        Check result;
        try {
            result = cr.run();
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        if (result.pass) {
            std::printf("[PASS] %2d %s\n", cr.id, cr.name);
        } else {
            std::printf("[FAIL] %2d %s: %s\n", cr.id, cr.name, result.detail.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
