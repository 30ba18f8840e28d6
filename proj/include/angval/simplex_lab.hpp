#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "angval/shapes.hpp"
#include "angval/valuation.hpp"

namespace angval {

// Closed-form data for the four classes of (n-2)-faces of the simplex family
// S(v_1..v_n; t) = conv{0, v_1, ..., v_{n-1}, t v_n}.
struct SimplexFaceClass {
    std::string tag;
    double volume = 0.0;
    double theta = 0.0;   // dihedral angle
    long count = 0;
};

struct SimplexFaceTable {
    int n = 0;
    double t = 0.0;
    SimplexFaceClass classes[4];
};

inline SimplexFaceTable face_table(const Frame& basis, double t) {
    if (!basis.is_orthonormal() || basis.n() != basis.k())
        throw Error("face_table: basis must be a full orthonormal frame");
    if (t <= 0) throw Error("face_table: t > 0 required");
    const int n = basis.n();
    if (n < 3) throw Error("face_table: n >= 3 required");
    double fact = 1.0;
    for (int i = 2; i <= n - 2; ++i) fact *= i;
    const double denom = std::sqrt(1.0 + (n - 1) * t * t);
    SimplexFaceTable tab;
    tab.n = n;
    tab.t = t;
    tab.classes[0] = {"Fi^Fn", 1.0 / fact, std::numbers::pi / 2, n - 1};
    tab.classes[1] = {"Fi^Fj", t / fact, std::numbers::pi / 2, binomial(n - 1, 2)};
    tab.classes[2] = {"F0^Fn", std::sqrt(n - 1.0) / fact, std::acos(-1.0 / denom), 1};
    tab.classes[3] = {"F0^Fi", std::sqrt(1.0 + (n - 2) * t * t) / fact,
                      std::acos(-t / denom), n - 1};
    return tab;
}

namespace detail {

// Polynomial extrapolation of samples (x_i, y_i) to x = 0 (Neville).
template <typename T>
T neville_at_zero(const std::vector<double>& xs, std::vector<T> ys, double* spread = nullptr) {
    const size_t m = xs.size();
    T prev_diag = ys[0];
    for (size_t level = 1; level < m; ++level) {
        for (size_t i = 0; i + level < m; ++i)
            ys[i] = (xs[i + level] * ys[i] - xs[i] * ys[i + 1]) / (xs[i + level] - xs[i]);
        if (level == m - 1 && spread) *spread = std::abs(ys[0] - prev_diag);
        prev_diag = ys[0];
    }
    return ys[0];
}

}  // namespace detail

struct ThetaLimits {
    double theta0n = 0.0;        // limit of theta_0n(t) as t -> 0+
    double theta0n_prime = 0.0;  // limit of theta_0n'(t)
    double theta0i = 0.0;
    double theta0i_prime = 0.0;
};

// Numeric t -> 0+ limits of the dihedral-angle closed forms and their
// derivatives, by Neville extrapolation on a shrinking grid.  Expected:
// (pi, -sqrt(n-1), pi/2, 1).
inline ThetaLimits theta_limits(int n) {
    if (n < 3) throw Error("theta_limits: n >= 3 required");
    auto theta0n = [n](double t) {
        return std::acos(-1.0 / std::sqrt(1.0 + (n - 1) * t * t));
    };
    auto theta0i = [n](double t) {
        return std::acos(-t / std::sqrt(1.0 + (n - 1) * t * t));
    };
    auto deriv = [](auto f, double t) {
        double h = t / 4.0;
        return (f(t - 2 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2 * h)) / (12.0 * h);
    };
    std::vector<double> ts;
    for (int j = 0; j < 6; ++j) ts.push_back(1e-2 * std::pow(0.5, j));
    auto extrap = [&](auto g) {
        std::vector<double> ys;
        for (double t : ts) ys.push_back(g(t));
        return detail::neville_at_zero(ts, ys);
    };
    ThetaLimits lim;
    lim.theta0n = extrap(theta0n);
    lim.theta0n_prime = extrap([&](double t) { return deriv(theta0n, t); });
    lim.theta0i = extrap(theta0i);
    lim.theta0i_prime = extrap([&](double t) { return deriv(theta0i, t); });
    return lim;
}

namespace detail {

inline double factorial_n2(int n) {
    double f = 1.0;
    for (int i = 2; i <= n - 2; ++i) f *= i;
    return f;
}

// Wedge of basis columns omitting the listed (0-based) ones; a unit simple
// (n-2)-vector when two columns are omitted.
inline KVector basis_wedge_omit(const Frame& basis, int omit_a, int omit_b) {
    std::vector<Vec> cols;
    for (int c = 0; c < basis.k(); ++c)
        if (c != omit_a && c != omit_b) cols.push_back(basis.vector(c));
    return simple(cols, basis.n());
}

}  // namespace detail

// The single-sum limit value of the averaged derivative: valid when the
// valuation extends (its Klain function is a quadratic restriction).
inline Complex comp1_closed_form(const KlainFunction& f, const Frame& basis) {
    const int n = basis.n();
    if (f.n() != n || f.k() != n - 2)
        throw DimensionMismatch("comp1_closed_form: f must live on Gr_{n-2}");
    Complex acc = 0.0;
    for (int i = 1; i < n; ++i)           // pairs 1 <= i < j < n, paper indexing
        for (int j = i + 1; j < n; ++j)
            acc += f(detail::basis_wedge_omit(basis, i - 1, j - 1));
    return acc / (4.0 * detail::factorial_n2(n));
}

// The three-term limit value valid for every angular valuation.  The first
// sum runs over all class-(2) faces (pairs i < j <= n-1); the middle-term
// argument has norm sqrt(n-1) and is normalized before evaluation, with the
// volume factor carried explicitly by the (n-1) prefactor.
inline Complex comp2_closed_form(const KlainFunction& f, const Frame& basis) {
    const int n = basis.n();
    if (f.n() != n || f.k() != n - 2)
        throw DimensionMismatch("comp2_closed_form: f must live on Gr_{n-2}");
    const double fact = detail::factorial_n2(n);

    Complex t1 = 0.0;
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            t1 += f(detail::basis_wedge_omit(basis, i - 1, j - 1));
    t1 /= 4.0 * fact;

    std::vector<KVector> w;  // W_i = wedge of v_1..v_{n-1} omitting v_i
    for (int i = 1; i < n; ++i)
        w.push_back(detail::basis_wedge_omit(basis, i - 1, n - 1));

    Complex avg = 0.0;
    const long total = 1L << (n - 1);
    for (long m = 0; m < total; ++m) {
        KVector arg(n, n - 2);
        for (int i = 0; i < n - 1; ++i) {
            double sign = ((i + 1) % 2 ? -1.0 : 1.0) * (((m >> i) & 1) ? -1.0 : 1.0);
            arg = arg + w[i] * Complex(sign);
        }
        avg += f(arg.normalized());
    }
    avg /= static_cast<double>(total);
    Complex t2 = -(n - 1.0) / (2.0 * std::numbers::pi * fact) * avg;

    Complex t3 = 0.0;
    for (const auto& wi : w) t3 += f(wi);
    t3 /= 2.0 * std::numbers::pi * fact;

    return t1 + t2 + t3;
}

struct DerivativeExperiment {
    Complex estimate = 0.0;
    bool stable = false;
    double instability = 0.0;  // change of the extrapolant at the last level
    std::vector<std::pair<double, Complex>> samples;  // (t, D(t))
};

// Finite-difference estimate of d/dt at 0+ of the sign-averaged angular
// valuation of S(eps_1 v_1, ..., eps_{n-1} v_{n-1}, v_n; t) at degree n-2.
// All (n-2)-face angles take the exact codimension-2 branch, so no Monte
// Carlo enters; the t -> 0+ limit is Neville-extrapolated over the grid.
inline DerivativeExperiment averaged_derivative_experiment(const KlainFunction& f,
                                                           const Frame& basis,
                                                           const std::vector<double>& t_grid,
                                                           double tol = 1e-5) {
    const int n = basis.n();
    if (f.n() != n || f.k() != n - 2)
        throw DimensionMismatch("averaged_derivative_experiment: f must live on Gr_{n-2}");
    if (t_grid.size() < 3) throw Error("averaged_derivative_experiment: need >= 3 grid points");

    auto averaged_mu = [&](double t) {
        Complex acc = 0.0;
        const long total = 1L << (n - 1);
        for (long m = 0; m < total; ++m) {
            Mat cols = basis.columns();
            for (int i = 0; i < n - 1; ++i)
                if ((m >> i) & 1) cols.col(i) *= -1.0;
            Polytope s = shapes::simplex_s(Frame(std::move(cols)), t);
            acc += mu_angular(f, s, n - 2).value;
        }
        return acc / static_cast<double>(total);
    };

    DerivativeExperiment out;
    std::vector<double> ts;
    std::vector<Complex> ds;
    for (double t : t_grid) {
        double h = t / 4.0;
        Complex d = (averaged_mu(t - 2 * h) - 8.0 * averaged_mu(t - h) +
                     8.0 * averaged_mu(t + h) - averaged_mu(t + 2 * h)) /
                    (12.0 * h);
        ts.push_back(t);
        ds.push_back(d);
        out.samples.emplace_back(t, d);
    }
    double spread = 0.0;
    out.estimate = detail::neville_at_zero(ts, ds, &spread);
    out.instability = spread;
    out.stable = spread <= tol;
    return out;
}

inline std::vector<double> default_t_grid(double from = 1e-2, double to = 1e-4) {
    if (from <= to || to <= 0)
        throw Error("default_t_grid: need from > to > 0");
    std::vector<double> g;
    for (double t = from; t >= to * (1.0 - 1e-12); t *= 0.5) g.push_back(t);
    return g;
}

}  // namespace angval
