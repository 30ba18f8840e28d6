#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "angval/klain.hpp"
#include "angval/random.hpp"

namespace angval {

// Sign vector in {-1,+1}^(n-1); the averaging set E_2^{n-1} of the relation.
struct SignVector {
    std::vector<int> eps;
};

enum class Verdict { pass, fail, inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "inconclusive";
    }
}

struct BasisResidual {
    std::string label;
    Complex residual;
};

struct RelationReport {
    std::vector<BasisResidual> residuals;
    double max_abs = 0.0;
    double pass_tol = 1e-8;
    double fail_tol = 1e-3;
    std::uint64_t seed = 0;
    Verdict verdict = Verdict::inconclusive;

    void finalize() {
        max_abs = 0.0;
        for (const auto& r : residuals) max_abs = std::max(max_abs, std::abs(r.residual));
        if (max_abs < pass_tol)
            verdict = Verdict::pass;
        else if (max_abs > fail_tol)
            verdict = Verdict::fail;
        else
            verdict = Verdict::inconclusive;
    }
};

// Residual LHS - RHS of the sign-average relation for f on Gr_2(R^n):
//   (n-1) avg_eps f((1/sqrt(n-1)) (sum_i eps_i u_i) ^ u_n) - sum_i f(u_i ^ u_n).
// The argument of f is always a unit simple 2-vector.  By evenness only half
// the sign vectors are evaluated, each counted twice.
inline Complex relation_residual(const KlainFunction& f, const Frame& onb) {
    const int n = onb.n();
    if (onb.k() != n || !onb.is_orthonormal())
        throw Error("relation_residual: need a full orthonormal basis");
    if (f.n() != n || f.k() != 2)
        throw DimensionMismatch("relation_residual: f must live on Gr_2(R^n)");
    if (n < 3) throw Error("relation_residual: n >= 3 required");
    if (n > 20) throw Error("relation_residual: 2^(n-2) sign sum capped at n = 20");

    std::vector<KVector> xi;  // u_i ^ u_n, i = 1..n-1
    xi.reserve(n - 1);
    for (int i = 0; i < n - 1; ++i)
        xi.push_back(wedge(KVector::from_vector(onb.vector(i)),
                           KVector::from_vector(onb.vector(n - 1))));

    Complex rhs = 0.0;
    for (const auto& x : xi) rhs += f(x);

    const double scale = 1.0 / std::sqrt(static_cast<double>(n - 1));
    Complex acc = 0.0;
    const long half = 1L << (n - 2);  // eps_1 fixed to +1, evenness doubles
    for (long m = 0; m < half; ++m) {
        KVector arg = xi[0];
        for (int i = 1; i < n - 1; ++i) {
            double e = ((m >> (i - 1)) & 1) ? -1.0 : 1.0;
            arg = arg + xi[i] * Complex(e);
        }
        acc += f(arg * Complex(scale));
    }
    Complex lhs = static_cast<double>(n - 1) * acc / static_cast<double>(half);
    return lhs - rhs;
}

// The structured basis family of the counterexample computation:
// u_1 = s e_1 - c e_3, u_2 = e_2, u_i = e_{i+1} (3 <= i <= n-1),
// u_n = c e_1 + s e_3.
inline Frame structured_basis(int n, double phi) {
    if (n < 4) throw Error("structured_basis: n >= 4 required");
    double c = std::cos(phi), s = std::sin(phi);
    Mat b = Mat::Zero(n, n);
    b(0, 0) = s;
    b(2, 0) = -c;
    b(1, 1) = 1.0;
    for (int i = 2; i <= n - 2; ++i) b(i + 1, i) = 1.0;
    b(0, n - 1) = c;
    b(2, n - 1) = s;
    return Frame(std::move(b));
}

// The n = 5 two-angle family: u_1 = c(a e_1 + b e_3) + s e_5,
// u_2 = s(a e_1 + b e_3) - c e_5, u_3 = e_2, u_4 = e_4, u_5 = -b e_1 + a e_3.
inline Frame structured_basis_n5(double phi, double psi) {
    double c = std::cos(phi), s = std::sin(phi);
    double a = std::cos(psi), b = std::sin(psi);
    Mat m = Mat::Zero(5, 5);
    m(0, 0) = c * a;
    m(2, 0) = c * b;
    m(4, 0) = s;
    m(0, 1) = s * a;
    m(2, 1) = s * b;
    m(4, 1) = -c;
    m(1, 2) = 1.0;
    m(3, 3) = 1.0;
    m(0, 4) = -b;
    m(2, 4) = a;
    return Frame(std::move(m));
}

// Residuals over random orthonormal bases plus the structured families.
// Random sampling cannot prove the relation for every basis, so "pass" means
// "no violation found at the tolerance"; the quadratic_fit residual is the
// constructive certificate.
inline RelationReport relation_test(const KlainFunction& f, int trials,
                                    std::uint64_t seed, double tol = 1e-8) {
    if (trials < 1) throw Error("relation_test: trials >= 1 required");
    const int n = f.n();
    RelationReport rep;
    rep.pass_tol = tol;
    rep.seed = seed;
    if (rep.pass_tol >= rep.fail_tol)
        throw Error("relation_test: pass tolerance must stay below the fail threshold");
    for (int i = 0; i < trials; ++i) {
        Frame b = random_onb(n, derive_stream(seed, i));
        rep.residuals.push_back({"random:" + std::to_string(i), relation_residual(f, b)});
    }
    if (n >= 4) {
        for (int j = 0; j < 16; ++j) {
            double phi = j * std::numbers::pi / 16.0;
            rep.residuals.push_back(
                {"phi:" + std::to_string(j), relation_residual(f, structured_basis(n, phi))});
        }
    }
    if (n == 5) {
        for (int j = 0; j < 8; ++j)
            for (int l = 0; l < 8; ++l) {
                double phi = j * std::numbers::pi / 8.0, psi = l * std::numbers::pi / 8.0;
                rep.residuals.push_back({"phipsi:" + std::to_string(j) + "," + std::to_string(l),
                                         relation_residual(f, structured_basis_n5(phi, psi))});
            }
    }
    rep.finalize();
    return rep;
}

// General-k test along the proof path of the main theorem: restrict f to a
// random (k+2)-dimensional subspace E, pull back to Gr_2(E) through the Hodge
// complement inside E, and run the relation there.
inline RelationReport relation_test_general_k(const KlainFunction& f, int trials,
                                              std::uint64_t seed, double tol = 1e-8) {
    const int n = f.n(), k = f.k();
    if (k < 1 || k > n - 2)
        throw Error("relation_test_general_k: need 1 <= k <= n-2");
    const int m = k + 2;
    RelationReport rep;
    rep.pass_tol = tol;
    rep.seed = seed;

    for (int i = 0; i < std::max(1, trials); ++i) {
        Frame sub = random_frame(n, m, derive_stream(seed, 0xE000 + i));
        // ambient images of the exterior basis of E, so g is a linear
        // reindexing of f composed with the Hodge star of E
        std::vector<KVector> amb;
        for (const auto& mi : MultiIndex::all(m, k)) {
            std::vector<Vec> cols;
            for (int idx : mi.indices()) cols.push_back(sub.vector(idx));
            amb.push_back(simple(cols, n));
        }
        KlainFunction g(m, 2, "restricted:" + f.tag(), [f, amb, m, k](const KVector& eta) {
            KVector zeta = hodge(eta);  // k-vector in E coordinates
            KVector xi(f.n(), k);
            for (Eigen::Index p = 0; p < zeta.size(); ++p)
                if (zeta[p] != 0.0) xi = xi + amb[p] * zeta[p];
            return f(xi);
        });

        std::string prefix = "E:" + std::to_string(i) + "|";
        Frame b = random_onb(m, derive_stream(seed, 0xB000 + i));
        rep.residuals.push_back({prefix + "random", relation_residual(g, b)});
        if (i == 0) {
            if (m >= 4)
                for (int j = 0; j < 16; ++j) {
                    double phi = j * std::numbers::pi / 16.0;
                    rep.residuals.push_back({prefix + "phi:" + std::to_string(j),
                                             relation_residual(g, structured_basis(m, phi))});
                }
            if (m == 5)
                for (int j = 0; j < 8; ++j)
                    for (int l = 0; l < 8; ++l) {
                        double phi = j * std::numbers::pi / 8.0;
                        double psi = l * std::numbers::pi / 8.0;
                        rep.residuals.push_back(
                            {prefix + "phipsi:" + std::to_string(j) + "," + std::to_string(l),
                             relation_residual(g, structured_basis_n5(phi, psi))});
                    }
        }
    }
    rep.finalize();
    return rep;
}

// Dimension of the space of restrictions of 2-homogeneous polynomials to the
// Pluecker image: C(n,k) C(n+1,k+1) / (n-k+1).
inline long quadratic_restriction_dim(int n, int k) {
    return binomial(n, k) * binomial(n + 1, k + 1) / (n - k + 1);
}

namespace detail {

// Quadratic monomial features 'xi_I xi_J' (I <= J) of a real Pluecker point,
// scaled so that a coefficient vector is exactly a symmetric matrix: the
// off-diagonal feature carries the factor 2.
inline Vec quadratic_features(const Vec& xi, bool doubled) {
    const Eigen::Index d = xi.size();
    Vec out(d * (d + 1) / 2);
    Eigen::Index c = 0;
    for (Eigen::Index p = 0; p < d; ++p)
        for (Eigen::Index q = p; q < d; ++q)
            out[c++] = (p == q ? 1.0 : (doubled ? 2.0 : 1.0)) * xi[p] * xi[q];
    return out;
}

inline Vec real_pluecker(int n, int k, std::uint64_t seed) {
    return pluecker(random_frame(n, k, seed)).coeffs().real();
}

}  // namespace detail

struct FitResult {
    QuadraticForm form;
    double train_residual = 0.0;
    double test_residual = 0.0;
};

// Least-squares fit of a symmetric form on the exterior power to f over
// sampled Pluecker points; the held-out sup-norm residual is the decision
// quantity for extendability.
inline FitResult quadratic_fit(const KlainFunction& f, long train_count, long test_count,
                               std::uint64_t seed) {
    const int n = f.n(), k = f.k();
    const long d = binomial(n, k);
    const long mono = d * (d + 1) / 2;
    if (train_count < quadratic_restriction_dim(n, k))
        throw Error("quadratic_fit: underdetermined fit; need at least " +
                    std::to_string(quadratic_restriction_dim(n, k)) + " training samples");

    Mat a(train_count, mono);
    Eigen::VectorXcd b(train_count);
    std::vector<Vec> train_pts;
    train_pts.reserve(train_count);
    for (long t = 0; t < train_count; ++t) {
        Vec xi = detail::real_pluecker(n, k, derive_stream(seed, t));
        a.row(t) = detail::quadratic_features(xi, true).transpose();
        KVector kx(n, k);
        kx.coeffs() = xi.cast<Complex>();
        b[t] = f(kx);
        train_pts.push_back(std::move(xi));
    }

    Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vec x_re = svd.solve(Vec(b.real()));
    Vec x_im = svd.solve(Vec(b.imag()));

    Eigen::MatrixXcd qm(d, d);
    Eigen::Index c = 0;
    for (Eigen::Index p = 0; p < d; ++p)
        for (Eigen::Index q = p; q < d; ++q) {
            Complex v(x_re[c], x_im[c]);
            qm(p, q) = v;
            qm(q, p) = v;
            ++c;
        }
    QuadraticForm form(n, k, qm);

    auto sup_residual = [&](const Vec& xi) {
        KVector kx(n, k);
        kx.coeffs() = xi.cast<Complex>();
        return std::abs(f(kx) - form(kx));
    };
    FitResult r{form, 0.0, 0.0};
    for (const auto& xi : train_pts) r.train_residual = std::max(r.train_residual, sup_residual(xi));
    for (long t = 0; t < test_count; ++t) {
        Vec xi = detail::real_pluecker(n, k, derive_stream(seed ^ 0x7e57ULL, 10'000 + t));
        r.test_residual = std::max(r.test_residual, sup_residual(xi));
    }
    return r;
}

// Numerical rank of the evaluation matrix of quadratic monomials at sampled
// Pluecker points; reproduces the dimension formula.
inline int quadratic_space_dimension(int n, int k, long sample_count, std::uint64_t seed) {
    const long d = binomial(n, k);
    const long mono = d * (d + 1) / 2;
    if (sample_count < mono)
        throw Error("quadratic_space_dimension: need at least " + std::to_string(mono) +
                    " samples");
    Mat a(sample_count, mono);
    for (long t = 0; t < sample_count; ++t)
        a.row(t) =
            detail::quadratic_features(detail::real_pluecker(n, k, derive_stream(seed, t)), false)
                .transpose();
    Eigen::BDCSVD<Mat> svd(a);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > kKernelTol * sv(0)) ++rank;
    return rank;
}

// Closed forms of the two sides of the relation for the highest-weight
// vectors on the structured basis family, as exact sign sums.
inline std::pair<Complex, Complex> hw_relation_sides(int m1, int m2, int n, double phi) {
    if (m1 < std::abs(m2)) throw Error("hw_relation_sides: need m1 >= |m2|");
    if (n < 4) throw Error("hw_relation_sides: structured family needs n >= 4");
    if (m1 == 0) return {Complex(n - 1.0), Complex(n - 1.0)};
    const double c = std::cos(phi), s = std::sin(phi);
    const int am2 = std::abs(m2);

    double rhs_re = (m2 == 0)
                        ? 1.0 + (n - 3) * std::pow(c, 2 * m1) +
                              ((m1 % 2) ? -1.0 : 1.0) * std::pow(s, 2 * m1)
                        : 1.0 + ((am2 % 2) ? -1.0 : 1.0) * std::pow(c, 2 * m1) +
                              ((m1 % 2) ? -1.0 : 1.0) * std::pow(s, 2 * m1);

    Complex acc = 0.0;
    for (int e1 : {-1, 1})
        for (int e2 : {-1, 1})
            for (int e3 : {-1, 1}) {
                Complex t1 = Complex((n - 2) * c * c, 2.0 * e1 * e2 * s);
                Complex t2 = Complex(e2 * e3 * c * s, e1 * (e2 * s - e3 * c));
                if (m2 < 0) t2 = std::conj(t2);
                acc += std::pow(t1, m1 - am2) * std::pow(t2, am2);
            }
    Complex lhs = std::pow(2.0, am2) / std::pow(static_cast<double>(n - 1), m1 - 1) *
                  (acc / 8.0);
    return {lhs, Complex(rhs_re)};
}

// Same for the n = 5 two-angle family and m2 = +-m1.
inline std::pair<Complex, Complex> hw_relation_sides_n5(int m1, int m2_sign, double phi,
                                                        double psi) {
    if (m2_sign != 1 && m2_sign != -1) throw Error("hw_relation_sides_n5: m2 = +-m1");
    if (m1 == 0) return {Complex(4.0), Complex(4.0)};
    const double c = std::cos(phi), s = std::sin(phi);
    const double a = std::cos(psi), b = std::sin(psi);
    double rhs = std::pow(c, 2 * m1) + std::pow(s, 2 * m1) +
                 ((m1 % 2) ? -1.0 : 1.0) * (std::pow(a, 2 * m1) + std::pow(b, 2 * m1));
    Complex acc = 0.0;
    for (int e1 : {-1, 1})
        for (int e2 : {-1, 1})
            for (int e3 : {-1, 1})
                for (int e4 : {-1, 1}) {
                    Complex z(e1 * e2 * c * s - e3 * e4 * a * b,
                              (e1 * c + e2 * s) * (e3 * a + e4 * b));
                    if (m2_sign < 0) z = std::conj(z);
                    acc += std::pow(z, m1);
                }
    Complex lhs = std::pow(2.0, m1) / std::pow(4.0, m1 - 1) * (acc / 16.0);
    return {lhs, Complex(rhs)};
}

}  // namespace angval
