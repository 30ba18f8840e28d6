#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "angval/exterior.hpp"

namespace angval {

// Symmetric bilinear form on the C(n,k)-dimensional exterior power, in
// canonical multi-index coordinates.  Restrictions of 2-homogeneous
// polynomials to the Pluecker image are exactly xi^T Q xi for such Q.
class QuadraticForm {
public:
    QuadraticForm(int n, int k, Eigen::MatrixXcd matrix) : n_(n), k_(k) {
        long d = binomial(n, k);
        if (matrix.rows() != d || matrix.cols() != d)
            throw DimensionMismatch("QuadraticForm: matrix must be C(n,k) x C(n,k)");
        symmetrized_ = ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() >
                        1e-12 * std::max(1.0, matrix.cwiseAbs().maxCoeff()));
        matrix_ = 0.5 * (matrix + matrix.transpose());
    }

    static QuadraticForm identity(int n, int k) {
        long d = binomial(n, k);
        return QuadraticForm(n, k, Eigen::MatrixXcd::Identity(d, d));
    }

    int n() const { return n_; }
    int k() const { return k_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    // True when the input matrix was not symmetric and had to be symmetrized.
    bool was_symmetrized() const { return symmetrized_; }

    Complex operator()(const KVector& xi) const {
        if (xi.n() != n_ || xi.k() != k_)
            throw DimensionMismatch("QuadraticForm: argument degree/dimension mismatch");
        // Plain transpose, not adjoint: the form is bilinear.
        return (xi.coeffs().transpose() * matrix_ * xi.coeffs())(0, 0);
    }

private:
    int n_, k_;
    Eigen::MatrixXcd matrix_;
    bool symmetrized_ = false;
};

// Symmetric bilinear extension; polarize(Q, a, a) recovers the quadratic value.
inline Complex polarize(const QuadraticForm& q, const KVector& a, const KVector& b) {
    a.check_same(b);
    if (a.n() != q.n() || a.k() != q.k())
        throw DimensionMismatch("polarize: degree/dimension mismatch");
    Complex ab = (a.coeffs().transpose() * q.matrix() * b.coeffs())(0, 0);
    Complex ba = (b.coeffs().transpose() * q.matrix() * a.coeffs())(0, 0);
    return 0.5 * (ab + ba);
}

// Evaluatable even function on unit simple k-vectors.  The value depends only
// on the span of the argument; all variants share this one call signature.
class KlainFunction {
public:
    using Eval = std::function<Complex(const KVector&)>;

    KlainFunction(int n, int k, std::string tag, Eval eval)
        : n_(n), k_(k), tag_(std::move(tag)), eval_(std::move(eval)) {}

    int n() const { return n_; }
    int k() const { return k_; }
    const std::string& tag() const { return tag_; }

    Complex operator()(const KVector& xi) const {
        if (xi.n() != n_ || xi.k() != k_)
            throw DimensionMismatch("KlainFunction: argument degree/dimension mismatch");
        return eval_(xi);
    }

    static KlainFunction constant(int n, int k, Complex c) {
        return KlainFunction(n, k, "const", [c](const KVector&) { return c; });
    }

    static KlainFunction quadratic(QuadraticForm q) {
        int n = q.n(), k = q.k();
        return KlainFunction(n, k, "quad",
                             [q = std::move(q)](const KVector& xi) { return q(xi); });
    }

    // Strichartz highest-weight vector f_{m1,m2} on Gr_2(R^n), built from the
    // frame matrices A(l) with rows X_{2j-1} + i X_{2j}.  A(l) A(l)^t does not
    // depend on the orthonormal frame chosen for the plane, so routing the
    // evaluation through factor_simple is well defined.
    static KlainFunction highest_weight(int n, int m1, int m2) {
        if (m1 < std::abs(m2)) throw Error("highest_weight: need m1 >= |m2|");
        if (n < 3) throw Error("highest_weight: need n >= 3");
        if (m2 != 0 && n < 4) throw Error("highest_weight: m2 != 0 needs n >= 4");
        std::string tag = "hw:" + std::to_string(m1) + "," + std::to_string(m2);
        return KlainFunction(n, 2, tag, [n, m1, m2](const KVector& xi) {
            auto fr = factor_simple(xi);
            const Mat& X = fr.frame.columns();  // n x 2
            auto row = [&X](int r) {  // X_{2r-1} + i X_{2r}, rows 1-based in pairs
                return Eigen::Vector2cd(Complex(X(2 * r, 0), X(2 * r + 1, 0)),
                                        Complex(X(2 * r, 1), X(2 * r + 1, 1)));
            };
            Eigen::Vector2cd a1 = row(0);
            Complex d1 = a1(0) * a1(0) + a1(1) * a1(1);  // det(A(1) A(1)^t)
            int am2 = std::abs(m2);
            Complex value = std::pow(d1, m1 - am2);
            if (am2 > 0) {
                Eigen::Matrix2cd a2;
                a2.row(0) = row(0).transpose();
                a2.row(1) = row(1).transpose();
                Eigen::Matrix2cd g = a2 * a2.transpose();
                Complex d2 = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
                if (m2 < 0) d2 = std::conj(d2);
                value *= std::pow(d2, am2);
            }
            return value;
        });
    }

    // n = 3 spherical family on lines: f(v) = (v_1 - i v_2)^{2p}; even because
    // the exponent is even.
    static KlainFunction spherical(int p) {
        if (p < 0) throw Error("spherical: p >= 0 required");
        return KlainFunction(3, 1, "sph:" + std::to_string(p), [p](const KVector& xi) {
            Complex z = xi[0] - Complex(0, 1) * xi[1];
            return std::pow(z, 2 * p);
        });
    }

    // Pullback through the Hodge star: the returned function on Gr_{n-k}
    // evaluates f on the orthogonal complement.  Evenness of f makes the
    // orientation choice immaterial.
    static KlainFunction hodge_dual(const KlainFunction& f) {
        int n = f.n(), k = n - f.k();
        return KlainFunction(n, k, "dual:" + f.tag(),
                             [f](const KVector& xi) { return f(hodge(xi)); });
    }

private:
    int n_, k_;
    std::string tag_;
    Eval eval_;
};

inline Complex eval_constant(Complex c, const KVector&) { return c; }

inline Complex eval_quadratic(const QuadraticForm& q, const KVector& xi) {
    if (std::abs(xi.norm() - 1.0) > kOnbTol)
        throw Error("eval_quadratic: argument must be a unit k-vector");
    return q(xi);
}

inline Complex eval_highest_weight(int n, int m1, int m2, const KVector& xi) {
    return KlainFunction::highest_weight(n, m1, m2)(xi);
}

inline Complex eval_spherical_hw(int p, const Vec& v) {
    if (v.size() != 3) throw DimensionMismatch("eval_spherical_hw: v must be in R^3");
    if (std::abs(v.norm() - 1.0) > kOnbTol)
        throw Error("eval_spherical_hw: v must be a unit vector");
    return KlainFunction::spherical(p)(KVector::from_vector(v));
}

}  // namespace angval
