#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "angval/multi_index.hpp"

namespace angval {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Frame orthonormality tolerance.  Double precision, dimensions <= 12.
inline constexpr double kOnbTol = 1e-9;
// Relative singular-value cutoff for kernel extraction in factor_simple.
inline constexpr double kKernelTol = 1e-8;

// Element of the k-th exterior power of R^n with complex coefficients,
// stored densely in canonical multi-index order.  The canonical basis is
// declared orthonormal, so norm^2 = sum |coeff|^2.
class KVector {
public:
    KVector(int n, int k)
        : n_(n), k_(k), coeffs_(Eigen::VectorXcd::Zero(binomial(n, k))) {
        if (k < 0 || k > n) throw DimensionMismatch("KVector: need 0 <= k <= n");
    }

    static KVector basis(int n, int k, const MultiIndex& mi) {
        KVector x(n, k);
        if (mi.degree() != k) throw DimensionMismatch("KVector::basis: degree mismatch");
        x.coeffs_[mi.rank(n)] = 1.0;
        return x;
    }

    static KVector from_vector(const Vec& v) {
        KVector x(static_cast<int>(v.size()), 1);
        x.coeffs_ = v.cast<Complex>();
        return x;
    }

    // The unit n-vector fixing the standard orientation of R^n.
    static KVector standard_orientation(int n) {
        KVector x(n, n);
        x.coeffs_[0] = 1.0;
        return x;
    }

    int n() const { return n_; }
    int k() const { return k_; }
    Eigen::Index size() const { return coeffs_.size(); }

    Complex operator[](Eigen::Index i) const { return coeffs_[i]; }
    Complex& operator[](Eigen::Index i) { return coeffs_[i]; }
    const Eigen::VectorXcd& coeffs() const { return coeffs_; }
    Eigen::VectorXcd& coeffs() { return coeffs_; }

    double norm() const { return coeffs_.norm(); }

    KVector operator+(const KVector& o) const {
        check_same(o);
        KVector r = *this;
        r.coeffs_ += o.coeffs_;
        return r;
    }
    KVector operator-(const KVector& o) const {
        check_same(o);
        KVector r = *this;
        r.coeffs_ -= o.coeffs_;
        return r;
    }
    KVector operator*(Complex s) const {
        KVector r = *this;
        r.coeffs_ *= s;
        return r;
    }
    KVector operator-() const { return *this * Complex(-1.0); }

    KVector normalized() const {
        double nn = norm();
        if (nn == 0.0) throw Error("KVector::normalized: zero vector");
        return *this * Complex(1.0 / nn);
    }

    void check_same(const KVector& o) const {
        if (n_ != o.n_ || k_ != o.k_)
            throw DimensionMismatch("KVector: ambient dimension or degree mismatch");
    }

private:
    int n_, k_;
    Eigen::VectorXcd coeffs_;
};

inline KVector operator*(Complex s, const KVector& x) { return x * s; }

// Ordered list of real n-vectors, stored as matrix columns.
class Frame {
public:
    Frame(int n, int k) : cols_(Mat::Zero(n, k)) {}
    explicit Frame(Mat cols) : cols_(std::move(cols)) {}

    int n() const { return static_cast<int>(cols_.rows()); }
    int k() const { return static_cast<int>(cols_.cols()); }
    const Mat& columns() const { return cols_; }
    Vec vector(int i) const { return cols_.col(i); }

    double orthonormality_defect() const {
        if (k() == 0) return 0.0;
        Mat g = cols_.transpose() * cols_;
        return (g - Mat::Identity(k(), k())).cwiseAbs().maxCoeff();
    }
    bool is_orthonormal(double tol = kOnbTol) const {
        return orthonormality_defect() <= tol;
    }

private:
    Mat cols_;
};

// Graded-anticommutative bilinear wedge product.
inline KVector wedge(const KVector& a, const KVector& b) {
    if (a.n() != b.n()) throw DimensionMismatch("wedge: ambient dimension mismatch");
    if (a.k() + b.k() > a.n()) throw DimensionMismatch("wedge: degree overflow");
    const int n = a.n();
    KVector out(n, a.k() + b.k());
    const auto ia = MultiIndex::all(n, a.k());
    const auto ib = MultiIndex::all(n, b.k());
    for (size_t p = 0; p < ia.size(); ++p) {
        Complex ca = a[static_cast<Eigen::Index>(p)];
        if (ca == 0.0) continue;
        for (size_t q = 0; q < ib.size(); ++q) {
            Complex cb = b[static_cast<Eigen::Index>(q)];
            if (cb == 0.0) continue;
            std::uint32_t I = ia[p].mask(), J = ib[q].mask();
            if (I & J) continue;
            int s = merge_sign(I, J);
            out[MultiIndex::from_mask(I | J).rank(n)] += static_cast<double>(s) * ca * cb;
        }
    }
    return out;
}

// Sesquilinear pairing <a,b> = sum a_I conj(b_I); on real simple inputs this
// is the Gram determinant det(<v_i, w_j>).
inline Complex inner(const KVector& a, const KVector& b) {
    a.check_same(b);
    return (a.coeffs().array() * b.coeffs().array().conjugate()).sum();
}

// Hodge star with respect to a unit orientation n-vector: xi ^ *eta = <xi, eta> omega.
// Double star is (-1)^{k(n-k)} times the identity.
inline KVector hodge(const KVector& a, const KVector& orientation) {
    const int n = a.n();
    if (orientation.n() != n || orientation.k() != n)
        throw Error("hodge: orientation must be an n-vector");
    Complex oc = orientation[0];
    if (std::abs(std::abs(oc) - 1.0) > 1e-12 || std::abs(oc.imag()) > 1e-12)
        throw Error("hodge: orientation coefficient must be +1 or -1");
    double c = oc.real() > 0 ? 1.0 : -1.0;
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
    KVector out(n, n - a.k());
    const auto basis = MultiIndex::all(n, a.k());
    for (size_t p = 0; p < basis.size(); ++p) {
        Complex ca = a[static_cast<Eigen::Index>(p)];
        if (ca == 0.0) continue;
        std::uint32_t I = basis[p].mask();
        std::uint32_t C = full & ~I;
        int s = merge_sign(I, C);
        out[MultiIndex::from_mask(C).rank(n)] += c * static_cast<double>(s) * ca;
    }
    return out;
}

inline KVector hodge(const KVector& a) {
    return hodge(a, KVector::standard_orientation(a.n()));
}

// Wedge of a list of real vectors; norm equals k! times the volume of the
// simplex conv{0, v_1, ..., v_k}.  Dependent vectors yield zero.
inline KVector simple(const std::vector<Vec>& vectors, int n) {
    KVector acc(n, 0);
    acc[0] = 1.0;
    for (const Vec& v : vectors) {
        if (v.size() != n) throw DimensionMismatch("simple: vector dimension mismatch");
        acc = wedge(acc, KVector::from_vector(v));
    }
    return acc;
}

inline KVector simple(const Mat& columns) {
    std::vector<Vec> vs;
    vs.reserve(columns.cols());
    for (Eigen::Index i = 0; i < columns.cols(); ++i) vs.push_back(columns.col(i));
    return simple(vs, static_cast<int>(columns.rows()));
}

// Pluecker image of an oriented k-plane given by an orthonormal frame.
inline KVector pluecker(const Frame& frame, double tol = kOnbTol) {
    if (!frame.is_orthonormal(tol))
        throw Error("pluecker: frame not orthonormal (defect " +
                    std::to_string(frame.orthonormality_defect()) + ")");
    return simple(frame.columns());
}

struct FactorResult {
    Frame frame;   // orthonormal, pluecker(frame) == sign * x up to tol
    int sign;
};

// Inverse of the Pluecker embedding: recover an orthonormal frame of the
// k-plane from a unit simple k-vector, as the kernel of v -> v ^ x.
// A complex global phase of +-1 is tolerated; anything else is NotSimple.
inline FactorResult factor_simple(const KVector& x, double tol = kKernelTol) {
    const int n = x.n(), k = x.k();
    if (std::abs(x.norm() - 1.0) > 1e-6)
        throw Error("factor_simple: input must have unit norm");
    if (k == 0 || k == n) {
        // scalar / orientation degrees: the span is {0} resp. R^n
        int sign = x[0].real() >= 0 ? 1 : -1;
        return {Frame(Mat(Mat::Identity(n, n).leftCols(k))), sign};
    }

    const auto rows = MultiIndex::all(n, k + 1);
    const auto cols_basis = MultiIndex::all(n, k);
    const Eigen::Index R = static_cast<Eigen::Index>(rows.size());
    // Stack real and imaginary parts so the kernel is computed over R.
    Mat M = Mat::Zero(2 * R, n);
    for (size_t p = 0; p < cols_basis.size(); ++p) {
        Complex cx = x[static_cast<Eigen::Index>(p)];
        if (cx == 0.0) continue;
        std::uint32_t I = cols_basis[p].mask();
        for (int j = 0; j < n; ++j) {
            if (I & (1u << j)) continue;
            int s = merge_sign(1u << j, I);
            Eigen::Index r = MultiIndex::from_mask(I | (1u << j)).rank(n);
            M(r, j) += s * cx.real();
            M(R + r, j) += s * cx.imag();
        }
    }

    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
    // Pad to n singular values: for a wide map the missing ones are zero.
    Vec sv = Vec::Zero(n);
    sv.head(svd.singularValues().size()) = svd.singularValues();
    double smax = sv(0);
    if (smax == 0.0) throw NotSimple("factor_simple: zero map", 1.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * smax) ++rank;
    if (n - rank != k) {
        double resid = sv(n - k) / smax;  // k-th smallest singular value
        throw NotSimple("factor_simple: kernel dimension " + std::to_string(n - rank) +
                            " != " + std::to_string(k) + " (relative residual " +
                            std::to_string(resid) + ")",
                        resid);
    }

    Frame frame(Mat(svd.matrixV().rightCols(k)));
    KVector psi = pluecker(frame);
    Complex d = inner(psi, x);
    int sign = d.real() >= 0 ? 1 : -1;
    double mismatch = (psi - x * Complex(sign)).norm();
    if (mismatch > 1e-6)
        throw NotSimple("factor_simple: Pluecker image differs from +-x by " +
                            std::to_string(mismatch),
                        mismatch);
    return {std::move(frame), sign};
}

}  // namespace angval
