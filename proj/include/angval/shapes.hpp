#pragma once

#include <string>
#include <vector>

#include "angval/polytope.hpp"

namespace angval {
namespace shapes {

// Unit cube [0,1]^n.
inline Polytope cube(int n) {
    if (n < 1) throw Error("cube: n >= 1 required");
    long V = 1L << n;
    Mat verts(n, V);
    for (long m = 0; m < V; ++m)
        for (int i = 0; i < n; ++i) verts(i, m) = (m >> i) & 1 ? 1.0 : 0.0;
    return Polytope(verts);
}

// Box with the given side lengths (product of segments).
inline Polytope box(const std::vector<double>& lengths) {
    int n = static_cast<int>(lengths.size());
    if (n < 1) throw Error("box: need at least one side length");
    for (double l : lengths)
        if (l <= 0) throw Error("box: side lengths must be positive");
    long V = 1L << n;
    Mat verts(n, V);
    for (long m = 0; m < V; ++m)
        for (int i = 0; i < n; ++i) verts(i, m) = (m >> i) & 1 ? lengths[i] : 0.0;
    return Polytope(verts);
}

// Standard simplex conv{0, e_1, ..., e_n}.
inline Polytope simplex(int n) {
    if (n < 1) throw Error("simplex: n >= 1 required");
    Mat verts = Mat::Zero(n, n + 1);
    verts.rightCols(n) = Mat::Identity(n, n);
    return Polytope(verts);
}

// Regular simplex conv{e_1, ..., e_n}; (n-1)-dimensional inside R^n.
inline Polytope regular_simplex(int n) {
    if (n < 2) throw Error("regular_simplex: n >= 2 required");
    return Polytope(Mat::Identity(n, n));
}

// Cross-polytope conv{+-e_1, ..., +-e_n}.
inline Polytope cross_polytope(int n) {
    if (n < 1) throw Error("cross_polytope: n >= 1 required");
    Mat verts(n, 2 * n);
    verts << Mat::Identity(n, n), -Mat::Identity(n, n);
    return Polytope(verts);
}

// Segment [0, length * e_1] in R^n.
inline Polytope segment(double length, int n = 1) {
    if (length <= 0 || n < 1) throw Error("segment: positive length and n >= 1 required");
    Mat verts = Mat::Zero(n, 2);
    verts(0, 1) = length;
    return Polytope(verts);
}

// The simplex family S(v_1, ..., v_n; t) with vertices {0, v_1, ..., v_{n-1},
// t v_n}; facet i omits vertex p_i.
inline Polytope simplex_s(const Frame& basis, double t) {
    if (t <= 0) throw Error("simplex_s: t > 0 required");
    if (!basis.is_orthonormal() || basis.n() != basis.k())
        throw Error("simplex_s: basis must be a full orthonormal frame");
    const int n = basis.n();
    Mat verts = Mat::Zero(n, n + 1);
    for (int i = 1; i < n; ++i) verts.col(i) = basis.vector(i - 1);
    verts.col(n) = t * basis.vector(n - 1);
    return Polytope(verts);
}

inline Polytope simplex_s(int n, double t) {
    return simplex_s(Frame(Mat::Identity(n, n)), t);
}

}  // namespace shapes
}  // namespace angval
