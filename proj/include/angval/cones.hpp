#pragma once

#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "angval/polytope.hpp"
#include "angval/random.hpp"

namespace angval {

// Normal-cone membership tolerance.
inline constexpr double kConeTol = 1e-9;

// Handle on the normal cone N_F P: the polar of the tangent cone at F.
// Membership is decided by the polar-cone predicate over all vertices.
struct NormalConeHandle {
    const Polytope* polytope = nullptr;
    Face face;
    std::vector<Vec> facet_normals;  // ambient normals of incident facets
    Frame complement_frame;          // ambient orthonormal basis of span(face)^perp

    NormalConeHandle() : complement_frame(0, 0) {}

    bool contains(const Vec& u) const {
        double tol = kConeTol * polytope->scale() * std::max(1.0, u.norm());
        for (int v = 0; v < polytope->vertex_count(); ++v)
            if (u.dot(polytope->vertex(v) - face.base_point) > tol) return false;
        return true;
    }
};

namespace detail {

inline void validate_face(const Polytope& p, const Face& f) {
    for (int id : f.vertex_ids)
        if (id < 0 || id >= p.vertex_count())
            throw FaceNotOfPolytope("face references vertex " + std::to_string(id));
    for (int fi : f.incident_facets) {
        if (fi < 0 || fi >= static_cast<int>(p.intrinsic_facets().size()))
            throw FaceNotOfPolytope("face references facet " + std::to_string(fi));
        const auto& ids = p.intrinsic_facets()[fi].vertex_ids;
        if (!std::includes(ids.begin(), ids.end(), f.vertex_ids.begin(), f.vertex_ids.end()))
            throw FaceNotOfPolytope("listed facet does not contain the face");
    }
    if (p.affine_dim_of(f.vertex_ids) != f.dim)
        throw FaceNotOfPolytope("face dimension does not match its vertex set");
}

// Orthonormal basis of the orthogonal complement of the given orthonormal
// columns inside R^rows.
inline Mat orthogonal_complement(const Mat& columns, int rows) {
    if (columns.cols() == 0) return Mat::Identity(rows, rows);
    Eigen::JacobiSVD<Mat> svd(columns, Eigen::ComputeFullU);
    return svd.matrixU().rightCols(rows - columns.cols());
}

}  // namespace detail

inline NormalConeHandle normal_cone(const Polytope& p, const Face& f) {
    detail::validate_face(p, f);
    NormalConeHandle h;
    h.polytope = &p;
    h.face = f;
    for (int fi : f.incident_facets) h.facet_normals.push_back(p.intrinsic_facets()[fi].normal);
    h.complement_frame =
        Frame(detail::orthogonal_complement(f.direction_frame, p.ambient_dim()));
    return h;
}

struct AngleEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long samples = 0;
    bool exact = true;
    std::string method = "exact";
};

namespace detail {

// Monte Carlo hit fraction of the normal cone on the unit sphere of the
// subspace spanned by `basis` (columns orthonormal).  Vertices and base point
// share the coordinate system of `basis`.  Worker streams are derived from
// (seed, worker); the hit total is an integer sum, so the estimate is
// reproducible for a fixed worker count.
inline AngleEstimate mc_cone_fraction(const Mat& pts, const Vec& base, const Mat& basis,
                                      double tol, const MonteCarloConfig& mc) {
    const int c = static_cast<int>(basis.cols());
    const long N = std::max<long>(1, mc.samples);
    const int W = std::max(1, mc.workers);
    Mat rel = pts.colwise() - base;
    Mat proj = basis.transpose() * rel;  // c x V; membership only sees this block

    std::vector<long> hits(W, 0);
    auto run = [&](int w) {
        long count = N / W + (w < static_cast<int>(N % W) ? 1 : 0);
        Rng rng(derive_stream(mc.seed, static_cast<std::uint64_t>(w)));
        long h = 0;
        for (long s = 0; s < count; ++s) {
            Vec u = random_unit_vector(c, rng);
            bool in = true;
            for (Eigen::Index v = 0; v < proj.cols() && in; ++v)
                if (u.dot(proj.col(v)) > tol) in = false;
            if (in) ++h;
        }
        hits[w] = h;
    };
    if (W == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(W);
        for (int w = 0; w < W; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    long total = 0;
    for (long h : hits) total += h;
    double p = static_cast<double>(total) / static_cast<double>(N);
    AngleEstimate e;
    e.value = p;
    e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(N));
    e.samples = N;
    e.exact = false;
    e.method = "monte-carlo";
    return e;
}

inline Mat face_local_frame(const Polytope& p, const Face& f) {
    return p.hull_frame().transpose() * f.direction_frame;  // dim x k, orthonormal
}

}  // namespace detail

// External angle gamma(F, P) computed inside the affine hull of P (the angle
// is the same in any ambient space).  Exact branches: the polytope itself,
// facets, codimension-2 faces (arccos of the facet-normal angle), and cones
// generated by pairwise-orthogonal facet normals (orthants).  Everything else
// falls back to Monte Carlo over the unit sphere of the face complement.
inline AngleEstimate external_angle(const Polytope& p, const Face& f,
                                    const MonteCarloConfig& mc = {}) {
    detail::validate_face(p, f);
    const int c = p.dim() - f.dim;
    AngleEstimate e;
    if (c == 0) {
        e.value = 1.0;
        return e;
    }
    if (c == 1) {
        e.value = 0.5;
        return e;
    }
    if (c == 2) {
        if (f.incident_facets.size() != 2)
            throw Error("external_angle: codim-2 face without exactly 2 incident facets");
        const Vec& u1 = p.intrinsic_facets()[f.incident_facets[0]].normal_local;
        const Vec& u2 = p.intrinsic_facets()[f.incident_facets[1]].normal_local;
        double cth = std::clamp(u1.dot(u2), -1.0, 1.0);
        e.value = std::acos(cth) / (2.0 * std::numbers::pi);
        e.method = "exact-arccos";
        return e;
    }
    if (static_cast<int>(f.incident_facets.size()) == c) {
        bool orthogonal = true;
        for (size_t i = 0; i < f.incident_facets.size() && orthogonal; ++i)
            for (size_t j = i + 1; j < f.incident_facets.size() && orthogonal; ++j) {
                const Vec& ui = p.intrinsic_facets()[f.incident_facets[i]].normal_local;
                const Vec& uj = p.intrinsic_facets()[f.incident_facets[j]].normal_local;
                if (std::abs(ui.dot(uj)) > kOnbTol) orthogonal = false;
            }
        if (orthogonal) {
            e.value = std::ldexp(1.0, -c);
            e.method = "exact-orthant";
            return e;
        }
    }

    Mat local_dir = detail::face_local_frame(p, f);
    Mat comp = detail::orthogonal_complement(local_dir, p.dim());
    Vec base_local = p.hull_frame().transpose() * (f.base_point - p.hull_base());
    return detail::mc_cone_fraction(p.local_vertices(), base_local, comp,
                                    kConeTol * p.scale(), mc);
}

// Monte Carlo estimate with the exact branches disabled; intrinsic to the hull.
inline AngleEstimate external_angle_mc(const Polytope& p, const Face& f,
                                       const MonteCarloConfig& mc = {}) {
    detail::validate_face(p, f);
    if (p.dim() == f.dim) {
        AngleEstimate e;
        e.value = 1.0;
        return e;
    }
    Mat local_dir = detail::face_local_frame(p, f);
    Mat comp = detail::orthogonal_complement(local_dir, p.dim());
    Vec base_local = p.hull_frame().transpose() * (f.base_point - p.hull_base());
    return detail::mc_cone_fraction(p.local_vertices(), base_local, comp,
                                    kConeTol * p.scale(), mc);
}

// Monte Carlo estimate over the full ambient complement of the face span,
// with the lineality directions of the tangent cone quotiented out only
// through the membership predicate.
inline AngleEstimate external_angle_ambient_mc(const Polytope& p, const Face& f,
                                               const MonteCarloConfig& mc = {}) {
    detail::validate_face(p, f);
    if (f.dim == p.ambient_dim()) {
        AngleEstimate e;
        e.value = 1.0;
        return e;
    }
    Mat comp = detail::orthogonal_complement(f.direction_frame, p.ambient_dim());
    return detail::mc_cone_fraction(p.vertices(), f.base_point, comp,
                                    kConeTol * p.scale(), mc);
}

// The external angle computed intrinsically in the affine hull and via the
// ambient definition; by restriction invariance the two agree.
inline std::pair<AngleEstimate, AngleEstimate> restriction_invariance_check(
    const Polytope& p, const Face& f, const MonteCarloConfig& mc = {}) {
    AngleEstimate intrinsic = external_angle(p, f, mc);
    MonteCarloConfig mc2 = mc;
    mc2.seed = derive_stream(mc.seed, 0x616d6269656e74ULL);
    AngleEstimate ambient = external_angle_ambient_mc(p, f, mc2);
    return {intrinsic, ambient};
}

}  // namespace angval
