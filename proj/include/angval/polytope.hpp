#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "angval/exterior.hpp"

namespace angval {

// Hyperplane one-sidedness tolerance, scaled by the coordinate size.
inline constexpr double kHyperplaneTol = 1e-9;

struct Facet {
    Vec normal;              // outward unit normal, ambient coordinates
    double offset;           // <normal, x> == offset on the facet
    Vec normal_local;        // same normal in affine-hull coordinates
    double offset_local;
    std::vector<int> vertex_ids;
};

struct Face {
    std::vector<int> vertex_ids;
    int dim = 0;
    Vec base_point;          // relative-interior point (vertex centroid), ambient
    Mat direction_frame;     // orthonormal basis of the face span, ambient, n x dim
    std::vector<int> incident_facets;
};

namespace detail {

inline int affine_rank(const Mat& pts, double tol) {
    if (pts.cols() <= 1) return 0;
    Vec c = pts.rowwise().mean();
    Mat d = pts.colwise() - c;
    Eigen::JacobiSVD<Mat> svd(d);
    int r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++r;
    return r;
}

}  // namespace detail

// Convex polytope given by its vertices (matrix columns).  The affine hull,
// facet list, and coordinate scale are computed once at construction; the
// object is immutable afterwards and safe to share across threads.
//
// Facet enumeration is brute force over dim-subsets of vertices (hyperplane
// fit plus a one-sidedness test).  That is O(V^dim) and intended for desk
// scale; a guard rail rejects inputs where the subset count explodes.
class Polytope {
public:
    explicit Polytope(Mat vertices) {
        if (vertices.cols() == 0) throw Error("Polytope: no vertices");
        dedupe(vertices);
        n_ = static_cast<int>(verts_.rows());
        scale_ = std::max(1.0, verts_.cwiseAbs().maxCoeff());
        compute_hull();
        compute_facets();
    }

    int ambient_dim() const { return n_; }
    int dim() const { return dim_; }
    int vertex_count() const { return static_cast<int>(verts_.cols()); }
    const Mat& vertices() const { return verts_; }
    Vec vertex(int i) const { return verts_.col(i); }
    double scale() const { return scale_; }

    const Vec& hull_base() const { return hull_base_; }
    const Mat& hull_frame() const { return hull_frame_; }
    const Mat& local_vertices() const { return local_; }

    // Facets of a full-dimensional polytope.
    const std::vector<Facet>& facets() const {
        if (dim_ != n_)
            throw NotFullDimensional("facets: polytope has dimension " +
                                     std::to_string(dim_) + " < " + std::to_string(n_));
        return facets_;
    }

    // Facets computed inside the affine hull; defined for every dimension.
    const std::vector<Facet>& intrinsic_facets() const { return facets_; }

    // All k-dimensional faces, each as a maximal vertex set lying on a common
    // facet collection.  Walks the face lattice top-down: every face of
    // dimension j-1 arises as the intersection of a j-face with a facet.
    std::vector<Face> faces(int k) const {
        if (k < 0 || k > dim_)
            throw Error("faces: k out of range [0, dim]");
        std::vector<int> all_ids(vertex_count());
        for (int i = 0; i < vertex_count(); ++i) all_ids[i] = i;

        std::set<std::vector<int>> level = {all_ids};
        for (int d = dim_; d > k; --d) {
            std::set<std::vector<int>> next;
            for (const auto& g : level) {
                for (const auto& facet : facets_) {
                    std::vector<int> w;
                    std::set_intersection(g.begin(), g.end(), facet.vertex_ids.begin(),
                                          facet.vertex_ids.end(), std::back_inserter(w));
                    if (w.empty() || w.size() == g.size()) continue;
                    if (affine_dim_of(w) == d - 1) next.insert(std::move(w));
                }
            }
            level = std::move(next);
        }

        std::vector<Face> out;
        out.reserve(level.size());
        for (const auto& ids : level) out.push_back(make_face(ids, k));
        return out;
    }

    Face whole_as_face() const {
        std::vector<int> ids(vertex_count());
        for (int i = 0; i < vertex_count(); ++i) ids[i] = i;
        return make_face(ids, dim_);
    }

    // Vertex ids that are not extreme points: the normals of their incident
    // facets fail to span the hull.  Useful for validating external input.
    std::vector<int> non_extreme_vertices() const {
        std::vector<int> bad;
        for (int v = 0; v < vertex_count(); ++v) {
            Mat normals(dim_, 0);
            for (const auto& f : facets_)
                if (std::binary_search(f.vertex_ids.begin(), f.vertex_ids.end(), v)) {
                    normals.conservativeResize(Eigen::NoChange, normals.cols() + 1);
                    normals.col(normals.cols() - 1) = f.normal_local;
                }
            int rank = 0;
            if (normals.cols() > 0) {
                Eigen::JacobiSVD<Mat> svd(normals);
                for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
                    if (svd.singularValues()(i) > kHyperplaneTol * scale_) ++rank;
            }
            if (dim_ > 0 && rank < dim_) bad.push_back(v);
        }
        return bad;
    }

    int affine_dim_of(const std::vector<int>& ids) const {
        Mat pts(dim_, ids.size());
        for (size_t i = 0; i < ids.size(); ++i) pts.col(i) = local_.col(ids[i]);
        return detail::affine_rank(pts, kHyperplaneTol * scale_);
    }

private:
    void dedupe(const Mat& vertices) {
        double s = std::max(1.0, vertices.cwiseAbs().maxCoeff());
        std::vector<int> keep;
        for (int i = 0; i < vertices.cols(); ++i) {
            bool dup = false;
            for (int j : keep)
                if ((vertices.col(i) - vertices.col(j)).norm() <= 1e-12 * s) {
                    dup = true;
                    break;
                }
            if (!dup) keep.push_back(i);
        }
        verts_.resize(vertices.rows(), keep.size());
        for (size_t i = 0; i < keep.size(); ++i) verts_.col(i) = vertices.col(keep[i]);
    }

    void compute_hull() {
        Vec c = verts_.rowwise().mean();
        Mat d = verts_.colwise() - c;
        Eigen::JacobiSVD<Mat> svd(d, Eigen::ComputeFullU);
        dim_ = 0;
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > kHyperplaneTol * scale_) ++dim_;
        hull_base_ = c;
        hull_frame_ = svd.matrixU().leftCols(dim_);
        local_ = hull_frame_.transpose() * d;
    }

    void compute_facets() {
        const int d = dim_;
        const int V = vertex_count();
        facets_.clear();
        if (d == 0) return;
        if (binomial(V, d) > 5'000'000)
            throw Error("facet enumeration: C(" + std::to_string(V) + "," +
                        std::to_string(d) + ") subsets exceed the desk-scale guard");

        const double tol = kHyperplaneTol * scale_;
        std::set<std::vector<int>> seen;
        std::vector<int> subset(d);
        for (int i = 0; i < d; ++i) subset[i] = i;
        while (true) {
            try_subset(subset, tol, seen);
            int i = d - 1;
            while (i >= 0 && subset[i] == V - d + i) --i;
            if (i < 0) break;
            ++subset[i];
            for (int j = i + 1; j < d; ++j) subset[j] = subset[j - 1] + 1;
        }
    }

    void try_subset(const std::vector<int>& subset, double tol,
                    std::set<std::vector<int>>& seen) {
        const int d = dim_;
        Vec normal;
        if (d == 1) {
            normal = Vec::Ones(1);
        } else {
            Mat edges(d, d - 1);
            for (int i = 1; i < d; ++i)
                edges.col(i - 1) = local_.col(subset[i]) - local_.col(subset[0]);
            Eigen::JacobiSVD<Mat> svd(edges, Eigen::ComputeFullU);
            if (svd.singularValues()(d - 2) <= tol) return;  // affinely dependent
            normal = svd.matrixU().col(d - 1);
        }
        double offset = normal.dot(local_.col(subset[0]));

        double lo = 0.0, hi = 0.0;
        Vec side = normal.transpose() * local_;
        side.array() -= offset;
        lo = side.minCoeff();
        hi = side.maxCoeff();
        bool below = hi <= tol, above = lo >= -tol;
        if (!below && !above) return;  // not supporting
        if (above) {
            normal = -normal;
            offset = -offset;
            side = -side;
        }

        std::vector<int> incident;
        for (int v = 0; v < vertex_count(); ++v)
            if (std::abs(side(v)) <= tol) incident.push_back(v);
        if (static_cast<int>(incident.size()) < d) return;
        if (!seen.insert(incident).second) return;

        Facet f;
        f.normal_local = normal;
        f.offset_local = offset;
        f.normal = hull_frame_ * normal;
        f.offset = offset + f.normal.dot(hull_base_);
        f.vertex_ids = std::move(incident);
        facets_.push_back(std::move(f));
    }

    Face make_face(const std::vector<int>& ids, int k) const {
        Face f;
        f.vertex_ids = ids;
        f.dim = k;
        Mat pts(n_, ids.size());
        for (size_t i = 0; i < ids.size(); ++i) pts.col(i) = verts_.col(ids[i]);
        f.base_point = pts.rowwise().mean();
        Mat d = pts.colwise() - f.base_point;
        Eigen::JacobiSVD<Mat> svd(d, Eigen::ComputeFullU);
        f.direction_frame = svd.matrixU().leftCols(k);
        for (size_t fi = 0; fi < facets_.size(); ++fi) {
            const auto& fids = facets_[fi].vertex_ids;
            if (std::includes(fids.begin(), fids.end(), ids.begin(), ids.end()))
                f.incident_facets.push_back(static_cast<int>(fi));
        }
        return f;
    }

    int n_ = 0;
    int dim_ = 0;
    Mat verts_;
    double scale_ = 1.0;
    Vec hull_base_;
    Mat hull_frame_;
    Mat local_;
    std::vector<Facet> facets_;
};

namespace detail {

// Fan triangulation: cone the first point over the triangulated facets that
// do not contain it.  Input points may span any affine dimension; returned
// index lists refer to input columns and have (affine dim + 1) entries each.
inline std::vector<std::vector<int>> triangulate(const Mat& pts) {
    Polytope p(pts);
    const int d = p.dim();
    const int m = p.vertex_count();
    if (d == 0) return {{0}};
    if (d == 1) {
        int imin = 0, imax = 0;
        for (int i = 1; i < m; ++i) {
            if (p.local_vertices()(0, i) < p.local_vertices()(0, imin)) imin = i;
            if (p.local_vertices()(0, i) > p.local_vertices()(0, imax)) imax = i;
        }
        return {{imin, imax}};
    }
    if (m == d + 1) {
        std::vector<int> all(m);
        for (int i = 0; i < m; ++i) all[i] = i;
        return {all};
    }
    std::vector<std::vector<int>> out;
    for (const auto& facet : p.intrinsic_facets()) {
        if (std::binary_search(facet.vertex_ids.begin(), facet.vertex_ids.end(), 0))
            continue;
        Mat sub(pts.rows(), facet.vertex_ids.size());
        for (size_t i = 0; i < facet.vertex_ids.size(); ++i)
            sub.col(i) = pts.col(facet.vertex_ids[i]);
        for (const auto& s : triangulate(sub)) {
            std::vector<int> simplex = {0};
            for (int i : s) simplex.push_back(facet.vertex_ids[i]);
            out.push_back(std::move(simplex));
        }
    }
    return out;
}

}  // namespace detail

// k-dimensional volume of a face: fan triangulation in face-local
// coordinates, each simplex measured as sqrt(det Gram)/k!.
inline double face_volume(const Polytope& p, const Face& face) {
    const int k = face.dim;
    if (k == 0) return 1.0;
    Mat pts(p.ambient_dim(), face.vertex_ids.size());
    for (size_t i = 0; i < face.vertex_ids.size(); ++i)
        pts.col(i) = p.vertex(face.vertex_ids[i]);
    Mat local = face.direction_frame.transpose() * (pts.colwise() - face.base_point);
    double vol = 0.0;
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    for (const auto& s : detail::triangulate(local)) {
        Mat edges(k, k);
        for (int i = 1; i <= k; ++i)
            edges.col(i - 1) = local.col(s[i]) - local.col(s[0]);
        double g = (edges.transpose() * edges).determinant();
        vol += std::sqrt(std::max(0.0, g)) / kfact;
    }
    return vol;
}

}  // namespace angval
