#pragma once

#include <functional>
#include <string>
#include <vector>

#include "angval/cones.hpp"
#include "angval/klain.hpp"

namespace angval {

// Even function on the flag of (k-plane, orthogonal ray): the pair is passed
// as (orthonormal frame of the plane, unit vector spanning the ray).
struct RayFunction {
    int n = 0;
    int k = 0;
    std::function<Complex(const Frame&, const Vec&)> eval;
};

struct FaceTerm {
    int face_index = 0;
    std::vector<int> vertex_ids;
    double volume = 0.0;
    AngleEstimate angle;
    Complex klain = 0.0;     // f(psi(span F)) for mu_angular; ray average for mu_general
    Complex term = 0.0;
};

struct ValuationResult {
    Complex value = 0.0;
    double std_error = 0.0;
    std::vector<FaceTerm> faces;
};

// The angular valuation of Definition 1.3: sum over k-faces of
// f(span F) * gamma(F, P) * vol_k(F).  Exact angle branches are used whenever
// available; Monte Carlo terms carry per-face seeds derived from mc.seed and
// report an accumulated standard error.
inline ValuationResult mu_angular(const KlainFunction& f, const Polytope& p, int k,
                                  const MonteCarloConfig& mc = {}) {
    if (f.n() != p.ambient_dim())
        throw DimensionMismatch("mu_angular: Klain function ambient dimension mismatch");
    if (f.k() != k) throw DimensionMismatch("mu_angular: Klain function degree mismatch");
    if (k < 0 || k > p.dim()) throw Error("mu_angular: need 0 <= k <= dim P");

    ValuationResult out;
    double var = 0.0;
    auto faces = p.faces(k);
    for (size_t i = 0; i < faces.size(); ++i) {
        const Face& face = faces[i];
        double vol = face_volume(p, face);
        if (vol <= 1e-14 * std::pow(p.scale(), k)) continue;  // degenerate face
        MonteCarloConfig face_mc = mc;
        face_mc.seed = derive_stream(mc.seed, i);
        AngleEstimate angle = external_angle(p, face, face_mc);
        Complex klain = f(pluecker(Frame(face.direction_frame)));
        FaceTerm t;
        t.face_index = static_cast<int>(i);
        t.vertex_ids = face.vertex_ids;
        t.volume = vol;
        t.angle = angle;
        t.klain = klain;
        t.term = klain * angle.value * vol;
        out.value += t.term;
        var += std::norm(klain) * vol * vol * angle.std_error * angle.std_error;
        out.faces.push_back(std::move(t));
    }
    out.std_error = std::sqrt(var);
    return out;
}

// The general construction: sum over k-faces of vol_k(F) times the integral
// of h over the rays of the normal cone, against the rotation-invariant
// probability measure on all rays of the face complement.  Estimated by
// uniform sampling; h must be even in the ray argument.
inline ValuationResult mu_general(const RayFunction& h, const Polytope& p, int k,
                                  const MonteCarloConfig& mc = {}) {
    if (h.n != p.ambient_dim())
        throw DimensionMismatch("mu_general: ray function ambient dimension mismatch");
    if (k < 0 || k > p.dim()) throw Error("mu_general: need 0 <= k <= dim P");
    if (k == p.ambient_dim())
        throw Error("mu_general: the top-degree face has no normal rays; use mu_angular");

    ValuationResult out;
    double var = 0.0;
    auto faces = p.faces(k);
    const long N = std::max<long>(1, mc.samples);
    for (size_t i = 0; i < faces.size(); ++i) {
        const Face& face = faces[i];
        double vol = face_volume(p, face);
        if (vol <= 1e-14 * std::pow(p.scale(), k)) continue;
        Frame dir(face.direction_frame);
        Mat comp = detail::orthogonal_complement(face.direction_frame, p.ambient_dim());
        NormalConeHandle cone = normal_cone(p, face);
        Rng rng(derive_stream(mc.seed, i));

        for (int probe = 0; probe < 3; ++probe) {
            Vec u = comp * random_unit_vector(static_cast<int>(comp.cols()), rng);
            Complex plus = h.eval(dir, u), minus = h.eval(dir, -u);
            if (std::abs(plus - minus) > 1e-8 * (1.0 + std::abs(plus)))
                throw Error("mu_general: ray function is not even in the ray argument");
        }

        Complex acc = 0.0;
        double acc_sq = 0.0;
        for (long s = 0; s < N; ++s) {
            Vec u = comp * random_unit_vector(static_cast<int>(comp.cols()), rng);
            if (!cone.contains(u)) continue;
            Complex val = h.eval(dir, u);
            acc += val;
            acc_sq += std::norm(val);
        }
        Complex mean = acc / static_cast<double>(N);
        double second = acc_sq / static_cast<double>(N);
        double sample_var = std::max(0.0, second - std::norm(mean));

        FaceTerm t;
        t.face_index = static_cast<int>(i);
        t.vertex_ids = face.vertex_ids;
        t.volume = vol;
        t.angle.value = 0.0;
        t.angle.exact = false;
        t.angle.samples = N;
        t.angle.method = "monte-carlo";
        t.klain = mean;
        t.term = mean * vol;
        out.value += t.term;
        var += vol * vol * sample_var / static_cast<double>(N);
        out.faces.push_back(std::move(t));
    }
    out.std_error = std::sqrt(var);
    return out;
}

// f == 1 specialization: the intrinsic volumes.  The imaginary part must
// vanish; it is asserted as a sanity check.
inline ValuationResult intrinsic_volume(const Polytope& p, int k,
                                        const MonteCarloConfig& mc = {}) {
    ValuationResult r = mu_angular(KlainFunction::constant(p.ambient_dim(), k, 1.0), p, k, mc);
    if (std::abs(r.value.imag()) > 1e-12)
        throw Error("intrinsic_volume: nonzero imaginary part " +
                    std::to_string(r.value.imag()));
    return r;
}

}  // namespace angval
