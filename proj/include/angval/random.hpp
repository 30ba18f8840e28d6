#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "angval/exterior.hpp"

namespace angval {

// Deterministic RNG: mt19937_64 is fully specified by the standard and the
// uniform/normal mappings below are explicit, so identical seeds reproduce
// identical streams on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 == 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    int sign() { return uniform() < 0.5 ? -1 : 1; }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream for (master seed, stream index); used for per-face and
// per-worker Monte Carlo streams.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x51ed2701a9b4d22bULL));
}

struct MonteCarloConfig {
    long samples = 200000;
    std::uint64_t seed = 0;
    int workers = 1;
};

inline Mat random_gaussian_matrix(int rows, int cols, Rng& rng) {
    Mat a(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) a(i, j) = rng.normal();
    return a;
}

// Haar-distributed orthonormal basis of R^n: Gaussian matrix, QR, signs of
// diag(R) fixed so the distribution is rotation invariant.
inline Frame random_onb(int n, std::uint64_t seed) {
    Rng rng(seed);
    Mat a = random_gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
        if (r(i, i) < 0) q.col(i) *= -1.0;
    return Frame(std::move(q));
}

// First k columns of a Haar basis: a uniformly random orthonormal k-frame.
inline Frame random_frame(int n, int k, std::uint64_t seed) {
    Frame b = random_onb(n, seed);
    return Frame(Mat(b.columns().leftCols(k)));
}

// Uniform unit vector in R^m.
inline Vec random_unit_vector(int m, Rng& rng) {
    while (true) {
        Vec v(m);
        for (int i = 0; i < m; ++i) v[i] = rng.normal();
        double nn = v.norm();
        if (nn > 1e-12) return v / nn;
    }
}

}  // namespace angval
