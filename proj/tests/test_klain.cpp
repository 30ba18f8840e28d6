#include <catch2/catch_amalgamated.hpp>

#include "angval/klain.hpp"
#include "angval/random.hpp"

using namespace angval;

namespace {

KVector basis2(int n, int i, int j) {
    return KVector::basis(n, 2, MultiIndex::from_indices({i, j}, n));
}

KVector random_simple2(int n, std::uint64_t seed) {
    return pluecker(random_frame(n, 2, seed));
}

}  // namespace

TEST_CASE("constant klain functions") {
    auto f = KlainFunction::constant(4, 2, Complex(2.0, 1.0));
    REQUIRE(f(basis2(4, 0, 1)) == Complex(2.0, 1.0));
    REQUIRE(KlainFunction::constant(4, 2, 0.0)(basis2(4, 0, 2)) == Complex(0.0));
    REQUIRE(KlainFunction::constant(4, 2, 1.0)(random_simple2(4, 3)) == Complex(1.0));
}

TEST_CASE("quadratic form evaluation") {
    SECTION("identity form is 1 on every unit argument") {
        auto q = QuadraticForm::identity(5, 2);
        for (std::uint64_t s = 0; s < 10; ++s)
            REQUIRE(std::abs(q(random_simple2(5, s)) - 1.0) < 1e-12);
    }
    SECTION("rank-one form picks out a coordinate") {
        int n = 4;
        long d = binomial(n, 2);
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
        int i12 = MultiIndex::from_indices({0, 1}, n).rank(n);
        m(i12, i12) = 1.0;
        QuadraticForm q(n, 2, m);
        REQUIRE(q(basis2(n, 0, 1)) == Complex(1.0));
        REQUIRE(q(basis2(n, 0, 2)) == Complex(0.0));

        // squared Pluecker coordinate p_12 on span((e1+e3)/sqrt2, e2) is 1/2
        Mat f(n, 2);
        f.setZero();
        f(0, 0) = 1.0 / std::sqrt(2.0);
        f(2, 0) = 1.0 / std::sqrt(2.0);
        f(1, 1) = 1.0;
        REQUIRE(std::abs(q(pluecker(Frame(f))) - 0.5) < 1e-12);
    }
    SECTION("asymmetric input is symmetrized and flagged") {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
        m(0, 1) = 1.0;
        QuadraticForm q(3, 1, m);
        REQUIRE(q.was_symmetrized());
        REQUIRE(std::abs(q.matrix()(0, 1) - Complex(0.5)) < 1e-15);
        REQUIRE(std::abs(q.matrix()(1, 0) - Complex(0.5)) < 1e-15);
        REQUIRE_FALSE(QuadraticForm::identity(3, 1).was_symmetrized());
    }
    SECTION("wrong size is rejected") {
        REQUIRE_THROWS_AS(QuadraticForm(4, 2, Eigen::MatrixXcd::Identity(5, 5)),
                          DimensionMismatch);
    }
}

TEST_CASE("polarization") {
    auto I = QuadraticForm::identity(4, 2);
    REQUIRE(polarize(I, basis2(4, 0, 1), basis2(4, 0, 2)) == Complex(0.0));

    Rng rng(9);
    long d = binomial(4, 2);
    Eigen::MatrixXcd m(d, d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
    QuadraticForm q(4, 2, m);
    for (int trial = 0; trial < 10; ++trial) {
        KVector a(4, 2), b(4, 2);
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            a[i] = Complex(rng.normal(), rng.normal());
            b[i] = Complex(rng.normal(), rng.normal());
        }
        // polarize(Q, a, a) = Q(a)
        REQUIRE(std::abs(polarize(q, a, a) - q(a)) < 1e-12);
        REQUIRE(std::abs(polarize(I, a, a) -
                         (a.coeffs().transpose() * a.coeffs())(0, 0)) < 1e-12);
        // bilinearity: Q(a+b) = Q(a) + 2 polarize(a,b) + Q(b)
        Complex lhs = q(a + b);
        Complex rhs = q(a) + 2.0 * polarize(q, a, b) + q(b);
        REQUIRE(std::abs(lhs - rhs) < 1e-11);
    }
}

TEST_CASE("highest weight vectors") {
    SECTION("frozen values on basis planes") {
        auto f10 = KlainFunction::highest_weight(4, 1, 0);
        REQUIRE(std::abs(f10(basis2(4, 0, 1))) < 1e-12);          // 1 + i^2 = 0
        REQUIRE(std::abs(f10(basis2(4, 0, 2)) - 1.0) < 1e-12);    // row (1, 0)
        auto f00 = KlainFunction::highest_weight(4, 0, 0);
        REQUIRE(std::abs(f00(random_simple2(4, 17)) - 1.0) < 1e-12);
    }
    SECTION("weight preconditions") {
        REQUIRE_THROWS_AS(KlainFunction::highest_weight(4, 1, 2), Error);
        REQUIRE_THROWS_AS(KlainFunction::highest_weight(3, 1, 1), Error);
    }
    SECTION("frame independence") {
        for (auto [m1, m2] : {std::pair{1, 0}, {1, 1}, {2, 0}, {2, -1}, {3, 3}}) {
            auto f = KlainFunction::highest_weight(5, m1, m2);
            for (std::uint64_t s = 0; s < 20; ++s) {
                Frame fr = random_frame(5, 2, 1000 + s);
                Complex base = f(pluecker(fr));
                Rng rng(s);
                for (int rf = 0; rf < 5; ++rf) {
                    double th = rng.uniform() * 6.28318;
                    Mat r(2, 2);
                    // full O(2): alternate rotations and reflections
                    if (rf % 2 == 0)
                        r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
                    else
                        r << std::cos(th), std::sin(th), std::sin(th), -std::cos(th);
                    KVector xi = pluecker(Frame(Mat(fr.columns() * r)));
                    REQUIRE(std::abs(f(xi) - base) < 1e-9);
                }
            }
        }
    }
    SECTION("evenness") {
        auto f = KlainFunction::highest_weight(4, 2, 1);
        for (std::uint64_t s = 0; s < 50; ++s) {
            KVector xi = random_simple2(4, 300 + s);
            REQUIRE(std::abs(f(xi) - f(-xi)) < 1e-12);
        }
    }
}

TEST_CASE("spherical highest weight family (n = 3)") {
    auto v = [](double x, double y, double z) {
        Vec u(3);
        u << x, y, z;
        return u;
    };
    REQUIRE(eval_spherical_hw(0, v(0, 0, 1)) == Complex(1.0));
    REQUIRE(eval_spherical_hw(1, v(0, 0, 1)) == Complex(0.0));
    REQUIRE(eval_spherical_hw(1, v(1, 0, 0)) == Complex(1.0));
    // evenness
    auto f = KlainFunction::spherical(2);
    for (std::uint64_t s = 0; s < 20; ++s) {
        Rng rng(s);
        Vec u = random_unit_vector(3, rng);
        KVector xi = KVector::from_vector(u);
        REQUIRE(std::abs(f(xi) - f(-xi)) < 1e-12);
    }
}

TEST_CASE("hodge dual pullback evaluates on the complement") {
    int n = 5;
    auto f = KlainFunction::highest_weight(n, 1, 0);
    auto g = KlainFunction::hodge_dual(f);
    REQUIRE(g.k() == 3);
    for (std::uint64_t s = 0; s < 10; ++s) {
        Frame b = random_onb(n, 40 + s);
        Frame e2(Mat(b.columns().leftCols(2)));
        Frame e3(Mat(b.columns().rightCols(3)));
        // g on the complement equals f on the plane (evenness kills the sign)
        Complex via_dual = g(pluecker(e3));
        Complex direct = f(pluecker(e2));
        REQUIRE(std::abs(via_dual - direct) < 1e-9);
    }
}
