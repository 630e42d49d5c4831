#include <doctest.h>

#include "lightcone/lorentz.hpp"
#include "support.hpp"

using namespace lightcone;
using lightcone::testing::lorentz;
using lightcone::testing::random_vector;
using lightcone::testing::uniform;

TEST_CASE("inner on basis vectors") {
    const int dim = 5;
    CHECK(inner(MinkVec::basis(dim, 0), MinkVec::basis(dim, 0)) == 1.0);
    CHECK(inner(MinkVec::basis(dim, 4), MinkVec::basis(dim, 4)) == -1.0);
    const MinkVec null{0, 0, 0, 1, 1};
    CHECK(inner(null, null) == 0.0);
    CHECK_THROWS_AS(inner(MinkVec::basis(5, 0), MinkVec::basis(4, 0)), UsageError);
}

TEST_CASE("inner is symmetric, bilinear and matches the longhand sum") {
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 3 + trial % 6;
        const Eigen::VectorXd u = random_vector(dim), v = random_vector(dim), w = random_vector(dim);
        const double a = uniform(-3, 3), b = uniform(-3, 3);
        CHECK(inner(u, v) == doctest::Approx(lorentz(u, v)).epsilon(1e-14));
        CHECK(inner(u, v) == doctest::Approx(inner(v, u)).epsilon(1e-15));
        CHECK(inner(Eigen::VectorXd(a * u + b * w), v) ==
              doctest::Approx(a * inner(u, v) + b * inner(w, v)).epsilon(1e-12));
    }
}

TEST_CASE("causal classification") {
    const int dim = 5;
    CHECK(classify(MinkVec::basis(dim, 0)).tag == Causal::spacelike);
    CHECK(classify(MinkVec{0, 0, 0, 1, 1}).tag == Causal::lightlike);
    CHECK(classify(MinkVec::basis(dim, 4)).tag == Causal::timelike);
    CHECK_THROWS_AS(classify(MinkVec::zero(dim)), DegenerateInputError);

    // scale invariance
    for (int trial = 0; trial < 100; ++trial) {
        const MinkVec v(random_vector(dim));
        const double lambda = trial % 2 ? uniform(1e-3, 1e3) : -uniform(1e-3, 1e3);
        CHECK(classify(lambda * v).tag == classify(v).tag);
    }
    const MinkVec near_null{1e-6, 0, 0, 1, 1};
    CHECK(classify(1e8 * near_null).tag == classify(near_null).tag);
}

TEST_CASE("pseudo_orthonormalize on the reordered standard basis") {
    const int dim = 5;
    const MinkVec p0 = MinkVec::basis(dim, 3) + MinkVec::basis(dim, 4);
    const MinkVec n0 = 0.5 * (MinkVec::basis(dim, 3) - MinkVec::basis(dim, 4));
    const PseudoFrame pf = pseudo_orthonormalize({MinkVec::basis(dim, 0), MinkVec::basis(dim, 1),
                                                  MinkVec::basis(dim, 2), p0, n0});
    CHECK(pf.gram_residual() == 0.0);
    CHECK((pf.gram - ideal_frame_gram(dim)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pseudo_orthonormalize on random inputs") {
    for (int n = 2; n <= 6; ++n) {
        const int dim = n + 2;
        for (int trial = 0; trial < 20; ++trial) {
            // spacelike sphere part plus two lightlike vectors in general position
            std::vector<MinkVec> in;
            for (int i = 0; i < n; ++i) {
                Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
                v.head(n) = random_vector(n);
                v[n] = 0.1 * uniform(-1, 1);
                in.emplace_back(v);
            }
            Eigen::VectorXd a = random_vector(dim, 0.3), b = random_vector(dim, 0.3);
            a[dim - 1] = std::sqrt(a.head(dim - 1).squaredNorm());
            b[dim - 1] = -std::sqrt(b.head(dim - 1).squaredNorm());
            in.emplace_back(a);
            in.emplace_back(b);
            const PseudoFrame pf = pseudo_orthonormalize(in);
            CHECK(pf.gram_residual() < 1e-12);

            // the sphere part spans the same subspace as the spacelike inputs
            Eigen::MatrixXd inputs(dim, n - 1), cols = pf.columns.leftCols(n - 1);
            for (int i = 0; i < n - 1; ++i) inputs.col(i) = in[i].coords();
            const Eigen::MatrixXd proj = inputs * inputs.completeOrthogonalDecomposition().pseudoInverse();
            CHECK((proj * cols - cols).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("pseudo_orthonormalize rejects rank-deficient input") {
    const int dim = 5;
    const MinkVec e0 = MinkVec::basis(dim, 0);
    const MinkVec p0 = MinkVec::basis(dim, 3) + MinkVec::basis(dim, 4);
    const MinkVec n0 = 0.5 * (MinkVec::basis(dim, 3) - MinkVec::basis(dim, 4));
    CHECK_THROWS_AS(pseudo_orthonormalize({e0, 2.0 * e0, MinkVec::basis(dim, 2), p0, n0}), DegenerateInputError);
    CHECK_THROWS_AS(pseudo_orthonormalize({e0, MinkVec::basis(dim, 1), p0, p0}), DegenerateInputError);
}

TEST_CASE("dual_null completes a null pair") {
    const int dim = 5;
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd x = random_vector(3);
        Eigen::VectorXd f(dim);
        f << x, 1.0 - x.squaredNorm() / 4.0, 1.0 + x.squaredNorm() / 4.0;
        // orthonormal vectors orthogonal to f: tangent directions of the flat embedding
        Eigen::MatrixXd basis(dim, 2);
        for (int i = 0; i < 2; ++i) {
            Eigen::VectorXd t = Eigen::VectorXd::Zero(dim);
            t[i] = 1.0;
            t[3] = -0.5 * x[i];
            t[4] = 0.5 * x[i];
            basis.col(i) = t;
        }
        basis.col(1) -= lorentz(basis.col(1), basis.col(0)) * basis.col(0);
        basis.col(1) /= std::sqrt(lorentz(basis.col(1), basis.col(1)));
        const Eigen::VectorXd fh = dual_null(f, basis);
        CHECK(std::abs(lorentz(fh, fh)) < 1e-12);
        CHECK(lorentz(f, fh) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(lorentz(fh, basis.col(0))) < 1e-12);
        CHECK(std::abs(lorentz(fh, basis.col(1))) < 1e-12);
    }
}
