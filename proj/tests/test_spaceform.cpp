#include <doctest.h>

#include <numbers>

#include "lightcone/spaceform.hpp"
#include "support.hpp"

using namespace lightcone;
using lightcone::testing::lorentz;
using lightcone::testing::random_vector;
using lightcone::testing::uniform;

namespace {

// Arc-length geodesic through the canonical origin p0 along e0, from the closed forms.
MinkVec geodesic(double k, double t) {
    return geodesic_point(canonical_space_form(k, 3), LightPoint(origin_point(3)), MinkVec::basis(5, 0), t).vec();
}

}  // namespace

TEST_CASE("canonical space forms") {
    const SpaceForm flat = canonical_space_form(0.0, 3);
    CHECK(flat.nk.coords().isApprox((Eigen::VectorXd(5) << 0, 0, 0, 0.5, -0.5).finished()));
    for (double k : {-1.0, 0.0, 1.0, 2.5}) {
        const SpaceForm q = canonical_space_form(k, 3);
        CHECK(inner(q.nk, q.nk) == doctest::Approx(-k).epsilon(1e-14));
        CHECK(inner(origin_point(3), q.nk) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(canonical_space_form(0.0, 1), UsageError);
}

TEST_CASE("flat embedding") {
    const SpaceForm flat = canonical_space_form(0.0, 3);
    CHECK(embed_flat(Eigen::Vector3d::Zero(), flat).vec().coords().isApprox(origin_point(3).coords()));
    const Eigen::VectorXd e1 = embed_flat(Eigen::Vector3d(1, 0, 0), flat).vec().coords();
    CHECK(e1.isApprox((Eigen::VectorXd(5) << 1, 0, 0, 0.75, 1.25).finished()));
    CHECK(lorentz(e1, e1) == doctest::Approx(0.0));
    CHECK(lorentz(e1, flat.nk.coords()) == doctest::Approx(1.0));

    // pullback metric is Euclidean
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Vector3d x = random_vector(3), d = random_vector(3);
        for (double h : {1e-2, 5e-3}) {
            const Eigen::VectorXd a = embed_flat(x, flat).vec().coords();
            const Eigen::VectorXd b = embed_flat(Eigen::Vector3d(x + h * d), flat).vec().coords();
            // chords are exact: |embed(y) - embed(x)|^2 = |y - x|^2 on the light cone
            CHECK(lorentz(b - a, b - a) / (h * h) == doctest::Approx(d.squaredNorm()).epsilon(1e-10));
        }
    }
}

TEST_CASE("stereographic projection") {
    const SpaceForm flat = canonical_space_form(0.0, 3);
    const LightPoint p = embed_flat(Eigen::Vector3d(0.3, -0.2, 0.5), flat);
    CHECK(stereographic(p, flat).vec().coords().isApprox(p.vec().coords()));
    CHECK(stereographic(LightPoint(2.0 * origin_point(3)), flat).vec().coords().isApprox(origin_point(3).coords()));
    // a null direction orthogonal to nk for k = -1
    const SpaceForm hyp = canonical_space_form(-1.0, 3);
    const LightPoint boundary(MinkVec{1, 0, 0, 0, 1});
    CHECK(std::abs(inner(boundary.vec(), hyp.nk)) < 1e-15);
    CHECK_THROWS_AS(stereographic(boundary, hyp), InfinityBoundaryError);

    // round trip between two models
    for (int trial = 0; trial < 50; ++trial) {
        const LightPoint x = embed_flat(random_vector(3, 0.6), flat);
        const SpaceForm a = canonical_space_form(uniform(-0.9, 0.9), 3), b = canonical_space_form(uniform(-0.9, 0.9), 3);
        const LightPoint pa = stereographic(x, a);
        CHECK(inner(pa.vec(), a.nk) == doctest::Approx(1.0));
        const LightPoint back = stereographic(stereographic(pa, b), a);
        CHECK((back.vec().coords() - pa.vec().coords()).norm() < 1e-12);
    }
}

TEST_CASE("conformality of rescaling") {
    const SpaceForm flat = canonical_space_form(0.0, 3);
    const SpaceForm sph = canonical_space_form(1.0, 3);
    const double h = 1e-5;
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Vector3d x = random_vector(3, 0.8), d = random_vector(3);
        auto curve = [&](double s, const SpaceForm& q) {
            return stereographic(embed_flat(Eigen::Vector3d(x + s * d), flat), q).vec().coords();
        };
        auto speed = [&](const SpaceForm& q) {
            const Eigen::VectorXd v = (curve(h, q) - curve(-h, q)) / (2 * h);
            return std::sqrt(lorentz(v, v));
        };
        const double scale = inner(curve(0, flat), sph.nk.coords());
        CHECK(speed(sph) / speed(flat) == doctest::Approx(1.0 / scale).epsilon(1e-8));
    }
}

TEST_CASE("geodesics") {
    for (double k : {-1.0, 0.0, 1.0}) {
        const SpaceForm q = canonical_space_form(k, 3);
        CHECK(geodesic(k, 0.0).coords().isApprox(origin_point(3).coords()));
        for (double t : {-0.8, 0.2, 0.9}) {
            CHECK(inner(geodesic(k, t), q.nk) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    // k = 0: t s + p - t^2/2 phat with phat = nk + (k/2) p = n0
    const double t = 0.7;
    const Eigen::VectorXd expect = t * MinkVec::basis(5, 0).coords() + origin_point(3).coords() -
                                   0.5 * t * t * infinity_point(3).coords();
    CHECK((geodesic(0.0, t).coords() - expect).norm() < 1e-14);

    // k = 1, t = pi: the antipode -n1 - (p/2 + phat)
    const SpaceForm q1 = canonical_space_form(1.0, 3);
    const Eigen::VectorXd p = origin_point(3).coords();
    const Eigen::VectorXd phat = q1.nk.coords() + 0.5 * p;
    const Eigen::VectorXd antipode = -q1.nk.coords() - (0.5 * p + phat);
    const Eigen::VectorXd at_pi = geodesic(1.0, std::numbers::pi).coords();
    CHECK((at_pi - antipode).norm() < 1e-12);
    CHECK(inner(at_pi, q1.nk.coords()) == doctest::Approx(1.0));
}

TEST_CASE("geodesic of k = 1 agrees with RK4 on the geodesic equation") {
    // Unit-speed curves in Q_k with x'' in span{x, nk}: the constraints force x'' = -k x - nk.
    const double k = 1.0;
    const SpaceForm q = canonical_space_form(k, 3);
    auto rhs = [&](const Eigen::VectorXd& y) {
        Eigen::VectorXd dy(10);
        dy.head(5) = y.tail(5);
        dy.tail(5) = -k * y.head(5) - q.nk.coords();
        return dy;
    };
    Eigen::VectorXd y(10);
    y << origin_point(3).coords(), MinkVec::basis(5, 0).coords();
    const int steps = 2000;
    const double T = 2.0, h = T / steps;
    for (int i = 0; i < steps; ++i) {
        const Eigen::VectorXd k1 = rhs(y), k2 = rhs(y + 0.5 * h * k1), k3 = rhs(y + 0.5 * h * k2), k4 = rhs(y + h * k3);
        y += h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0;
    }
    CHECK((y.head(5) - geodesic(k, T).coords()).norm() < 1e-10);
}

TEST_CASE("geodesics have unit speed") {
    const double h = 1e-4;
    for (double k : {-1.0, 0.0, 1.0}) {
        for (double t : {-0.5, 0.1, 0.6}) {
            const Eigen::VectorXd v = (geodesic(k, t + h).coords() - geodesic(k, t - h).coords()) / (2 * h);
            CHECK(std::sqrt(lorentz(v, v)) == doctest::Approx(1.0).epsilon(1e-7));
        }
    }
}

TEST_CASE("proper isometries") {
    const SpaceForm q = canonical_space_form(0.7, 3);
    CHECK(is_proper_isometry(Eigen::MatrixXd::Identity(5, 5), q));
    Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(5, 5);
    const double a = 0.4;
    rot(0, 0) = std::cos(a);
    rot(0, 1) = -std::sin(a);
    rot(1, 0) = std::sin(a);
    rot(1, 1) = std::cos(a);
    CHECK(is_proper_isometry(rot, q));
    Eigen::MatrixXd boost = Eigen::MatrixXd::Identity(5, 5);
    boost(0, 0) = boost(4, 4) = std::cosh(a);
    boost(0, 4) = boost(4, 0) = std::sinh(a);
    CHECK_FALSE(is_proper_isometry(boost, q));
    // the boost does preserve the form
    const Eigen::MatrixXd J = signature_matrix(5);
    CHECK((boost.transpose() * J * boost - J).cwiseAbs().maxCoeff() < 1e-14);
}
