#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "lightcone/cyclic.hpp"
#include "lightcone/sphere.hpp"
#include "support.hpp"

using namespace lightcone;
using lightcone::testing::uniform;

namespace {

ParamGrid2 square_grid(double lo, double hi, int n) { return ParamGrid2{Axis::span(lo, hi, n), Axis::span(lo, hi, n)}; }

Eigen::MatrixXd base_frame() {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(5, 5);
    for (int c = 0; c < 3; ++c) f.col(c) = MinkVec::basis(5, c).coords();
    f.col(3) = origin_point(3).coords();
    f.col(4) = infinity_point(3).coords();
    return f;
}

template <class F>
CircleCongruence sample_frames(const ParamGrid2& g, F&& frame_at) {
    FrameGrid fg{g, std::vector<Eigen::MatrixXd>(g.size())};
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const auto n = g.node(idx);
        fg.frames[idx] = frame_at(g.t1.at(n[0]), g.t2.at(n[1]));
    }
    return CircleCongruence{fg};
}

Eigen::MatrixXd random_algebra_element() {
    Eigen::MatrixXd a(5, 5);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) a(i, j) = uniform(-1, 1);
    }
    a = 0.5 * (a - a.transpose()).eval();
    return ideal_frame_gram(5).inverse() * a;
}

double max_abs_nu(const ConnectionSample& nu) {
    double worst = 0.0;
    for (int dir = 0; dir < 2; ++dir) {
        for (std::size_t i = 0; i < nu.phi[dir].size(); ++i) {
            worst = std::max({worst, std::abs(nu.nu_s(i, dir)), std::abs(nu.nu_f(i, dir)), std::abs(nu.nu_hat_s(i, dir))});
        }
    }
    return worst;
}

double max_interior_flatness(const ConnectionSample& nu) {
    const auto q = integrability_quadratic(nu);
    double worst = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const auto n = nu.grid.node(i);
        if (!nu.grid.interior(n[0], n[1])) continue;
        for (double c : q[i]) worst = std::max(worst, std::abs(c));
    }
    return worst;
}

// Moebius oracle: cross ratio of points at parameters g on one circle.
double g_cross_ratio(double g1, double g2, double g3, double g4) {
    return std::abs((g1 - g2) * (g3 - g4) / ((g2 - g3) * (g4 - g1)));
}

}  // namespace

TEST_CASE("parallel frame") {
    const ParamGrid2 g = square_grid(0, 1, 9);
    const CircleCongruence cc = sample_frames(g, [](double, double) { return base_frame(); });
    const ConnectionSample nu = nu_forms(cc);
    CHECK(max_abs_nu(nu) == 0.0);
    for (const auto& q : integrability_quadratic(nu)) {
        CHECK(q[0] == 0.0);
        CHECK(q[1] == 0.0);
        CHECK(q[2] == 0.0);
    }
    const TField t = integrate_tfield(cc, 0.7, g.index(4, 4));
    for (double v : t.t) CHECK(v == 0.7);
    const NormalityReport r = normality(cc, 1e-10);
    CHECK(r.flat);
    CHECK(r.three_solutions);
    CHECK(is_normal(cc, 1e-10));

    const auto members = orthogonal_family(cc, {FamilyMember::at(0.0)});
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(members[0].f[i] == cc.frame.frames[i].col(3));
}

TEST_CASE("scaling gauge gives an exponential t field") {
    // (f, fhat) -> (e^l f, e^-l fhat) has nu_f = dl and nu_s = nuhat_s = 0
    const auto lambda = [](double a, double b) { return 0.3 * a + 0.2 * std::sin(3.0 * b); };
    std::array<double, 2> err{};
    for (int level = 0; level < 2; ++level) {
        const ParamGrid2 g = square_grid(-0.5, 0.5, level == 0 ? 33 : 65);
        const CircleCongruence cc = sample_frames(g, [&](double a, double b) {
            Eigen::MatrixXd f = base_frame();
            f.col(3) *= std::exp(lambda(a, b));
            f.col(4) *= std::exp(-lambda(a, b));
            return f;
        });
        const ConnectionSample nu = nu_forms(cc);
        double off = 0.0;
        for (int dir = 0; dir < 2; ++dir) {
            for (std::size_t i = 0; i < g.size(); ++i) off = std::max({off, std::abs(nu.nu_s(i, dir)), std::abs(nu.nu_hat_s(i, dir))});
        }
        CHECK(off < 1e-14);
        const std::size_t base = g.index(g.t1.count / 2, g.t2.count / 2);
        const auto bn = g.node(base);
        const double lb = lambda(g.t1.at(bn[0]), g.t2.at(bn[1]));
        const TField t = integrate_tfield(cc, 1.5, base);
        CHECK(t.t[base] == 1.5);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto n = g.node(i);
            worst = std::max(worst, std::abs(t.t[i] - 1.5 * std::exp(lambda(g.t1.at(n[0]), g.t2.at(n[1])) - lb)));
        }
        err[level] = worst;
    }
    CHECK(err[1] < 1e-3);
    CHECK(convergence_order(err[0], err[1], 1.0 / 32, 1.0 / 64) > 1.8);
}

TEST_CASE("synthesized Guichard congruence is normal") {
    const CircleCongruence cc{lightcone::testing::flagship_net(64, 5).base};
    const NormalityReport r = normality(cc, 1e-4);
    CHECK(r.flat);
    CHECK(r.three_solutions);
    CHECK(r.loop_defect < 1e-6);
    CHECK(is_normal(cc, 1e-4));

    // the default parallelism tolerance cannot hold on sampled frames
    CHECK_THROWS_AS(orthogonal_family(cc, {FamilyMember::at(0.3)}), UsageError);
    CHECK_THROWS_AS(orthogonal_family(cc, {FamilyMember::at(0.3, 0.0)}, 1e-3), SingularParametrizationError);
}

TEST_CASE("generic congruence is not normal") {
    const Eigen::MatrixXd x = random_algebra_element(), y = random_algebra_element();
    std::array<double, 2> flat{};
    for (int level = 0; level < 2; ++level) {
        const ParamGrid2 g = square_grid(0, 0.5, level == 0 ? 17 : 33);
        const CircleCongruence cc = sample_frames(g, [&](double a, double b) {
            const Eigen::MatrixXd ax = a * x, by = b * y;
            return Eigen::MatrixXd(base_frame() * ax.exp() * by.exp());
        });
        flat[level] = max_interior_flatness(nu_forms(cc));
        const NormalityReport r = normality(cc, 1e-4);
        CHECK_FALSE(r.flat);
        CHECK_FALSE(r.three_solutions);
        CHECK_FALSE(is_normal(cc, 1e-4));
    }
    CHECK(flat[1] > 1e-2);
    CHECK(flat[1] == doctest::Approx(flat[0]).epsilon(0.05));
}

TEST_CASE("orthogonal family on the synthesized congruence") {
    std::array<double, 2> ortho{};
    std::array<double, 2> contact{};
    for (int level = 0; level < 2; ++level) {
        const int n = level == 0 ? 32 : 64;
        const CircleCongruence cc{lightcone::testing::flagship_net(n, 5).base};
        ortho[level] = std::max(family_orthogonality_residual(cc, 0.3), family_orthogonality_residual(cc, -0.8));
        const auto members = orthogonal_family(cc, {FamilyMember::at(0.3), FamilyMember::at(-0.8, 2.0)}, 1e-3);
        for (const auto& m : members) {
            const auto [inc, con] = envelope_residual(m);
            CHECK(inc < 1e-10);
            contact[level] = std::max(contact[level], con);
        }
    }
    const double h0 = 0.4 / 31, h1 = 0.4 / 63;
    CHECK(convergence_order(ortho[0], ortho[1], h0, h1) > 1.9);
    CHECK(convergence_order(contact[0], contact[1], h0, h1) > 1.9);
}

TEST_CASE("members meet the circles at a fixed cross ratio") {
    const CircleCongruence cc{lightcone::testing::flagship_net(64, 5).base};
    const auto anchor = orthogonal_family(
        cc, {FamilyMember::at(0.0), FamilyMember::at(0.3), FamilyMember::infinity(), FamilyMember::at(1.0)}, 1e-3);
    const CrossRatioField a = family_cross_ratio({anchor[0], anchor[1], anchor[2], anchor[3]});
    CHECK(a.mean == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(a.stddev < 1e-10);

    // a rescaled member is the same point set
    const double g[] = {-0.5, 0.3, 0.8, 1.7};
    const auto generic = orthogonal_family(
        cc, {FamilyMember::at(g[0]), FamilyMember::at(g[1], 2.0), FamilyMember::at(g[2]), FamilyMember::at(g[3], -0.5)},
        1e-3);
    const CrossRatioField b = family_cross_ratio({generic[0], generic[1], generic[2], generic[3]});
    CHECK(b.mean == doctest::Approx(g_cross_ratio(g[0], g[1], g[2], g[3])).epsilon(1e-10));
    CHECK(b.stddev < 1e-8);

    for (int trial = 0; trial < 20; ++trial) {
        std::array<double, 4> r{};
        for (double& v : r) v = uniform(-2, 2);
        const auto m = orthogonal_family(cc, {FamilyMember::at(r[0]), FamilyMember::at(r[1]), FamilyMember::at(r[2]), FamilyMember::at(r[3])}, 1e-3);
        const CrossRatioField c = family_cross_ratio({m[0], m[1], m[2], m[3]});
        CHECK(c.mean == doctest::Approx(g_cross_ratio(r[0], r[1], r[2], r[3])).epsilon(1e-8));
        CHECK(c.stddev < 1e-8 * (1.0 + c.mean));
    }

    const auto twice = orthogonal_family(
        cc, {FamilyMember::at(0.0), FamilyMember::at(0.3), FamilyMember::at(0.3), FamilyMember::at(1.0)}, 1e-3);
    CHECK_THROWS_AS(family_cross_ratio({twice[0], twice[1], twice[2], twice[3]}), DegenerateConfigurationError);
}
