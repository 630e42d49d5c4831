#include <doctest.h>

#include <algorithm>

#include "lightcone/triorth.hpp"
#include "support.hpp"

using namespace lightcone;
using lightcone::testing::proportional_margin;
using lightcone::testing::spherical_net;

namespace {

const SpaceForm kFlat = canonical_space_form(0.0, 3);

ParamGrid3 cube(double lo, double hi, int n) {
    return ParamGrid3{{Axis::span(lo, hi, n), Axis::span(lo, hi, n), Axis::span(lo, hi, n)}};
}

template <class F>
NetGrid sample_net(const ParamGrid3& g, F&& point) {
    NetGrid net{g, std::vector<Eigen::VectorXd>(g.size()), {}, kFlat};
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const auto a = g.node(idx);
        net.f[idx] = point(g.axes[0].at(a[0]), g.axes[1].at(a[1]), g.axes[2].at(a[2]));
    }
    return net;
}

NetGrid cartesian_net(int n) {
    return sample_net(cube(-1, 1, n), [](double x, double y, double z) {
        return embed_flat(Eigen::Vector3d(x, y, z), kFlat).vec().coords();
    });
}

template <class F>
std::array<ScalarField, 3> sample_lengths(const ParamGrid3& g, F&& lengths) {
    std::array<ScalarField, 3> l;
    for (auto& field : l) field.resize(g.size());
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const auto a = g.node(idx);
        const std::array<double, 3> v = lengths(g.axes[0].at(a[0]), g.axes[1].at(a[1]), g.axes[2].at(a[2]));
        for (int i = 0; i < 3; ++i) l[i][idx] = v[i];
    }
    return l;
}

double max_of(const std::array<double, 9>& r) { return *std::max_element(r.begin(), r.end()); }
double max_of(const std::array<double, 6>& r) { return *std::max_element(r.begin(), r.end()); }

double max_error(const ScalarField& field, const ParamGrid3& g, int margin, auto&& oracle) {
    double worst = 0.0;
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const auto a = g.node(idx);
        if (!g.interior(a, margin)) continue;
        worst = std::max(worst, std::abs(field[idx] - oracle(g.axes[0].at(a[0]), g.axes[1].at(a[1]), g.axes[2].at(a[2]))));
    }
    return worst;
}

}  // namespace

TEST_CASE("Cartesian net") {
    const NetGrid net = cartesian_net(9);
    const LameData ld = lame_from_grid(net);
    for (int i = 0; i < 3; ++i) {
        for (double v : ld.l[i]) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            for (double v : ld.k[i][j]) CHECK(std::abs(v) < 1e-12);
        }
    }
    CHECK(orthogonality_residual(net).first < 1e-12);
    CHECK(max_of(lame_residuals(ld, 0.0).all()) < 1e-10);
    CHECK(max_of(genlame_residuals(ld)) < 1e-10);
    CHECK(dupin_residual(net) < 1e-10);
    for (int axis = 0; axis < 3; ++axis) CHECK(guichard_residual(ld, axis) == doctest::Approx(1.0));
}

TEST_CASE("skewed grid is not triply orthogonal") {
    const NetGrid net = sample_net(cube(-1, 1, 7), [](double x, double y, double z) {
        return embed_flat(Eigen::Vector3d(x + 0.5 * y, y, z), kFlat).vec().coords();
    });
    CHECK(orthogonality_residual(net).first > 0.1);
    CHECK_THROWS_AS(lame_from_grid(net), NotTriplyOrthogonalError);
}

TEST_CASE("spherical net: Lame functions and rotation coefficients") {
    std::array<double, 2> lerr{}, kerr{};
    for (int level = 0; level < 2; ++level) {
        const int n = level == 0 ? 12 : 24;
        const NetGrid net = spherical_net(n, kFlat);
        const LameData ld = lame_from_grid(net);
        const int m = proportional_margin(n);
        const auto& g = ld.grid;
        lerr[level] = std::max({max_error(ld.l[0], g, m, [](double, double, double) { return 1.0; }),
                                max_error(ld.l[1], g, m, [](double r, double, double) { return r; }),
                                max_error(ld.l[2], g, m, [](double r, double th, double) { return r * std::sin(th); })});
        // k_ij = -(1/(l_i l_j)) d l_j / d t_i
        kerr[level] = std::max({max_error(ld.k[0][1], g, m, [](double r, double, double) { return -1.0 / r; }),
                                max_error(ld.k[0][2], g, m, [](double r, double, double) { return -1.0 / r; }),
                                max_error(ld.k[1][2], g, m, [](double r, double th, double) { return -std::cos(th) / (std::sin(th) * r); }),
                                max_error(ld.k[1][0], g, m, [](double, double, double) { return 0.0; }),
                                max_error(ld.k[2][0], g, m, [](double, double, double) { return 0.0; }),
                                max_error(ld.k[2][1], g, m, [](double, double, double) { return 0.0; })});
    }
    CHECK(lerr[1] < 1e-3);
    // the stencil errors of l_j and d l_j cancel in k_ij for this net
    CHECK(kerr[0] < 1e-12);
    CHECK(kerr[1] < 1e-12);
    CHECK(convergence_order(lerr[0], lerr[1], 1.0 / 11, 1.0 / 23) > 1.9);
}

TEST_CASE("spherical net: Lame, generalized Lame, Dupin and b symmetry converge") {
    std::array<double, 2> lame{}, gen{}, dupin{}, asym{};
    std::array<double, 2> wrong{};
    for (int level = 0; level < 2; ++level) {
        const int n = level == 0 ? 16 : 32;
        const int m = proportional_margin(n);
        const NetGrid net = spherical_net(n, kFlat);
        const LameData ld = lame_from_grid(net);
        lame[level] = max_of(lame_residuals(ld, 0.0, m).all());
        gen[level] = max_of(genlame_residuals(ld, m));
        dupin[level] = dupin_residual(net, TangentSource::automatic, m);
        asym[level] = bij_asymmetry(ld, m);
        const LameResiduals off = lame_residuals(ld, 1.0, m);
        wrong[level] = std::min({off.curvature[0], off.curvature[1], off.curvature[2]});
    }
    const double h0 = 1.0 / 15, h1 = 1.0 / 31;
    CHECK(convergence_order(lame[0], lame[1], h0, h1) > 1.9);
    CHECK(convergence_order(gen[0], gen[1], h0, h1) > 1.9);
    // exact to rounding on this net
    CHECK(std::max(dupin[0], dupin[1]) < 1e-12);
    CHECK(convergence_order(asym[0], asym[1], h0, h1) > 1.9);
    // tested against the wrong ambient curvature
    CHECK(wrong[1] == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("spherical net placed in the unit sphere passes for k = 1") {
    const SpaceForm sphere = canonical_space_form(1.0, 3);
    std::array<double, 2> lame{};
    for (int level = 0; level < 2; ++level) {
        const int n = level == 0 ? 16 : 32;
        // the image in Q_1 of a Q_0 net is conformal, not isometric; it stays triply orthogonal
        const NetGrid net = spherical_net(n, sphere);
        const LameData ld = lame_from_grid(net);
        lame[level] = max_of(genlame_residuals(ld, proportional_margin(n)));
    }
    CHECK(convergence_order(lame[0], lame[1], 1.0 / 15, 1.0 / 31) > 1.9);
}

TEST_CASE("generalized Lame equations are conformally invariant") {
    std::array<double, 2> gen{};
    for (int level = 0; level < 2; ++level) {
        const int n = level == 0 ? 16 : 32;
        NetGrid net = spherical_net(n, kFlat);
        for (std::size_t idx = 0; idx < net.f.size(); ++idx) {
            const auto a = net.grid.node(idx);
            const double r = net.grid.axes[0].at(a[0]), th = net.grid.axes[1].at(a[1]), ph = net.grid.axes[2].at(a[2]);
            net.f[idx] *= std::exp(0.3 * std::sin(r + 2.0 * th) - 0.2 * ph * ph);
        }
        net.gauge.reset();
        gen[level] = max_of(genlame_residuals(lame_from_grid(net), proportional_margin(n)));
    }
    CHECK(convergence_order(gen[0], gen[1], 1.0 / 15, 1.0 / 31) > 1.9);
}

TEST_CASE("generalized Lame equations reject a non conformally flat metric") {
    std::array<double, 2> gen{};
    for (int level = 0; level < 2; ++level) {
        const int n = level == 0 ? 16 : 32;
        const ParamGrid3 g = cube(0.0, 1.0, n);
        const auto l = sample_lengths(g, [](double x, double y, double z) {
            return std::array<double, 3>{1.0, std::exp(0.5 * x * z), std::exp(x * y)};
        });
        gen[level] = max_of(genlame_residuals(lame_from_lengths(g, l), proportional_margin(n)));
    }
    CHECK(gen[1] > 1e-2);
    CHECK(gen[1] == doctest::Approx(gen[0]).epsilon(0.1));
}

TEST_CASE("Guichard residual") {
    const ParamGrid3 g = cube(0.0, 1.0, 7);
    const auto l = sample_lengths(g, [](double x, double y, double z) {
        const double w = 0.3 + 0.4 * x + 0.5 * y * z;
        return std::array<double, 3>{std::cos(w), std::sin(w), 1.0};
    });
    const LameData ld = lame_from_lengths(g, l);
    CHECK(guichard_residual(ld, 2) < 1e-15);
    CHECK(guichard_residual(ld, 0) > 0.1);

    const auto ones = sample_lengths(g, [](double, double, double) { return std::array<double, 3>{1.0, 1.0, 1.0}; });
    CHECK(guichard_residual(lame_from_lengths(g, ones), 2) == 1.0);

    auto bad = ones;
    bad[1][5] = 0.0;
    CHECK_THROWS_AS(lame_from_lengths(g, bad), ImmersionFailureError);
}

TEST_CASE("mixed derivative of a polynomial is exact in the interior") {
    const ParamGrid3 g = cube(-1.0, 1.0, 9);
    ScalarField f(g.size());
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const auto a = g.node(idx);
        const double x = g.axes[0].at(a[0]), y = g.axes[1].at(a[1]), z = g.axes[2].at(a[2]);
        f[idx] = x * y + 3.0 * y * z * z + x * x;
    }
    const ScalarField fxy = mixed_derivative(f, g, 0, 1);
    ScalarField expect(g.size(), 1.0);
    for (std::size_t idx = 0; idx < g.size(); ++idx) expect[idx] = fxy[idx] - 1.0;
    CHECK(max_interior(expect, g, 2) < 1e-12);
}
