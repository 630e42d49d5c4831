#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "lightcone/spaceform.hpp"
#include "lightcone/triorth.hpp"
#include "lightcone/weingarten.hpp"

namespace lightcone::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20241015);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Eigen::VectorXd random_vector(int dim, double scale = 1.0) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = uniform(-scale, scale);
    return v;
}

// Oracle for the Lorentz product, written out longhand.
inline double lorentz(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double sum = 0.0;
    for (int i = 0; i + 1 < a.size(); ++i) sum += a[i] * b[i];
    return sum - a[a.size() - 1] * b[b.size() - 1];
}

// The flagship family (k = 0, a1 = 0, a2 = 1, eps = i) over the default box.
inline WeingartenFamily flagship_family() { return family_coeffs(0.0, 0.0, 1.0, -1.0); }

inline NetSpec flagship_spec(int n, int nr = -1) {
    return NetSpec{Axis::span(-0.2, 0.2, n), Axis::span(-0.2, 0.2, n), Axis::span(-0.7, 0.7, nr < 0 ? n : nr)};
}

inline SynthesizedNet flagship_net(int n, int nr = -1) {
    return synthesize_net(flagship_family(), UProfile{}, flagship_spec(n, nr));
}

// Spherical coordinates (r, theta, phi) placed in the quadric `gauge` (through the flat model).
inline NetGrid spherical_net(int n, const SpaceForm& gauge) {
    const SpaceForm flat = canonical_space_form(0.0, 3);
    ParamGrid3 g{{Axis::span(1.0, 2.0, n), Axis::span(0.6, 1.4, n), Axis::span(0.0, 0.8, n)}};
    NetGrid net{g, std::vector<Eigen::VectorXd>(g.size()), {}, gauge};
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const auto a = g.node(idx);
        const double r = g.axes[0].at(a[0]), th = g.axes[1].at(a[1]), ph = g.axes[2].at(a[2]);
        const Eigen::Vector3d x(r * std::sin(th) * std::cos(ph), r * std::sin(th) * std::sin(ph), r * std::cos(th));
        net.f[idx] = stereographic(embed_flat(x, flat), gauge).vec().coords();
    }
    return net;
}

inline int proportional_margin(int n) { return n / 4; }

}  // namespace lightcone::testing
