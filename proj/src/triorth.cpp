#include "lightcone/triorth.hpp"

#include <algorithm>
#include <cmath>

#include "lightcone/errors.hpp"
#include "lightcone/lorentz.hpp"

namespace lightcone {

namespace {

constexpr int kAxes = 3;

void check_grid(const ParamGrid3& g, std::size_t values) {
    if (values != g.size()) throw UsageError("net grid: value count does not match grid size");
    for (const Axis& a : g.axes) {
        if (a.count < 5) throw UsageError("net grid: need at least 5 nodes per axis");
    }
}

// e_i X = (1/l_i) dX/dt_i
ScalarField frame_derivative(const ScalarField& x, const LameData& ld, int i) {
    ScalarField d = derivative(x, ld.grid, i);
    for (std::size_t n = 0; n < d.size(); ++n) d[n] /= ld.l[i][n];
    return d;
}

void fill_rotation_and_b(LameData& ld) {
    const std::size_t size = ld.grid.size();
    for (int i = 0; i < kAxes; ++i) {
        for (int j = 0; j < kAxes; ++j) {
            if (i == j) continue;
            const ScalarField dl = derivative(ld.l[j], ld.grid, i);
            ScalarField& kij = ld.k[i][j];
            kij.resize(size);
            for (std::size_t n = 0; n < size; ++n) kij[n] = -dl[n] / (ld.l[i][n] * ld.l[j][n]);
        }
    }
    const auto& k = ld.k;
    auto e = [&](int i, const ScalarField& x) { return frame_derivative(x, ld, i); };

    const ScalarField e1k12 = e(0, k[0][1]), e2k21 = e(1, k[1][0]);
    const ScalarField e2k23 = e(1, k[1][2]), e3k32 = e(2, k[2][1]);
    const ScalarField e3k31 = e(2, k[2][0]), e1k13 = e(0, k[0][2]);
    const ScalarField e1k23 = e(0, k[1][2]), e2k31 = e(1, k[2][0]), e3k12 = e(2, k[0][1]);
    const ScalarField e1k32 = e(0, k[2][1]), e2k13 = e(1, k[0][2]), e3k21 = e(2, k[1][0]);

    for (auto& row : ld.b) {
        for (auto& field : row) field.assign(size, 0.0);
    }
    auto& b = ld.b;
    for (std::size_t n = 0; n < size; ++n) {
        const double k12 = k[0][1][n], k21 = k[1][0][n], k13 = k[0][2][n];
        const double k31 = k[2][0][n], k23 = k[1][2][n], k32 = k[2][1][n];
        const double s12 = e1k12[n] + e2k21[n] - k12 * k12 - k21 * k21 - k31 * k32;
        const double s23 = e2k23[n] + e3k32[n] - k23 * k23 - k32 * k32 - k12 * k13;
        const double s31 = e3k31[n] + e1k13[n] - k31 * k31 - k13 * k13 - k23 * k21;
        b[0][0][n] = 0.5 * (s12 - s23 + s31);
        b[1][1][n] = 0.5 * (s12 + s23 - s31);
        b[2][2][n] = 0.5 * (-s12 + s23 + s31);
        b[1][0][n] = e1k23[n] + k13 * (k21 - k23);
        b[2][1][n] = e2k31[n] + k21 * (k32 - k31);
        b[0][2][n] = e3k12[n] + k32 * (k13 - k12);
        b[2][0][n] = e1k32[n] + k12 * (k31 - k32);
        b[0][1][n] = e2k13[n] + k23 * (k12 - k13);
        b[1][2][n] = e3k21[n] + k31 * (k23 - k21);
    }
}

double max_abs_interior(const ScalarField& field, const ParamGrid3& grid, int margin) {
    double worst = 0.0;
    for (std::size_t n = 0; n < field.size(); ++n) {
        if (!grid.interior(grid.node(n), margin)) continue;
        worst = std::max(worst, std::abs(field[n]));
    }
    return worst;
}

}  // namespace

double max_interior(const ScalarField& field, const ParamGrid3& grid, int margin) {
    return max_abs_interior(field, grid, margin);
}

ScalarField mixed_derivative(const ScalarField& field, const ParamGrid3& grid, int a, int b) {
    return derivative(derivative(field, grid, a), grid, b);
}

std::array<std::vector<Eigen::VectorXd>, 3> coordinate_tangents(const NetGrid& net, TangentSource source) {
    check_grid(net.grid, net.f.size());
    if (source == TangentSource::automatic && net.has_tangents()) return net.tangents;
    return {derivative(net.f, net.grid, 0), derivative(net.f, net.grid, 1), derivative(net.f, net.grid, 2)};
}

std::pair<double, std::size_t> orthogonality_residual(const NetGrid& net, TangentSource source) {
    const auto t = coordinate_tangents(net, source);
    double worst = 0.0;
    std::size_t where = 0;
    for (std::size_t n = 0; n < net.f.size(); ++n) {
        double l[kAxes];
        for (int i = 0; i < kAxes; ++i) l[i] = std::sqrt(std::max(inner(t[i][n], t[i][n]), 0.0));
        for (int i = 0; i < kAxes; ++i) {
            for (int j = i + 1; j < kAxes; ++j) {
                const double denom = l[i] * l[j];
                const double r = denom > 0 ? std::abs(inner(t[i][n], t[j][n])) / denom : 0.0;
                if (r > worst) {
                    worst = r;
                    where = n;
                }
            }
        }
    }
    return {worst, where};
}

LameData lame_from_grid(const NetGrid& net, double orthogonality_tol, TangentSource source) {
    const auto t = coordinate_tangents(net, source);
    const std::size_t size = net.f.size();
    std::array<ScalarField, 3> l;
    for (int i = 0; i < kAxes; ++i) {
        l[i].resize(size);
        for (std::size_t n = 0; n < size; ++n) {
            const double q = inner(t[i][n], t[i][n]);
            if (!(q > 1e-24)) throw ImmersionFailureError("lame_from_grid: Lame function vanishes", n);
            l[i][n] = std::sqrt(q);
        }
    }
    const auto [orth, where] = orthogonality_residual(net, source);
    if (orth > orthogonality_tol) {
        throw NotTriplyOrthogonalError("lame_from_grid: coordinate surfaces not orthogonal (residual " +
                                           std::to_string(orth) + ")",
                                       where);
    }
    return lame_from_lengths(net.grid, std::move(l));
}

LameData lame_from_lengths(const ParamGrid3& grid, std::array<ScalarField, 3> l) {
    for (const auto& field : l) check_grid(grid, field.size());
    LameData ld{grid, std::move(l), {}, {}};
    for (int i = 0; i < kAxes; ++i) {
        for (std::size_t n = 0; n < ld.l[i].size(); ++n) {
            if (!(ld.l[i][n] > 0.0)) throw ImmersionFailureError("lame_from_lengths: Lame function not positive", n);
        }
    }
    fill_rotation_and_b(ld);
    return ld;
}

std::array<double, 6> LameResiduals::all() const {
    return {curvature[0], curvature[1], curvature[2], mixed[0], mixed[1], mixed[2]};
}

LameResiduals lame_residuals(const LameData& ld, double k, int margin) {
    const auto& b = ld.b;
    LameResiduals r{};
    // b_ii + b_jj is the right-hand side of the curvature equation for the (i,j) plane.
    const int planes[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    for (int p = 0; p < 3; ++p) {
        const int i = planes[p][0], j = planes[p][1];
        double worst = 0.0;
        for (std::size_t n = 0; n < ld.l[0].size(); ++n) {
            if (!ld.grid.interior(ld.grid.node(n), margin)) continue;
            worst = std::max(worst, std::abs(b[i][i][n] + b[j][j][n] - k));
        }
        r.curvature[p] = worst;
    }
    // Mixed equations grouped by the differentiating direction: e_1 appears in b_21, b_31 etc.
    const int pairs[3][2][2] = {{{1, 0}, {2, 0}}, {{2, 1}, {0, 1}}, {{0, 2}, {1, 2}}};
    for (int d = 0; d < 3; ++d) {
        r.mixed[d] = std::max(max_abs_interior(b[pairs[d][0][0]][pairs[d][0][1]], ld.grid, margin),
                              max_abs_interior(b[pairs[d][1][0]][pairs[d][1][1]], ld.grid, margin));
    }
    return r;
}

std::array<double, 9> genlame_residuals(const LameData& ld, int margin) {
    const auto& k = ld.k;
    const auto& b = ld.b;
    auto e = [&](int i, const ScalarField& x) { return frame_derivative(x, ld, i); };
    const std::size_t size = ld.grid.size();

    const ScalarField e1b23 = e(0, b[1][2]), e3b21 = e(2, b[1][0]);
    const ScalarField e2b31 = e(1, b[2][0]), e1b32 = e(0, b[2][1]);
    const ScalarField e3b12 = e(2, b[0][1]), e2b13 = e(1, b[0][2]);
    const ScalarField e1b22 = e(0, b[1][1]), e2b21 = e(1, b[1][0]);
    const ScalarField e2b33 = e(1, b[2][2]), e3b32 = e(2, b[2][1]);
    const ScalarField e3b11 = e(2, b[0][0]), e1b13 = e(0, b[0][2]);
    const ScalarField e2b11 = e(1, b[0][0]), e1b12 = e(0, b[0][1]);
    const ScalarField e3b22 = e(2, b[1][1]), e2b23 = e(1, b[1][2]);
    const ScalarField e1b33 = e(0, b[2][2]), e3b31 = e(2, b[2][0]);

    std::array<ScalarField, 9> g;
    for (auto& field : g) field.resize(size);
    for (std::size_t n = 0; n < size; ++n) {
        const double k12 = k[0][1][n], k21 = k[1][0][n], k13 = k[0][2][n];
        const double k31 = k[2][0][n], k23 = k[1][2][n], k32 = k[2][1][n];
        const double b11 = b[0][0][n], b22 = b[1][1][n], b33 = b[2][2][n];
        const double b12 = b[0][1][n], b21 = b[1][0][n], b13 = b[0][2][n];
        const double b31 = b[2][0][n], b23 = b[1][2][n], b32 = b[2][1][n];
        g[0][n] = (e1b23[n] - k23 * b31 - k13 * b23) - (e3b21[n] - k21 * b13 - k31 * b21);
        g[1][n] = (e2b31[n] - k31 * b12 - k21 * b31) - (e1b32[n] - k32 * b21 - k12 * b32);
        g[2][n] = (e3b12[n] - k12 * b23 - k32 * b12) - (e2b13[n] - k13 * b32 - k23 * b13);
        g[3][n] = e1b22[n] - e2b21[n] + k12 * (b11 - b22) + k21 * (b12 + b21) + k32 * b31;
        g[4][n] = e2b33[n] - e3b32[n] + k23 * (b22 - b33) + k32 * (b23 + b32) + k13 * b12;
        g[5][n] = e3b11[n] - e1b13[n] + k31 * (b33 - b11) + k13 * (b31 + b13) + k21 * b23;
        g[6][n] = e2b11[n] - e1b12[n] + k21 * (b22 - b11) + k12 * (b21 + b12) + k31 * b32;
        g[7][n] = e3b22[n] - e2b23[n] + k32 * (b33 - b22) + k23 * (b32 + b23) + k12 * b13;
        g[8][n] = e1b33[n] - e3b31[n] + k13 * (b11 - b33) + k31 * (b13 + b31) + k23 * b21;
    }
    std::array<double, 9> out{};
    for (int i = 0; i < 9; ++i) out[i] = max_abs_interior(g[i], ld.grid, margin);
    return out;
}

double bij_asymmetry(const LameData& ld, int margin) {
    double worst = 0.0;
    for (int i = 0; i < kAxes; ++i) {
        for (int j = i + 1; j < kAxes; ++j) {
            ScalarField d(ld.b[i][j].size());
            for (std::size_t n = 0; n < d.size(); ++n) d[n] = ld.b[i][j][n] - ld.b[j][i][n];
            worst = std::max(worst, max_abs_interior(d, ld.grid, margin));
        }
    }
    return worst;
}

double dupin_residual(const NetGrid& net, TangentSource source, int margin) {
    const auto t = coordinate_tangents(net, source);
    const std::size_t size = net.f.size();
    std::array<ScalarField, 3> l;
    for (int i = 0; i < kAxes; ++i) {
        l[i].resize(size);
        for (std::size_t n = 0; n < size; ++n) {
            const double q = inner(t[i][n], t[i][n]);
            if (!(q > 1e-24)) throw ImmersionFailureError("dupin_residual: Lame function vanishes", n);
            l[i][n] = std::sqrt(q);
        }
    }
    // d_j T_k for j < k, symmetrized.
    double worst = 0.0;
    for (int j = 0; j < kAxes; ++j) {
        for (int kk = j + 1; kk < kAxes; ++kk) {
            const int i = 3 - j - kk;
            const auto djtk = derivative(t[kk], net.grid, j);
            const auto dktj = derivative(t[j], net.grid, kk);
            for (std::size_t n = 0; n < size; ++n) {
                if (!net.grid.interior(net.grid.node(n), margin)) continue;
                const Eigen::VectorXd second = 0.5 * (djtk[n] + dktj[n]);
                const double r = std::abs(inner(second, t[i][n])) / (l[i][n] * l[j][n] * l[kk][n]);
                worst = std::max(worst, r);
            }
        }
    }
    return worst;
}

double guichard_residual(const LameData& ld, int imaginary_axis) {
    if (imaginary_axis < 0 || imaginary_axis > 2) throw UsageError("guichard_residual: axis must be 0, 1 or 2");
    const int a = (imaginary_axis + 1) % 3, b = (imaginary_axis + 2) % 3;
    double worst = 0.0;
    for (std::size_t n = 0; n < ld.l[0].size(); ++n) {
        const double la = ld.l[a][n], lb = ld.l[b][n], lc = ld.l[imaginary_axis][n];
        worst = std::max(worst, std::abs(la * la + lb * lb - lc * lc));
    }
    return worst;
}

}  // namespace lightcone
