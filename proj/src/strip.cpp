#include "lightcone/strip.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lightcone/errors.hpp"

namespace lightcone {

double FrameGrid::max_gram_residual() const {
    const Eigen::MatrixXd j = signature_matrix(dim());
    const Eigen::MatrixXd ideal = ideal_frame_gram(dim());
    double worst = 0.0;
    for (const auto& f : frames) worst = std::max(worst, (f.transpose() * j * f - ideal).cwiseAbs().maxCoeff());
    return worst;
}

Eigen::MatrixXd ConnectionSample::omega(std::size_t node, int dir) const {
    const int m = dim() - 3;
    return phi[dir][node].topLeftCorner(m, m);
}

Eigen::MatrixXd ConnectionSample::eta(std::size_t node, int dir) const {
    const int m = dim() - 3;
    return phi[dir][node].topRightCorner(m, 3);
}

Eigen::MatrixXd ConnectionSample::nu(std::size_t node, int dir) const {
    return phi[dir][node].bottomRightCorner(3, 3);
}

double ConnectionSample::nu_s(std::size_t node, int dir) const {
    const FrameSlots slot{dim()};
    return phi[dir][node](slot.point(), slot.sphere());
}

double ConnectionSample::nu_f(std::size_t node, int dir) const {
    const FrameSlots slot{dim()};
    return phi[dir][node](slot.point(), slot.point());
}

double ConnectionSample::nu_hat_s(std::size_t node, int dir) const {
    const FrameSlots slot{dim()};
    return phi[dir][node](slot.dual(), slot.sphere());
}

double ConnectionSample::lie_algebra_residual() const {
    const Eigen::MatrixXd g = ideal_frame_gram(dim());
    double worst = 0.0;
    for (int dir = 0; dir < 2; ++dir) {
        for (std::size_t idx = 0; idx < phi[dir].size(); ++idx) {
            const auto n = grid.node(idx);
            if (!grid.interior(n[0], n[1])) continue;
            const Eigen::MatrixXd& p = phi[dir][idx];
            worst = std::max(worst, (p.transpose() * g + g * p).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

std::pair<double, double> envelope_residual(const StripGrid& sg) {
    const auto d1 = derivative(sg.f, sg.grid, 0);
    const auto d2 = derivative(sg.f, sg.grid, 1);
    double incidence_max = 0.0, contact_max = 0.0;
    for (std::size_t idx = 0; idx < sg.f.size(); ++idx) {
        const auto n = sg.grid.node(idx);
        if (!sg.grid.interior(n[0], n[1])) continue;
        incidence_max = std::max(incidence_max, std::abs(inner(sg.s[idx], sg.f[idx])));
        contact_max = std::max({contact_max, std::abs(inner(sg.s[idx], d1[idx])), std::abs(inner(sg.s[idx], d2[idx]))});
    }
    return {incidence_max, contact_max};
}

namespace {

Eigen::MatrixXd single_column(const Eigen::VectorXd& v) {
    Eigen::MatrixXd m(v.size(), 1);
    m.col(0) = v;
    return m;
}

}  // namespace

FrameGrid adapt_frame(const StripGrid& sg, Adaptation mode) {
    const std::vector<Eigen::VectorXd>& map = mode == Adaptation::sphere ? sg.s : sg.f;
    const auto d1 = derivative(map, sg.grid, 0);
    const auto d2 = derivative(map, sg.grid, 1);
    const int dim = static_cast<int>(sg.f.front().size());
    if (dim != 5) throw UsageError("adapt_frame: surface strips live in R^5");

    FrameGrid out{sg.grid, std::vector<Eigen::MatrixXd>(sg.f.size())};
    for (std::size_t idx = 0; idx < sg.f.size(); ++idx) {
        const Eigen::VectorXd& s = sg.s[idx];
        const Eigen::VectorXd& f = sg.f[idx];
        const Eigen::VectorXd q = dual_null(f, single_column(s));
        Eigen::MatrixXd frame(dim, dim);
        const Eigen::VectorXd* tangents[2] = {&d1[idx], &d2[idx]};
        for (int c = 0; c < 2; ++c) {
            Eigen::VectorXd v = *tangents[c];
            const double ref = v.squaredNorm();
            v -= inner(v, s) * s;
            // keep the f component so that the columns span the differential
            v -= inner(v, f) * q;
            for (int p = 0; p < c; ++p) v -= inner(v, Eigen::VectorXd(frame.col(p))) * frame.col(p);
            const double nn = inner(v, v);
            if (!(nn > 1e-12 * ref) || ref == 0.0) {
                throw ImmersionFailureError("adapt_frame: tangent vectors lose rank", idx);
            }
            frame.col(c) = v / std::sqrt(nn);
        }
        frame.col(2) = s;
        frame.col(3) = f;
        frame.col(4) = dual_null(f, frame.leftCols(3));
        out.frames[idx] = frame;
    }
    return out;
}

ConnectionSample connection(const FrameGrid& fg, double gram_tol) {
    if (fg.max_gram_residual() > gram_tol) throw UsageError("connection: frame is not pseudo-orthonormal");
    ConnectionSample cs{fg.grid, {}};
    for (int dir = 0; dir < 2; ++dir) {
        const auto d = derivative(fg.frames, fg.grid, dir);
        cs.phi[dir].resize(fg.frames.size());
        for (std::size_t idx = 0; idx < fg.frames.size(); ++idx) {
            cs.phi[dir][idx] = fg.frames[idx].partialPivLu().solve(d[idx]);
        }
    }
    return cs;
}

Eigen::MatrixXd maurer_cartan_defect(const ConnectionSample& cs, std::size_t node,
                                     const std::array<std::vector<Eigen::MatrixXd>, 2>& dphi) {
    const Eigen::MatrixXd& p1 = cs.phi[0][node];
    const Eigen::MatrixXd& p2 = cs.phi[1][node];
    // dPhi(d1,d2) = d1 Phi_2 - d2 Phi_1; (Phi^Phi)(d1,d2) = Phi_1 Phi_2 - Phi_2 Phi_1.
    return dphi[0][node] - dphi[1][node] + p1 * p2 - p2 * p1;
}

namespace {

// dphi[0] = d/dt1 of Phi_2, dphi[1] = d/dt2 of Phi_1.
std::array<std::vector<Eigen::MatrixXd>, 2> curl_inputs(const ConnectionSample& cs) {
    return {derivative(cs.phi[1], cs.grid, 0), derivative(cs.phi[0], cs.grid, 1)};
}

}  // namespace

StructureResiduals structure_residuals(const ConnectionSample& cs, int margin) {
    const int m = cs.dim() - 3;
    const auto dphi = curl_inputs(cs);
    StructureResiduals r{0.0, 0.0, 0.0};
    for (std::size_t idx = 0; idx < cs.phi[0].size(); ++idx) {
        const auto n = cs.grid.node(idx);
        if (!cs.grid.interior(n[0], n[1], margin)) continue;
        const Eigen::MatrixXd mc = maurer_cartan_defect(cs, idx, dphi);
        r.gauss = std::max(r.gauss, mc.topLeftCorner(m, m).cwiseAbs().maxCoeff());
        r.codazzi = std::max(r.codazzi, mc.topRightCorner(m, 3).cwiseAbs().maxCoeff());
        r.ricci = std::max(r.ricci, mc.bottomRightCorner(3, 3).cwiseAbs().maxCoeff());
    }
    return r;
}

Eigen::Matrix2d shape_operator(const ConnectionSample& cs, std::size_t node) {
    const FrameSlots slot{cs.dim()};
    Eigen::Matrix2d df, ds;
    for (int i = 0; i < 2; ++i) {
        for (int dir = 0; dir < 2; ++dir) {
            df(i, dir) = cs.phi[dir][node](i, slot.point());
            ds(i, dir) = cs.phi[dir][node](i, slot.sphere());
        }
    }
    // ds = -S df in tangential frame coordinates; fall back to the curvature-radius
    // operator when f is not immersed at this node.
    const double df_scale = df.squaredNorm();
    if (std::abs(df.determinant()) > 1e-10 * df_scale && df_scale > 0) {
        Eigen::Matrix2d s = -ds * df.inverse();
        return 0.5 * (s + s.transpose());
    }
    if (std::abs(ds.determinant()) > 1e-10 * ds.squaredNorm() && ds.squaredNorm() > 0) {
        Eigen::Matrix2d r = -df * ds.inverse();
        return 0.5 * (r + r.transpose());
    }
    return Eigen::Matrix2d::Zero();
}

PrincipalFraming principal_frame(const FrameGrid& fg) {
    if (fg.dim() != 5) throw UsageError("principal_frame: surface frames live in R^5");
    const ConnectionSample cs = connection(fg);
    PrincipalFraming out{fg, std::vector<double>(fg.frames.size(), 0.0), std::vector<bool>(fg.frames.size(), false)};
    const ParamGrid2& g = fg.grid;
    for (int j = 0; j < g.t2.count; ++j) {
        for (int i = 0; i < g.t1.count; ++i) {
            const std::size_t idx = g.index(i, j);
            const Eigen::Matrix2d s = shape_operator(cs, idx);
            const double spread = std::hypot(s(0, 0) - s(1, 1), 2.0 * s(0, 1));
            const double size = s.cwiseAbs().maxCoeff();
            double theta;
            if (spread <= 1e-8 * std::max(size, 1e-300) || size == 0.0) {
                out.umbilic[idx] = true;
                theta = i > 0 ? out.angle[g.index(i - 1, j)] : (j > 0 ? out.angle[g.index(0, j - 1)] : 0.0);
            } else {
                theta = 0.5 * std::atan2(2.0 * s(0, 1), s(0, 0) - s(1, 1));
                if (theta > std::numbers::pi / 4) theta -= std::numbers::pi / 2;
                if (theta <= -std::numbers::pi / 4) theta += std::numbers::pi / 2;
            }
            out.angle[idx] = theta;
            const double c = std::cos(theta), sn = std::sin(theta);
            Eigen::MatrixXd& f = out.frame.frames[idx];
            const Eigen::VectorXd a = f.col(0), b = f.col(1);
            f.col(0) = c * a + sn * b;
            f.col(1) = -sn * a + c * b;
        }
    }
    return out;
}

double ribaucour_residual(const ConnectionSample& cs, int margin) {
    const int m = cs.dim() - 3;
    double worst = 0.0;
    for (std::size_t idx = 0; idx < cs.phi[0].size(); ++idx) {
        const auto n = cs.grid.node(idx);
        if (!cs.grid.interior(n[0], n[1], margin)) continue;
        const Eigen::MatrixXd eta1 = cs.phi[0][idx].topRightCorner(m, 3);
        const Eigen::MatrixXd eta2 = cs.phi[1][idx].topRightCorner(m, 3);
        const Eigen::MatrixXd star1 = -cs.phi[0][idx].bottomLeftCorner(3, m);
        const Eigen::MatrixXd star2 = -cs.phi[1][idx].bottomLeftCorner(3, m);
        const Eigen::MatrixXd wedge = star1 * eta2 - star2 * eta1;
        worst = std::max(worst, wedge.cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace lightcone
