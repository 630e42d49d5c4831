#include "lightcone/cyclic.hpp"

#include <algorithm>
#include <cmath>

#include "lightcone/errors.hpp"
#include "lightcone/sphere.hpp"

namespace lightcone {

ConnectionSample nu_forms(const CircleCongruence& cc) { return connection(cc.frame); }

namespace {

struct Riccati {
    double a, b, c;  // t' = a t^2/2 + b t + c
    double operator()(double t) const { return 0.5 * a * t * t + b * t + c; }
};

// One RK4 step across an edge, coefficients linearly interpolated between the end nodes.
double edge_step(double t, const Riccati& from, const Riccati& to, double delta) {
    const Riccati mid{0.5 * (from.a + to.a), 0.5 * (from.b + to.b), 0.5 * (from.c + to.c)};
    const double k1 = delta * from(t);
    const double k2 = delta * mid(t + 0.5 * k1);
    const double k3 = delta * mid(t + 0.5 * k2);
    const double k4 = delta * to(t + k3);
    return t + (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
}

Riccati coefficients(const ConnectionSample& nu, std::size_t node, int dir) {
    return {nu.nu_s(node, dir), nu.nu_f(node, dir), nu.nu_hat_s(node, dir)};
}

constexpr double kOverflowGuard = 1e12;

void sweep_line(const ConnectionSample& nu, std::vector<double>& t, int fixed, int start, int dir) {
    const ParamGrid2& g = nu.grid;
    const Axis& ax = dir == 0 ? g.t1 : g.t2;
    auto node = [&](int p) { return dir == 0 ? g.index(p, fixed) : g.index(fixed, p); };
    for (int step : {+1, -1}) {
        for (int p = start; p + step >= 0 && p + step < ax.count; p += step) {
            const std::size_t a = node(p), b = node(p + step);
            t[b] = edge_step(t[a], coefficients(nu, a, dir), coefficients(nu, b, dir), step * ax.step);
            if (!std::isfinite(t[b]) || std::abs(t[b]) > kOverflowGuard) {
                throw DivergenceError("integrate_tfield: solution blows up", b);
            }
        }
    }
}

}  // namespace

TField integrate_tfield(const ConnectionSample& nu, double t0, std::size_t base, SweepOrder order) {
    const ParamGrid2& g = nu.grid;
    if (base >= g.size()) throw UsageError("integrate_tfield: base node out of range");
    TField out{g, std::vector<double>(g.size(), 0.0), base, t0};
    const auto b = g.node(base);
    out.t[base] = t0;
    const int first = order == SweepOrder::rows_first ? 0 : 1;
    const int second = 1 - first;
    sweep_line(nu, out.t, b[second], b[first], first);
    const Axis& outer = first == 0 ? g.t1 : g.t2;
    for (int p = 0; p < outer.count; ++p) sweep_line(nu, out.t, p, b[second], second);
    return out;
}

TField integrate_tfield(const CircleCongruence& cc, double t0, std::size_t base, SweepOrder order) {
    return integrate_tfield(nu_forms(cc), t0, base, order);
}

std::vector<std::array<double, 3>> integrability_quadratic(const ConnectionSample& nu) {
    const ParamGrid2& g = nu.grid;
    const std::size_t size = g.size();
    std::array<std::vector<double>, 2> ns, nf, nh;
    for (int dir = 0; dir < 2; ++dir) {
        ns[dir].resize(size);
        nf[dir].resize(size);
        nh[dir].resize(size);
        for (std::size_t i = 0; i < size; ++i) {
            ns[dir][i] = nu.nu_s(i, dir);
            nf[dir][i] = nu.nu_f(i, dir);
            nh[dir][i] = nu.nu_hat_s(i, dir);
        }
    }
    // d alpha(d1, d2) = d1 alpha_2 - d2 alpha_1
    auto exterior = [&](const std::array<std::vector<double>, 2>& form) {
        const auto d1 = derivative(form[1], g, 0);
        const auto d2 = derivative(form[0], g, 1);
        std::vector<double> out(size);
        for (std::size_t i = 0; i < size; ++i) out[i] = d1[i] - d2[i];
        return out;
    };
    const auto dns = exterior(ns), dnf = exterior(nf), dnh = exterior(nh);
    std::vector<std::array<double, 3>> q(size);
    for (std::size_t i = 0; i < size; ++i) {
        auto wedge = [&](const std::array<std::vector<double>, 2>& x, const std::array<std::vector<double>, 2>& y) {
            return x[0][i] * y[1][i] - x[1][i] * y[0][i];
        };
        q[i] = {0.5 * (dns[i] + wedge(nf, ns)), dnf[i] + wedge(nh, ns), dnh[i] + wedge(nh, nf)};
    }
    return q;
}

std::vector<std::array<double, 3>> integrability_quadratic(const CircleCongruence& cc) {
    return integrability_quadratic(nu_forms(cc));
}

NormalityReport normality(const CircleCongruence& cc, double tol) {
    const ConnectionSample nu = nu_forms(cc);
    const auto q = integrability_quadratic(nu);
    const ParamGrid2& g = nu.grid;
    NormalityReport r{0.0, 0.0, false, false};
    for (std::size_t i = 0; i < q.size(); ++i) {
        const auto n = g.node(i);
        if (!g.interior(n[0], n[1])) continue;
        for (double c : q[i]) r.flatness = std::max(r.flatness, std::abs(c));
    }
    r.flat = r.flatness <= tol;

    // Three orthogonal surfaces through the base node; a candidate that blows up is replaced.
    const std::size_t base = g.index(g.t1.count / 2, g.t2.count / 2);
    const double candidates[] = {-0.7, 0.4, 1.3, -2.1, 2.9, 0.05};
    int found = 0;
    double worst = 0.0;
    for (double t0 : candidates) {
        if (found == 3) break;
        try {
            const TField a = integrate_tfield(nu, t0, base, SweepOrder::rows_first);
            const TField b = integrate_tfield(nu, t0, base, SweepOrder::columns_first);
            double defect = 0.0;
            for (std::size_t i = 0; i < a.t.size(); ++i) {
                defect = std::max(defect, std::abs(a.t[i] - b.t[i]) / (1.0 + std::abs(a.t[i])));
            }
            worst = std::max(worst, defect);
            ++found;
        } catch (const DivergenceError&) {
        }
    }
    r.loop_defect = worst;
    r.three_solutions = found == 3 && worst <= tol;
    return r;
}

bool is_normal(const CircleCongruence& cc, double tol) {
    const NormalityReport r = normality(cc, tol);
    return r.flat && r.three_solutions;
}

namespace {

double max_nu(const ConnectionSample& nu) {
    double worst = 0.0;
    for (int dir = 0; dir < 2; ++dir) {
        for (std::size_t i = 0; i < nu.phi[dir].size(); ++i) {
            const auto n = nu.grid.node(i);
            if (!nu.grid.interior(n[0], n[1])) continue;
            worst = std::max({worst, std::abs(nu.nu_s(i, dir)), std::abs(nu.nu_f(i, dir)),
                              std::abs(nu.nu_hat_s(i, dir))});
        }
    }
    return worst;
}

}  // namespace

std::vector<StripGrid> orthogonal_family(const CircleCongruence& cc, const std::vector<FamilyMember>& schedule,
                                         double parallel_tol) {
    const double nu_max = max_nu(nu_forms(cc));
    if (nu_max > parallel_tol) {
        throw UsageError("orthogonal_family: frame is not parallel (max nu = " + std::to_string(nu_max) + ")");
    }
    const FrameGrid& fg = cc.frame;
    const FrameSlots slot{fg.dim()};
    std::vector<StripGrid> members;
    for (const FamilyMember& m : schedule) {
        if (!m.at_infinity && m.gprime == 0.0) throw SingularParametrizationError("orthogonal_family: g' vanishes");
        StripGrid sg{fg.grid, std::vector<Eigen::VectorXd>(fg.frames.size()), std::vector<Eigen::VectorXd>(fg.frames.size())};
        for (std::size_t i = 0; i < fg.frames.size(); ++i) {
            const Eigen::MatrixXd& F = fg.frames[i];
            const Eigen::VectorXd s = F.col(slot.sphere()), f = F.col(slot.point()), fh = F.col(slot.dual());
            if (m.at_infinity) {
                sg.f[i] = fh;
                sg.s[i] = s;
            } else {
                sg.f[i] = (m.g * s + f - (0.5 * m.g * m.g) * fh) / m.gprime;
                sg.s[i] = s - m.g * fh;
            }
        }
        members.push_back(std::move(sg));
    }
    return members;
}

double family_orthogonality_residual(const CircleCongruence& cc, double g) {
    const FrameGrid& fg = cc.frame;
    const FrameSlots slot{fg.dim()};
    std::vector<Eigen::VectorXd> member(fg.frames.size()), velocity(fg.frames.size());
    for (std::size_t i = 0; i < fg.frames.size(); ++i) {
        const Eigen::MatrixXd& F = fg.frames[i];
        member[i] = g * F.col(slot.sphere()) + F.col(slot.point()) - (0.5 * g * g) * F.col(slot.dual());
        velocity[i] = F.col(slot.sphere()) - g * F.col(slot.dual());
    }
    const auto d1 = derivative(member, fg.grid, 0);
    const auto d2 = derivative(member, fg.grid, 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < member.size(); ++i) {
        const auto n = fg.grid.node(i);
        if (!fg.grid.interior(n[0], n[1])) continue;
        worst = std::max({worst, std::abs(inner(velocity[i], d1[i])), std::abs(inner(velocity[i], d2[i]))});
    }
    return worst;
}

CrossRatioField family_cross_ratio(const std::array<StripGrid, 4>& members) {
    const std::size_t size = members[0].f.size();
    for (const auto& m : members) {
        if (m.f.size() != size) throw UsageError("family_cross_ratio: members sampled on different grids");
    }
    CrossRatioField out{std::vector<double>(size), 0.0, 0.0};
    for (std::size_t i = 0; i < size; ++i) {
        out.values[i] = cross_ratio(MinkVec(members[0].f[i]), MinkVec(members[1].f[i]), MinkVec(members[2].f[i]),
                                    MinkVec(members[3].f[i]));
    }
    for (double v : out.values) out.mean += v;
    out.mean /= static_cast<double>(size);
    for (double v : out.values) out.stddev += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(out.stddev / static_cast<double>(size));
    return out;
}

}  // namespace lightcone
