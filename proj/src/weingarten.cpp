#include "lightcone/weingarten.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lightcone/errors.hpp"
#include "lightcone/spaceform.hpp"

namespace lightcone {

Epsilon epsilon_from_eps2(double eps2) {
    if (eps2 == 1.0) return Epsilon::one;
    if (eps2 == -1.0) return Epsilon::i;
    throw UsageError("eps2 must be +1 or -1");
}

namespace {

double coeff_scale(const Quadratic& q) { return std::max({std::abs(q.q2), std::abs(q.q1), std::abs(q.q0)}); }

}  // namespace

bool Quadratic::root_at_infinity(double tol) const {
    const double s = coeff_scale(*this);
    return s > 0.0 && std::abs(q2) <= tol * s;
}

std::vector<double> Quadratic::real_roots(double tol) const {
    const double s = coeff_scale(*this);
    if (s == 0.0) return {};
    if (std::abs(q2) <= tol * s) {
        if (std::abs(q1) <= tol * s) return {};
        return {-q0 / q1};
    }
    const double disc = q1 * q1 - 4.0 * q2 * q0;
    const double disc_scale = q1 * q1 + std::abs(4.0 * q2 * q0);
    if (std::abs(disc) <= tol * disc_scale) return {-q1 / (2.0 * q2), -q1 / (2.0 * q2)};
    if (disc < 0.0) return {};
    const double q = -0.5 * (q1 + std::copysign(std::sqrt(disc), q1));
    std::vector<double> roots{q / q2, q0 / q};
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::array<ProjectivePoint, 2> Quadratic::projective_roots(double tol) const {
    const double s = coeff_scale(*this);
    if (s == 0.0) throw DegenerateInputError("projective_roots: zero polynomial");
    if (std::abs(q2) <= tol * s) {
        if (std::abs(q1) <= tol * s) return {ProjectivePoint{0.0, true}, ProjectivePoint{0.0, true}};
        return {ProjectivePoint{-q0 / q1, false}, ProjectivePoint{0.0, true}};
    }
    const std::complex<double> root = std::sqrt(std::complex<double>(q1 * q1 - 4.0 * q2 * q0));
    return {ProjectivePoint{(-q1 + root) / (2.0 * q2), false}, ProjectivePoint{(-q1 - root) / (2.0 * q2), false}};
}

WeingartenFamily family_coeffs(double k, double a1, double a2, double eps2) {
    epsilon_from_eps2(eps2);
    if (!(a2 > 0.0)) throw ExcludedCaseError("family_coeffs: a2 must be positive (a2 = 0 is the totally umbilic pencil)");
    const double m = a1 * a1 + eps2 * a2 * a2;
    return WeingartenFamily{k,
                            a1,
                            a2,
                            eps2,
                            Quadratic{m, 2.0 * a1, 1.0},
                            Quadratic{a1 * k, k - m, -a1},
                            Quadratic{k * k, -2.0 * a1 * k, m}};
}

double case_invariant(const WeingartenFamily& wf, double t) {
    const double ch = wf.cH(t);
    const double g = 1.0 + wf.k * t * t;
    return wf.cK(t) * wf.c(t) - ch * ch - wf.eps2 * wf.a2 * wf.a2 * g * g;
}

ParallelFrame parallel_frame_at(double k, const Eigen::VectorXd& s, const Eigen::VectorXd& f,
                                const Eigen::VectorXd& fhat, double t) {
    const double g = 1.0 + k * t * t;
    if (!(g > 0.0)) throw InfinityBoundaryError("parallel_frame_at: 1 + k t^2 must be positive");
    const double sigma = std::sqrt(g);
    const Eigen::VectorXd nk = -(k / 2.0) * f + fhat;
    const Eigen::VectorXd shifted = s + (t / (1.0 + sigma)) * nk;
    const Eigen::VectorXd ft = (f - t * shifted) / sigma;
    // The printed dual point is not lightlike for k != 0; nk = -(k/2) f_t + fhat_t fixes it.
    return ParallelFrame{(s + t * ((k / 2.0) * f + fhat)) / sigma, ft, nk + (k / 2.0) * ft};
}

ParallelFrame parallel_frame_at(const WeingartenFamily& wf, const CircleFrame& base, double t) {
    return parallel_frame_at(wf.k, base.s.vec().coords(), base.p.vec().coords(), base.phat.vec().coords(), t);
}

Eigen::VectorXd parallel_velocity(double k, const Eigen::VectorXd& s, const Eigen::VectorXd& f,
                                  const Eigen::VectorXd& fhat, double t) {
    const double g = 1.0 + k * t * t;
    if (!(g > 0.0)) throw InfinityBoundaryError("parallel_velocity: 1 + k t^2 must be positive");
    const double sigma = std::sqrt(g);
    const double dsigma = k * t / sigma;
    const double tau_prime = (2.0 * t * (1.0 + sigma) - t * t * dsigma) / ((1.0 + sigma) * (1.0 + sigma));
    const Eigen::VectorXd nk = -(k / 2.0) * f + fhat;
    const Eigen::VectorXd ft = parallel_frame_at(k, s, f, fhat, t).f;
    return -(dsigma / sigma) * ft + (-s - tau_prime * nk) / sigma;
}

namespace {

// cos/sin or cosh/sinh of u and the numerators P = k1 A, Q = k2 B of the principal curvatures at t = 0.
struct AnsatzTerms {
    double A, B, P, Q;
};

AnsatzTerms ansatz_terms(double a1, double a2, double eps2, double u) {
    if (eps2 > 0) {
        const double A = std::cos(u), B = std::sin(u);
        return {A, B, a1 * A - a2 * B, a1 * B + a2 * A};
    }
    const double A = std::cosh(u), B = std::sinh(u);
    return {A, B, a1 * A + a2 * B, a1 * B + a2 * A};
}

double guarded_ratio(double num, double den, double scale, bool& blowup) {
    if (std::abs(den) <= 1e-14 * scale) {
        blowup = true;
        return std::copysign(std::numeric_limits<double>::infinity(), num * (den < 0 ? -1.0 : 1.0));
    }
    return num / den;
}

}  // namespace

PrincipalCurvatures principal_curvatures_at(const WeingartenFamily& wf, double u, double t) {
    if (!(1.0 + wf.k * t * t > 0.0)) throw InfinityBoundaryError("principal_curvatures_at: 1 + k t^2 must be positive");
    const AnsatzTerms a = ansatz_terms(wf.a1, wf.a2, wf.eps2, u);
    PrincipalCurvatures out{0.0, 0.0, false};
    out.k1 = guarded_ratio(a.P - wf.k * t * a.A, a.A + t * a.P, std::abs(a.A) + std::abs(t * a.P), out.blowup);
    out.k2 = guarded_ratio(a.Q - wf.k * t * a.B, a.B + t * a.Q, std::abs(a.B) + std::abs(t * a.Q), out.blowup);
    return out;
}

std::array<ProjectivePoint, 4> branch_points(const WeingartenFamily& wf) {
    const auto ck = wf.cK.projective_roots();
    const auto sphere = Quadratic{wf.k, 0.0, 1.0}.projective_roots();
    return {ck[0], ck[1], sphere[0], sphere[1]};
}

namespace {

// Homogeneous bracket [a, b] with finite points (z : 1) and infinity (1 : 0).
std::complex<double> bracket(const ProjectivePoint& a, const ProjectivePoint& b) {
    const std::complex<double> az = a.infinite ? 1.0 : a.z, aw = a.infinite ? 0.0 : 1.0;
    const std::complex<double> bz = b.infinite ? 1.0 : b.z, bw = b.infinite ? 0.0 : 1.0;
    return az * bw - aw * bz;
}

double point_scale(const ProjectivePoint& p) { return p.infinite ? 1.0 : 1.0 + std::abs(p.z); }

}  // namespace

std::complex<double> branch_cross_ratio(const std::array<ProjectivePoint, 4>& z) {
    const std::complex<double> num = bracket(z[0], z[2]) * bracket(z[1], z[3]);
    const std::complex<double> den = bracket(z[0], z[3]) * bracket(z[1], z[2]);
    const double scale = point_scale(z[0]) * point_scale(z[1]) * point_scale(z[2]) * point_scale(z[3]);
    if (std::abs(den) <= 1e-14 * scale) {
        if (std::abs(num) <= 1e-14 * scale) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    return num / den;
}

namespace {

struct Quartic {
    double k;
    Quadratic ck;
    double operator()(double t) const { return (1.0 + k * t * t) * ck(t); }
    double slope(double t) const { return 2.0 * k * t * ck(t) + (1.0 + k * t * t) * ck.slope(t); }
};

struct PhasePoint {
    double t, p;  // t and t'
};

PhasePoint rk4(const Quartic& P, PhasePoint x, double h) {
    auto f = [&](const PhasePoint& y) { return PhasePoint{y.p, 0.5 * P.slope(y.t)}; };
    const PhasePoint k1 = f(x);
    const PhasePoint k2 = f({x.t + 0.5 * h * k1.t, x.p + 0.5 * h * k1.p});
    const PhasePoint k3 = f({x.t + 0.5 * h * k2.t, x.p + 0.5 * h * k2.p});
    const PhasePoint k4 = f({x.t + h * k3.t, x.p + h * k3.p});
    return {x.t + h / 6.0 * (k1.t + 2 * k2.t + 2 * k3.t + k4.t), x.p + h / 6.0 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p)};
}

// Advances from r0 to r1 in substeps no longer than hmax, recording sign changes of t'.
PhasePoint advance(const Quartic& P, PhasePoint x, double r0, double r1, double hmax, std::vector<double>& turning) {
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(r1 - r0) / hmax - 1e-9)));
    const double h = (r1 - r0) / n;
    for (int i = 0; i < n; ++i) {
        const PhasePoint next = rk4(P, x, h);
        if (x.p * next.p < 0.0) {
            double lo = 0.0, hi = h;
            while (std::abs(hi - lo) > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                if (rk4(P, x, mid).p * x.p > 0.0) lo = mid; else hi = mid;
            }
            turning.push_back(r0 + i * h + 0.5 * (lo + hi));
        }
        x = next;
    }
    return x;
}

void check_quartic(const std::array<ProjectivePoint, 4>& z) {
    for (int i = 0; i < 2; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (z[i].infinite || z[j].infinite) continue;
            if (std::abs(z[i].z - z[j].z) <= 1e-9 * (1.0 + std::abs(z[i].z))) {
                throw DegenerateQuarticError("elliptic_reparam: quartic has a double root");
            }
        }
    }
}

}  // namespace

EllipticReparam elliptic_reparam(const WeingartenFamily& wf, double t_init, const Axis& r_axis, int substeps) {
    if (r_axis.count < 1 || substeps < 1) throw UsageError("elliptic_reparam: empty sampling");
    if (!(1.0 + wf.k * t_init * t_init > 0.0)) throw InfinityBoundaryError("elliptic_reparam: t_init beyond the infinity boundary");
    const Quartic P{wf.k, wf.cK};
    const double p0 = P(t_init);
    const double pscale = 1.0 + std::abs(P.slope(t_init));
    if (std::abs(p0) <= 1e-12 * pscale) throw BranchAmbiguityError("elliptic_reparam: t_init is a branch point");
    if (p0 < 0.0) throw DomainError("elliptic_reparam: (1 + k t^2) cK(t) < 0 at t_init");

    EllipticReparam er{wf.k, wf.eps2, wf.a1, wf.a2, {}, {}, {}, branch_points(wf), {}, {}, 0.0};
    check_quartic(er.branch);
    er.cross_ratio = branch_cross_ratio(er.branch);

    const int n = r_axis.count;
    er.r.resize(n);
    er.t.resize(n);
    er.dt.resize(n);
    const double hmax = std::abs(r_axis.step) / substeps;
    const PhasePoint start{t_init, std::sqrt(p0)};
    // March outward from r = 0 in both directions.
    int first_up = 0;
    while (first_up < n && r_axis.at(first_up) < 0.0) ++first_up;
    PhasePoint x = start;
    double r_prev = 0.0;
    for (int i = first_up; i < n; ++i) {
        x = advance(P, x, r_prev, r_axis.at(i), hmax, er.turning_points);
        r_prev = r_axis.at(i);
        er.r[i] = r_prev;
        er.t[i] = x.t;
        er.dt[i] = x.p;
    }
    x = start;
    r_prev = 0.0;
    for (int i = first_up - 1; i >= 0; --i) {
        x = advance(P, x, r_prev, r_axis.at(i), hmax, er.turning_points);
        r_prev = r_axis.at(i);
        er.r[i] = r_prev;
        er.t[i] = x.t;
        er.dt[i] = x.p;
    }
    std::sort(er.turning_points.begin(), er.turning_points.end());
    for (int i = 0; i < n; ++i) {
        er.ode_residual = std::max(er.ode_residual, std::abs(er.dt[i] * er.dt[i] - P(er.t[i])));
    }
    return er;
}

EllipticReparam elliptic_reparam(const WeingartenFamily& wf, double t_init, double r_lo, double r_hi, double step) {
    if (!(step > 0.0) || r_hi < r_lo) throw UsageError("elliptic_reparam: invalid r span");
    const int count = static_cast<int>(std::floor((r_hi - r_lo) / step + 1e-9)) + 1;
    return elliptic_reparam(wf, t_init, Axis{r_lo, step, count});
}

namespace {

double cos_type(double eps2, double x) { return eps2 > 0 ? std::cos(x) : std::cosh(x); }
double sin_type(double eps2, double x) { return eps2 > 0 ? std::sin(x) : std::sinh(x); }

std::vector<double> central_slope(const std::vector<double>& v, double h) {
    const int n = static_cast<int>(v.size());
    if (n < 3) throw UsageError("pendulum: need at least 3 samples");
    std::vector<double> d(n);
    d[0] = (-3 * v[0] + 4 * v[1] - v[2]) / (2 * h);
    d[n - 1] = (3 * v[n - 1] - 4 * v[n - 2] + v[n - 3]) / (2 * h);
    for (int i = 1; i < n - 1; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2 * h);
    return d;
}

}  // namespace

double pendulum_residual(const std::vector<double>& v, double h, double eps2, double c_red, double r0, double v0,
                         int margin) {
    const auto dv = central_slope(v, h);
    double worst = 0.0;
    for (int i = margin; i < static_cast<int>(v.size()) - margin; ++i) {
        worst = std::max(worst, std::abs(c_red + eps2 * dv[i] * dv[i] - r0 * cos_type(eps2, 2.0 * (v[i] - v0))));
    }
    return worst;
}

PendulumFit fit_pendulum(const std::vector<double>& v, double h, double eps2, int margin) {
    const auto dv = central_slope(v, h);
    const int lo = margin, hi = static_cast<int>(v.size()) - margin;
    if (hi - lo < 3) throw UsageError("fit_pendulum: too few samples");
    // c + eps2 v'^2 = alpha C(2v) + beta S(2v), linear in (c, alpha, beta).
    Eigen::MatrixXd a(hi - lo, 3);
    Eigen::VectorXd rhs(hi - lo);
    for (int i = lo; i < hi; ++i) {
        a(i - lo, 0) = 1.0;
        a(i - lo, 1) = -cos_type(eps2, 2.0 * v[i]);
        a(i - lo, 2) = -sin_type(eps2, 2.0 * v[i]);
        rhs(i - lo) = -eps2 * dv[i] * dv[i];
    }
    const Eigen::Vector3d x = a.colPivHouseholderQr().solve(rhs);
    PendulumFit fit{x[0], 0.0, 0.0, 0.0};
    const double alpha = x[1], beta = x[2];
    if (eps2 > 0) {
        fit.r0 = std::hypot(alpha, beta);
        fit.v0 = 0.5 * std::atan2(beta, alpha);
    } else {
        if (!(std::abs(beta) < std::abs(alpha))) throw DomainError("fit_pendulum: samples are not of cosh type");
        fit.r0 = std::copysign(std::sqrt(alpha * alpha - beta * beta), alpha);
        fit.v0 = 0.5 * std::atanh(-beta / alpha);
    }
    fit.residual = pendulum_residual(v, h, eps2, fit.c_red, fit.r0, fit.v0, margin);
    return fit;
}

namespace {

double gauss_rhs(const WeingartenFamily& wf, GaussForm form, double u) {
    const double big_c = wf.a1 * wf.a1 - wf.eps2 * wf.a2 * wf.a2 + wf.k;
    const double big_d = (form == GaussForm::printed ? 0.5 : 1.0) * wf.a1 * wf.a2;
    return 0.5 * big_c * sin_type(wf.eps2, 2.0 * u) + big_d * cos_type(wf.eps2, 2.0 * u);
}

}  // namespace

double sine_gordon_residual(const std::vector<double>& u, const ParamGrid2& grid, const WeingartenFamily& wf,
                            GaussForm form) {
    if (u.size() != grid.size()) throw UsageError("sine_gordon_residual: field does not match grid");
    const double h1 = grid.t1.step, h2 = grid.t2.step;
    double worst = 0.0;
    for (int i = 1; i < grid.t1.count - 1; ++i) {
        for (int j = 1; j < grid.t2.count - 1; ++j) {
            const double c = u[grid.index(i, j)];
            const double u11 = (u[grid.index(i + 1, j)] - 2 * c + u[grid.index(i - 1, j)]) / (h1 * h1);
            const double u22 = (u[grid.index(i, j + 1)] - 2 * c + u[grid.index(i, j - 1)]) / (h2 * h2);
            worst = std::max(worst, std::abs(u11 - wf.eps2 * u22 + gauss_rhs(wf, form, c)));
        }
    }
    return worst;
}

double profile_acceleration(const WeingartenFamily& wf, const UProfile& p, double u) {
    const double c = std::cos(p.theta), s = std::sin(p.theta);
    const double speed = c * c - wf.eps2 * s * s;
    if (std::abs(speed) < 1e-8) throw UsageError("UProfile: wave direction is characteristic");
    return -gauss_rhs(wf, p.form, u) / speed;
}

namespace {

using Mat5 = Eigen::Matrix<double, 5, 5>;

struct StripState {
    Mat5 F;
    double U, V;  // profile value and its derivative along the wave direction
};

struct StripRate {
    Mat5 dF;
    double dU, dV;
};

StripState nudge(const StripState& s, const StripRate& d, double h) {
    return {s.F + h * d.dF, s.U + h * d.dU, s.V + h * d.dV};
}

class FrameSystem {
public:
    FrameSystem(const WeingartenFamily& wf, const UProfile& p) : wf_(wf), profile_(p) {
        dir_[0] = std::cos(p.theta);
        dir_[1] = std::sin(p.theta);
    }

    Mat5 phi(double u, double du, int axis) const {
        const AnsatzTerms a = ansatz_terms(wf_.a1, wf_.a2, wf_.eps2, u);
        const double u1 = dir_[0] * du, u2 = dir_[1] * du;
        const double b1 = wf_.k / 2.0;
        Mat5 m = Mat5::Zero();
        if (axis == 0) {
            const double alpha = wf_.eps2 > 0 ? u2 : -u2;
            m(1, 0) = alpha;
            m(2, 0) = a.P;
            m(3, 0) = -b1 * a.A;
            m(4, 0) = -a.A;
            m(0, 1) = -alpha;
            m(0, 2) = -a.P;
            m(0, 3) = a.A;
            m(0, 4) = b1 * a.A;
        } else {
            const double alpha = u1;
            m(1, 0) = alpha;
            m(0, 1) = -alpha;
            m(2, 1) = a.Q;
            m(3, 1) = -b1 * a.B;
            m(4, 1) = -a.B;
            m(1, 2) = -a.Q;
            m(1, 3) = a.B;
            m(1, 4) = b1 * a.B;
        }
        return m;
    }

    StripRate rate(const StripState& s, int axis) const {
        return {s.F * phi(s.U, s.V, axis), dir_[axis] * s.V, dir_[axis] * profile_acceleration(wf_, profile_, s.U)};
    }

    StripState step(const StripState& s, int axis, double h) const {
        const StripRate k1 = rate(s, axis);
        const StripRate k2 = rate(nudge(s, k1, 0.5 * h), axis);
        const StripRate k3 = rate(nudge(s, k2, 0.5 * h), axis);
        const StripRate k4 = rate(nudge(s, k3, h), axis);
        return {s.F + h / 6.0 * (k1.dF + 2 * k2.dF + 2 * k3.dF + k4.dF),
                s.U + h / 6.0 * (k1.dU + 2 * k2.dU + 2 * k3.dU + k4.dU),
                s.V + h / 6.0 * (k1.dV + 2 * k2.dV + 2 * k3.dV + k4.dV)};
    }

    StripState edge(StripState s, int axis, double h) const {
        const int n = std::max(1, profile_.substeps);
        for (int i = 0; i < n; ++i) s = step(s, axis, h / n);
        return s;
    }

private:
    const WeingartenFamily& wf_;
    const UProfile& profile_;
    double dir_[2];
};

void sweep(const FrameSystem& sys, const ParamGrid2& g, std::vector<StripState>& states, int fixed, int start,
           int axis) {
    const Axis& ax = axis == 0 ? g.t1 : g.t2;
    auto node = [&](int p) { return axis == 0 ? g.index(p, fixed) : g.index(fixed, p); };
    for (int dir : {+1, -1}) {
        for (int p = start; p + dir >= 0 && p + dir < ax.count; p += dir) {
            states[node(p + dir)] = sys.edge(states[node(p)], axis, dir * ax.step);
        }
    }
}

std::vector<StripState> integrate_strip(const FrameSystem& sys, const ParamGrid2& g, const StripState& init,
                                        int first_axis) {
    std::vector<StripState> states(g.size());
    const int i0 = g.t1.count / 2, j0 = g.t2.count / 2;
    states[g.index(i0, j0)] = init;
    const int base[2] = {i0, j0};
    const int second = 1 - first_axis;
    sweep(sys, g, states, base[second], base[first_axis], first_axis);
    const Axis& outer = first_axis == 0 ? g.t1 : g.t2;
    for (int p = 0; p < outer.count; ++p) sweep(sys, g, states, p, base[second], second);
    return states;
}

}  // namespace

SynthesizedNet synthesize_net(const WeingartenFamily& wf, const UProfile& profile, const NetSpec& spec) {
    for (const Axis* a : {&spec.t1, &spec.t2, &spec.r}) {
        if (a->count < 5) throw UsageError("synthesize_net: need at least 5 nodes per axis");
    }
    const ParamGrid2 g2{spec.t1, spec.t2};
    const FrameSystem sys(wf, profile);

    // Base frame at the centre node: f = p0 in Q_k, s tangent plane, fhat = nk + (k/2) f.
    const int n = 3;
    const SpaceForm q = canonical_space_form(wf.k, n);
    StripState init{Mat5::Zero(), profile.u0, profile.du0};
    init.F(0, 0) = 1.0;
    init.F(1, 1) = 1.0;
    init.F(2, 2) = 1.0;
    const Eigen::VectorXd p0 = origin_point(n).coords();
    init.F.col(3) = p0;
    init.F.col(4) = q.nk.coords() + (wf.k / 2.0) * p0;

    const auto rows = integrate_strip(sys, g2, init, 0);
    const auto cols = integrate_strip(sys, g2, init, 1);
    double defect = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        defect = std::max({defect, (rows[i].F - cols[i].F).cwiseAbs().maxCoeff(), std::abs(rows[i].U - cols[i].U)});
    }
    if (!(defect <= spec.loop_tol)) {
        throw InconsistentAnsatzError("synthesize_net: frame integration is path dependent (loop defect " +
                                      std::to_string(defect) + ")");
    }

    SynthesizedNet out;
    out.loop_defect = defect;
    out.base.grid = g2;
    out.base.frames.resize(g2.size());
    out.u.resize(g2.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.base.frames[i] = rows[i].F;
        out.u[i] = rows[i].U;
    }

    out.reparam = elliptic_reparam(wf, spec.t_init, spec.r);
    for (double rt : out.reparam.turning_points) {
        if (rt >= spec.r.at(0) - 1e-12 && rt <= spec.r.hi() + 1e-12) {
            throw SingularNetError("synthesize_net: r-span reaches a constant mean curvature surface at r = " +
                                   std::to_string(rt));
        }
    }

    const ParamGrid3 g3{{spec.t1, spec.t2, spec.r}};
    NetGrid& net = out.net;
    net.grid = g3;
    net.gauge = q;
    net.f.resize(g3.size());
    for (auto& t : net.tangents) t.resize(g3.size());
    for (int i = 0; i < spec.t1.count; ++i) {
        for (int j = 0; j < spec.t2.count; ++j) {
            const StripState& st = rows[g2.index(i, j)];
            const AnsatzTerms a = ansatz_terms(wf.a1, wf.a2, wf.eps2, st.U);
            const Eigen::VectorXd s1 = st.F.col(0), s2 = st.F.col(1), s = st.F.col(2), f = st.F.col(3),
                                  fh = st.F.col(4);
            for (int kk = 0; kk < spec.r.count; ++kk) {
                const double t = out.reparam.t[kk], dt = out.reparam.dt[kk];
                const std::size_t idx = g3.index(i, j, kk);
                if (!(1.0 + wf.k * t * t > 0.0)) throw SingularNetError("synthesize_net: t(r) leaves the space form");
                const double sigma = std::sqrt(1.0 + wf.k * t * t);
                const double l1 = a.A + t * a.P, l2 = a.B + t * a.Q;
                if (!(l1 * a.A > 0.0) || !(l2 * a.B > 0.0)) {
                    throw SingularNetError("synthesize_net: parallel surface reaches a focal point (node " +
                                           std::to_string(idx) + ")");
                }
                net.f[idx] = parallel_frame_at(wf.k, s, f, fh, t).f;
                net.tangents[0][idx] = (l1 / sigma) * s1;
                net.tangents[1][idx] = (l2 / sigma) * s2;
                net.tangents[2][idx] = dt * parallel_velocity(wf.k, s, f, fh, t);
            }
        }
    }
    return out;
}

ReducedLame reduced_lame(const NetGrid& net, double eps2, TangentSource source, int margin, double gauge_tol) {
    epsilon_from_eps2(eps2);
    const int extra = (source == TangentSource::finite_difference || !net.has_tangents()) ? 1 : 0;
    const int mixed_margin = margin < 0 ? 2 + extra : margin;
    const int residual_margin = margin < 0 ? 3 + extra : margin;
    const auto tangents = coordinate_tangents(net, source);
    const ParamGrid3& g = net.grid;
    const std::size_t size = g.size();
    ReducedLame rl;
    rl.grid = g;
    rl.eps2 = eps2;
    rl.w.resize(size);
    for (std::size_t n = 0; n < size; ++n) {
        const double l3 = std::sqrt(std::max(inner(tangents[2][n], tangents[2][n]), 0.0));
        if (!(l3 > 0.0)) throw ImmersionFailureError("reduced_lame: l3 vanishes", n);
        const double l1 = std::sqrt(std::max(inner(tangents[0][n], tangents[0][n]), 0.0)) / l3;
        const double l2 = std::sqrt(std::max(inner(tangents[1][n], tangents[1][n]), 0.0)) / l3;
        // Boundary rows carry one-sided stencil error when tangents come from differences.
        if (g.interior(g.node(n)) && std::abs(l1 * l1 + eps2 * l2 * l2 - 1.0) > gauge_tol) {
            throw InconsistentGaugeError("reduced_lame: rescaled Lame functions violate l1^2 + eps^2 l2^2 = 1");
        }
        if (eps2 > 0) {
            rl.w[n] = std::atan2(l2, l1);
        } else {
            if (!(l2 < l1)) throw InconsistentGaugeError("reduced_lame: l2 >= l1 has no hyperbolic angle");
            rl.w[n] = std::atanh(l2 / l1);
        }
    }

    std::array<ScalarField, 3> dw;
    for (int a = 0; a < 3; ++a) dw[a] = derivative(rl.w, g, a);
    const ScalarField w11 = derivative(dw[0], g, 0), w22 = derivative(dw[1], g, 1), w33 = derivative(dw[2], g, 2);
    const ScalarField w13 = derivative(dw[0], g, 2), w23 = derivative(dw[1], g, 2);
    rl.w0.resize(size);
    rl.w1.resize(size);
    rl.w2.resize(size);
    rl.w3.resize(size);
    for (std::size_t n = 0; n < size; ++n) {
        const double w = rl.w[n];
        const double cot_type = eps2 > 0 ? 1.0 / std::tan(w) : 1.0 / std::tanh(w);
        const double tan_type = eps2 > 0 ? std::tan(w) : -std::tanh(w);
        rl.w1[n] = -w13[n] * cot_type;
        rl.w2[n] = w23[n] * tan_type;
        rl.w3[n] = ((w11[n] - eps2 * w22[n]) - w33[n] * cos_type(eps2, 2.0 * w)) / sin_type(eps2, 2.0 * w);
        rl.w0[n] = dw[0][n] * dw[0][n] + eps2 * dw[1][n] * dw[1][n] + dw[2][n] * dw[2][n];
    }
    rl.mixed13 = max_interior(w13, g, mixed_margin);
    rl.mixed23 = max_interior(w23, g, mixed_margin);

    auto d = [&](const ScalarField& x, int a) { return derivative(x, g, a); };
    const ScalarField d2w1 = d(rl.w1, 1), d1w2 = d(rl.w2, 0);
    const ScalarField d3w2 = d(rl.w2, 2), d2w3 = d(rl.w3, 1);
    const ScalarField d1w3 = d(rl.w3, 0), d3w1 = d(rl.w1, 2);
    const ScalarField d1w1 = d(rl.w1, 0), d2w2 = d(rl.w2, 1), d3w3 = d(rl.w3, 2), d3w0 = d(rl.w0, 2);
    ScalarField r12(size), r23(size), r31(size), div(size);
    for (std::size_t n = 0; n < size; ++n) {
        r12[n] = d2w1[n] - d1w2[n];
        r23[n] = d3w2[n] - d2w3[n];
        r31[n] = d1w3[n] - d3w1[n];
        div[n] = d1w1[n] + eps2 * d2w2[n] + d3w3[n] - eps2 * d3w0[n];
    }
    rl.residuals = {max_interior(r12, g, residual_margin), max_interior(r23, g, residual_margin),
                    max_interior(r31, g, residual_margin), max_interior(div, g, residual_margin)};

    // Split w = u(t1, t2) + v(t3) about the centre column and slice.
    const int i0 = g.axes[0].count / 2, j0 = g.axes[1].count / 2, k0 = g.axes[2].count / 2;
    rl.u.resize(static_cast<std::size_t>(g.axes[0].count) * g.axes[1].count);
    rl.v.resize(g.axes[2].count);
    const double ref = rl.w[g.index(i0, j0, k0)];
    for (int kk = 0; kk < g.axes[2].count; ++kk) rl.v[kk] = rl.w[g.index(i0, j0, kk)] - ref;
    rl.split_defect = 0.0;
    for (int i = 0; i < g.axes[0].count; ++i) {
        for (int j = 0; j < g.axes[1].count; ++j) {
            const double u = rl.w[g.index(i, j, k0)];
            rl.u[static_cast<std::size_t>(i) * g.axes[1].count + j] = u;
            for (int kk = 0; kk < g.axes[2].count; ++kk) {
                rl.split_defect = std::max(rl.split_defect, std::abs(rl.w[g.index(i, j, kk)] - u - rl.v[kk]));
            }
        }
    }
    try {
        rl.pendulum = fit_pendulum(rl.v, g.axes[2].step, eps2);
    } catch (const DomainError&) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        rl.pendulum = PendulumFit{nan, nan, nan, nan};
    }
    return rl;
}

std::array<double, 4> reduced_lame_residuals(const NetGrid& net, double eps2, TangentSource source, int margin) {
    return reduced_lame(net, eps2, source, margin, 5e-2).residuals;
}

}  // namespace lightcone
