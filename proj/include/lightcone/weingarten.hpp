#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "lightcone/grid.hpp"
#include "lightcone/sphere.hpp"
#include "lightcone/strip.hpp"
#include "lightcone/triorth.hpp"

namespace lightcone {

enum class Epsilon { one, i };

inline double eps2_of(Epsilon e) { return e == Epsilon::one ? 1.0 : -1.0; }
Epsilon epsilon_from_eps2(double eps2);

// Point of the projective line; infinite means (1 : 0).
struct ProjectivePoint {
    std::complex<double> z;
    bool infinite = false;
};

struct Quadratic {
    double q2 = 0.0, q1 = 0.0, q0 = 0.0;

    double operator()(double t) const { return (q2 * t + q1) * t + q0; }
    double slope(double t) const { return 2.0 * q2 * t + q1; }
    // Real roots counted with multiplicity; a vanishing leading coefficient drops a root to infinity.
    std::vector<double> real_roots(double tol = 1e-12) const;
    bool root_at_infinity(double tol = 1e-12) const;
    std::array<ProjectivePoint, 2> projective_roots(double tol = 1e-12) const;
};

struct WeingartenFamily {
    double k;
    double a1;
    double a2;
    double eps2;
    Quadratic cK, cH, c;

    Epsilon eps() const { return epsilon_from_eps2(eps2); }
};

WeingartenFamily family_coeffs(double k, double a1, double a2, double eps2);

// cK c - cH^2 - eps2 a2^2 (1 + k t^2)^2
double case_invariant(const WeingartenFamily& wf, double t);

struct ParallelFrame {
    Eigen::VectorXd s, f, fhat;
};

// (s_t, f_t, fhat_t) from a base frame with f in Q_k and nk = -(k/2) f + fhat.
ParallelFrame parallel_frame_at(const WeingartenFamily& wf, const CircleFrame& base, double t);
ParallelFrame parallel_frame_at(double k, const Eigen::VectorXd& s, const Eigen::VectorXd& f,
                                const Eigen::VectorXd& fhat, double t);
// d f_t / dt for the same parametrization.
Eigen::VectorXd parallel_velocity(double k, const Eigen::VectorXd& s, const Eigen::VectorXd& f,
                                  const Eigen::VectorXd& fhat, double t);

struct PrincipalCurvatures {
    double k1;
    double k2;
    bool blowup;  // a denominator vanished; the affected value is +-infinity

    double gauss() const { return k1 * k2; }
    double mean() const { return 0.5 * (k1 + k2); }
};

PrincipalCurvatures principal_curvatures_at(const WeingartenFamily& wf, double u, double t);

// Four branch points of t'^2 = (1 + k t^2) cK(t): two roots of cK followed by two of 1 + k t^2.
std::array<ProjectivePoint, 4> branch_points(const WeingartenFamily& wf);
// (z1 - z3)(z2 - z4) / ((z1 - z4)(z2 - z3)) in homogeneous coordinates.
std::complex<double> branch_cross_ratio(const std::array<ProjectivePoint, 4>& z);

struct EllipticReparam {
    double k, eps2, a1, a2;
    std::vector<double> r, t, dt;
    std::array<ProjectivePoint, 4> branch;
    std::complex<double> cross_ratio;
    std::vector<double> turning_points;  // r values where t' changes sign
    double ode_residual;                 // max |t'^2 - (1 + k t^2) cK(t)| over samples
};

// Samples t(r) with t(0) = t_init, t'(0) > 0 on the given r axis. The second-order form
// t'' = P'(t)/2 passes through branch points without stalling.
EllipticReparam elliptic_reparam(const WeingartenFamily& wf, double t_init, const Axis& r_axis, int substeps = 16);
EllipticReparam elliptic_reparam(const WeingartenFamily& wf, double t_init, double r_lo, double r_hi, double step);

// max |c_red + eps2 v'^2 - r0 C(2(v - v0))| with C = cos (eps2 = 1) or cosh (eps2 = -1).
double pendulum_residual(const std::vector<double>& v, double h, double eps2, double c_red, double r0, double v0,
                         int margin = 1);

struct PendulumFit {
    double c_red, r0, v0;
    double residual;
};

PendulumFit fit_pendulum(const std::vector<double>& v, double h, double eps2, int margin = 1);

// Coefficient on the cos/cosh term: printed carries 1/2 (a1 a2), gauss_consistent carries a1 a2.
enum class GaussForm { printed, gauss_consistent };

double sine_gordon_residual(const std::vector<double>& u, const ParamGrid2& grid, const WeingartenFamily& wf,
                            GaussForm form = GaussForm::printed);

// Traveling-wave solution u(t1, t2) = U(cos(theta) (t1 - t1b) + sin(theta) (t2 - t2b)) of the
// profile equation, with U(0) = u0, U'(0) = du0 at the base node.
struct UProfile {
    double u0 = 1.55;
    double du0 = 0.0;
    double theta = 0.4;
    GaussForm form = GaussForm::gauss_consistent;
    int substeps = 4;
};

double profile_acceleration(const WeingartenFamily& wf, const UProfile& p, double u);

struct NetSpec {
    Axis t1, t2, r;
    double t_init = 0.0;
    double loop_tol = 1e-6;
};

struct SynthesizedNet {
    NetGrid net;
    FrameGrid base;          // (s1, s2, s, f, fhat) of the base surface on the (t1, t2) slice
    std::vector<double> u;   // profile values on the base slice
    EllipticReparam reparam;
    double loop_defect;      // max frame disagreement between the two sweep orders
};

SynthesizedNet synthesize_net(const WeingartenFamily& wf, const UProfile& profile, const NetSpec& spec);

struct ReducedLame {
    ParamGrid3 grid;
    double eps2;
    ScalarField w, w0, w1, w2, w3;
    std::vector<double> u;  // w on the reference r-slice
    std::vector<double> v;  // w along the reference (t1, t2) column minus its reference value
    double split_defect;    // max |w - u - v|
    double mixed13, mixed23;
    PendulumFit pendulum;
    std::array<double, 4> residuals;
};

// Rescales the Lame data by l3 and solves l1 = cos(eps w), l2 = sin(eps w)/eps for w.
// margin < 0 selects the stencil nesting depth (one more when tangents come from differences).
ReducedLame reduced_lame(const NetGrid& net, double eps2, TangentSource source = TangentSource::automatic,
                         int margin = -1, double gauge_tol = 5e-2);
std::array<double, 4> reduced_lame_residuals(const NetGrid& net, double eps2,
                                             TangentSource source = TangentSource::automatic, int margin = -1);

}  // namespace lightcone
