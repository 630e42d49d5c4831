#include "lightcone/spaceform.hpp"

#include <cmath>

#include "lightcone/errors.hpp"

namespace lightcone {

MinkVec origin_point(int n) { return MinkVec::basis(n + 2, n) + MinkVec::basis(n + 2, n + 1); }

MinkVec infinity_point(int n) { return 0.5 * (MinkVec::basis(n + 2, n) - MinkVec::basis(n + 2, n + 1)); }

SpaceForm canonical_space_form(double k, int n) {
    if (n < 2) throw UsageError("canonical_space_form: n must be at least 2");
    return SpaceForm{infinity_point(n) - (k / 2.0) * origin_point(n), k, n};
}

LightPoint::LightPoint(MinkVec v, double tol) : v_(std::move(v)) {
    if (classify(v_, tol).tag != Causal::lightlike) throw UsageError("LightPoint: vector is not lightlike");
}

LightPoint LightPoint::unchecked(MinkVec v) {
    LightPoint p;
    p.v_ = std::move(v);
    return p;
}

LightPoint embed_flat(const Eigen::VectorXd& x, const SpaceForm& flat) {
    const int n = flat.dim;
    if (x.size() != n) throw UsageError("embed_flat: point has wrong dimension");
    if (std::abs(flat.curvature) > 1e-12) throw UsageError("embed_flat: space form must be flat");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n + 2);
    v.head(n) = x;
    MinkVec p = MinkVec(v) + origin_point(n) - (0.5 * x.squaredNorm()) * infinity_point(n);
    return LightPoint::unchecked(std::move(p));
}

LightPoint stereographic(const LightPoint& p, const SpaceForm& target) {
    const double scale = inner(p.vec(), target.nk);
    if (std::abs(scale) < 1e-8 * p.vec().euclidean_norm()) {
        throw InfinityBoundaryError("stereographic: point lies on an asymptotic direction of the target");
    }
    return LightPoint::unchecked(p.vec() / scale);
}

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw UsageError(what);
}

}  // namespace

LightPoint geodesic_point(const SpaceForm& q, const LightPoint& p, const MinkVec& s, double t) {
    const double tol = 1e-8;
    const double scale = 1.0 + p.vec().euclidean_norm();
    require(std::abs(inner(p.vec(), q.nk) - 1.0) <= tol, "geodesic_point: p is not normalized in the quadric");
    require(std::abs(inner(s, s) - 1.0) <= tol, "geodesic_point: direction is not a unit vector");
    require(std::abs(inner(s, p.vec())) <= tol * scale, "geodesic_point: direction not orthogonal to p");
    require(std::abs(inner(s, q.nk)) <= tol * scale, "geodesic_point: direction not orthogonal to nk");

    const double k = q.curvature;
    const MinkVec& nk = q.nk;
    const MinkVec& pt = p.vec();
    const MinkVec phat = nk + (k / 2.0) * pt;
    if (k == 0.0) return LightPoint::unchecked(t * s + pt - (0.5 * t * t) * phat);
    if (k < 0.0) {
        const double a = std::sqrt(-k);
        MinkVec arc = std::sinh(a * t) * s + std::cosh(a * t) * ((a / 2.0) * pt - (1.0 / a) * phat);
        return LightPoint::unchecked((-1.0 / k) * nk + arc / a);
    }
    const double a = std::sqrt(k);
    MinkVec arc = std::sin(a * t) * s + std::cos(a * t) * ((a / 2.0) * pt + (1.0 / a) * phat);
    return LightPoint::unchecked((-1.0 / k) * nk + arc / a);
}

Eigen::MatrixXd tangent_basis(const SpaceForm& q, const LightPoint& p) {
    const int dim = p.dim();
    const Eigen::VectorXd& pv = p.vec().coords();
    const Eigen::VectorXd& nv = q.nk.coords();
    // Gram of span{p, nk} is [[0,1],[1,-k]] for a normalized point.
    Eigen::Matrix2d g;
    g << inner(pv, pv), inner(pv, nv), inner(nv, pv), inner(nv, nv);
    const Eigen::Matrix2d ginv = g.inverse();
    Eigen::MatrixXd basis(dim, dim - 2);
    int found = 0;
    for (int i = 0; i < dim && found < dim - 2; ++i) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(dim, i);
        const Eigen::Vector2d c = ginv * Eigen::Vector2d(inner(v, pv), inner(v, nv));
        v -= c[0] * pv + c[1] * nv;
        for (int j = 0; j < found; ++j) v -= inner(v, Eigen::VectorXd(basis.col(j))) * basis.col(j);
        const double nn = inner(v, v);
        if (nn > 1e-8) basis.col(found++) = v / std::sqrt(nn);
    }
    if (found < dim - 2) throw DegenerateInputError("tangent_basis: could not complete the tangent space");
    return basis;
}

bool is_proper_isometry(const Eigen::MatrixXd& map, const SpaceForm& q, double tol) {
    const int dim = q.nk.dim();
    if (map.rows() != dim || map.cols() != dim) return false;
    const Eigen::MatrixXd j = signature_matrix(dim);
    const double form_err = (map.transpose() * j * map - j).cwiseAbs().maxCoeff();
    const double fix_err = (map * q.nk.coords() - q.nk.coords()).cwiseAbs().maxCoeff();
    return form_err <= tol && fix_err <= tol;
}

}  // namespace lightcone
