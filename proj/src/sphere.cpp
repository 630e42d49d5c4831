#include "lightcone/sphere.hpp"

#include <cmath>
#include <numbers>

#include "lightcone/errors.hpp"

namespace lightcone {

SphereVec::SphereVec(MinkVec s, double tol) : s_(std::move(s)) {
    if (std::abs(inner(s_, s_) - 1.0) > tol) throw UsageError("SphereVec: vector is not a unit spacelike vector");
}

SphereVec SphereVec::unchecked(MinkVec s) {
    SphereVec v;
    v.s_ = std::move(s);
    return v;
}

Eigen::MatrixXd SpacelikePlane::projector() const {
    const int dim = static_cast<int>(basis.rows());
    return basis * basis.transpose() * signature_matrix(dim);
}

CircleFrame::CircleFrame(SphereVec s_, LightPoint p_, LightPoint phat_, double tol)
    : s(std::move(s_)), p(std::move(p_)), phat(std::move(phat_)) {
    const bool ok = std::abs(inner(s.vec(), p.vec())) <= tol && std::abs(inner(s.vec(), phat.vec())) <= tol &&
                    std::abs(inner(p.vec(), phat.vec()) - 1.0) <= tol;
    if (!ok) throw UsageError("CircleFrame: (s, p, phat) is not pseudo-orthonormal");
}

SphereVec sphere_from_contact(const LightPoint& p, const MinkVec& tangent_normal, double h, double tol) {
    const double scale = 1.0 + p.vec().euclidean_norm();
    if (std::abs(inner(tangent_normal, tangent_normal) - 1.0) > tol) {
        throw UsageError("sphere_from_contact: tangent normal is not a unit vector");
    }
    if (std::abs(inner(tangent_normal, p.vec())) > tol * scale) {
        throw UsageError("sphere_from_contact: tangent normal not orthogonal to the point");
    }
    return SphereVec::unchecked(tangent_normal + h * p.vec());
}

double incidence(const LightPoint& p, const SphereVec& s) { return inner(p.vec(), s.vec()); }

SphereVec sphere_from_center(const LightPoint& center, double radius, const SpaceForm& q) {
    const double k = q.curvature;
    if (!(radius > 0.0)) throw DomainError("sphere_from_center: radius must be positive");
    if (k > 0.0 && radius >= std::numbers::pi / std::sqrt(k)) {
        throw DomainError("sphere_from_center: radius beyond the injectivity radius");
    }
    const Eigen::MatrixXd tangent = tangent_basis(q, center);
    const int dim = center.dim();
    const int n = dim - 2;

    // Endpoints along +-e_i and along the diagonals e_i + e_{i+1}.
    std::vector<Eigen::VectorXd> dirs;
    for (int i = 0; i < n; ++i) {
        dirs.push_back(tangent.col(i));
        dirs.push_back(-tangent.col(i));
        if (i + 1 < n) dirs.push_back((tangent.col(i) + tangent.col(i + 1)) / std::sqrt(2.0));
    }
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(dirs.size()), dim);
    const Eigen::MatrixXd j = signature_matrix(dim);
    for (std::size_t r = 0; r < dirs.size(); ++r) {
        const LightPoint e = geodesic_point(q, center, MinkVec(dirs[r]), radius);
        rows.row(static_cast<Eigen::Index>(r)) = (j * e.vec().coords()).transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
    Eigen::VectorXd s = svd.matrixV().col(dim - 1);
    const double nn = inner(s, s);
    if (nn <= 0.0) throw DegenerateInputError("sphere_from_center: fitted vector is not spacelike");
    s /= std::sqrt(nn);
    if (inner(s, q.nk.coords()) < 0.0) s = -s;
    return SphereVec::unchecked(MinkVec(s));
}

double angle(const SphereVec& a, const SphereVec& b) { return inner(a.vec(), b.vec()); }

bool pencil_contains(const SphereVec& s, const LightPoint& p, const SphereVec& candidate, double tol) {
    const Eigen::VectorXd& c = candidate.vec().coords();
    const Eigen::VectorXd& sv = s.vec().coords();
    const Eigen::VectorXd& pv = p.vec().coords();
    const double scale = 1.0 + pv.norm();
    if (std::abs(inner(c, pv)) > tol * scale) return false;
    Eigen::MatrixXd sphere_part(sv.size(), 1);
    sphere_part.col(0) = sv;
    const Eigen::VectorXd q = dual_null(pv, sphere_part);
    Eigen::VectorXd rest = c - inner(c, sv) * sv;
    rest -= inner(rest, q) * pv;
    return rest.norm() <= tol * scale;
}

SpacelikePlane msphere_span(const std::vector<SphereVec>& spheres, double tol) {
    if (spheres.empty()) throw DegenerateInputError("msphere_span: no spheres given");
    const int dim = spheres.front().vec().dim();
    const int count = static_cast<int>(spheres.size());
    Eigen::MatrixXd basis(dim, count);
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd v = spheres[i].vec().coords();
        const double ref = v.squaredNorm();
        for (int j = 0; j < i; ++j) v -= inner(v, Eigen::VectorXd(basis.col(j))) * basis.col(j);
        const double nn = inner(v, v);
        if (nn <= std::max(tol, 1e-10) * ref) {
            throw DegenerateInputError("msphere_span: the spheres have no common m-sphere");
        }
        basis.col(i) = v / std::sqrt(nn);
    }
    return SpacelikePlane{basis, dim - 2 - count};
}

LightPoint circle_point(const CircleFrame& cf, double g, double gprime) {
    if (gprime == 0.0) throw SingularParametrizationError("circle_point: g' vanishes");
    return LightPoint::unchecked((g * cf.s.vec() + cf.p.vec() - (0.5 * g * g) * cf.phat.vec()) / gprime);
}

double cross_ratio(const MinkVec& a, const MinkVec& b, const MinkVec& c, const MinkVec& d, double tol) {
    const double num = inner(a, b) * inner(c, d);
    const double den = inner(b, c) * inner(d, a);
    const double scale = a.euclidean_norm() * b.euclidean_norm() * c.euclidean_norm() * d.euclidean_norm();
    if (std::abs(den) <= tol * scale) throw DegenerateConfigurationError("cross_ratio: vanishing denominator");
    const double q = num / den;
    if (q < 0.0) {
        if (q > -tol) return 0.0;
        throw ComplexConfigurationError("cross_ratio: negative radicand");
    }
    return std::sqrt(q);
}

}  // namespace lightcone
