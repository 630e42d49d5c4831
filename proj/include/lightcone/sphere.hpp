#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lightcone/lorentz.hpp"
#include "lightcone/spaceform.hpp"

namespace lightcone {

// Oriented hypersphere: a unit spacelike vector. s and -s are distinct spheres.
class SphereVec {
public:
    explicit SphereVec(MinkVec s, double tol = kDefaultTol);
    static SphereVec unchecked(MinkVec s);

    const MinkVec& vec() const { return s_; }
    SphereVec flipped() const { return unchecked(-s_); }
    // Mean curvature as seen from the quadric q.
    double mean_curvature(const SpaceForm& q) const { return inner(s_, q.nk); }

private:
    SphereVec() = default;
    MinkVec s_;
};

// A spacelike (n-m)-plane; its m-sphere is the set of light rays orthogonal to it.
struct SpacelikePlane {
    Eigen::MatrixXd basis;  // orthonormal columns
    int m;

    // Lorentz-orthogonal projector onto the plane. Equal planes have equal projectors.
    Eigen::MatrixXd projector() const;
};

// Pseudo-orthonormal basis (s, p, phat) of the orthogonal complement of a circle.
struct CircleFrame {
    SphereVec s;
    LightPoint p;
    LightPoint phat;

    CircleFrame(SphereVec s, LightPoint p, LightPoint phat, double tol = kDefaultTol);
};

SphereVec sphere_from_contact(const LightPoint& p, const MinkVec& tangent_normal, double h,
                              double tol = 1e-8);

double incidence(const LightPoint& p, const SphereVec& s);

SphereVec sphere_from_center(const LightPoint& center, double radius, const SpaceForm& q);

double angle(const SphereVec& a, const SphereVec& b);

bool pencil_contains(const SphereVec& s, const LightPoint& p, const SphereVec& candidate, double tol = 1e-10);

SpacelikePlane msphere_span(const std::vector<SphereVec>& spheres, double tol = kDefaultTol);

LightPoint circle_point(const CircleFrame& cf, double g, double gprime);

// sqrt(<a,b><c,d> / (<b,c><d,a>)). Evaluated at (p, p_g, phat, p_{g=1}) it returns |g|.
double cross_ratio(const MinkVec& a, const MinkVec& b, const MinkVec& c, const MinkVec& d,
                   double tol = 1e-14);

}  // namespace lightcone
