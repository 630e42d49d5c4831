#pragma once

#include <Eigen/Dense>

#include "lightcone/lorentz.hpp"

namespace lightcone {

// Quadric model {p lightlike : <p, nk> = 1} of the space form of curvature k = -<nk,nk>.
struct SpaceForm {
    MinkVec nk;
    double curvature;
    int dim;  // n; ambient dimension is n+2
};

// p0 = e_{n+1} + e_{n+2}, n0 = (e_{n+1} - e_{n+2})/2.
MinkVec origin_point(int n);
MinkVec infinity_point(int n);

SpaceForm canonical_space_form(double k, int n);

// A lightlike vector. The quadric normalization is checked per operation.
class LightPoint {
public:
    explicit LightPoint(MinkVec v, double tol = kDefaultTol);
    static LightPoint unchecked(MinkVec v);

    const MinkVec& vec() const { return v_; }
    int dim() const { return v_.dim(); }

private:
    LightPoint() = default;
    MinkVec v_;
};

LightPoint embed_flat(const Eigen::VectorXd& x, const SpaceForm& flat);

// Rescales p into the target quadric. Fails near the infinity boundary of the target.
LightPoint stereographic(const LightPoint& p, const SpaceForm& target);

// Arc-length geodesic through p (normalized in q) with unit initial direction s.
LightPoint geodesic_point(const SpaceForm& q, const LightPoint& p, const MinkVec& s, double t);

// Orthonormal basis of the tangent space {p, nk}^perp at a normalized point.
Eigen::MatrixXd tangent_basis(const SpaceForm& q, const LightPoint& p);

bool is_proper_isometry(const Eigen::MatrixXd& map, const SpaceForm& q, double tol = kDefaultTol);

}  // namespace lightcone
