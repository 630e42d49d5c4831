#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <vector>

namespace lightcone {

inline constexpr double kDefaultTol = 1e-10;

// Vector of R^{n+2} with the Lorentz product of signature (+,...,+,-).
// The timelike coordinate is the last one.
class MinkVec {
public:
    MinkVec() = default;
    explicit MinkVec(Eigen::VectorXd coords);
    MinkVec(std::initializer_list<double> coords);

    static MinkVec zero(int dim);
    static MinkVec basis(int dim, int index);

    int dim() const { return static_cast<int>(coords_.size()); }
    const Eigen::VectorXd& coords() const { return coords_; }
    double operator[](int i) const { return coords_[i]; }
    double euclidean_norm() const { return coords_.norm(); }

    MinkVec& operator+=(const MinkVec& o);
    MinkVec& operator-=(const MinkVec& o);
    MinkVec& operator*=(double a);

private:
    Eigen::VectorXd coords_;
};

MinkVec operator+(MinkVec a, const MinkVec& b);
MinkVec operator-(MinkVec a, const MinkVec& b);
MinkVec operator-(MinkVec a);
MinkVec operator*(double a, MinkVec v);
MinkVec operator*(MinkVec v, double a);
MinkVec operator/(MinkVec v, double a);

double inner(const MinkVec& u, const MinkVec& v);
double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

// diag(1,...,1,-1) of size dim.
Eigen::MatrixXd signature_matrix(int dim);

enum class Causal { spacelike, lightlike, timelike };

struct CausalClass {
    Causal tag;
    double tolerance;
};

CausalClass classify(const MinkVec& v, double tol = kDefaultTol);

// Columns (s_1,...,s_{n-1}, s, f, fhat): the first n columns orthonormal spacelike,
// f and fhat lightlike with <f,fhat> = 1 and orthogonal to the rest.
struct PseudoFrame {
    Eigen::MatrixXd columns;
    Eigen::MatrixXd gram;

    int dim() const { return static_cast<int>(columns.rows()); }
    MinkVec column(int i) const { return MinkVec(columns.col(i)); }
    double gram_residual() const;
};

// Gram matrix every PseudoFrame should have: identity on the sphere part, a hyperbolic
// pair on the last two slots.
Eigen::MatrixXd ideal_frame_gram(int dim);

// Builds a PseudoFrame from spanning vectors, sphere part first. With n+2 inputs the
// layout is (s_1..s_{n-1}, s, a, b); with n+1 inputs s is completed as the unit normal
// of the remaining vectors, oriented so that det(columns) > 0.
PseudoFrame pseudo_orthonormalize(const std::vector<MinkVec>& spanning, double tol = kDefaultTol);

// Given f lightlike and a set of orthonormal spacelike vectors orthogonal to f, returns the
// lightlike fhat orthogonal to the set with <f,fhat> = 1.
Eigen::VectorXd dual_null(const Eigen::VectorXd& f, const Eigen::MatrixXd& orthonormal);

}  // namespace lightcone
