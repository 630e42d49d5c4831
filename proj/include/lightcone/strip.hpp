#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "lightcone/grid.hpp"
#include "lightcone/lorentz.hpp"

namespace lightcone {

// Sphere congruence s and light-cone map f sampled over a 2D parameter grid.
struct StripGrid {
    ParamGrid2 grid;
    std::vector<Eigen::VectorXd> s;
    std::vector<Eigen::VectorXd> f;
};

// Frame field F = (s_1, s_2, s, f, fhat) per node; columns in ambient coordinates.
struct FrameGrid {
    ParamGrid2 grid;
    std::vector<Eigen::MatrixXd> frames;

    int dim() const { return static_cast<int>(frames.front().rows()); }
    double max_gram_residual() const;
};

// Slot layout of a frame of ambient dimension dim.
struct FrameSlots {
    int dim;
    int tangent() const { return dim - 3; }
    int sphere() const { return dim - 3; }
    int point() const { return dim - 2; }
    int dual() const { return dim - 1; }
};

// Phi_dir = F^{-1} dF/dt_dir per node and grid direction.
struct ConnectionSample {
    ParamGrid2 grid;
    std::array<std::vector<Eigen::MatrixXd>, 2> phi;

    int dim() const { return static_cast<int>(phi[0].front().rows()); }
    Eigen::MatrixXd omega(std::size_t node, int dir) const;
    Eigen::MatrixXd eta(std::size_t node, int dir) const;
    Eigen::MatrixXd nu(std::size_t node, int dir) const;
    // <ds, fhat>, <df, fhat>, <ds, f> evaluated on the direction.
    double nu_s(std::size_t node, int dir) const;
    double nu_f(std::size_t node, int dir) const;
    double nu_hat_s(std::size_t node, int dir) const;
    // max |Phi^T G + G Phi| with G the frame gram.
    double lie_algebra_residual() const;
};

std::pair<double, double> envelope_residual(const StripGrid& sg);

enum class Adaptation { sphere, point };

FrameGrid adapt_frame(const StripGrid& sg, Adaptation mode);

ConnectionSample connection(const FrameGrid& fg, double gram_tol = 1e-8);

struct StructureResiduals {
    double gauss;
    double ricci;
    double codazzi;
};

// Defects need nested differences of the frame, hence the wider default margin.
StructureResiduals structure_residuals(const ConnectionSample& cs, int margin = 2);

struct PrincipalFraming {
    FrameGrid frame;
    std::vector<double> angle;  // rotation applied at each node
    std::vector<bool> umbilic;
};

PrincipalFraming principal_frame(const FrameGrid& fg);

// Shape operator of f in the tangential frame, from the connection at one node.
Eigen::Matrix2d shape_operator(const ConnectionSample& cs, std::size_t node);

double ribaucour_residual(const ConnectionSample& cs, int margin = 1);

// Maurer-Cartan defect dPhi + Phi^Phi evaluated on (d/dt1, d/dt2) at one node.
Eigen::MatrixXd maurer_cartan_defect(const ConnectionSample& cs, std::size_t node,
                                     const std::array<std::vector<Eigen::MatrixXd>, 2>& dphi);

}  // namespace lightcone
