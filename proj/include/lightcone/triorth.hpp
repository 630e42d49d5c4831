#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "lightcone/grid.hpp"
#include "lightcone/spaceform.hpp"

namespace lightcone {

// Light-cone valued map on a 3D parameter grid. When the producer knows the coordinate
// tangents exactly (e.g. from a moving-frame integration) it may store them; otherwise they
// are obtained by finite differences.
struct NetGrid {
    ParamGrid3 grid;
    std::vector<Eigen::VectorXd> f;
    std::array<std::vector<Eigen::VectorXd>, 3> tangents;
    std::optional<SpaceForm> gauge;

    bool has_tangents() const { return !tangents[0].empty(); }
};

using ScalarField = std::vector<double>;

// Lame functions l_i, rotation coefficients k_ij and the b_ij of the light-cone connection.
// Diagonal entries of k are unused.
struct LameData {
    ParamGrid3 grid;
    std::array<ScalarField, 3> l;
    std::array<std::array<ScalarField, 3>, 3> k;
    std::array<std::array<ScalarField, 3>, 3> b;
};

enum class TangentSource { automatic, finite_difference };

std::array<std::vector<Eigen::VectorXd>, 3> coordinate_tangents(const NetGrid& net, TangentSource source);

// max |<d_i f, d_j f>| / (l_i l_j) over all nodes, with the node where it occurs.
std::pair<double, std::size_t> orthogonality_residual(const NetGrid& net,
                                                      TangentSource source = TangentSource::automatic);

LameData lame_from_grid(const NetGrid& net, double orthogonality_tol = 1e-2,
                        TangentSource source = TangentSource::automatic);

// Builds rotation coefficients and b_ij from prescribed Lame functions.
LameData lame_from_lengths(const ParamGrid3& grid, std::array<ScalarField, 3> l);

struct LameResiduals {
    std::array<double, 3> curvature;  // k = e_1 k_12 + e_2 k_21 - ... and cyclic
    std::array<double, 3> mixed;      // equations differentiated along e_1, e_2, e_3

    std::array<double, 6> all() const;
};

// Residuals are maxima over nodes at least `margin` nodes from every face. Nested first-order
// stencils lose an order next to the one-sided boundary rows, so each default equals the
// nesting depth of the quantity.
LameResiduals lame_residuals(const LameData& ld, double k, int margin = 2);

std::array<double, 9> genlame_residuals(const LameData& ld, int margin = 3);

// max |b_ij - b_ji| over interior nodes.
double bij_asymmetry(const LameData& ld, int margin = 2);

double dupin_residual(const NetGrid& net, TangentSource source = TangentSource::automatic, int margin = 2);

// |l_b^2 + l_c^2 - l_a^2| where axis a (0-based) carries the imaginary unit.
double guichard_residual(const LameData& ld, int imaginary_axis);

// Mixed second derivative d_a d_b of a scalar field by nested central differences.
ScalarField mixed_derivative(const ScalarField& field, const ParamGrid3& grid, int a, int b);

double max_interior(const ScalarField& field, const ParamGrid3& grid, int margin = 1);

}  // namespace lightcone
