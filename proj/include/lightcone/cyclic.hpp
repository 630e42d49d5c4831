#pragma once

#include <array>
#include <vector>

#include "lightcone/strip.hpp"

namespace lightcone {

// Circle congruence given by a frame field (s_1, s_2, s, f, fhat); the circle at a node is the
// set of light rays in span{s, f, fhat}.
struct CircleCongruence {
    FrameGrid frame;

    const ParamGrid2& grid() const { return frame.grid; }
};

struct TField {
    ParamGrid2 grid;
    std::vector<double> t;
    std::size_t base;
    double t0;
};

ConnectionSample nu_forms(const CircleCongruence& cc);

enum class SweepOrder { rows_first, columns_first };

// Integrates dt = t^2/2 nu_s + t nu_f + nuhat_s along grid edges starting from t(base) = t0.
TField integrate_tfield(const ConnectionSample& nu, double t0, std::size_t base,
                        SweepOrder order = SweepOrder::rows_first);
TField integrate_tfield(const CircleCongruence& cc, double t0, std::size_t base,
                        SweepOrder order = SweepOrder::rows_first);

// Coefficients (q2, q1, q0) of the integrability polynomial at every node.
std::vector<std::array<double, 3>> integrability_quadratic(const ConnectionSample& nu);
std::vector<std::array<double, 3>> integrability_quadratic(const CircleCongruence& cc);

struct NormalityReport {
    double flatness;      // max |q_i| over interior nodes
    double loop_defect;   // worst sweep-order disagreement over three trial solutions
    bool flat;
    bool three_solutions;
};

NormalityReport normality(const CircleCongruence& cc, double tol);
bool is_normal(const CircleCongruence& cc, double tol);

// Entry of an orthogonal-family schedule; the infinity member is fhat itself.
struct FamilyMember {
    double g = 0.0;
    double gprime = 1.0;
    bool at_infinity = false;

    static FamilyMember at(double g, double gprime = 1.0) { return {g, gprime, false}; }
    static FamilyMember infinity() { return {0.0, 1.0, true}; }
};

// Members f_g = (g s + f - g^2/2 fhat)/g' paired with the sphere congruence s - g fhat.
std::vector<StripGrid> orthogonal_family(const CircleCongruence& cc, const std::vector<FamilyMember>& schedule,
                                         double parallel_tol = 1e-8);

// max |<d f_g/dg, d f_g>| over interior nodes.
double family_orthogonality_residual(const CircleCongruence& cc, double g);

struct CrossRatioField {
    std::vector<double> values;
    double mean;
    double stddev;
};

CrossRatioField family_cross_ratio(const std::array<StripGrid, 4>& members);

}  // namespace lightcone
