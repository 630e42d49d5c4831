#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "lightcone/weingarten.hpp"

namespace lightcone {

enum class SurfaceKind { constant_mean_curvature, constant_gauss_curvature, constant_radii_sum };

std::string to_string(SurfaceKind kind);

// A special parallel surface; t = +-infinity marks the limit surfaces of an elliptic ambient space.
struct SpecialSurface {
    double t;
    SurfaceKind kind;
    double value;  // H, K or 1/k1 + 1/k2
};

struct RootList {
    std::vector<double> admissible;  // 1 + k t^2 > 0
    std::vector<double> beyond;      // beyond the infinity boundary
    bool at_infinity = false;        // vanishing leading coefficient
};

struct SurfaceDistance {
    std::size_t a, b;
    double d;
};

struct Relation {
    std::string name;
    bool applicable;
    double residual;
    std::string note;
};

enum class TorusType { rectangular, rhombic, square, degenerate_cylinder, unclassified };

std::string to_string(TorusType type);

struct LimitCurvature {
    bool applicable;      // k > 0 and the family is based at a constant-K surface
    double printed;       // -k^2 / a2^2
    double leading;       // -c2 / cK2 from the leading coefficients
    double numeric;       // K of f_t at large t, averaged over u
    double numeric_spread;
    double product;       // K_0 K_inf from the leading-coefficient value
};

struct BonnetReport {
    WeingartenFamily family;
    RootList cK_roots, cH_roots, c_roots;
    std::vector<SpecialSurface> surfaces;
    std::vector<SurfaceDistance> distances;
    std::vector<Relation> relations;
    std::optional<WeingartenFamily> rebased;  // family based at a constant-K surface
    double rebase_t = 0.0;
    LimitCurvature k_infinity;
    std::complex<double> cross_ratio;
    TorusType torus;
    bool case_table_ok;
    std::string case_table_note;

    std::size_t count(SurfaceKind kind) const;
};

BonnetReport classify(const WeingartenFamily& wf);

// Arc length along a normal geodesic between f_{t_a} and f_{t_b}; for k > 0 the ends may be +-infinity.
double distance(double k, double t_a, double t_b);

std::vector<Relation> relation_checks(const WeingartenFamily& wf);

TorusType torus_type(const EllipticReparam& er, double tol = 1e-9);
TorusType torus_type(double k, std::complex<double> cross_ratio, double tol = 1e-9);

}  // namespace lightcone
