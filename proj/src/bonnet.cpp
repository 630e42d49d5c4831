#include "lightcone/bonnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lightcone/errors.hpp"

namespace lightcone {

std::string to_string(SurfaceKind kind) {
    switch (kind) {
        case SurfaceKind::constant_mean_curvature: return "constant-mean-curvature";
        case SurfaceKind::constant_gauss_curvature: return "constant-Gauss-curvature";
        case SurfaceKind::constant_radii_sum: return "constant-radii-sum";
    }
    return "unknown";
}

std::string to_string(TorusType type) {
    switch (type) {
        case TorusType::rectangular: return "rectangular";
        case TorusType::rhombic: return "rhombic";
        case TorusType::square: return "square";
        case TorusType::degenerate_cylinder: return "degenerate-cylinder";
        case TorusType::unclassified: return "unclassified";
    }
    return "unknown";
}

std::size_t BonnetReport::count(SurfaceKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(surfaces.begin(), surfaces.end(), [&](const SpecialSurface& s) { return s.kind == kind; }));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double arc(double k, double t) {
    if (k > 0) {
        const double a = std::sqrt(k);
        if (std::isinf(t)) return std::copysign(std::numbers::pi / 2.0, t) / a;
        return std::atan(a * t) / a;
    }
    if (std::isinf(t)) throw InfinityBoundaryError("distance: infinite parameter outside elliptic space");
    if (k == 0) return t;
    const double a = std::sqrt(-k);
    if (!(std::abs(a * t) < 1.0)) throw InfinityBoundaryError("distance: parameter beyond the infinity boundary");
    return std::atanh(a * t) / a;
}

RootList roots_of(const Quadratic& q, double k) {
    RootList out;
    out.at_infinity = q.root_at_infinity(1e-12);
    for (double t : q.real_roots(1e-12)) {
        if (1.0 + k * t * t > 0.0) out.admissible.push_back(t);
        else out.beyond.push_back(t);
    }
    return out;
}

// Distinct admissible roots, plus the two limit surfaces t = +-infinity in elliptic space.
std::vector<double> surface_parameters(const RootList& r, double k) {
    std::vector<double> ts;
    for (double t : r.admissible) {
        if (ts.empty() || std::abs(ts.back() - t) > 1e-10 * (1.0 + std::abs(t))) ts.push_back(t);
    }
    if (k > 0 && r.at_infinity) {
        ts.push_back(-kInf);
        ts.push_back(kInf);
    }
    return ts;
}

// K at a cH root, H at a cK root, 1/k1 + 1/k2 at a c root; t = +-inf uses leading coefficients.
double surface_value(const WeingartenFamily& wf, SurfaceKind kind, double t) {
    const bool inf = std::isinf(t);
    const double ck = inf ? wf.cK.q2 : wf.cK(t);
    const double ch = inf ? wf.cH.q2 : wf.cH(t);
    const double c = inf ? wf.c.q2 : wf.c(t);
    switch (kind) {
        case SurfaceKind::constant_mean_curvature: return -c / (2.0 * ch);
        case SurfaceKind::constant_gauss_curvature: return -c / ck;
        case SurfaceKind::constant_radii_sum: return -ck / ch;
    }
    return 0.0;
}

std::vector<const SpecialSurface*> of_kind(const std::vector<SpecialSurface>& all, SurfaceKind kind) {
    std::vector<const SpecialSurface*> out;
    for (const auto& s : all) {
        if (s.kind == kind) out.push_back(&s);
    }
    return out;
}

std::vector<SpecialSurface> special_surfaces(const WeingartenFamily& wf) {
    std::vector<SpecialSurface> out;
    const std::pair<const Quadratic*, SurfaceKind> table[] = {
        {&wf.cK, SurfaceKind::constant_mean_curvature},
        {&wf.cH, SurfaceKind::constant_gauss_curvature},
        {&wf.c, SurfaceKind::constant_radii_sum}};
    for (const auto& [q, kind] : table) {
        for (double t : surface_parameters(roots_of(*q, wf.k), wf.k)) out.push_back({t, kind, surface_value(wf, kind, t)});
    }
    return out;
}

// Root counts for the case table: limit surfaces at infinity count as one surface only for k > 0.
std::size_t admissible_count(const RootList& r, double k) {
    std::size_t n = surface_parameters(r, k).size();
    if (k > 0 && r.at_infinity) n -= 1;
    return n;
}

std::pair<bool, std::string> check_case_table(const WeingartenFamily& wf, const RootList& ck, const RootList& ch,
                                              const RootList& c) {
    const std::size_t nk = admissible_count(ck, wf.k), nh = admissible_count(ch, wf.k), nc = admissible_count(c, wf.k);
    const double k = wf.k;
    if (wf.eps2 > 0) {
        if (nk != 0 || nc != 0) return {false, "eps = 1 family has real zeros of cK or c"};
        if (nh == 0) return {false, "eps = 1 family without a constant Gauss curvature surface"};
        return {true, "eps = 1: no CMC or constant-radii-sum surfaces"};
    }
    if (k > 0) {
        if (nk == 0 || nh == 0 || nc == 0) return {false, "eps = i, k > 0: some quadratic lacks real zeros"};
        return {true, "eps = i, k > 0: cK, cH and c all have real zeros"};
    }
    if (k == 0) {
        if (nk != 2 || nc != 0) return {false, "eps = i, k = 0: expected two CMC surfaces and no c zeros"};
        return {true, "eps = i, k = 0: classical Bonnet configuration"};
    }
    if (nh > 1) return {false, "eps = i, k < 0: more than one constant Gauss curvature surface"};
    if (nh == 1) {
        const bool ok = (nk == 2 && nc == 0) || (nk == 0 && nc == 2);
        return {ok, ok ? "eps = i, k < 0: constant-K surface with two parallel special surfaces"
                       : "eps = i, k < 0: unexpected counts next to a constant-K surface"};
    }
    const bool ok = (nk == 1 && nc == 0) || (nk == 0 && nc == 1) || (nk == 1 && nc == 1);
    return {ok, ok ? "eps = i, k < 0: no constant-K surface, one or two special surfaces"
                   : "eps = i, k < 0: unexpected counts without a constant-K surface"};
}

Relation not_applicable(std::string name, std::string note) {
    return Relation{std::move(name), false, 0.0, std::move(note)};
}

// Family based at f_{t0}; requires cK(t0) != 0.
WeingartenFamily rebased_at(const WeingartenFamily& wf, double t0) {
    const double ck = wf.cK(t0);
    const double g = 1.0 + wf.k * t0 * t0;
    return family_coeffs(wf.k, -wf.cH(t0) / ck, wf.a2 * g / std::abs(ck), wf.eps2);
}

LimitCurvature limit_curvature(const WeingartenFamily& wf) {
    LimitCurvature out{false, 0.0, 0.0, 0.0, 0.0, 0.0};
    if (!(wf.k > 0) || std::abs(wf.a1) > 1e-12) return out;
    out.applicable = true;
    out.printed = -wf.k * wf.k / (wf.a2 * wf.a2);
    out.leading = -wf.c.q2 / wf.cK.q2;
    out.product = out.leading * surface_value(wf, SurfaceKind::constant_gauss_curvature, 0.0);
    const double big_t = 1e6 / std::sqrt(wf.k);
    double lo = kInf, hi = -kInf, sum = 0.0;
    int used = 0;
    for (int i = 0; i < 20; ++i) {
        const double u = 0.05 + 0.07 * i;
        const PrincipalCurvatures pc = principal_curvatures_at(wf, u, big_t);
        if (pc.blowup) continue;
        const double kg = pc.gauss();
        lo = std::min(lo, kg);
        hi = std::max(hi, kg);
        sum += kg;
        ++used;
    }
    out.numeric = used > 0 ? sum / used : std::numeric_limits<double>::quiet_NaN();
    out.numeric_spread = used > 0 ? hi - lo : std::numeric_limits<double>::quiet_NaN();
    return out;
}

}  // namespace

double distance(double k, double t_a, double t_b) {
    if (k < 0) {
        const double edge = 1.0 / std::sqrt(-k);
        if (!(std::abs(t_a) < edge && std::abs(t_b) < edge)) {
            throw InfinityBoundaryError("distance: 1 + k t^2 must stay positive");
        }
    }
    return arc(k, t_b) - arc(k, t_a);
}

std::vector<Relation> relation_checks(const WeingartenFamily& wf) {
    std::vector<Relation> out;
    const double k = wf.k;
    const auto surfaces = special_surfaces(wf);
    const auto constant_k = of_kind(surfaces, SurfaceKind::constant_gauss_curvature);
    const auto cmc = of_kind(surfaces, SurfaceKind::constant_mean_curvature);
    const auto radii = of_kind(surfaces, SurfaceKind::constant_radii_sum);

    if (!(k > 0)) {
        for (const char* name : {"K0*Kinf=k^2", "quarter-spacing", "CMC-value", "CMC-distance", "radii-sum-value",
                                 "radii-sum-distance", "radii-sum-value-doubled"}) {
            out.push_back(not_applicable(name, "needs elliptic ambient space"));
        }
        return out;
    }
    const double a = std::sqrt(k);

    // The two constant-K values, from distinct geometric surfaces (the +-inf pair shares one value).
    std::vector<std::pair<double, double>> kvals;  // (t, K)
    for (const SpecialSurface* s : constant_k) {
        if (kvals.size() < 2 && !(std::isinf(s->t) && !kvals.empty() && std::isinf(kvals.back().first))) {
            kvals.push_back({s->t, s->value});
        }
    }
    if (kvals.size() < 2) {
        out.push_back(not_applicable("K0*Kinf=k^2", "fewer than two constant-K surfaces"));
        out.push_back(not_applicable("quarter-spacing", "fewer than two constant-K surfaces"));
    } else {
        const double k1 = kvals[0].second, k2 = kvals[1].second;
        out.push_back({"K0*Kinf=k^2", true, std::abs(k1 * k2 - k * k) / (1.0 + k * k), ""});
        const double d = std::abs(distance(k, kvals[0].first, kvals[1].first));
        out.push_back({"quarter-spacing", true, std::abs(d - std::numbers::pi / (2.0 * a)), ""});
    }

    const bool eps_i = wf.eps2 < 0;
    const bool positive_k = kvals.size() == 2 && kvals[0].second > 0 && kvals[1].second > 0;
    if (!eps_i || !positive_k || cmc.empty()) {
        for (const char* name : {"CMC-value", "CMC-distance", "radii-sum-value", "radii-sum-distance",
                                 "radii-sum-value-doubled"}) {
            out.push_back(not_applicable(name, "needs eps = i with two positive constant-K values"));
        }
        return out;
    }
    const double root_gap = std::abs(std::sqrt(kvals[0].second) - std::sqrt(kvals[1].second));

    // Distance from t to the nearest surface carrying the constant-K value at index j.
    auto nearest = [&](double t, double kv) {
        double best = kInf;
        for (const SpecialSurface* s : constant_k) {
            if (std::abs(s->value - kv) > 1e-9 * (1.0 + std::abs(kv))) continue;
            best = std::min(best, std::abs(distance(k, t, s->t)));
        }
        return best;
    };

    double value_res = 0.0, dist_res = 0.0;
    for (const SpecialSurface* s : cmc) {
        value_res = std::max(value_res, std::abs(std::abs(s->value) - 0.5 * root_gap));
        double best = kInf;
        for (const auto& [t, kv] : kvals) {
            best = std::min(best, std::abs(nearest(s->t, kv) - std::atan(std::sqrt(k / kv)) / a));
        }
        dist_res = std::max(dist_res, best);
    }
    out.push_back({"CMC-value", true, value_res, "|H| against (sqrt K1 - sqrt K2)/2"});
    out.push_back({"CMC-distance", true, dist_res, "d = arctan(sqrt(k/K1))/sqrt(k) from the K1 surfaces"});

    if (radii.empty()) {
        out.push_back(not_applicable("radii-sum-value", "no constant-radii-sum surfaces"));
        out.push_back(not_applicable("radii-sum-distance", "no constant-radii-sum surfaces"));
        out.push_back(not_applicable("radii-sum-value-doubled", "no constant-radii-sum surfaces"));
        return out;
    }
    double rv = 0.0, rv2 = 0.0, rd = 0.0;
    for (const SpecialSurface* s : radii) {
        rv = std::max(rv, std::abs(std::abs(s->value) - root_gap / (2.0 * k)));
        rv2 = std::max(rv2, std::abs(std::abs(s->value) - root_gap / k));
        // Same d as for the CMC surfaces (built from K1), measured from the K2 surfaces.
        double best = kInf;
        for (std::size_t j = 0; j < kvals.size(); ++j) {
            const double other = kvals[1 - j].second;
            best = std::min(best, std::abs(nearest(s->t, kvals[j].second) - std::atan(std::sqrt(k / other)) / a));
        }
        rd = std::max(rd, best);
    }
    out.push_back({"radii-sum-value", true, rv, "|1/k1 + 1/k2| against (sqrt K1 - sqrt K2)/(2k)"});
    out.push_back({"radii-sum-distance", true, rd, "same d, from the K2 surfaces"});
    out.push_back({"radii-sum-value-doubled", true, rv2, "|1/k1 + 1/k2| against (sqrt K1 - sqrt K2)/k"});
    return out;
}

TorusType torus_type(double k, std::complex<double> cr, double tol) {
    if (k == 0.0) return TorusType::degenerate_cylinder;
    if (!std::isfinite(cr.real()) || !std::isfinite(cr.imag())) return TorusType::unclassified;
    const double scale = 1.0 + std::abs(cr);
    if (std::abs(cr - 1.0) <= tol * scale) return TorusType::degenerate_cylinder;
    if (std::abs(cr + 1.0) <= tol * scale) return TorusType::square;
    if (std::abs(cr.imag()) <= tol * scale) return TorusType::rectangular;
    if (std::abs(std::abs(cr) - 1.0) <= tol * scale) return TorusType::rhombic;
    return TorusType::unclassified;
}

TorusType torus_type(const EllipticReparam& er, double tol) { return torus_type(er.k, er.cross_ratio, tol); }

BonnetReport classify(const WeingartenFamily& wf) {
    BonnetReport r;
    r.family = wf;
    r.cK_roots = roots_of(wf.cK, wf.k);
    r.cH_roots = roots_of(wf.cH, wf.k);
    r.c_roots = roots_of(wf.c, wf.k);
    r.surfaces = special_surfaces(wf);
    for (std::size_t i = 0; i < r.surfaces.size(); ++i) {
        for (std::size_t j = i + 1; j < r.surfaces.size(); ++j) {
            r.distances.push_back({i, j, std::abs(distance(wf.k, r.surfaces[i].t, r.surfaces[j].t))});
        }
    }

    // Base the family at an admissible constant-K surface when it is not based at one already.
    const WeingartenFamily* based = &wf;
    if (std::abs(wf.cH.q0) > 1e-12) {
        for (double t : r.cH_roots.admissible) {
            if (std::abs(wf.cK(t)) > 1e-12) {
                r.rebased = rebased_at(wf, t);
                r.rebase_t = t;
                based = &*r.rebased;
                break;
            }
        }
    }
    r.relations = relation_checks(*based);
    r.k_infinity = limit_curvature(*based);
    r.cross_ratio = branch_cross_ratio(branch_points(wf));
    r.torus = torus_type(wf.k, r.cross_ratio);
    const auto [ok, note] = check_case_table(wf, r.cK_roots, r.cH_roots, r.c_roots);
    r.case_table_ok = ok;
    r.case_table_note = note;
    return r;
}

}  // namespace lightcone
