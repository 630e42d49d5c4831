#include <doctest.h>

#include <numbers>

#include "lightcone/bonnet.hpp"
#include "support.hpp"

using namespace lightcone;
using lightcone::testing::uniform;

namespace {

std::vector<SpecialSurface> of_kind(const BonnetReport& r, SurfaceKind kind) {
    std::vector<SpecialSurface> out;
    for (const auto& s : r.surfaces) {
        if (s.kind == kind) out.push_back(s);
    }
    return out;
}

const Relation& relation(const BonnetReport& r, const std::string& name) {
    for (const auto& rel : r.relations) {
        if (rel.name == name) return rel;
    }
    FAIL("missing relation " << name);
    return r.relations.front();
}

// Composite Simpson rule for the arc length integral of dt / (1 + k t^2).
double quadrature(double k, double a, double b) {
    const int n = 20000;
    const double h = (b - a) / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = a + i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w / (1.0 + k * t * t);
    }
    return sum * h / 3.0;
}

double invariant(const PrincipalCurvatures& pc, SurfaceKind kind) {
    switch (kind) {
        case SurfaceKind::constant_mean_curvature: return pc.mean();
        case SurfaceKind::constant_gauss_curvature: return pc.gauss();
        case SurfaceKind::constant_radii_sum: return 1.0 / pc.k1 + 1.0 / pc.k2;
    }
    return 0.0;
}

WeingartenFamily random_family(double eps2) {
    return family_coeffs(uniform(-2, 2), uniform(-2, 2), uniform(0.1, 2), eps2);
}

}  // namespace

TEST_CASE("classical Bonnet configuration") {
    const BonnetReport r = classify(family_coeffs(0.0, 0.0, 1.0, -1.0));
    const auto cmc = of_kind(r, SurfaceKind::constant_mean_curvature);
    REQUIRE(cmc.size() == 2);
    CHECK(cmc[0].t == doctest::Approx(-1.0));
    CHECK(cmc[1].t == doctest::Approx(1.0));
    CHECK(std::abs(cmc[0].value) == doctest::Approx(0.5));
    CHECK(std::abs(cmc[1].value) == doctest::Approx(0.5));
    const auto gauss = of_kind(r, SurfaceKind::constant_gauss_curvature);
    REQUIRE(gauss.size() == 1);
    CHECK(gauss[0].t == 0.0);
    CHECK(gauss[0].value == doctest::Approx(1.0));
    CHECK(r.count(SurfaceKind::constant_radii_sum) == 0);
    CHECK(r.c_roots.admissible.empty());
    CHECK(distance(0.0, gauss[0].t, cmc[1].t) == doctest::Approx(1.0));
    CHECK(r.torus == TorusType::degenerate_cylinder);
    CHECK(r.case_table_ok);
}

TEST_CASE("elliptic space, eps = i: square torus") {
    const BonnetReport r = classify(family_coeffs(1.0, 0.0, 1.0, -1.0));
    CHECK_FALSE(r.cK_roots.admissible.empty());
    CHECK((!r.cH_roots.admissible.empty() || r.cH_roots.at_infinity));
    CHECK_FALSE(r.c_roots.admissible.empty());
    CHECK(r.case_table_ok);
    for (const char* name : {"K0*Kinf=k^2", "CMC-value", "CMC-distance"}) {
        const Relation& rel = relation(r, name);
        CHECK(rel.applicable);
        CHECK(rel.residual < 1e-10);
    }
    // coincident roots of cK and c: every CMC surface is minimal
    CHECK(std::abs(r.cross_ratio + 1.0) < 1e-12);
    CHECK(r.torus == TorusType::square);
    for (const auto& s : of_kind(r, SurfaceKind::constant_mean_curvature)) CHECK(std::abs(s.value) < 1e-12);
    CHECK(r.k_infinity.applicable);
    CHECK(r.k_infinity.printed == doctest::Approx(-1.0));
    CHECK(r.k_infinity.leading == doctest::Approx(1.0));
    CHECK(r.k_infinity.numeric == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("elliptic space, eps = i: generic relations") {
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const double k = uniform(0.2, 3.0);
        const BonnetReport r = classify(family_coeffs(k, uniform(-1, 1), uniform(0.2, 2.0), -1.0));
        CHECK(r.case_table_ok);
        const Relation& prod = relation(r, "K0*Kinf=k^2");
        if (prod.applicable) CHECK(prod.residual < 1e-9);
        const Relation& value = relation(r, "CMC-value");
        const Relation& dist = relation(r, "CMC-distance");
        if (value.applicable) {
            ++checked;
            CHECK(value.residual < 1e-9);
            CHECK(dist.residual < 1e-9);
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("eps = 1 families") {
    for (int trial = 0; trial < 1000; ++trial) {
        const WeingartenFamily wf = random_family(1.0);
        const BonnetReport r = classify(wf);
        CHECK(r.cK_roots.admissible.empty());
        CHECK(r.cK_roots.beyond.empty());
        CHECK(r.c_roots.admissible.empty());
        CHECK(r.c_roots.beyond.empty());
        CHECK(r.count(SurfaceKind::constant_mean_curvature) == 0);
        CHECK(r.count(SurfaceKind::constant_radii_sum) == 0);
        CHECK(r.case_table_ok);
        if (wf.k == 0.0) CHECK(r.count(SurfaceKind::constant_gauss_curvature) == 1);
    }
    for (double a1 : {-0.7, 0.0, 0.3}) {
        const BonnetReport flat = classify(family_coeffs(0.0, a1, 1.2, 1.0));
        CHECK(flat.count(SurfaceKind::constant_gauss_curvature) == 1);
        CHECK(flat.count(SurfaceKind::constant_mean_curvature) == 0);
    }
    // k > 0: constant-K surfaces divide each normal great circle in quarters
    const BonnetReport ell = classify(family_coeffs(2.0, 0.3, 1.0, 1.0));
    const Relation& q = relation(ell, "quarter-spacing");
    CHECK(q.applicable);
    CHECK(q.residual < 1e-12);
    const auto gauss = of_kind(ell, SurfaceKind::constant_gauss_curvature);
    REQUIRE(gauss.size() >= 2);
    CHECK(std::abs(distance(2.0, gauss[0].t, gauss[1].t)) == doctest::Approx(std::numbers::pi / (2 * std::sqrt(2.0))));
}

TEST_CASE("distance") {
    CHECK(distance(0.0, -0.3, 1.2) == doctest::Approx(1.5));
    CHECK(distance(1.0, 0.0, 1.0) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
    CHECK(distance(4.0, 0.0, std::numeric_limits<double>::infinity()) == doctest::Approx(std::numbers::pi / 4));
    CHECK_THROWS_AS(distance(-1.0, 0.0, 1.0), InfinityBoundaryError);
    CHECK_THROWS_AS(distance(-1.0, 0.0, 2.0), InfinityBoundaryError);
    CHECK_THROWS_AS(distance(0.0, 0.0, std::numeric_limits<double>::infinity()), InfinityBoundaryError);

    for (int trial = 0; trial < 100; ++trial) {
        const double k = uniform(-2, 2);
        const double bound = k < 0 ? 0.95 / std::sqrt(-k) : 3.0;
        const double a = uniform(-bound, bound), b = uniform(-bound, bound), c = uniform(-bound, bound);
        CHECK(std::abs(distance(k, a, b) + distance(k, b, c) - distance(k, a, c)) < 1e-12);
        CHECK(std::abs(distance(k, a, b) - quadrature(k, a, b)) < 1e-12 * (1.0 + std::abs(b - a)) + 1e-13);
    }
}

TEST_CASE("special surfaces are confirmed by the principal curvatures") {
    int confirmed = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const WeingartenFamily wf = random_family(uniform(0, 1) < 0.5 ? 1.0 : -1.0);
        const BonnetReport r = classify(wf);
        for (const auto& s : r.surfaces) {
            if (!std::isfinite(s.t)) continue;
            std::vector<double> values;
            for (int i = 0; i < 20; ++i) {
                const double u = -1.4 + 0.14 * i + 0.013;
                const PrincipalCurvatures pc = principal_curvatures_at(wf, u, s.t);
                if (pc.blowup || std::abs(pc.k1) > 1e6 || std::abs(pc.k2) > 1e6) continue;
                if (s.kind == SurfaceKind::constant_radii_sum && (std::abs(pc.k1) < 1e-6 || std::abs(pc.k2) < 1e-6)) continue;
                values.push_back(invariant(pc, s.kind));
            }
            if (values.size() < 10) continue;
            const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
            const double scale = 1.0 + std::abs(s.value);
            CHECK(*hi - *lo < 1e-8 * scale);
            CHECK(values.front() == doctest::Approx(s.value).epsilon(1e-8).scale(scale));
            ++confirmed;
        }
    }
    CHECK(confirmed > 300);
}

TEST_CASE("case table sweep") {
    for (int trial = 0; trial < 2000; ++trial) {
        const double eps2 = uniform(0, 1) < 0.5 ? 1.0 : -1.0;
        const double k = uniform(0, 1) < 0.1 ? 0.0 : uniform(-2, 2);
        const BonnetReport r = classify(family_coeffs(k, uniform(-2, 2), uniform(0.1, 2), eps2));
        CHECK_MESSAGE(r.case_table_ok, r.case_table_note);
        for (const auto& s : r.surfaces) {
            if (std::isfinite(s.t)) CHECK(1.0 + k * s.t * s.t > 0.0);
        }
    }
}

TEST_CASE("torus classification") {
    CHECK(torus_type(0.0, {0.3, 0.4}) == TorusType::degenerate_cylinder);
    CHECK(torus_type(1.0, {1.0, 0.0}) == TorusType::degenerate_cylinder);
    CHECK(torus_type(1.0, {-1.0, 0.0}) == TorusType::square);
    CHECK(torus_type(1.0, {0.3, 0.0}) == TorusType::rectangular);
    CHECK(torus_type(1.0, {0.6, 0.8}) == TorusType::rhombic);
    CHECK(torus_type(1.0, {0.6, 0.5}) == TorusType::unclassified);

    for (int trial = 0; trial < 1000; ++trial) {
        const double eps2 = uniform(0, 1) < 0.5 ? 1.0 : -1.0;
        double k = uniform(-2, 2);
        if (std::abs(k) < 1e-3) k = 0.5;
        const WeingartenFamily wf = family_coeffs(k, uniform(-2, 2), uniform(0.1, 2), eps2);
        const auto cr = branch_cross_ratio(branch_points(wf));
        const double scale = 1.0 + std::abs(cr);
        if (eps2 * k > 0) {
            CHECK(std::abs(cr.imag()) < 1e-9 * scale);
        } else {
            CHECK(std::abs(std::abs(cr) - 1.0) < 1e-9 * scale);
        }
        const TorusType type = torus_type(k, cr);
        CHECK(type != TorusType::unclassified);
        CHECK(type != TorusType::degenerate_cylinder);
    }
    for (int trial = 0; trial < 50; ++trial) {
        const auto cr = branch_cross_ratio(branch_points(random_family(uniform(0, 1) < 0.5 ? 1.0 : -1.0)));
        (void)cr;
        CHECK(torus_type(0.0, cr) == TorusType::degenerate_cylinder);
    }
}
