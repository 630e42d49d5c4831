#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "export.hpp"

namespace lightcone::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// JSON has no infinities; non-finite values become strings so the key set stays fixed.
json num(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

template <class T>
json opt_num(const std::optional<T>& x) {
    return x ? num(*x) : json(nullptr);
}

template <std::size_t N>
json num_array(const std::array<double, N>& xs) {
    json a = json::array();
    for (double x : xs) a.push_back(num(x));
    return a;
}

template <class Array>
double max_of(const Array& xs) {
    return *std::max_element(xs.begin(), xs.end());
}

json complex_json(std::complex<double> z) { return json::array({num(z.real()), num(z.imag())}); }

std::string eps_token(double eps2) { return eps2 > 0 ? "1" : "i"; }

const char* verdict(bool ok) { return ok ? "pass" : "FAIL"; }

std::string fmt(double x) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(3) << x;
    return s.str();
}

}  // namespace

double SuiteResult::guichard_best() const {
    return guichard ? (*guichard)[guichard_axis] : std::numeric_limits<double>::quiet_NaN();
}

bool SuiteResult::orthogonality_ok(const Tolerances& tol) const {
    return orthogonality && *orthogonality <= tol.fd_tol;
}
bool SuiteResult::lame_ok(const Tolerances& tol) const { return !lame || max_of(lame->all()) <= tol.fd_tol; }
bool SuiteResult::genlame_ok(const Tolerances& tol) const { return genlame && max_of(*genlame) <= tol.fd_tol; }
bool SuiteResult::dupin_ok(const Tolerances& tol) const { return dupin && *dupin <= tol.fd_tol; }
bool SuiteResult::guichard_ok(const Tolerances& tol) const { return guichard && guichard_best() <= tol.tol; }

bool SuiteResult::pass(const Tolerances& tol) const {
    return !failure && orthogonality_ok(tol) && lame_ok(tol) && genlame_ok(tol) && dupin_ok(tol) && guichard_ok(tol);
}

int suite_margin(const ParamGrid3& grid) {
    const int shortest = std::min({grid.axes[0].count, grid.axes[1].count, grid.axes[2].count});
    return std::max(3, shortest / 4);
}

SuiteResult run_suite(const NetGrid& net, std::optional<double> k) {
    SuiteResult s;
    s.margin = suite_margin(net.grid);
    s.exact_tangents = net.has_tangents();
    s.lame_k = k;
    s.orthogonality = orthogonality_residual(net).first;
    try {
        s.lame_data = lame_from_grid(net);
    } catch (const Error& e) {
        s.failure = error_name(e) + ": " + e.what();
        return s;
    }
    const LameData& ld = *s.lame_data;
    if (k) s.lame = lame_residuals(ld, *k, s.margin);
    s.genlame = genlame_residuals(ld, s.margin);
    s.bij_asymmetry = bij_asymmetry(ld, s.margin);
    s.dupin = dupin_residual(net, TangentSource::automatic, s.margin);
    std::array<double, 3> g{};
    for (int a = 0; a < 3; ++a) g[a] = guichard_residual(ld, a);
    s.guichard = g;
    s.guichard_axis = static_cast<int>(std::min_element(g.begin(), g.end()) - g.begin());
    return s;
}

json suite_json(const SuiteResult& s, const Tolerances& tol) {
    json j;
    j["margin"] = s.margin;
    j["exact_tangents"] = s.exact_tangents;
    j["failure"] = s.failure ? json(*s.failure) : json(nullptr);
    j["orthogonality"] = opt_num(s.orthogonality);
    j["lame_k"] = opt_num(s.lame_k);
    j["lame"] = s.lame ? num_array(s.lame->all()) : json(nullptr);
    j["genlame"] = s.genlame ? num_array(*s.genlame) : json(nullptr);
    j["bij_asymmetry"] = opt_num(s.bij_asymmetry);
    j["dupin"] = opt_num(s.dupin);
    j["guichard"] = s.guichard ? num_array(*s.guichard) : json(nullptr);
    j["guichard_imaginary_axis"] = s.guichard ? json(s.guichard_axis) : json(nullptr);
    j["guichard_best"] = s.guichard ? num(s.guichard_best()) : json(nullptr);
    j["checks"] = {{"orthogonality", s.orthogonality_ok(tol)},
                   {"lame", s.lame ? json(s.lame_ok(tol)) : json(nullptr)},
                   {"genlame", s.genlame_ok(tol)},
                   {"dupin", s.dupin_ok(tol)},
                   {"guichard", s.guichard_ok(tol)}};
    j["pass"] = s.pass(tol);
    return j;
}

void print_suite(std::ostream& out, const SuiteResult& s, const Tolerances& tol) {
    out << "margin " << s.margin << ", tangents " << (s.exact_tangents ? "stored" : "finite differences") << '\n';
    if (s.orthogonality) {
        out << "  orthogonality     " << fmt(*s.orthogonality) << "  " << verdict(s.orthogonality_ok(tol)) << '\n';
    }
    if (s.failure) {
        out << "  rejected: " << *s.failure << '\n';
        return;
    }
    if (s.lame) {
        out << "  lame (k=" << *s.lame_k << ")      " << fmt(max_of(s.lame->all())) << "  " << verdict(s.lame_ok(tol))
            << '\n';
    } else {
        out << "  lame              skipped (no k)\n";
    }
    out << "  generalized lame  " << fmt(max_of(*s.genlame)) << "  " << verdict(s.genlame_ok(tol)) << '\n';
    out << "  b_ij asymmetry    " << fmt(*s.bij_asymmetry) << '\n';
    out << "  dupin             " << fmt(*s.dupin) << "  " << verdict(s.dupin_ok(tol)) << '\n';
    for (int a = 0; a < 3; ++a) {
        out << "  guichard (i on " << a + 1 << ") " << fmt((*s.guichard)[a]) << (a == s.guichard_axis ? "  best" : "")
            << '\n';
    }
    out << "  guichard          " << verdict(s.guichard_ok(tol)) << " (tol " << fmt(tol.tol) << ")\n";
    out << (s.pass(tol) ? "PASS" : "FAIL") << '\n';
}

json bonnet_json(const BonnetReport& r) {
    json j;
    const auto& wf = r.family;
    j["family"] = {{"k", wf.k}, {"a1", wf.a1}, {"a2", wf.a2}, {"eps", eps_token(wf.eps2)}};
    j["coefficients"] = {{"cK", {wf.cK.q2, wf.cK.q1, wf.cK.q0}},
                         {"cH", {wf.cH.q2, wf.cH.q1, wf.cH.q0}},
                         {"c", {wf.c.q2, wf.c.q1, wf.c.q0}}};
    auto roots = [](const RootList& l) {
        json a = json::array(), b = json::array();
        for (double t : l.admissible) a.push_back(num(t));
        for (double t : l.beyond) b.push_back(num(t));
        return json{{"admissible", a}, {"beyond", b}, {"at_infinity", l.at_infinity}};
    };
    j["roots"] = {{"cK", roots(r.cK_roots)}, {"cH", roots(r.cH_roots)}, {"c", roots(r.c_roots)}};
    j["special_surfaces"] = json::array();
    for (const auto& s : r.surfaces) {
        j["special_surfaces"].push_back({{"t", num(s.t)}, {"kind", to_string(s.kind)}, {"value", num(s.value)}});
    }
    j["distances"] = json::array();
    for (const auto& d : r.distances) j["distances"].push_back({{"a", d.a}, {"b", d.b}, {"d", num(d.d)}});
    j["relations"] = json::array();
    for (const auto& rel : r.relations) {
        j["relations"].push_back({{"name", rel.name},
                                  {"applicable", rel.applicable},
                                  {"residual", rel.applicable ? num(rel.residual) : json(nullptr)},
                                  {"note", rel.note}});
    }
    j["rebased"] = r.rebased ? json{{"t", r.rebase_t}, {"a1", r.rebased->a1}, {"a2", r.rebased->a2}} : json(nullptr);
    const auto& ki = r.k_infinity;
    j["k_infinity"] = {{"applicable", ki.applicable},
                       {"printed", ki.applicable ? num(ki.printed) : json(nullptr)},
                       {"leading", ki.applicable ? num(ki.leading) : json(nullptr)},
                       {"numeric", ki.applicable ? num(ki.numeric) : json(nullptr)},
                       {"numeric_spread", ki.applicable ? num(ki.numeric_spread) : json(nullptr)},
                       {"product", ki.applicable ? num(ki.product) : json(nullptr)}};
    j["cross_ratio"] = complex_json(r.cross_ratio);
    j["torus_type"] = to_string(r.torus);
    j["case_table"] = {{"ok", r.case_table_ok}, {"note", r.case_table_note}};
    j["counts"] = {{"constant_mean_curvature", r.count(SurfaceKind::constant_mean_curvature)},
                   {"constant_gauss_curvature", r.count(SurfaceKind::constant_gauss_curvature)},
                   {"constant_radii_sum", r.count(SurfaceKind::constant_radii_sum)}};
    return j;
}

void print_bonnet(std::ostream& out, const BonnetReport& r) {
    const auto& wf = r.family;
    out << std::setprecision(10);
    out << "family k=" << wf.k << " a1=" << wf.a1 << " a2=" << wf.a2 << " eps=" << eps_token(wf.eps2) << '\n';
    out << "cK = " << wf.cK.q2 << " t^2 + " << wf.cK.q1 << " t + " << wf.cK.q0 << '\n';
    out << "cH = " << wf.cH.q2 << " t^2 + " << wf.cH.q1 << " t + " << wf.cH.q0 << '\n';
    out << "c  = " << wf.c.q2 << " t^2 + " << wf.c.q1 << " t + " << wf.c.q0 << '\n';
    if (r.count(SurfaceKind::constant_mean_curvature) == 0) out << "no constant mean curvature surfaces\n";
    if (r.count(SurfaceKind::constant_radii_sum) == 0) out << "no constant-radii-sum surfaces\n";
    out << "special surfaces:\n";
    for (std::size_t i = 0; i < r.surfaces.size(); ++i) {
        const auto& s = r.surfaces[i];
        out << "  [" << i << "] t=" << s.t << "  " << to_string(s.kind) << "  value " << s.value << '\n';
    }
    if (!r.distances.empty()) out << "distances:\n";
    for (const auto& d : r.distances) out << "  [" << d.a << "]-[" << d.b << "] " << d.d << '\n';
    if (r.rebased) out << "based at t=" << r.rebase_t << ": a1=" << r.rebased->a1 << " a2=" << r.rebased->a2 << '\n';
    out << "relations:\n";
    for (const auto& rel : r.relations) {
        out << "  " << rel.name << ": ";
        if (rel.applicable) {
            out << "residual " << fmt(rel.residual);
        } else {
            out << "n/a";
        }
        if (!rel.note.empty()) out << "  (" << rel.note << ")";
        out << '\n';
    }
    if (r.k_infinity.applicable) {
        const auto& ki = r.k_infinity;
        out << "K_inf: printed " << ki.printed << ", leading " << ki.leading << ", numeric " << ki.numeric
            << ", K_0 K_inf " << ki.product << '\n';
    }
    out << "cross ratio " << r.cross_ratio.real() << (r.cross_ratio.imag() < 0 ? " - " : " + ")
        << std::abs(r.cross_ratio.imag()) << "i, torus " << to_string(r.torus) << '\n';
    out << "case table " << (r.case_table_ok ? "ok" : "VIOLATED") << ": " << r.case_table_note << '\n';
}

std::string error_name(const std::exception& e) {
    if (dynamic_cast<const SingularNetError*>(&e)) return "SingularNetError";
    if (dynamic_cast<const InconsistentAnsatzError*>(&e)) return "InconsistentAnsatzError";
    if (dynamic_cast<const NotTriplyOrthogonalError*>(&e)) return "NotTriplyOrthogonalError";
    if (dynamic_cast<const ImmersionFailureError*>(&e)) return "ImmersionFailureError";
    if (dynamic_cast<const DivergenceError*>(&e)) return "DivergenceError";
    if (dynamic_cast<const BranchAmbiguityError*>(&e)) return "BranchAmbiguityError";
    if (dynamic_cast<const DegenerateQuarticError*>(&e)) return "DegenerateQuarticError";
    if (dynamic_cast<const ExcludedCaseError*>(&e)) return "ExcludedCaseError";
    if (dynamic_cast<const InfinityBoundaryError*>(&e)) return "InfinityBoundaryError";
    if (dynamic_cast<const InconsistentGaugeError*>(&e)) return "InconsistentGaugeError";
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    if (dynamic_cast<const UsageError*>(&e)) return "UsageError";
    if (dynamic_cast<const Error*>(&e)) return "Error";
    return "std::exception";
}

int cmd_synth(const fs::path& config, const std::optional<fs::path>& out_dir, std::ostream& out, std::ostream& err) {
    NetConfig cfg;
    try {
        cfg = load_config(config);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_input;
    }
    if (out_dir) cfg.out = *out_dir;
    if (cfg.out.empty()) {
        err << "no output directory (use --out or the 'out' key)\n";
        return exit_input;
    }

    const auto start = std::chrono::steady_clock::now();
    json report;
    report["command"] = "synth";
    report["config"] = {{"k", cfg.k},           {"a1", cfg.a1},
                        {"a2", cfg.a2},         {"eps", eps_token(eps2_of(cfg.eps))},
                        {"N1", cfg.n1},         {"N2", cfg.n2},
                        {"Nr", cfg.nr},         {"t1", {cfg.t1.lo, cfg.t1.hi}},
                        {"t2", {cfg.t2.lo, cfg.t2.hi}}, {"r", {cfg.r.lo, cfg.r.hi}},
                        {"t_init", cfg.t_init}, {"profile", {{"u0", cfg.profile.u0}, {"du0", cfg.profile.du0},
                                                             {"theta", cfg.profile.theta}}}};
    report["tolerances"] = {{"tol", cfg.tolerances.tol}, {"fd_tol", cfg.tolerances.fd_tol}, {"loop_tol", cfg.loop_tol}};
    report["error"] = nullptr;
    report["synthesis"] = {{"loop_defect", nullptr}, {"ode_residual", nullptr}, {"turning_points", json::array()},
                           {"cross_ratio", nullptr}};

    auto finish = [&](const std::string& status, int code, const SuiteResult& suite) -> int {
        report["status"] = status;
        report["exit_code"] = code;
        report["residuals"] = suite_json(suite, cfg.tolerances);
        report["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        try {
            fs::create_directories(cfg.out);
            std::ofstream(cfg.out / "report.json") << report.dump(2) << '\n';
        } catch (const std::exception& e) {
            err << "cannot write report: " << e.what() << '\n';
            return exit_runtime;
        }
        return code;
    };

    std::optional<SynthesizedNet> sn;
    try {
        sn = synthesize_net(cfg.family(), cfg.profile, cfg.spec());
    } catch (const Error& e) {
        err << "synthesis failed: " << error_name(e) << ": " << e.what() << '\n';
        report["error"] = {{"type", error_name(e)}, {"message", e.what()}};
        SuiteResult none;
        none.failure = "synthesis failed";
        return finish("error", exit_runtime, none);
    }
    report["synthesis"] = {{"loop_defect", num(sn->loop_defect)},
                           {"ode_residual", num(sn->reparam.ode_residual)},
                           {"turning_points", sn->reparam.turning_points},
                           {"cross_ratio", complex_json(sn->reparam.cross_ratio)}};

    const SuiteResult suite = run_suite(sn->net, cfg.k);
    try {
        write_net(cfg.out, sn->net, cfg.family());
        write_slices(cfg.out / "slices", sn->net, cfg.k);
        if (suite.lame_data) {
            for (int a = 0; a < 3; ++a) {
                write_scalar_csv(cfg.out / ("l" + std::to_string(a + 1) + ".csv"), sn->net.grid, suite.lame_data->l[a]);
            }
        }
    } catch (const std::exception& e) {
        err << "export failed: " << e.what() << '\n';
        report["error"] = {{"type", error_name(e)}, {"message", e.what()}};
        return finish("error", exit_runtime, suite);
    }

    print_suite(out, suite, cfg.tolerances);
    const bool ok = suite.pass(cfg.tolerances);
    return finish(ok ? "pass" : "fail", ok ? exit_pass : exit_residual, suite);
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
    StoredNet stored;
    try {
        stored = read_net(opts.in);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return exit_input;
    }

    std::optional<double> k;
    if (opts.k == "auto") {
        if (stored.net.gauge) k = stored.net.gauge->curvature;
    } else {
        char* end = nullptr;
        const double v = std::strtod(opts.k.c_str(), &end);
        if (end == opts.k.c_str() || *end != '\0' || !std::isfinite(v)) {
            err << "--k must be a real number or 'auto'\n";
            return exit_input;
        }
        k = v;
    }

    Tolerances tol;
    tol.tol = opts.tol.value_or(default_tolerance());
    try {
        const SuiteResult suite = run_suite(stored.net, k);
        print_suite(out, suite, tol);
        return suite.pass(tol) ? exit_pass : exit_residual;
    } catch (const Error& e) {
        err << error_name(e) << ": " << e.what() << '\n';
        return exit_runtime;
    }
}

int cmd_bonnet(const BonnetOptions& opts, std::ostream& out, std::ostream& err) {
    WeingartenFamily wf;
    try {
        if (!std::isfinite(opts.k) || !std::isfinite(opts.a1) || !std::isfinite(opts.a2)) {
            throw ConfigError("parameters must be finite");
        }
        wf = family_coeffs(opts.k, opts.a1, opts.a2, eps2_of(parse_eps(opts.eps)));
    } catch (const std::exception& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_input;
    }
    const BonnetReport r = classify(wf);
    if (opts.json) {
        out << bonnet_json(r).dump(2) << '\n';
    } else {
        print_bonnet(out, r);
    }
    return exit_pass;
}

int cmd_project(const fs::path& in, double to_k, const std::optional<fs::path>& out_dir, std::ostream& out,
                std::ostream& err) {
    StoredNet stored;
    try {
        stored = read_net(in);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return exit_input;
    }
    std::ostringstream name;
    name << "slices_k" << to_k;
    const fs::path target = out_dir.value_or(in / name.str());
    try {
        write_slices(target, stored.net, to_k);
    } catch (const Error& e) {
        err << error_name(e) << ": " << e.what() << '\n';
        return exit_runtime;
    } catch (const InputError& e) {
        err << e.what() << '\n';
        return exit_runtime;
    }
    out << "wrote " << stored.net.grid.axes[2].count << " slices to " << target.string() << '\n';
    return exit_pass;
}

}  // namespace lightcone::cli
