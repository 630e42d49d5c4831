#include "export.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lightcone/spaceform.hpp"

namespace lightcone::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& file) {
    std::ofstream out(file);
    if (!out) throw InputError("cannot write " + file.string());
    out << std::setprecision(17);
    return out;
}

json axis_json(const Axis& a) { return {{"lo", a.lo}, {"step", a.step}, {"count", a.count}}; }

Axis axis_from(const json& j) {
    Axis a{j.at("lo").get<double>(), j.at("step").get<double>(), j.at("count").get<int>()};
    if (a.count < 3 || !(a.step > 0.0)) throw InputError("grid.json: invalid axis");
    return a;
}

}  // namespace

void write_net(const fs::path& dir, const NetGrid& net, const std::optional<WeingartenFamily>& family) {
    fs::create_directories(dir);
    const auto& g = net.grid;
    const int dim = static_cast<int>(net.f.front().size());

    json meta;
    meta["axes"] = json::array({axis_json(g.axes[0]), axis_json(g.axes[1]), axis_json(g.axes[2])});
    meta["dim"] = dim;
    meta["has_tangents"] = net.has_tangents();
    if (net.gauge) {
        meta["gauge"] = {{"k", net.gauge->curvature},
                         {"nk", std::vector<double>(net.gauge->nk.coords().begin(), net.gauge->nk.coords().end())}};
    } else {
        meta["gauge"] = nullptr;
    }
    if (family) {
        meta["family"] = {{"k", family->k}, {"a1", family->a1}, {"a2", family->a2}, {"eps2", family->eps2}};
    } else {
        meta["family"] = nullptr;
    }
    open_out(dir / "grid.json") << meta.dump(2) << '\n';

    auto out = open_out(dir / "net.csv");
    out << "i,j,k,t1,t2,r";
    for (int c = 0; c < dim; ++c) out << ",f" << c;
    if (net.has_tangents()) {
        for (int a = 1; a <= 3; ++a) {
            for (int c = 0; c < dim; ++c) out << ",d" << a << "_" << c;
        }
    }
    out << '\n';
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const auto n = g.node(idx);
        out << n[0] << ',' << n[1] << ',' << n[2];
        for (int a = 0; a < 3; ++a) out << ',' << g.axes[a].at(n[a]);
        for (int c = 0; c < dim; ++c) out << ',' << net.f[idx][c];
        if (net.has_tangents()) {
            for (int a = 0; a < 3; ++a) {
                for (int c = 0; c < dim; ++c) out << ',' << net.tangents[a][idx][c];
            }
        }
        out << '\n';
    }
    if (!out) throw InputError("write failed for net.csv");
}

StoredNet read_net(const fs::path& dir) {
    std::ifstream meta_in(dir / "grid.json");
    if (!meta_in) throw InputError("cannot open " + (dir / "grid.json").string());
    json meta;
    try {
        meta = json::parse(meta_in);
    } catch (const json::exception& e) {
        throw InputError(std::string("grid.json: ") + e.what());
    }

    StoredNet stored;
    try {
        const auto& axes = meta.at("axes");
        if (axes.size() != 3) throw InputError("grid.json: need three axes");
        stored.net.grid = ParamGrid3{{axis_from(axes[0]), axis_from(axes[1]), axis_from(axes[2])}};
        const int dim = meta.at("dim").get<int>();
        if (dim < 5) throw InputError("grid.json: dim must be at least 5");
        const bool has_tangents = meta.at("has_tangents").get<bool>();
        if (!meta.at("gauge").is_null()) {
            const auto nk = meta["gauge"].at("nk").get<std::vector<double>>();
            if (static_cast<int>(nk.size()) != dim) throw InputError("grid.json: gauge size mismatch");
            stored.net.gauge = SpaceForm{MinkVec(Eigen::Map<const Eigen::VectorXd>(nk.data(), dim)),
                                         meta["gauge"].at("k").get<double>(), dim - 2};
        }
        if (!meta.at("family").is_null()) {
            const auto& f = meta["family"];
            stored.family = family_coeffs(f.at("k").get<double>(), f.at("a1").get<double>(),
                                          f.at("a2").get<double>(), f.at("eps2").get<double>());
        }

        const auto& g = stored.net.grid;
        const std::size_t columns = 6 + dim * (has_tangents ? 4 : 1);
        stored.net.f.assign(g.size(), Eigen::VectorXd());
        if (has_tangents) {
            for (auto& t : stored.net.tangents) t.assign(g.size(), Eigen::VectorXd());
        }

        std::ifstream in(dir / "net.csv");
        if (!in) throw InputError("cannot open " + (dir / "net.csv").string());
        std::string line;
        if (!std::getline(in, line)) throw InputError("net.csv: empty file");
        std::vector<bool> filled(g.size(), false);
        std::size_t rows = 0;
        std::vector<double> values(columns);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream fields(line);
            std::string cell;
            std::size_t c = 0;
            while (std::getline(fields, cell, ',')) {
                if (c >= columns) throw InputError("net.csv: too many columns");
                char* end = nullptr;
                values[c] = std::strtod(cell.c_str(), &end);
                if (end == cell.c_str()) throw InputError("net.csv: bad number '" + cell + "'");
                ++c;
            }
            if (c != columns) throw InputError("net.csv: row " + std::to_string(rows + 2) + " is truncated");
            const int i = static_cast<int>(values[0]), j = static_cast<int>(values[1]), k = static_cast<int>(values[2]);
            if (i < 0 || j < 0 || k < 0 || i >= g.axes[0].count || j >= g.axes[1].count || k >= g.axes[2].count) {
                throw InputError("net.csv: node index out of range");
            }
            const std::size_t idx = g.index(i, j, k);
            filled[idx] = true;
            stored.net.f[idx] = Eigen::Map<const Eigen::VectorXd>(values.data() + 6, dim);
            if (has_tangents) {
                for (int a = 0; a < 3; ++a) {
                    stored.net.tangents[a][idx] = Eigen::Map<const Eigen::VectorXd>(values.data() + 6 + dim * (a + 1), dim);
                }
            }
            ++rows;
        }
        if (rows != g.size() || std::find(filled.begin(), filled.end(), false) != filled.end()) {
            throw InputError("net.csv: expected " + std::to_string(g.size()) + " nodes, found " + std::to_string(rows));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("grid.json: ") + e.what());
    } catch (const Error& e) {
        throw InputError(e.what());
    }
    return stored;
}

void write_slices(const fs::path& dir, const NetGrid& net, double model_k) {
    fs::create_directories(dir);
    const auto& g = net.grid;
    const int dim = static_cast<int>(net.f.front().size());
    const SpaceForm model = canonical_space_form(model_k, dim - 2);
    const int n1 = g.axes[0].count, n2 = g.axes[1].count;

    for (int kr = 0; kr < g.axes[2].count; ++kr) {
        char name[32];
        std::snprintf(name, sizeof name, "slice_%03d.obj", kr);
        auto out = open_out(dir / name);
        out << "# r = " << g.axes[2].at(kr) << ", model k = " << model_k << '\n';
        for (int i = 0; i < n1; ++i) {
            for (int j = 0; j < n2; ++j) {
                const LightPoint p = stereographic(LightPoint::unchecked(MinkVec(net.f[g.index(i, j, kr)])), model);
                const auto& x = p.vec().coords();
                out << "v " << x[0] << ' ' << x[1] << ' ' << x[2] << '\n';
            }
        }
        // OBJ indices are 1-based
        for (int i = 0; i + 1 < n1; ++i) {
            for (int j = 0; j + 1 < n2; ++j) {
                const int a = i * n2 + j + 1;
                out << "f " << a << ' ' << a + n2 << ' ' << a + n2 + 1 << ' ' << a + 1 << '\n';
            }
        }
    }
}

void write_scalar_csv(const fs::path& file, const ParamGrid3& grid, const ScalarField& values) {
    auto out = open_out(file);
    out << "i,j,k,value\n";
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const auto n = grid.node(idx);
        out << n[0] << ',' << n[1] << ',' << n[2] << ',' << values[idx] << '\n';
    }
}

}  // namespace lightcone::cli
