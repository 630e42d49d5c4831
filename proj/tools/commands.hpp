#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "config.hpp"
#include "lightcone/bonnet.hpp"
#include "lightcone/triorth.hpp"

namespace lightcone::cli {

enum ExitCode : int { exit_pass = 0, exit_residual = 1, exit_input = 2, exit_runtime = 3 };

struct SuiteResult {
    int margin = 0;
    bool exact_tangents = false;
    std::optional<double> orthogonality;
    std::optional<double> lame_k;
    std::optional<LameResiduals> lame;
    std::optional<std::array<double, 9>> genlame;
    std::optional<double> bij_asymmetry;
    std::optional<double> dupin;
    std::optional<std::array<double, 3>> guichard;  // by imaginary axis
    int guichard_axis = -1;
    std::optional<std::string> failure;  // net rejected before the residuals could run
    std::optional<LameData> lame_data;

    double guichard_best() const;
    bool orthogonality_ok(const Tolerances& tol) const;
    bool lame_ok(const Tolerances& tol) const;
    bool genlame_ok(const Tolerances& tol) const;
    bool dupin_ok(const Tolerances& tol) const;
    bool guichard_ok(const Tolerances& tol) const;
    bool pass(const Tolerances& tol) const;
};

// Margin used for every finite-difference residual: a fixed fraction of the shortest axis, so
// that grids of different resolution sample the same sub-box.
int suite_margin(const ParamGrid3& grid);

SuiteResult run_suite(const NetGrid& net, std::optional<double> k);

nlohmann::json suite_json(const SuiteResult& s, const Tolerances& tol);
void print_suite(std::ostream& out, const SuiteResult& s, const Tolerances& tol);

nlohmann::json bonnet_json(const BonnetReport& r);
void print_bonnet(std::ostream& out, const BonnetReport& r);

// Name of the most specific library error type, for reports.
std::string error_name(const std::exception& e);

int cmd_synth(const std::filesystem::path& config, const std::optional<std::filesystem::path>& out_dir,
              std::ostream& out, std::ostream& err);

struct VerifyOptions {
    std::filesystem::path in;
    std::string k = "auto";  // a real or "auto" (the stored gauge curvature)
    std::optional<double> tol;
};

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

struct BonnetOptions {
    double k = 0.0, a1 = 0.0, a2 = 1.0;
    std::string eps = "i";
    bool json = false;
};

int cmd_bonnet(const BonnetOptions& opts, std::ostream& out, std::ostream& err);

int cmd_project(const std::filesystem::path& in, double to_k, const std::optional<std::filesystem::path>& out_dir,
                std::ostream& out, std::ostream& err);

}  // namespace lightcone::cli
