#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>

#include "lightcone/weingarten.hpp"

namespace lightcone::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Range {
    double lo, hi;
};

struct Tolerances {
    double tol = 1e-6;     // quantities that are exact up to rounding and ODE error
    double fd_tol = 1e-1;  // finite-difference truncation residuals at desk resolution
};

struct NetConfig {
    double k = 0.0;
    double a1 = 0.0;
    double a2 = 1.0;
    Epsilon eps = Epsilon::i;
    int n1 = 32, n2 = 32, nr = 32;
    Range t1{-0.2, 0.2}, t2{-0.2, 0.2}, r{-0.7, 0.7};
    double t_init = 0.0;
    double loop_tol = 1e-6;
    UProfile profile;
    Tolerances tolerances;
    std::filesystem::path out;

    WeingartenFamily family() const;
    NetSpec spec() const;
};

// Tolerance default, or the NETS_TOL environment variable when it parses as a positive number.
double default_tolerance();

Epsilon parse_eps(std::string token);

// key = value lines, '#' starts a comment. Unknown keys, duplicates and bad numbers throw.
NetConfig parse_config(std::istream& in);
NetConfig load_config(const std::filesystem::path& path);

}  // namespace lightcone::cli
