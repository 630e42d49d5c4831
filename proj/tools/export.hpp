#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>

#include "lightcone/triorth.hpp"
#include "lightcone/weingarten.hpp"

namespace lightcone::cli {

// Missing, truncated or inconsistent input files.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StoredNet {
    NetGrid net;
    std::optional<WeingartenFamily> family;
};

// net.csv rows are i,j,k,t1,t2,r then the ambient coordinates of f and, when known, of the
// three coordinate tangents. grid.json carries the axes, the gauge and the family.
void write_net(const std::filesystem::path& dir, const NetGrid& net, const std::optional<WeingartenFamily>& family);
StoredNet read_net(const std::filesystem::path& dir);

// One OBJ per r-slice; vertices are the first three coordinates of f rescaled into Q_k.
void write_slices(const std::filesystem::path& dir, const NetGrid& net, double model_k);

void write_scalar_csv(const std::filesystem::path& file, const ParamGrid3& grid, const ScalarField& values);

}  // namespace lightcone::cli
