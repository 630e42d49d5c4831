#include "lightcone/grid.hpp"

#include <cmath>

namespace lightcone {

Axis Axis::span(double lo, double hi, int count) {
    if (count < 2) throw UsageError("Axis: need at least two nodes");
    if (!(hi > lo)) throw UsageError("Axis: range must be increasing");
    return Axis{lo, (hi - lo) / (count - 1), count};
}

double convergence_order(double coarse_residual, double fine_residual, double coarse_step, double fine_step) {
    return std::log(coarse_residual / fine_residual) / std::log(coarse_step / fine_step);
}

}  // namespace lightcone
