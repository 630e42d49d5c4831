#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "lightcone/errors.hpp"

namespace lightcone {

// Uniformly spaced parameter axis.
struct Axis {
    double lo = 0.0;
    double step = 1.0;
    int count = 0;

    static Axis span(double lo, double hi, int count);
    double at(int i) const { return lo + step * i; }
    double hi() const { return at(count - 1); }
};

struct ParamGrid2 {
    Axis t1, t2;

    std::size_t size() const { return static_cast<std::size_t>(t1.count) * t2.count; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * t2.count + j; }
    std::array<int, 2> node(std::size_t idx) const {
        return {static_cast<int>(idx / t2.count), static_cast<int>(idx % t2.count)};
    }
    bool interior(int i, int j, int margin = 1) const {
        return i >= margin && j >= margin && i < t1.count - margin && j < t2.count - margin;
    }
};

struct ParamGrid3 {
    std::array<Axis, 3> axes;

    std::size_t size() const {
        return static_cast<std::size_t>(axes[0].count) * axes[1].count * axes[2].count;
    }
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * axes[1].count + j) * axes[2].count + k;
    }
    std::array<int, 3> node(std::size_t idx) const {
        const int k = static_cast<int>(idx % axes[2].count);
        const std::size_t rest = idx / axes[2].count;
        return {static_cast<int>(rest / axes[1].count), static_cast<int>(rest % axes[1].count), k};
    }
    bool interior(const std::array<int, 3>& n, int margin = 1) const {
        for (int a = 0; a < 3; ++a) {
            if (n[a] < margin || n[a] >= axes[a].count - margin) return false;
        }
        return true;
    }
    ParamGrid2 slice_grid() const { return ParamGrid2{axes[0], axes[1]}; }
};

// Second-order derivative of node values along one lattice direction: central in the
// interior, one-sided at both ends. `stride` is the flat-index distance between neighbours.
template <class T>
T derivative_at(const std::vector<T>& values, std::size_t idx, int pos, int count, std::size_t stride, double h) {
    if (count < 3) throw UsageError("finite differences need at least 3 nodes per axis");
    if (pos == 0) {
        return T((-3.0 * values[idx] + 4.0 * values[idx + stride] - values[idx + 2 * stride]) / (2.0 * h));
    }
    if (pos == count - 1) {
        return T((3.0 * values[idx] - 4.0 * values[idx - stride] + values[idx - 2 * stride]) / (2.0 * h));
    }
    return T((values[idx + stride] - values[idx - stride]) / (2.0 * h));
}

template <class T>
std::vector<T> derivative(const std::vector<T>& values, const ParamGrid2& g, int axis) {
    std::vector<T> out(values.size());
    const std::size_t stride = axis == 0 ? static_cast<std::size_t>(g.t2.count) : 1;
    const Axis& ax = axis == 0 ? g.t1 : g.t2;
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        const auto n = g.node(idx);
        out[idx] = derivative_at(values, idx, n[axis], ax.count, stride, ax.step);
    }
    return out;
}

template <class T>
std::vector<T> derivative(const std::vector<T>& values, const ParamGrid3& g, int axis) {
    std::vector<T> out(values.size());
    const std::size_t strides[3] = {static_cast<std::size_t>(g.axes[1].count) * g.axes[2].count,
                                    static_cast<std::size_t>(g.axes[2].count), 1};
    const Axis& ax = g.axes[axis];
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        const auto n = g.node(idx);
        out[idx] = derivative_at(values, idx, n[axis], ax.count, strides[axis], ax.step);
    }
    return out;
}

// Observed convergence order from residuals at two step sizes.
double convergence_order(double coarse_residual, double fine_residual, double coarse_step, double fine_step);

}  // namespace lightcone
