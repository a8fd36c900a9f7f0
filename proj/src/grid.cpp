#include "diraclab/grid.hpp"

#include "diraclab/errors.hpp"

#include <string>

namespace diraclab {

Grid1D::Grid1D(double a, double b, int M) : a_(a), b_(b), M_(M) {
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
        throw ArgumentError("grid: need finite a < b");
    }
    if (M < 2 || M % 2 != 0) {
        throw ArgumentError("grid: M must be even and >= 2, got " + std::to_string(M));
    }
}

Grid1D Grid1D::with_mesh(double a, double b, double h) {
    if (!(h > 0.0)) {
        throw ArgumentError("grid: mesh size must be positive");
    }
    const double ratio = (b - a) / h;
    const double M = std::round(ratio);
    if (std::abs(ratio - M) > 1e-9 * std::max(1.0, M)) {
        throw ArgumentError("grid: h = " + std::to_string(h) + " does not divide the domain length");
    }
    return Grid1D(a, b, static_cast<int>(M));
}

} // namespace diraclab
