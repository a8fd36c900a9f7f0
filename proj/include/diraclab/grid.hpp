#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>

namespace diraclab {

/// Uniform periodic grid on [a, b) with M interior points.
///
/// Nodes are x_j = a + j*h for j = 0..M-1; node M coincides with node 0 and is
/// never stored. Frequencies are mu_l = 2*pi*l/(b-a) for l = -M/2..M/2-1.
class Grid1D {
public:
    Grid1D(double a, double b, int M);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    int M() const noexcept { return M_; }
    double h() const noexcept { return (b_ - a_) / M_; }
    double length() const noexcept { return b_ - a_; }

    double node(int j) const noexcept { return a_ + j * h(); }
    double freq(int l) const noexcept { return 2.0 * std::numbers::pi * l / (b_ - a_); }

    /// Mode index l of FFT slot k (slots 0..M/2-1 are l = k, the rest l = k - M).
    int mode_of_slot(int k) const noexcept { return k < M_ / 2 ? k : k - M_; }
    int slot_of_mode(int l) const noexcept { return l >= 0 ? l : l + M_; }

    /// Periodic wrap of an arbitrary node index into 0..M-1.
    int wrap(int j) const noexcept {
        const int r = j % M_;
        return r < 0 ? r + M_ : r;
    }

    /// Grid on the same interval with mesh size h; throws unless (b-a)/h is an even integer.
    static Grid1D with_mesh(double a, double b, double h);

    friend bool operator==(const Grid1D&, const Grid1D&) = default;

private:
    double a_;
    double b_;
    int M_;
};

/// Tensor-product periodic grid; node (i, k) is stored at i*My + k.
class Grid2D {
public:
    Grid2D(Grid1D x, Grid1D y) : x_(x), y_(y) {}

    const Grid1D& x() const noexcept { return x_; }
    const Grid1D& y() const noexcept { return y_; }
    std::size_t size() const noexcept {
        return static_cast<std::size_t>(x_.M()) * static_cast<std::size_t>(y_.M());
    }
    double cell_area() const noexcept { return x_.h() * y_.h(); }

    friend bool operator==(const Grid2D&, const Grid2D&) = default;

private:
    Grid1D x_;
    Grid1D y_;
};

/// A 1D or 2D grid. Axis 0 is always present; axis 1 only in 2D.
class Mesh {
public:
    Mesh(const Grid1D& g) : axes_{g, g}, dims_(1) {}  // NOLINT(google-explicit-constructor)
    Mesh(const Grid2D& g) : axes_{g.x(), g.y()}, dims_(2) {}  // NOLINT(google-explicit-constructor)

    int dims() const noexcept { return dims_; }
    const Grid1D& axis(int k) const { return axes_[k]; }
    std::size_t size() const noexcept {
        return dims_ == 1 ? static_cast<std::size_t>(axes_[0].M()) : grid2d().size();
    }
    /// Quadrature weight h (1D) or h1*h2 (2D).
    double cell_volume() const noexcept {
        return dims_ == 1 ? axes_[0].h() : axes_[0].h() * axes_[1].h();
    }
    Grid1D grid1d() const { return axes_[0]; }
    Grid2D grid2d() const { return Grid2D(axes_[0], axes_[1]); }

    friend bool operator==(const Mesh& l, const Mesh& r) {
        return l.dims_ == r.dims_ && l.axes_[0] == r.axes_[0] && (l.dims_ == 1 || l.axes_[1] == r.axes_[1]);
    }

private:
    Grid1D axes_[2];
    int dims_;
};

} // namespace diraclab
