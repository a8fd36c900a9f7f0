#pragma once

#include "diraclab/grid.hpp"
#include "diraclab/matrices.hpp"

#include <cstddef>
#include <vector>

namespace diraclab {

/// Complex spinor sampled at the interior nodes of a periodic mesh.
///
/// Storage is component-planar: component c occupies [c*N, (c+1)*N) where N is the
/// node count. In 2D node (i, k) has flat index i*My + k.
class SpinorField {
public:
    SpinorField(const Mesh& mesh, int components = 2);

    const Mesh& mesh() const noexcept { return mesh_; }
    int components() const noexcept { return nc_; }
    std::size_t nodes() const noexcept { return n_; }

    cplx& operator()(int c, std::size_t node) { return data_[c * n_ + node]; }
    const cplx& operator()(int c, std::size_t node) const { return data_[c * n_ + node]; }

    cplx* component(int c) { return data_.data() + c * n_; }
    const cplx* component(int c) const { return data_.data() + c * n_; }

    /// 1D accessor with periodic wrap: at(c, M) == at(c, 0), at(c, -1) == at(c, M-1).
    cplx& at(int c, int j) { return data_[c * n_ + mesh_.axis(0).wrap(j)]; }
    const cplx& at(int c, int j) const { return data_[c * n_ + mesh_.axis(0).wrap(j)]; }

    /// 2D accessor with periodic wrap on both axes.
    const cplx& at(int c, int i, int k) const {
        return data_[c * n_ + static_cast<std::size_t>(mesh_.axis(0).wrap(i)) * mesh_.axis(1).M() +
                     mesh_.axis(1).wrap(k)];
    }

    /// Two-component spinor at a node.
    CVec2 spinor(std::size_t node) const { return {data_[node], data_[n_ + node]}; }
    void set_spinor(std::size_t node, const CVec2& v) {
        data_[node] = v(0);
        data_[n_ + node] = v(1);
    }

    std::vector<cplx>& data() noexcept { return data_; }
    const std::vector<cplx>& data() const noexcept { return data_; }

    bool all_finite() const noexcept;
    double sup_norm() const noexcept;

    SpinorField& operator+=(const SpinorField& o);
    SpinorField& operator-=(const SpinorField& o);
    SpinorField& operator*=(cplx s);

private:
    Mesh mesh_;
    int nc_;
    std::size_t n_;
    std::vector<cplx> data_;
};

SpinorField operator+(SpinorField a, const SpinorField& b);
SpinorField operator-(SpinorField a, const SpinorField& b);
SpinorField operator*(cplx s, SpinorField a);

/// Throws ArgumentError unless both fields live on the same mesh with the same component count.
void require_compatible(const SpinorField& a, const SpinorField& b, const char* who);

} // namespace diraclab
