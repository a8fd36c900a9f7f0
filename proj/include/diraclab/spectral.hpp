#pragma once

#include "diraclab/field.hpp"

#include <vector>

namespace diraclab {

/// Fourier coefficients of a spinor field in natural order l = -M/2..M/2-1.
///
/// In 2D the coefficient of (l1, l2) sits at (l1 + M1/2)*M2 + (l2 + M2/2) per component;
/// components are planar as in SpinorField.
class ModeCoeffs {
public:
    ModeCoeffs(const Mesh& mesh, int components);

    const Mesh& mesh() const noexcept { return mesh_; }
    int components() const noexcept { return nc_; }
    std::size_t modes() const noexcept { return n_; }

    cplx& at(int c, int l) { return data_[c * n_ + (l + mesh_.axis(0).M() / 2)]; }
    const cplx& at(int c, int l) const { return data_[c * n_ + (l + mesh_.axis(0).M() / 2)]; }
    cplx& at(int c, int l1, int l2) { return data_[c * n_ + index2(l1, l2)]; }
    const cplx& at(int c, int l1, int l2) const { return data_[c * n_ + index2(l1, l2)]; }

    std::vector<cplx>& data() noexcept { return data_; }
    const std::vector<cplx>& data() const noexcept { return data_; }

private:
    std::size_t index2(int l1, int l2) const noexcept {
        return static_cast<std::size_t>(l1 + mesh_.axis(0).M() / 2) * mesh_.axis(1).M() +
               (l2 + mesh_.axis(1).M() / 2);
    }

    Mesh mesh_;
    int nc_;
    std::size_t n_;
    std::vector<cplx> data_;
};

/// U~_l = (1/M) sum_j U_j exp(-i mu_l (x_j - a)), componentwise.
ModeCoeffs analyze(const SpinorField& U);

/// U_j = sum_l U~_l exp(i mu_l (x_j - a)).
SpinorField synthesize(const ModeCoeffs& c);

/// Multiplies mode l by i mu_l along the given axis (0 or 1).
SpinorField spectral_derivative(const SpinorField& U, int axis);

/// Trigonometric interpolation onto a mesh over the same domain: zero padding when
/// refining, truncation when coarsening.
SpinorField fourier_resample(const SpinorField& U, const Mesh& target);

/// Direct O(M^2) transform of one 1D sequence, normalized and ordered like analyze().
std::vector<cplx> naive_dft(const std::vector<cplx>& u);

/// Direct O(M^2) inverse of naive_dft.
std::vector<cplx> naive_idft(const std::vector<cplx>& c);

namespace fft {

/// In-place unnormalized forward transform (kernel exp(-2 pi i jk/M)) of one component
/// in FFT slot order. Thread safe.
void forward(const Mesh& mesh, cplx* data);

/// In-place unnormalized backward transform (kernel exp(+2 pi i jk/M)).
void backward(const Mesh& mesh, cplx* data);

/// Flat FFT slot index of node/mode index (k1, k2) and the matching mode numbers.
inline std::pair<int, int> slot_modes(const Mesh& mesh, std::size_t slot) {
    if (mesh.dims() == 1) {
        return {mesh.axis(0).mode_of_slot(static_cast<int>(slot)), 0};
    }
    const auto M2 = static_cast<std::size_t>(mesh.axis(1).M());
    return {mesh.axis(0).mode_of_slot(static_cast<int>(slot / M2)),
            mesh.axis(1).mode_of_slot(static_cast<int>(slot % M2))};
}

} // namespace fft

} // namespace diraclab
