#pragma once

#include <Eigen/Dense>

#include <complex>

namespace diraclab {

using cplx = std::complex<double>;
using CMat2 = Eigen::Matrix<cplx, 2, 2>;
using CMat4 = Eigen::Matrix<cplx, 4, 4>;
using CVec2 = Eigen::Matrix<cplx, 2, 1>;
using CVec4 = Eigen::Matrix<cplx, 4, 1>;

inline constexpr cplx I_unit{0.0, 1.0};

/// Pauli matrix sigma_index, index in {1, 2, 3}.
CMat2 pauli(int index);

/// Dirac alpha_index = [[0, sigma], [sigma, 0]], index in {1, 2, 3}.
CMat4 dirac_alpha(int index);

/// Dirac beta = diag(1, 1, -1, -1).
CMat4 dirac_beta();

/// Spectral norm of a small complex matrix.
template <class Derived>
double norm2(const Eigen::MatrixBase<Derived>& m) {
    Eigen::JacobiSVD<typename Derived::PlainObject> svd(m);
    return svd.singularValues()(0);
}

/// Largest entry modulus.
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

} // namespace diraclab
