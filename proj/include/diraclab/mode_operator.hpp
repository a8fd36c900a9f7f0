#pragma once

#include "diraclab/field.hpp"
#include "diraclab/matrices.hpp"

#include <Eigen/Dense>

#include <array>

namespace diraclab {

/// Per-mode Dirac symbol Gamma = eps*mu.sigma + sigma_3 (or its 4x4 analog) with Schur data
/// Gamma = Q D Q^*, D = diag(+delta.., -delta..), delta = sqrt(1 + eps^2 |mu|^2).
template <int N>
struct ModeOperatorN {
    using Mat = Eigen::Matrix<cplx, N, N>;
    Mat gamma;
    Mat q;
    Eigen::Matrix<double, N, 1> d;
    double delta = 1.0;
    double eps = 1.0;
    std::array<double, 3> mu{};
};

using ModeOperator = ModeOperatorN<2>;
using ModeOperator4 = ModeOperatorN<4>;

ModeOperator mode_operator_1d(double eps, double mu);
ModeOperator mode_operator_2d(double eps, double mu1, double mu2);
ModeOperator4 mode_operator_3d(double eps, double mu1, double mu2, double mu3);

/// Q exp(-i t D / eps^2) Q^*.
template <int N>
typename ModeOperatorN<N>::Mat mode_flow(const ModeOperatorN<N>& op, double t) {
    const double s = t / (op.eps * op.eps);
    Eigen::Matrix<cplx, N, 1> ph;
    for (int k = 0; k < N; ++k) ph(k) = std::polar(1.0, -s * op.d(k));
    return op.q * ph.asDiagonal() * op.q.adjoint();
}

/// phi_1(w) = (e^w - 1)/w and phi_2(w) = (e^w - 1 - w)/w^2 for purely imaginary w = i*theta.
cplx phi1_imag(double theta);
cplx phi2_imag(double theta);

template <int N>
struct EwiFiltersN {
    typename ModeOperatorN<N>::Mat q1;
    typename ModeOperatorN<N>::Mat q2;
};

/// Gautschi-type filters Q1 = -i eps^2 Gamma^{-1}(I - e^{-i tau Gamma/eps^2}) and
/// Q2 = -i eps^2 tau Gamma^{-1} + eps^4 Gamma^{-2}(I - e^{-i tau Gamma/eps^2}),
/// evaluated as tau*phi1 and tau^2*phi2 of the eigenvalues.
template <int N>
EwiFiltersN<N> ewi_filters(const ModeOperatorN<N>& op, double tau) {
    const double e2 = op.eps * op.eps;
    Eigen::Matrix<cplx, N, 1> f1;
    Eigen::Matrix<cplx, N, 1> f2;
    for (int k = 0; k < N; ++k) {
        const double theta = -tau * op.d(k) / e2;
        f1(k) = tau * phi1_imag(theta);
        f2(k) = tau * tau * phi2_imag(theta);
    }
    return {op.q * f1.asDiagonal() * op.q.adjoint(), op.q * f2.asDiagonal() * op.q.adjoint()};
}

using EwiFilters = EwiFiltersN<2>;

/// omega = V0 +- (1/eps^2) sqrt(1 + eps^2 |k - eps A0|^2); branch is +1 or -1.
double dispersion_omega(double eps, double V0, const std::array<double, 3>& A0, const std::array<double, 3>& k,
                        int branch);

/// Zero-potential flow of a 2-component field on a 1D or 2D mesh over time t.
SpinorField exact_free_solution(const SpinorField& initial, double eps, double t);

/// Eigen-decomposition P Lambda P^* of V1*I - sum_k A1_k sigma_k (d <= 2) or of
/// V1*I - sum_k A1_k alpha_k (d = 3). Lambda ascending.
struct PhaseDecomp {
    Eigen::MatrixXcd p;
    Eigen::VectorXd lambda;
    Eigen::MatrixXcd source;
};

PhaseDecomp phase_decomp(double V1, const std::vector<double>& A1);

/// exp(-i (V1 I - A1 sigma_1 - A2 sigma_2)) in closed form.
CMat2 potential_phase(double V1, double A1, double A2 = 0.0);

} // namespace diraclab
