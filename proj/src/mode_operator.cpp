#include "diraclab/mode_operator.hpp"

#include "diraclab/errors.hpp"
#include "diraclab/params.hpp"
#include "diraclab/spectral.hpp"

#include <cmath>

namespace diraclab {

ModeOperator mode_operator_1d(double eps, double mu) {
    return mode_operator_2d(eps, mu, 0.0);
}

ModeOperator mode_operator_2d(double eps, double mu1, double mu2) {
    require_eps(eps, "mode_operator");
    ModeOperator op;
    op.eps = eps;
    op.mu = {mu1, mu2, 0.0};
    const cplx m(eps * mu1, -eps * mu2);
    op.delta = std::sqrt(1.0 + eps * eps * (mu1 * mu1 + mu2 * mu2));
    const double dl = op.delta;
    op.gamma << 1.0, m, std::conj(m), -1.0;
    const double s = std::sqrt(2.0 * dl * (1.0 + dl));
    op.q << (1.0 + dl) / s, -m / s, std::conj(m) / s, (1.0 + dl) / s;
    op.d << dl, -dl;
    return op;
}

ModeOperator4 mode_operator_3d(double eps, double mu1, double mu2, double mu3) {
    require_eps(eps, "mode_operator");
    ModeOperator4 op;
    op.eps = eps;
    op.mu = {mu1, mu2, mu3};
    op.delta = std::sqrt(1.0 + eps * eps * (mu1 * mu1 + mu2 * mu2 + mu3 * mu3));
    const double dl = op.delta;
    const CMat2 ms = eps * (mu1 * pauli(1) + mu2 * pauli(2) + mu3 * pauli(3));
    op.gamma = dirac_beta();
    op.gamma.block<2, 2>(0, 2) = ms;
    op.gamma.block<2, 2>(2, 0) = ms;
    const double s = std::sqrt(2.0 * dl * (1.0 + dl));
    op.q.block<2, 2>(0, 0) = CMat2::Identity() * (1.0 + dl) / s;
    op.q.block<2, 2>(2, 0) = ms / s;
    op.q.block<2, 2>(0, 2) = -ms / s;
    op.q.block<2, 2>(2, 2) = CMat2::Identity() * (1.0 + dl) / s;
    op.d << dl, dl, -dl, -dl;
    return op;
}

namespace {

// e^{i theta} - 1 without cancellation.
cplx expm1_imag(double theta) {
    const double s = std::sin(0.5 * theta);
    return {-2.0 * s * s, std::sin(theta)};
}

constexpr double kSeriesCutoff = 1e-2;
// phi_2 loses digits to sin(theta) - theta much earlier than phi_1 does
constexpr double kSeriesCutoff2 = 0.5;

} // namespace

cplx phi1_imag(double theta) {
    const cplx w(0.0, theta);
    if (std::abs(theta) < kSeriesCutoff) {
        cplx sum = 0.0;
        cplx term = 1.0;
        for (int k = 1; k <= 10; ++k) {
            sum += term;
            term *= w / static_cast<double>(k + 1);
        }
        return sum;
    }
    return expm1_imag(theta) / w;
}

cplx phi2_imag(double theta) {
    const cplx w(0.0, theta);
    if (std::abs(theta) < kSeriesCutoff2) {
        cplx sum = 0.0;
        cplx term = 0.5;
        for (int k = 1; k <= 24; ++k) {
            sum += term;
            term *= w / static_cast<double>(k + 2);
        }
        return sum;
    }
    return (expm1_imag(theta) - w) / (w * w);
}

double dispersion_omega(double eps, double V0, const std::array<double, 3>& A0, const std::array<double, 3>& k,
                        int branch) {
    require_eps(eps, "dispersion_omega");
    if (branch != 1 && branch != -1) throw ArgumentError("dispersion_omega: branch must be +1 or -1");
    double q2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double d = k[i] - eps * A0[i];
        q2 += d * d;
    }
    return V0 + branch * std::sqrt(1.0 + eps * eps * q2) / (eps * eps);
}

SpinorField exact_free_solution(const SpinorField& initial, double eps, double t) {
    require_eps(eps, "exact_free_solution");
    if (initial.components() != 2) throw ArgumentError("exact_free_solution: two-component field required");
    const Mesh& mesh = initial.mesh();
    const std::size_t n = initial.nodes();
    SpinorField out = initial;
    fft::forward(mesh, out.component(0));
    fft::forward(mesh, out.component(1));
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t s = 0; s < n; ++s) {
        const auto [l1, l2] = fft::slot_modes(mesh, s);
        const double mu1 = mesh.axis(0).freq(l1);
        const double mu2 = mesh.dims() == 2 ? mesh.axis(1).freq(l2) : 0.0;
        const CMat2 E = mode_flow(mode_operator_2d(eps, mu1, mu2), t);
        out.set_spinor(s, E * out.spinor(s) * scale);
    }
    fft::backward(mesh, out.component(0));
    fft::backward(mesh, out.component(1));
    return out;
}

PhaseDecomp phase_decomp(double V1, const std::vector<double>& A1) {
    const int d = static_cast<int>(A1.size());
    if (d < 1 || d > 3) throw ArgumentError("phase_decomp: need 1 to 3 magnetic components");
    PhaseDecomp out;
    if (d == 3) {
        CMat4 src = V1 * CMat4::Identity();
        for (int k = 0; k < 3; ++k) src -= A1[k] * dirac_alpha(k + 1);
        out.source = src;
        const double a2 = A1[0] * A1[0] + A1[1] * A1[1] + A1[2] * A1[2];
        if (a2 == 0.0) {
            out.p = CMat4::Identity();
            out.lambda = Eigen::VectorXd::Constant(4, V1);
            return out;
        }
        Eigen::SelfAdjointEigenSolver<CMat4> es(src);
        out.p = es.eigenvectors();
        out.lambda = es.eigenvalues();
        return out;
    }
    const double a1 = A1[0];
    const double a2 = d == 2 ? A1[1] : 0.0;
    CMat2 src = V1 * CMat2::Identity() - a1 * pauli(1) - a2 * pauli(2);
    out.source = src;
    const double lam = std::hypot(a1, a2);
    if (lam == 0.0) {
        out.p = CMat2::Identity();
        out.lambda = Eigen::Vector2d(V1, V1);
        return out;
    }
    const cplx u = cplx(a1, -a2) / (std::sqrt(2.0) * lam);
    const double r = 1.0 / std::sqrt(2.0);
    CMat2 p;
    p << u, u, r, -r;
    out.p = p;
    out.lambda = Eigen::Vector2d(V1 - lam, V1 + lam);
    return out;
}

CMat2 potential_phase(double V1, double A1, double A2) {
    const double lam = std::hypot(A1, A2);
    const cplx g = std::polar(1.0, -V1);
    CMat2 m = std::cos(lam) * CMat2::Identity();
    if (lam > 0.0) {
        m += I_unit * (std::sin(lam) / lam) * (A1 * pauli(1) + A2 * pauli(2));
    }
    return g * m;
}

} // namespace diraclab
