#include "diraclab/observables.hpp"

#include "diraclab/errors.hpp"
#include "diraclab/params.hpp"
#include "diraclab/spectral.hpp"

#include <cmath>
#include <sstream>

namespace diraclab {

double mass(const SpinorField& field) {
    double s = 0.0;
    for (const cplx& z : field.data()) s += std::norm(z);
    return field.mesh().cell_volume() * s;
}

namespace {

Eigen::MatrixXcd current_matrix(int nc, int k) {
    if (nc == 2) return pauli(k);
    return dirac_alpha(k);
}

Eigen::VectorXcd node_vec(const SpinorField& f, std::size_t j) {
    Eigen::VectorXcd v(f.components());
    for (int c = 0; c < f.components(); ++c) v(c) = f(c, j);
    return v;
}

} // namespace

DensityCurrent density_current(const SpinorField& field, double eps) {
    require_eps(eps, "density_current");
    const int nc = field.components();
    const std::size_t n = field.nodes();
    const int ncur = nc == 2 ? field.mesh().dims() : 3;
    DensityCurrent out;
    out.rho.assign(n, 0.0);
    out.rho_comp.assign(nc, std::vector<double>(n));
    out.J.assign(ncur, std::vector<double>(n));
    std::vector<Eigen::MatrixXcd> mats;
    for (int k = 1; k <= ncur; ++k) mats.push_back(current_matrix(nc, k));
    for (std::size_t j = 0; j < n; ++j) {
        for (int c = 0; c < nc; ++c) {
            out.rho_comp[c][j] = std::norm(field(c, j));
            out.rho[j] += out.rho_comp[c][j];
        }
        const Eigen::VectorXcd v = node_vec(field, j);
        for (int k = 0; k < ncur; ++k) out.J[k][j] = (v.adjoint() * mats[k] * v)(0).real() / eps;
    }
    return out;
}

double energy_continuous(const SpinorField& field, const PotentialSet& potentials, double eps) {
    require_eps(eps, "energy_continuous");
    if (!potentials.time_independent) {
        throw ContractError("energy_continuous: potentials must be time independent");
    }
    const int nc = field.components();
    const int dims = field.mesh().dims();
    const std::size_t n = field.nodes();
    std::vector<SpinorField> deriv;
    for (int k = 0; k < dims; ++k) deriv.push_back(spectral_derivative(field, k));
    const PotentialSamples s = sample_potential(potentials, 0.0, field.mesh());
    const Eigen::MatrixXcd massm = nc == 2 ? Eigen::MatrixXcd(pauli(3)) : Eigen::MatrixXcd(dirac_beta());
    std::vector<Eigen::MatrixXcd> mats;
    const int nmat = nc == 2 ? dims : 3;
    for (int k = 1; k <= nmat; ++k) mats.push_back(current_matrix(nc, k));
    cplx total{};
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const Eigen::VectorXcd v = node_vec(field, j);
        cplx e = (v.adjoint() * massm * v)(0) / (eps * eps);
        e += s.V[j] * v.squaredNorm();
        for (int k = 0; k < dims; ++k) {
            const Eigen::VectorXcd dv = node_vec(deriv[k], j);
            e += -I_unit / eps * (v.adjoint() * mats[k] * dv)(0);
        }
        for (int k = 0; k < nmat && k < static_cast<int>(s.A.size()); ++k) {
            e -= s.A[k][j] * (v.adjoint() * mats[k] * v)(0);
        }
        total += e;
        scale += std::abs(e);
    }
    total *= field.mesh().cell_volume();
    scale *= field.mesh().cell_volume();
    if (std::abs(total.imag()) > 1e-10 * std::max(1.0, scale)) {
        std::ostringstream os;
        os << "energy_continuous: imaginary residue " << total.imag();
        throw NumericalError(os.str());
    }
    return total.real();
}

ObservableReport observe(const SpinorField& field, double t, const PotentialSet& potentials, double eps) {
    ObservableReport r;
    r.t = t;
    r.mass = mass(field);
    if (potentials.time_independent) r.energy = energy_continuous(field, potentials, eps);
    r.density = density_current(field, eps);
    return r;
}

} // namespace diraclab
