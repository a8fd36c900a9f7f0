#pragma once

#include "diraclab/field.hpp"
#include "diraclab/potentials.hpp"

#include <optional>
#include <vector>

namespace diraclab {

/// h sum_j |Phi_j|^2 (h1 h2 in 2D).
double mass(const SpinorField& field);

struct DensityCurrent {
    std::vector<double> rho;                   // total density per node
    std::vector<std::vector<double>> rho_comp; // |phi_c|^2 per component
    std::vector<std::vector<double>> J;        // current components per node
};

/// rho_c = |phi_c|^2, J_k = (1/eps) Phi^* sigma_k Phi (two components, k up to the mesh
/// dimension) or (1/eps) Psi^* alpha_k Psi (four components, k = 1..3).
DensityCurrent density_current(const SpinorField& field, double eps);

/// Continuous energy with spectral derivatives. Throws ContractError for time-dependent potentials.
double energy_continuous(const SpinorField& field, const PotentialSet& potentials, double eps);

struct ObservableReport {
    double t = 0.0;
    double mass = 0.0;
    std::optional<double> energy;
    DensityCurrent density;
};

ObservableReport observe(const SpinorField& field, double t, const PotentialSet& potentials, double eps);

} // namespace diraclab
