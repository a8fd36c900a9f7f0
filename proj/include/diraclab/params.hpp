#pragma once

#include "diraclab/field.hpp"
#include "diraclab/potentials.hpp"

#include <optional>

namespace diraclab {

struct SimParams {
    double eps = 1.0;
    double tau = 0.1;
    double T = 1.0;
    Mesh grid;
    PotentialSet potentials;
    SpinorField initial;
    /// d/dx of the initial data for the FDTD first step; spectral derivative when absent.
    std::optional<SpinorField> initial_derivative;

    SimParams(double eps_, double tau_, double T_, const Mesh& grid_, PotentialSet pot, SpinorField init);

    /// Number of steps T/tau; the ratio must be an integer to 1e-12 relative.
    long steps() const;
    /// Throws ArgumentError on any broken invariant.
    void validate() const;
};

/// Throws ArgumentError unless eps is in (0, 1].
void require_eps(double eps, const char* who);

} // namespace diraclab
