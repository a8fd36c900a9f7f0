#pragma once

#include "diraclab/field.hpp"
#include "diraclab/potentials.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace diraclab {

/// A named initial-value problem on a periodic box.
struct Problem {
    std::string name;
    std::vector<std::pair<double, double>> domain;  // one (a, b) per axis
    PotentialSet potentials;
    std::function<SpinorField(const Mesh&)> initial;
    /// True when the potentials vanish so exact_free_solution is the exact reference.
    bool analytic_reference = false;

    int dims() const noexcept { return static_cast<int>(domain.size()); }
    /// Mesh with spacing h on every axis; throws ArgumentError when h does not divide the box.
    Mesh mesh(double h) const;
};

struct ProblemOptions {
    int mode_index = 8;       // free-dirac plane-wave index k in e^{k pi i (x+1)}
    double V0 = 1.0;          // constant preset
    double A0 = 1.0;          // constant preset
    unsigned long seed = 20140603;  // constant preset broadband perturbation
    bool zero_initial = false;      // replace the preset's initial data by zero
};

/// Omega = (-16, 16), V = (1-x)/(1+x^2), A = (x+1)^2/(1+x^2),
/// Phi0 = (exp(-x^2/2), exp(-(x-1)^2/2)).
Problem gaussian_1d_problem();

/// Omega = (-1, 1), V = A = 0, phi_1 = phi_2 = exp(k pi i (x+1)).
Problem free_dirac_problem(int mode_index);

/// Omega = [-10, 10]^2, honeycomb V, A = 0, Phi0 = (exp(-(x^2+y^2)/2), exp(-((x-1)^2+y^2)/2)).
Problem honeycomb_problem();

/// Omega = (-16, 16), constant V0 and A0; Gaussian data plus a deterministic broadband
/// perturbation so that every Fourier mode is excited.
Problem constant_problem(double V0, double A0, unsigned long seed);

/// Preset lookup: gaussian-1d, free-dirac, honeycomb-2d, constant. Throws ConfigError otherwise.
Problem make_problem(const std::string& preset, const ProblemOptions& opt = {});

} // namespace diraclab
