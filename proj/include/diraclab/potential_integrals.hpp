#pragma once

#include "diraclab/potentials.hpp"

#include <vector>

namespace diraclab {

struct PotentialIntegral {
    double V1 = 0.0;
    std::vector<double> A1;
};

/// int_{t_n}^{t_n + tau} of V and each A_k at x: V*tau when time independent,
/// the registered antiderivative when present, otherwise Simpson's rule.
PotentialIntegral potential_integrals(const PotentialSet& p, double t_n, double tau, const Point& x);

/// Simpson's rule only, for comparison against the closed forms.
PotentialIntegral potential_integrals_simpson(const PotentialSet& p, double t_n, double tau, const Point& x);

} // namespace diraclab
